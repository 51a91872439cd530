use serde::Serialize;

use super::GraphError;
use crate::field::Field;
use crate::linalg::{self, Vec8};
use crate::okubo::{OkuboAlgebra, ZeroDivisorClass};

/// A walk in `Γ_O` given by representatives; consecutive entries are orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCertificate<E> {
    pub vertices: Vec<Vec8<E>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedCertificate {
    pub length: usize,
    pub vertices: Vec<String>,
}

impl<E: Clone + Eq + std::fmt::Debug> PathCertificate<E> {
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Nonzero, pairwise non-proportional neighbours, each pair orthogonal.
    pub fn is_valid<F: Field<Elem = E>>(&self, alg: &OkuboAlgebra<F>) -> bool {
        let f = alg.field();
        let independent =
            |a: &Vec8<E>, b: &Vec8<E>| linalg::span(f, 8, &[a.to_vec(), b.to_vec()]).dim() == 2;
        self.vertices.iter().all(|v| alg.is_zero_divisor(v))
            && self
                .vertices
                .windows(2)
                .all(|w| independent(&w[0], &w[1]) && alg.orthogonal(&w[0], &w[1]))
    }

    pub fn printed<F: Field<Elem = E>>(&self, alg: &OkuboAlgebra<F>) -> PrintedCertificate {
        PrintedCertificate {
            length: self.length(),
            vertices: self
                .vertices
                .iter()
                .map(|v| alg.format_element(v))
                .collect(),
        }
    }
}

fn proportional<F: Field>(alg: &OkuboAlgebra<F>, a: &Vec8<F::Elem>, b: &Vec8<F::Elem>) -> bool {
    linalg::span(alg.field(), 8, &[a.to_vec(), b.to_vec()]).dim() <= 1
}

/// Some `w ∈ O(y)` with `w*w = 0` and `[w] != [y]`, for `y` with `y*y = 0`.
///
/// `O(y) = span{y, a, b}` and `(γa + δb + εy)*(γa + δb + εy)` only depends on
/// `(γ, δ)`: `γ²·a*a + γδ·(a*b + b*a) + δ²·b*b`. Over a finite field every
/// `(γ : δ)` is tried; otherwise the candidates are the roots that can be read
/// off one coordinate without extracting square roots.
fn zero_square_partner<F: Field>(
    alg: &OkuboAlgebra<F>,
    y: &Vec8<F::Elem>,
) -> Option<Vec8<F::Elem>> {
    let f = alg.field();
    let o = alg.orthogonalizer(y).ok()?;
    let others: Vec<Vec8<F::Elem>> = o
        .basis()
        .iter()
        .map(|b| std::array::from_fn(|i| b[i].clone()))
        .filter(|b: &Vec8<F::Elem>| !proportional(alg, b, y))
        .collect();
    let mut complement: Vec<Vec8<F::Elem>> = Vec::new();
    for b in others {
        let mut rows: Vec<Vec<F::Elem>> = vec![y.to_vec()];
        rows.extend(complement.iter().map(|c| c.to_vec()));
        rows.push(b.to_vec());
        if linalg::span(f, 8, &rows).dim() == rows.len() {
            complement.push(b);
        }
    }
    let [a, b] = <[Vec8<F::Elem>; 2]>::try_from(complement).ok()?;
    let combo = |g: &F::Elem, d: &F::Elem| alg.add(&alg.scale(g, &a), &alg.scale(d, &b));
    let works = |w: &Vec8<F::Elem>| !alg.is_zero(w) && alg.is_zero(&alg.mul(w, w));
    if works(&a) {
        return Some(a);
    }
    let candidates: Vec<F::Elem> = match f.elements() {
        Ok(all) => all,
        Err(_) => {
            // coefficients of γ² A + γ B + C with δ = 1
            let aa = alg.mul(&a, &a);
            let bb = alg.add(&alg.mul(&a, &b), &alg.mul(&b, &a));
            let cc = alg.mul(&b, &b);
            let two = f.from_i64(2);
            let four = f.from_i64(4);
            let mut out = Vec::new();
            for i in 0..8 {
                let (qa, qb, qc) = (&aa[i], &bb[i], &cc[i]);
                if f.is_zero(qa) {
                    if !f.is_zero(qb) {
                        out.push(f.neg(&f.div(qc, qb).ok()?));
                    }
                } else if f.characteristic() != 2 {
                    let disc = f.sub(&f.mul(qb, qb), &f.mul(&four, &f.mul(qa, qc)));
                    if f.is_zero(&disc) {
                        out.push(f.neg(&f.div(qb, &f.mul(&two, qa)).ok()?));
                    }
                }
            }
            out
        }
    };
    let one = f.one();
    candidates.iter().map(|g| combo(g, &one)).find(|w| works(w))
}

/// A path between `[x]` and `[y]` following the constructive arguments:
/// TypeB endpoints step to their squares; TypeC endpoints `x', y'` with
/// `n(x', y') = 0` meet at `y'*x'` (or `x'*y'`); otherwise `z ∈ W ∩ x'^⊥`
/// for a zero-square plane `W ∋ y'` inside `O(y')` gives `x' – m – z – y'`.
pub fn certify_distance<F: Field>(
    alg: &OkuboAlgebra<F>,
    x: &Vec8<F::Elem>,
    y: &Vec8<F::Elem>,
) -> Result<PathCertificate<F::Elem>, GraphError> {
    let f = alg.field();
    let reduce = |v: &Vec8<F::Elem>| -> Result<(Vec8<F::Elem>, bool), GraphError> {
        match alg.classify(v).map_err(|_| GraphError::BadEndpoint)? {
            ZeroDivisorClass::TypeA => Err(GraphError::BadEndpoint),
            ZeroDivisorClass::TypeB => Ok((alg.mul(v, v), true)),
            ZeroDivisorClass::TypeC => Ok((v.clone(), false)),
        }
    };
    if proportional(alg, x, y) {
        alg.classify(x).map_err(|_| GraphError::BadEndpoint)?;
        return Ok(PathCertificate {
            vertices: vec![x.clone()],
        });
    }
    let (xr, x_stepped) = reduce(x)?;
    let (yr, y_stepped) = reduce(y)?;

    let mut core: Vec<Vec8<F::Elem>> = vec![xr.clone()];
    if proportional(alg, &xr, &yr) {
        // both endpoints step to the same line
    } else if alg.orthogonal(&xr, &yr) {
        core.push(yr.clone());
    } else if f.is_zero(&alg.bilin(&xr, &yr)) {
        let m = alg.mul(&yr, &xr);
        core.push(if alg.is_zero(&m) {
            alg.mul(&xr, &yr)
        } else {
            m
        });
        core.push(yr.clone());
    } else {
        let w = zero_square_partner(alg, &yr).ok_or(GraphError::NoZeroSquareSubspace)?;
        let z = alg.sub(
            &alg.scale(&alg.bilin(&xr, &w), &yr),
            &alg.scale(&alg.bilin(&xr, &yr), &w),
        );
        if !alg.orthogonal(&xr, &z) {
            let m = alg.mul(&z, &xr);
            core.push(if alg.is_zero(&m) { alg.mul(&xr, &z) } else { m });
        }
        core.push(z);
        core.push(yr.clone());
    }

    let mut vertices = Vec::new();
    if x_stepped {
        vertices.push(x.clone());
    }
    vertices.extend(core);
    if y_stepped {
        vertices.push(y.clone());
    }
    Ok(PathCertificate { vertices })
}
