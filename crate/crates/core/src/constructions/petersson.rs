//! Recovering a Hurwitz algebra and an order-3 automorphism from an idempotent
//! of a symmetric composition algebra, and reassembling the original product.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::zorn::{ZornAlgebra, ZORN_TABLE};
use super::ConstructionError;
use crate::field::{Field, FiniteField, Fq};
use crate::linalg::{self, Matrix, Subspace, Vec8};
use crate::okubo::OkuboAlgebra;

/// Linear map of the 8-dimensional algebra, acting on coefficient columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap8<E> {
    matrix: Matrix<E>,
}

impl<E: Clone + Eq> LinearMap8<E> {
    pub fn from_images<F: Field<Elem = E>>(images: &[Vec8<E>; 8]) -> Self {
        Self {
            matrix: Matrix::from_fn(8, 8, |i, j| images[j][i].clone()),
        }
    }

    pub fn matrix(&self) -> &Matrix<E> {
        &self.matrix
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, x: &Vec8<E>) -> Vec8<E> {
        let v = self.matrix.mul_vec(f, x);
        std::array::from_fn(|i| v[i].clone())
    }

    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Self {
            matrix: self.matrix.mul(f, &other.matrix),
        }
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.matrix == Matrix::identity(f, 8)
    }

    /// `{x : T x = x}`.
    pub fn fixed_space<F: Field<Elem = E>>(&self, f: &F) -> Subspace<E> {
        linalg::kernel(f, &self.minus_identity(f).matrix)
    }

    pub fn minus_identity<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let id = Matrix::identity(f, 8);
        Self {
            matrix: Matrix::from_fn(8, 8, |i, j| f.sub(self.matrix.get(i, j), id.get(i, j))),
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        (0..8).all(|i| self.matrix.row(i).iter().all(|c| f.is_zero(c)))
    }

    /// Swaps the images of basis vectors `i` and `j`.
    pub fn with_swapped_images(&self, i: usize, j: usize) -> Self {
        let mut m = self.matrix.clone();
        for r in 0..8 {
            let a = m.get(r, i).clone();
            let b = m.get(r, j).clone();
            m.set(r, i, b);
            m.set(r, j, a);
        }
        Self { matrix: m }
    }
}

fn require_idempotent<F: Field>(
    alg: &OkuboAlgebra<F>,
    e: &Vec8<F::Elem>,
) -> Result<(), ConstructionError> {
    if alg.is_idempotent(e) {
        Ok(())
    } else {
        Err(ConstructionError::NotIdempotent)
    }
}

/// `τ(x) = e*(e*x)`.
pub fn tau_from_idempotent<F: Field>(
    alg: &OkuboAlgebra<F>,
    e: &Vec8<F::Elem>,
) -> Result<LinearMap8<F::Elem>, ConstructionError> {
    require_idempotent(alg, e)?;
    let images: [Vec8<F::Elem>; 8] =
        std::array::from_fn(|j| alg.mul(e, &alg.mul(e, &alg.basis(j))));
    Ok(LinearMap8::from_images::<F>(&images))
}

/// `τ(x) = n(e,x)e − x*e`, the second closed form.
pub fn tau_via_form<F: Field>(
    alg: &OkuboAlgebra<F>,
    e: &Vec8<F::Elem>,
) -> Result<LinearMap8<F::Elem>, ConstructionError> {
    require_idempotent(alg, e)?;
    let images: [Vec8<F::Elem>; 8] = std::array::from_fn(|j| {
        let x = alg.basis(j);
        alg.sub(&alg.scale(&alg.bilin(e, &x), e), &alg.mul(&x, e))
    });
    Ok(LinearMap8::from_images::<F>(&images))
}

/// The unital product `x·y = (e*x)*(y*e)` with unit `e`.
#[derive(Debug, Clone)]
pub struct HurwitzFromIdempotent<'a, F: Field> {
    alg: &'a OkuboAlgebra<F>,
    e: Vec8<F::Elem>,
}

impl<'a, F: Field> HurwitzFromIdempotent<'a, F> {
    pub fn new(alg: &'a OkuboAlgebra<F>, e: &Vec8<F::Elem>) -> Result<Self, ConstructionError> {
        require_idempotent(alg, e)?;
        Ok(Self { alg, e: e.clone() })
    }

    pub fn unit(&self) -> &Vec8<F::Elem> {
        &self.e
    }

    pub fn mul(&self, x: &Vec8<F::Elem>, y: &Vec8<F::Elem>) -> Vec8<F::Elem> {
        self.alg
            .mul(&self.alg.mul(&self.e, x), &self.alg.mul(y, &self.e))
    }

    /// `x̄ = n(e,x)e − x`.
    pub fn conj(&self, x: &Vec8<F::Elem>) -> Vec8<F::Elem> {
        self.alg
            .sub(&self.alg.scale(&self.alg.bilin(&self.e, x), &self.e), x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeterssonReport {
    pub basis_pairs: usize,
    pub random_pairs: usize,
    /// First `(x, y)` with `τ(x̄)·τ²(ȳ) != x*y`.
    pub counterexample: Option<(String, String)>,
}

impl PeterssonReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `x*y = τ(x̄)·τ²(ȳ)` on all basis pairs and `trials` random pairs,
/// for the given `τ` (normally [`tau_from_idempotent`]).
pub fn petersson_reconstruct_check<F: Field>(
    alg: &OkuboAlgebra<F>,
    e: &Vec8<F::Elem>,
    tau: &LinearMap8<F::Elem>,
    trials: usize,
    seed: u64,
) -> Result<PeterssonReport, ConstructionError> {
    let h = HurwitzFromIdempotent::new(alg, e)?;
    let f = alg.field();
    let tau2 = tau.compose(f, tau);
    let twisted = |x: &Vec8<F::Elem>, y: &Vec8<F::Elem>| {
        h.mul(&tau.apply(f, &h.conj(x)), &tau2.apply(f, &h.conj(y)))
    };
    let mut report = PeterssonReport {
        basis_pairs: 64,
        random_pairs: trials,
        counterexample: None,
    };
    let mut pairs: Vec<[Vec8<F::Elem>; 2]> = (0..64)
        .map(|k| [alg.basis(k / 8), alg.basis(k % 8)])
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.extend((0..trials).map(|_| [alg.random_element(&mut rng), alg.random_element(&mut rng)]));
    for [x, y] in &pairs {
        if twisted(x, y) != alg.mul(x, y) {
            report.counterexample = Some((alg.format_element(x), alg.format_element(y)));
            break;
        }
    }
    Ok(report)
}

/// Facts about `τ` and the derived Hurwitz product for one idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub closed_forms_agree: bool,
    pub tau_cubed_is_identity: bool,
    pub tau_is_automorphism: bool,
    pub fix_equals_centralizer: bool,
    pub fix_dim: usize,
    pub unipotent: bool,
    pub unital: bool,
    pub composes_norms: bool,
    pub norm_isotropic: bool,
}

pub fn tau_report<F: Field>(
    alg: &OkuboAlgebra<F>,
    e: &Vec8<F::Elem>,
    trials: usize,
    seed: u64,
) -> Result<TauReport, ConstructionError> {
    let f = alg.field();
    let tau = tau_from_idempotent(alg, e)?;
    let h = HurwitzFromIdempotent::new(alg, e)?;
    let tau3 = tau.compose(f, &tau).compose(f, &tau);
    let fix = tau.fixed_space(f);
    let centralizer = alg.centralizer(e)?;
    let n = tau.minus_identity(f);
    let basis: Vec<Vec8<F::Elem>> = (0..8).map(|i| alg.basis(i)).collect();
    let tau_is_automorphism = basis.iter().all(|x| {
        basis
            .iter()
            .all(|y| tau.apply(f, &alg.mul(x, y)) == alg.mul(&tau.apply(f, x), &tau.apply(f, y)))
    });
    let unital = basis.iter().all(|x| h.mul(x, e) == *x && h.mul(e, x) == *x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let composes_norms = (0..trials).all(|_| {
        let x = alg.random_element(&mut rng);
        let y = alg.random_element(&mut rng);
        alg.qnorm(&h.mul(&x, &y)) == f.mul(&alg.qnorm(&x), &alg.qnorm(&y))
    });
    Ok(TauReport {
        closed_forms_agree: tau == tau_via_form(alg, e)?,
        tau_cubed_is_identity: tau3.is_identity(f),
        tau_is_automorphism,
        fix_equals_centralizer: fix == centralizer,
        fix_dim: fix.dim(),
        unipotent: n.compose(f, &n).is_zero(f),
        unital,
        composes_norms,
        // the basis vectors z_ij are isotropic for every admissible α, β
        norm_isotropic: f.is_zero(&alg.qnorm(&alg.basis(0))),
    })
}

fn subspace_elements(f: &FiniteField, s: &Subspace<Fq>) -> Vec<Vec8<Fq>> {
    let elems = f.elements().expect("finite");
    let q = elems.len();
    let d = s.dim();
    let mut out = Vec::with_capacity(q.pow(d as u32));
    for n in 0..q.pow(d as u32) {
        let mut m = n;
        let mut v: Vec8<Fq> = [f.zero(); 8];
        for b in s.basis() {
            let c = elems[m % q];
            m /= q;
            for i in 0..8 {
                v[i] = f.add(&v[i], &f.mul(&c, &b[i]));
            }
        }
        out.push(v);
    }
    out
}

/// Outcome of the bounded search for a basis in which the derived Hurwitz
/// algebra has the Zorn table and `τ` the unipotent normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum CanonicalBasisSearch {
    /// Images of `e1, e2, u1, u2, u3, v1, v2, v3`.
    Found {
        basis: [Vec8<Fq>; 8],
        candidates: usize,
    },
    NotFound {
        candidates: usize,
    },
}

/// Whether `basis` (images of `e1 .. v3`) is a basis with the Zorn table under
/// the derived product, and `τ` fixes `e1, e2, u1, u2, v1, v3`,
/// sends `u3 ↦ u3 + u2` and `v2 ↦ v2 − v3`.
pub fn is_canonical_basis(
    alg: &OkuboAlgebra<FiniteField>,
    e: &Vec8<Fq>,
    tau: &LinearMap8<Fq>,
    basis: &[Vec8<Fq>; 8],
) -> bool {
    let f = alg.field();
    let rows: Vec<Vec<Fq>> = basis.iter().map(|b| b.to_vec()).collect();
    if linalg::span(f, 8, &rows).dim() != 8 {
        return false;
    }
    let Ok(h) = HurwitzFromIdempotent::new(alg, e) else {
        return false;
    };
    for i in 0..8 {
        for j in 0..8 {
            let expected = match ZORN_TABLE[i][j] {
                None => alg.zero(),
                Some((s, k)) if s < 0 => alg.neg(&basis[k]),
                Some((_, k)) => basis[k],
            };
            if h.mul(&basis[i], &basis[j]) != expected {
                return false;
            }
        }
    }
    let t = |k: usize| tau.apply(f, &basis[k]);
    [0, 1, 2, 3, 5, 7].iter().all(|&k| t(k) == basis[k])
        && t(4) == alg.add(&basis[4], &basis[3])
        && t(6) == alg.sub(&basis[6], &basis[7])
}

/// Greedy search: `e1` an isotropic idempotent of the derived product fixed by
/// `τ`, `e2 = e − e1`, `u3` in the Peirce space `U` not fixed by `τ`,
/// `u2 = τ(u3) − u3`, `u1` fixed in `U`, and `v3 = u1·u2`, `v1 = u2·u3`,
/// `v2 = u3·u1`. Gives up after `cutoff` complete candidates.
pub fn find_canonical_basis(
    alg: &OkuboAlgebra<FiniteField>,
    e: &Vec8<Fq>,
    cutoff: usize,
) -> Result<CanonicalBasisSearch, ConstructionError> {
    let f = alg.field();
    let tau = tau_from_idempotent(alg, e)?;
    let h = HurwitzFromIdempotent::new(alg, e)?;
    let fix = tau.fixed_space(f);
    let peirce = |left: &Vec8<Fq>, right: &Vec8<Fq>| -> Subspace<Fq> {
        // {x : left·x = x, x·right = x}
        let cols_l: Vec<Vec8<Fq>> = (0..8)
            .map(|j| alg.sub(&h.mul(left, &alg.basis(j)), &alg.basis(j)))
            .collect();
        let cols_r: Vec<Vec8<Fq>> = (0..8)
            .map(|j| alg.sub(&h.mul(&alg.basis(j), right), &alg.basis(j)))
            .collect();
        let m = Matrix::from_fn(16, 8, |i, j| {
            if i < 8 {
                cols_l[j][i]
            } else {
                cols_r[j][i - 8]
            }
        });
        linalg::kernel(f, &m)
    };
    let mut candidates = 0;
    for e1 in subspace_elements(f, &fix) {
        if alg.is_zero(&e1) || e1 == *e || h.mul(&e1, &e1) != e1 || !f.is_zero(&alg.qnorm(&e1)) {
            continue;
        }
        let e2 = alg.sub(e, &e1);
        let u_space = peirce(&e1, &e2);
        if u_space.dim() != 3 {
            continue;
        }
        let fixed_u = linalg::intersect(f, &u_space, &fix).expect("same ambient");
        let u1s = subspace_elements(f, &fixed_u);
        for u3 in subspace_elements(f, &u_space) {
            let u2 = alg.sub(&tau.apply(f, &u3), &u3);
            if alg.is_zero(&u2) {
                continue;
            }
            for u1 in &u1s {
                if alg.is_zero(u1) {
                    continue;
                }
                candidates += 1;
                if candidates > cutoff {
                    return Ok(CanonicalBasisSearch::NotFound { candidates: cutoff });
                }
                let basis = [
                    e1,
                    e2,
                    *u1,
                    u2,
                    u3,
                    h.mul(&u2, &u3),
                    h.mul(&u3, u1),
                    h.mul(u1, &u2),
                ];
                if is_canonical_basis(alg, e, &tau, &basis) {
                    return Ok(CanonicalBasisSearch::Found { basis, candidates });
                }
            }
        }
    }
    Ok(CanonicalBasisSearch::NotFound { candidates })
}

/// Maps a Zorn-algebra element to the Okubo coordinates given by a canonical basis.
pub fn zorn_to_okubo(
    zorn: &ZornAlgebra<FiniteField>,
    alg: &OkuboAlgebra<FiniteField>,
    basis: &[Vec8<Fq>; 8],
    x: &super::zorn::ZornElement<Fq>,
) -> Vec8<Fq> {
    let c = zorn.coords(x);
    (0..8).fold(alg.zero(), |acc, k| {
        alg.add(&acc, &alg.scale(&c[k], &basis[k]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(q: u64) -> OkuboAlgebra<FiniteField> {
        let f = match q {
            4 => FiniteField::new(2, 2, None).unwrap(),
            p => FiniteField::prime(p).unwrap(),
        };
        OkuboAlgebra::split(f)
    }

    #[test]
    fn tau_for_quaternionic_idempotent() {
        let a = split(3);
        let e = a.quaternionic_idempotent().unwrap();
        let r = tau_report(&a, &e, 200, 1).unwrap();
        assert!(r.closed_forms_agree && r.tau_cubed_is_identity && r.tau_is_automorphism);
        assert!(
            r.fix_equals_centralizer
                && r.unipotent
                && r.unital
                && r.composes_norms
                && r.norm_isotropic
        );
        assert_eq!(r.fix_dim, 6);
        let tau = tau_from_idempotent(&a, &e).unwrap();
        assert_eq!(tau.apply(a.field(), &e), e);
    }

    #[test]
    fn tau_for_graded_idempotent_outside_char3() {
        for q in [4, 5, 7] {
            let a = split(q);
            let e = a.graded_idempotent().unwrap();
            assert_eq!(e, a.from_ints([1, 1, 0, 0, 0, 0, 0, 0]));
            let r = tau_report(&a, &e, 200, 2).unwrap();
            assert!(r.closed_forms_agree && r.tau_cubed_is_identity && r.tau_is_automorphism);
            assert!(r.fix_equals_centralizer && r.unital && r.composes_norms);
        }
    }

    #[test]
    fn reconstruction_and_fault_detection() {
        for q in [3, 4] {
            let a = split(q);
            let e = if q == 3 {
                a.quaternionic_idempotent().unwrap()
            } else {
                a.graded_idempotent().unwrap()
            };
            let tau = tau_from_idempotent(&a, &e).unwrap();
            assert!(petersson_reconstruct_check(&a, &e, &tau, 300, 3)
                .unwrap()
                .passed());
            let bad = tau.with_swapped_images(0, 2);
            let r = petersson_reconstruct_check(&a, &e, &bad, 300, 3).unwrap();
            assert!(r.counterexample.is_some());
        }
        let a = split(3);
        assert!(matches!(
            tau_from_idempotent(&a, &a.basis(0)),
            Err(ConstructionError::NotIdempotent)
        ));
    }

    #[test]
    fn canonical_basis_over_gf3() {
        let a = split(3);
        let e = a.quaternionic_idempotent().unwrap();
        match find_canonical_basis(&a, &e, 100_000).unwrap() {
            CanonicalBasisSearch::Found { basis, .. } => {
                let tau = tau_from_idempotent(&a, &e).unwrap();
                assert!(is_canonical_basis(&a, &e, &tau, &basis));
                let z = ZornAlgebra::new(a.field().clone());
                // norms agree through the identification
                for k in 0..8 {
                    let x = z.basis(k);
                    assert_eq!(a.qnorm(&zorn_to_okubo(&z, &a, &basis, &x)), z.norm(&x));
                }
                let fix = tau.fixed_space(a.field());
                let named: Vec<Vec<Fq>> = [0, 1, 2, 3, 5, 7]
                    .iter()
                    .map(|&k| basis[k].to_vec())
                    .collect();
                assert_eq!(fix, linalg::span(a.field(), 8, &named));
            }
            CanonicalBasisSearch::NotFound { candidates } => {
                panic!("no canonical basis after {candidates}")
            }
        }
    }
}
