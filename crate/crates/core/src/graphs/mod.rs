//! Orthogonality graph `Γ_O` and directed zero-divisor graph `Γ_Z` on the
//! projective zero divisors of an 8-dimensional algebra over a finite field.

mod certify;
mod components;
mod export;
mod search;
mod zdiv;

use rayon::prelude::*;
use thiserror::Error;

use crate::constructions::p8::{mat_mul, M3};
use crate::constructions::{P8Model, TracelessMatrix};
use crate::field::{Field, FiniteField, Fq};
use crate::linalg::{self, Matrix, Subspace, Vec8};
use crate::okubo::{OkuboAlgebra, ZeroDivisorClass};

pub use certify::{certify_distance, PathCertificate, PrintedCertificate};
pub use components::{
    certificates_match_bfs, components_orth, diameter, geodesic_trichotomy,
    geodesic_trichotomy_sampled, ClassCensus, ComponentKind, ComponentReport, Diameter,
    GeodesicRule, TrichotomyReport,
};
pub use export::{
    export_dot, export_report, export_zdiv_dot, geodesic_rule, validate_report, ComponentCensus,
    GraphReport, ZdivSummary,
};
pub use search::{Bfs, SimpleGraph};
pub use zdiv::{
    zdiv_digraph_check, zdiv_witness, ZdivMode, ZdivReport, ZDIV_BFS_LIMIT, ZDIV_SAMPLES,
    ZDIV_WITNESS_LIMIT,
};

/// Default vertex cap for exact (all-sources) diameter computations.
pub const EXACT_LIMIT: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("the field is infinite")]
    InfiniteField,
    #[error("{0} vertices exceed the limit for this computation")]
    TooLarge(usize),
    #[error("vertices lie in different components")]
    Disconnected,
    #[error("not a vertex of the graph")]
    NotAVertex,
    #[error("endpoint is not a zero divisor with n(x, x*x) = 0")]
    BadEndpoint,
    #[error("no two-dimensional zero-square subspace through the endpoint")]
    NoZeroSquareSubspace,
}

/// An 8-dimensional algebra with a quadratic form over a finite field.
pub trait GraphAlgebra: Sync {
    fn field(&self) -> &FiniteField;
    fn product(&self, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Vec8<Fq>;
    fn norm(&self, x: &Vec8<Fq>) -> Fq;
    fn polar(&self, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Fq;
    /// Human-readable element.
    fn show(&self, x: &Vec8<Fq>) -> String;

    /// `{y : x*y = y*x = 0}`.
    fn orthogonalizer(&self, x: &Vec8<Fq>) -> Subspace<Fq> {
        let f = self.field();
        let unit = |j: usize| -> Vec8<Fq> {
            std::array::from_fn(|i| if i == j { f.one() } else { f.zero() })
        };
        let l: Vec<Vec8<Fq>> = (0..8).map(|j| self.product(x, &unit(j))).collect();
        let r: Vec<Vec8<Fq>> = (0..8).map(|j| self.product(&unit(j), x)).collect();
        let m = Matrix::from_fn(16, 8, |i, j| if i < 8 { l[j][i] } else { r[j][i - 8] });
        linalg::kernel(f, &m)
    }

    fn is_zero_vec(&self, x: &Vec8<Fq>) -> bool {
        x.iter().all(|c| c.0 == 0)
    }

    fn orthogonal(&self, x: &Vec8<Fq>, y: &Vec8<Fq>) -> bool {
        self.is_zero_vec(&self.product(x, y)) && self.is_zero_vec(&self.product(y, x))
    }

    fn class_of(&self, x: &Vec8<Fq>) -> ZeroDivisorClass {
        let xx = self.product(x, x);
        if self.is_zero_vec(&xx) {
            ZeroDivisorClass::TypeC
        } else if self.field().is_zero(&self.polar(x, &xx)) {
            ZeroDivisorClass::TypeB
        } else {
            ZeroDivisorClass::TypeA
        }
    }
}

impl GraphAlgebra for OkuboAlgebra<FiniteField> {
    fn field(&self) -> &FiniteField {
        OkuboAlgebra::field(self)
    }

    fn product(&self, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Vec8<Fq> {
        self.mul(x, y)
    }

    fn norm(&self, x: &Vec8<Fq>) -> Fq {
        self.qnorm(x)
    }

    fn polar(&self, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Fq {
        self.bilin(x, y)
    }

    fn show(&self, x: &Vec8<Fq>) -> String {
        self.format_element(x)
    }

    fn orthogonalizer(&self, x: &Vec8<Fq>) -> Subspace<Fq> {
        self.orthogonalizer_unchecked(x)
    }
}

/// Pseudo-octonions in the coordinates of [`TracelessMatrix::coords`].
#[derive(Debug, Clone)]
pub struct P8Coords {
    pub model: P8Model<FiniteField>,
}

impl P8Coords {
    pub fn matrix(&self, x: &Vec8<Fq>) -> TracelessMatrix<Fq> {
        TracelessMatrix::from_coords(self.model.field(), x)
    }
}

impl GraphAlgebra for P8Coords {
    fn field(&self) -> &FiniteField {
        self.model.field()
    }

    fn product(&self, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Vec8<Fq> {
        self.model.mul(&self.matrix(x), &self.matrix(y)).coords()
    }

    fn norm(&self, x: &Vec8<Fq>) -> Fq {
        self.model.norm(&self.matrix(x))
    }

    fn polar(&self, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Fq {
        self.model.bilin(&self.matrix(x), &self.matrix(y))
    }

    fn show(&self, x: &Vec8<Fq>) -> String {
        let f = self.field();
        let m = self.matrix(x);
        let rows: Vec<String> = m
            .entries()
            .iter()
            .map(|r| r.iter().map(|c| f.format(c)).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// Scales `v` so its first nonzero coordinate is 1; `None` for the zero vector.
pub fn canonicalize(f: &FiniteField, v: &Vec8<Fq>) -> Option<Vec8<Fq>> {
    let lead = v.iter().find(|c| !f.is_zero(c))?;
    let inv = f.inv(lead).expect("nonzero");
    Some(std::array::from_fn(|i| f.mul(&inv, &v[i])))
}

/// Base-`q` key of a coefficient vector, first coordinate most significant,
/// so key order is lexicographic order of representatives.
pub fn point_key(q: u64, v: &Vec8<Fq>) -> u64 {
    v.iter().fold(0u64, |acc, c| acc * q + c.0 as u64)
}

/// Number of points of the projective space of dimension 7 over GF(q).
pub fn projective_point_count(q: u64) -> u64 {
    (q.pow(8) - 1) / (q - 1)
}

/// Canonical representative number `n` among the `(q^8 − 1)/(q − 1)` points.
fn nth_point(elems: &[Fq], one: Fq, mut n: u64) -> Vec8<Fq> {
    let q = elems.len() as u64;
    // points with leading coordinate at position p: q^(7−p) of them
    let mut lead = 0;
    loop {
        let block = q.pow(7 - lead as u32);
        if n < block {
            break;
        }
        n -= block;
        lead += 1;
    }
    let mut v = [elems[0]; 8];
    v[lead] = one;
    for i in (lead + 1..8).rev() {
        v[i] = elems[(n % q) as usize];
        n /= q;
    }
    v
}

/// Canonical projective points of a subspace, in key order.
pub fn subspace_points(f: &FiniteField, s: &Subspace<Fq>) -> Vec<Vec8<Fq>> {
    let elems = f.elements().expect("finite");
    let q = elems.len();
    let d = s.dim();
    let mut out = Vec::new();
    for n in 1..q.pow(d as u32) {
        let mut m = n;
        let mut v = [f.zero(); 8];
        for b in s.basis() {
            let c = elems[m % q];
            m /= q;
            if c.0 != 0 {
                for i in 0..8 {
                    v[i] = f.add(&v[i], &f.mul(&c, &b[i]));
                }
            }
        }
        if let Some(p) = canonicalize(f, &v) {
            if p == v {
                out.push(p);
            }
        }
    }
    let q = q as u64;
    out.sort_by_key(|p| point_key(q, p));
    out
}

/// Projective points `[x]` with `x` a zero divisor, in lexicographic order of
/// canonical representatives. Every zero divisor of these algebras is two-sided.
pub fn vertices_orth<A: GraphAlgebra>(alg: &A) -> Vec<Vec8<Fq>> {
    let f = alg.field();
    let elems = f.elements().expect("finite");
    let q = elems.len() as u64;
    let one = f.one();
    let mut pts: Vec<Vec8<Fq>> = (0..projective_point_count(q))
        .into_par_iter()
        .filter_map(|n| {
            let v = nth_point(&elems, one, n);
            f.is_zero(&alg.norm(&v)).then_some(v)
        })
        .collect();
    pts.par_sort_by_key(|p| point_key(q, p));
    pts
}

/// Vertex table and adjacency of `Γ_O`.
#[derive(Debug, Clone)]
pub struct OrthGraph {
    q: u64,
    points: Vec<Vec8<Fq>>,
    keys: Vec<u64>,
    classes: Vec<ZeroDivisorClass>,
    graph: SimpleGraph,
}

impl OrthGraph {
    /// Builds `Γ_O` with neighbours read off orthogonalizer kernels.
    pub fn build<A: GraphAlgebra>(alg: &A) -> Self {
        let f = alg.field();
        let q = f.size();
        let points = vertices_orth(alg);
        let keys: Vec<u64> = points.iter().map(|p| point_key(q, p)).collect();
        let classes: Vec<ZeroDivisorClass> = points.par_iter().map(|p| alg.class_of(p)).collect();
        let adj: Vec<Vec<u32>> = points
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let o = alg.orthogonalizer(p);
                let mut nb: Vec<u32> = subspace_points(f, &o)
                    .iter()
                    .map(|w| {
                        keys.binary_search(&point_key(q, w))
                            .expect("orthogonal elements are zero divisors")
                            as u32
                    })
                    .filter(|&j| j as usize != i)
                    .collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        Self {
            q,
            points,
            keys,
            classes,
            graph: SimpleGraph::new(adj),
        }
    }

    /// Same vertex set, adjacency by testing every pair. Quadratic; used as an oracle.
    pub fn build_by_pair_scan<A: GraphAlgebra>(alg: &A) -> Self {
        let f = alg.field();
        let q = f.size();
        let points = vertices_orth(alg);
        let keys: Vec<u64> = points.iter().map(|p| point_key(q, p)).collect();
        let classes: Vec<ZeroDivisorClass> = points.par_iter().map(|p| alg.class_of(p)).collect();
        let adj: Vec<Vec<u32>> = points
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                (0..points.len())
                    .filter(|&j| j != i && alg.orthogonal(p, &points[j]))
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        Self {
            q,
            points,
            keys,
            classes,
            graph: SimpleGraph::new(adj),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec8<Fq>] {
        &self.points
    }

    pub fn point(&self, i: u32) -> &Vec8<Fq> {
        &self.points[i as usize]
    }

    pub fn class(&self, i: u32) -> ZeroDivisorClass {
        self.classes[i as usize]
    }

    pub fn classes(&self) -> &[ZeroDivisorClass] {
        &self.classes
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn neighbors(&self, i: u32) -> &[u32] {
        self.graph.neighbors(i)
    }

    /// Vertex index of the line through `v`.
    pub fn index_of(&self, f: &FiniteField, v: &Vec8<Fq>) -> Option<u32> {
        let c = canonicalize(f, v)?;
        self.keys
            .binary_search(&point_key(self.q, &c))
            .ok()
            .map(|i| i as u32)
    }
}

/// Lines through nonzero traceless `x` with `x³ = 0`, joined when `xy = yx = 0`
/// as matrices. Coordinates are those of [`TracelessMatrix::coords`].
pub fn nilpotent_lines_graph(p8: &P8Coords) -> OrthGraph {
    let f = p8.field();
    let q = f.size();
    let mut points: Vec<Vec8<Fq>> = crate::constructions::nilpotents(f)
        .into_iter()
        .map(|m| m.coords())
        .filter(|c| canonicalize(f, c).as_ref() == Some(c))
        .collect();
    points.sort_by_key(|p| point_key(q, p));
    let keys: Vec<u64> = points.iter().map(|p| point_key(q, p)).collect();
    let classes: Vec<ZeroDivisorClass> = points.par_iter().map(|p| p8.class_of(p)).collect();
    let unit =
        |j: usize| -> Vec8<Fq> { std::array::from_fn(|i| if i == j { f.one() } else { f.zero() }) };
    let adj: Vec<Vec<u32>> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let x = p8.matrix(p);
            // y ↦ (xy, yx), as 18 rows over the traceless coordinates of y
            let cols: Vec<(M3<Fq>, M3<Fq>)> = (0..8)
                .map(|j| {
                    let y = p8.matrix(&unit(j));
                    (
                        mat_mul(f, x.entries(), y.entries()),
                        mat_mul(f, y.entries(), x.entries()),
                    )
                })
                .collect();
            let m = Matrix::from_fn(18, 8, |r, j| {
                let (xy, yx) = &cols[j];
                if r < 9 {
                    xy[r / 3][r % 3]
                } else {
                    yx[(r - 9) / 3][(r - 9) % 3]
                }
            });
            let mut nb: Vec<u32> = subspace_points(f, &linalg::kernel(f, &m))
                .iter()
                .filter_map(|w| keys.binary_search(&point_key(q, w)).ok())
                .filter(|&j| j != i)
                .map(|j| j as u32)
                .collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    OrthGraph {
        q,
        points,
        keys,
        classes,
        graph: SimpleGraph::new(adj),
    }
}

/// Neighbours of `[v]` in `Γ_O`, computed from the orthogonalizer of `v`.
pub fn neighbors_orth<A: GraphAlgebra>(alg: &A, v: &Vec8<Fq>) -> Result<Vec<Vec8<Fq>>, GraphError> {
    let f = alg.field();
    let c = canonicalize(f, v).ok_or(GraphError::NotAVertex)?;
    if !f.is_zero(&alg.norm(&c)) {
        return Err(GraphError::NotAVertex);
    }
    Ok(subspace_points(f, &alg.orthogonalizer(&c))
        .into_iter()
        .filter(|w| *w != c)
        .collect())
}

#[cfg(test)]
mod tests;
