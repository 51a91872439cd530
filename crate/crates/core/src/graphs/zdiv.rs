use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::search::UNREACHED;
use super::{point_key, subspace_points, vertices_orth, GraphAlgebra};
use crate::field::{Field, Fq};
use crate::linalg::{self, Matrix, Subspace, Vec8};

/// Vertex cap for building every out-neighbourhood and running BFS.
pub const ZDIV_BFS_LIMIT: usize = 2_000;
/// Vertex cap for checking every ordered pair through a witness.
pub const ZDIV_WITNESS_LIMIT: usize = 10_000;
/// Ordered pairs drawn when the graph is too large for the witness pass.
pub const ZDIV_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZdivMode {
    /// Out-neighbourhoods from right annihilators, BFS from every vertex.
    ExhaustiveBfs,
    /// Every ordered pair: an arc or a checked two-step witness.
    Witness,
    /// Random ordered pairs, checked as in `Witness`.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZdivReport {
    pub vertices: usize,
    pub mode: ZdivMode,
    /// Ordered pairs of distinct vertices examined.
    pub pairs_checked: u64,
    /// Pairs among them with `x*y = 0`.
    pub arcs: u64,
    /// Pairs with `x*y != 0` joined through a checked witness `z`.
    pub witnessed: u64,
    pub failures: u64,
    pub first_failure: Option<(String, String)>,
    pub strongly_connected: bool,
    /// Largest directed distance; exact unless the mode is `Sampled`.
    pub directed_diameter: u32,
}

impl ZdivReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.strongly_connected && self.directed_diameter == 2
    }
}

fn unit(alg: &impl GraphAlgebra, j: usize) -> Vec8<Fq> {
    let f = alg.field();
    std::array::from_fn(|i| if i == j { f.one() } else { f.zero() })
}

/// Rows `0..8` encode `z ↦ x*z`, rows `8..16` encode `z ↦ z*y`.
fn stacked(alg: &impl GraphAlgebra, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Matrix<Fq> {
    let l: Vec<Vec8<Fq>> = (0..8).map(|j| alg.product(x, &unit(alg, j))).collect();
    let r: Vec<Vec8<Fq>> = (0..8).map(|j| alg.product(&unit(alg, j), y)).collect();
    Matrix::from_fn(16, 8, |i, j| if i < 8 { l[j][i] } else { r[j][i - 8] })
}

/// `{y : x*y = 0}`.
fn right_annihilator(alg: &impl GraphAlgebra, x: &Vec8<Fq>) -> Subspace<Fq> {
    let l: Vec<Vec8<Fq>> = (0..8).map(|j| alg.product(x, &unit(alg, j))).collect();
    linalg::kernel(alg.field(), &Matrix::from_fn(8, 8, |i, j| l[j][i]))
}

/// Some nonzero `z` with `x*z = 0 = z*y`. Tries `y*x` first, which works
/// whenever it is nonzero since `x*(y*x) = n(x)y` and `(y*x)*y = n(y)x`;
/// otherwise a basis vector of `{z : x*z = 0} ∩ {z : z*y = 0} = 𝒪*x ∩ y*𝒪`.
pub fn zdiv_witness<A: GraphAlgebra>(alg: &A, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Option<Vec8<Fq>> {
    let yx = alg.product(y, x);
    if !alg.is_zero_vec(&yx) {
        return Some(yx);
    }
    let k = linalg::kernel(alg.field(), &stacked(alg, x, y));
    k.basis().first().map(|b| std::array::from_fn(|i| b[i]))
}

/// `Ok(true)` for an arc, `Ok(false)` for a checked witness, `Err` otherwise.
fn check_pair<A: GraphAlgebra>(alg: &A, x: &Vec8<Fq>, y: &Vec8<Fq>) -> Result<bool, ()> {
    if alg.is_zero_vec(&alg.product(x, y)) {
        return Ok(true);
    }
    match zdiv_witness(alg, x, y) {
        Some(z)
            if !alg.is_zero_vec(&z)
                && alg.is_zero_vec(&alg.product(x, &z))
                && alg.is_zero_vec(&alg.product(&z, y)) =>
        {
            Ok(false)
        }
        _ => Err(()),
    }
}

#[derive(Default)]
struct Tally {
    pairs: u64,
    arcs: u64,
    witnessed: u64,
    failures: u64,
    first_failure: Option<(usize, usize)>,
}

impl Tally {
    fn record(&mut self, i: usize, j: usize, r: Result<bool, ()>) {
        self.pairs += 1;
        match r {
            Ok(true) => self.arcs += 1,
            Ok(false) => self.witnessed += 1,
            Err(()) => {
                self.failures += 1;
                self.first_failure.get_or_insert((i, j));
            }
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.pairs += o.pairs;
        self.arcs += o.arcs;
        self.witnessed += o.witnessed;
        self.failures += o.failures;
        if self.first_failure.is_none() {
            self.first_failure = o.first_failure;
        }
        self
    }
}

/// Checks that `Γ_Z` is strongly connected of directed diameter 2.
///
/// Up to [`ZDIV_BFS_LIMIT`] vertices the digraph is also built and searched
/// from every vertex; up to [`ZDIV_WITNESS_LIMIT`] every ordered pair is
/// checked; beyond that [`ZDIV_SAMPLES`] seeded random pairs are.
pub fn zdiv_digraph_check<A: GraphAlgebra>(alg: &A, seed: u64) -> ZdivReport {
    let points = vertices_orth(alg);
    zdiv_check_points(alg, &points, seed)
}

pub(crate) fn zdiv_check_points<A: GraphAlgebra>(
    alg: &A,
    points: &[Vec8<Fq>],
    seed: u64,
) -> ZdivReport {
    let n = points.len();
    let row = |i: usize| {
        let mut t = Tally::default();
        for j in (0..n).filter(|&j| j != i) {
            t.record(i, j, check_pair(alg, &points[i], &points[j]));
        }
        t
    };
    let tally = if n <= ZDIV_WITNESS_LIMIT {
        (0..n)
            .into_par_iter()
            .map(row)
            .reduce(Tally::default, Tally::merge)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(usize, usize)> =
            std::iter::repeat_with(|| (rng.random_range(0..n), rng.random_range(0..n)))
                .filter(|(i, j)| i != j)
                .take(ZDIV_SAMPLES)
                .collect();
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let mut t = Tally::default();
                t.record(i, j, check_pair(alg, &points[i], &points[j]));
                t
            })
            .reduce(Tally::default, Tally::merge)
    };
    let (mode, strongly_connected, directed_diameter) = if n <= ZDIV_BFS_LIMIT {
        let out = out_neighbours(alg, points);
        let ecc: Vec<Option<u32>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let d = directed_bfs(&out, s);
                d.iter()
                    .all(|&x| x != UNREACHED)
                    .then(|| d.into_iter().max().unwrap_or(0))
            })
            .collect();
        let strong = ecc.iter().all(Option::is_some);
        (
            ZdivMode::ExhaustiveBfs,
            strong,
            ecc.into_iter().flatten().max().unwrap_or(0),
        )
    } else {
        let mode = if n <= ZDIV_WITNESS_LIMIT {
            ZdivMode::Witness
        } else {
            ZdivMode::Sampled
        };
        let diam = if tally.witnessed > 0 {
            2
        } else {
            u32::from(tally.arcs > 0)
        };
        (mode, tally.failures == 0, diam)
    };
    ZdivReport {
        vertices: n,
        mode,
        pairs_checked: tally.pairs,
        arcs: tally.arcs,
        witnessed: tally.witnessed,
        failures: tally.failures,
        first_failure: tally
            .first_failure
            .map(|(i, j)| (alg.show(&points[i]), alg.show(&points[j]))),
        strongly_connected,
        directed_diameter,
    }
}

/// Out-neighbourhoods `{[y] != [x] : x*y = 0}`, sorted by vertex index.
pub(crate) fn out_neighbours<A: GraphAlgebra>(alg: &A, points: &[Vec8<Fq>]) -> Vec<Vec<u32>> {
    let f = alg.field();
    let q = f.size();
    let keys: Vec<u64> = points.iter().map(|p| point_key(q, p)).collect();
    points
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let mut nb: Vec<u32> = subspace_points(f, &right_annihilator(alg, x))
                .iter()
                .map(|y| {
                    keys.binary_search(&point_key(q, y))
                        .expect("annihilators are zero divisors") as u32
                })
                .filter(|&j| j as usize != i)
                .collect();
            nb.sort_unstable();
            nb
        })
        .collect()
}

fn directed_bfs(out: &[Vec<u32>], s: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHED; out.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s as u32]);
    while let Some(u) = queue.pop_front() {
        for &v in &out[u as usize] {
            if dist[v as usize] == UNREACHED {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}
