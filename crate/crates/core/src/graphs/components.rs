use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::search::UNREACHED;
use super::{canonicalize, certify_distance, GraphAlgebra, OrthGraph};
use crate::field::{Field, FiniteField};
use crate::okubo::{OkuboAlgebra, ZeroDivisorClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    /// `{[x], [x*x]}` with `n(x, x*x) != 0`.
    Pair,
    /// A centre adjacent to every other vertex, all others of degree 1.
    Star,
    /// Anything else; the single large component when `ω ∈ F` or `char = 3`.
    Big,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Diameter {
    Exact(u32),
    Certified {
        lower: u32,
        upper: u32,
        certified: bool,
    },
}

impl Diameter {
    pub fn exact(&self) -> Option<u32> {
        match self {
            Diameter::Exact(d) => Some(*d),
            Diameter::Certified { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCensus {
    #[serde(rename = "TypeA")]
    pub type_a: usize,
    #[serde(rename = "TypeB")]
    pub type_b: usize,
    #[serde(rename = "TypeC")]
    pub type_c: usize,
}

impl ClassCensus {
    fn add(&mut self, c: ZeroDivisorClass) {
        match c {
            ZeroDivisorClass::TypeA => self.type_a += 1,
            ZeroDivisorClass::TypeB => self.type_b += 1,
            ZeroDivisorClass::TypeC => self.type_c += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub kind: ComponentKind,
    pub size: usize,
    pub diameter: Diameter,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub center: Option<String>,
    pub class_census: ClassCensus,
    /// Set when a structural guarantee fails: a Pair whose vertices are not
    /// each other's squares, or a TypeA vertex with `[x*x] = [x]`.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub flagged: bool,
    #[serde(skip)]
    pub vertices: Vec<u32>,
}

fn classify_shape(g: &OrthGraph, comp: &[u32]) -> (ComponentKind, Option<u32>) {
    let n = comp.len();
    if n <= 2 {
        return (ComponentKind::Pair, None);
    }
    let graph = g.graph();
    if let Some(&c) = comp.iter().find(|&&v| graph.degree(v) == n - 1) {
        if comp.iter().all(|&v| v == c || graph.degree(v) == 1) {
            return (ComponentKind::Star, Some(c));
        }
    }
    (ComponentKind::Big, None)
}

/// Whether the structural guarantees for a component fail.
fn flag_component<A: GraphAlgebra>(
    alg: &A,
    g: &OrthGraph,
    comp: &[u32],
    kind: ComponentKind,
) -> bool {
    let f = alg.field();
    let square = |v: u32| canonicalize(f, &alg.product(g.point(v), g.point(v)));
    let squaring_fixes_a_typea = comp
        .iter()
        .any(|&v| g.class(v) == ZeroDivisorClass::TypeA && square(v).as_ref() == Some(g.point(v)));
    let bad_pair = kind == ComponentKind::Pair
        && (comp.len() != 2
            || comp.iter().any(|&v| g.class(v) != ZeroDivisorClass::TypeA)
            || square(comp[0]).as_ref() != Some(g.point(comp[1]))
            || square(comp[1]).as_ref() != Some(g.point(comp[0])));
    squaring_fixes_a_typea || bad_pair
}

/// Diameter of one component: exact when it has at most `exact_limit` vertices,
/// otherwise the largest eccentricity among `extra_sources` and sampled
/// vertices as lower bound and 5 as upper bound. `certified` stays false until
/// the caller has checked constructive certificates on the component.
pub fn diameter(
    g: &OrthGraph,
    comp: &[u32],
    exact_limit: usize,
    extra_sources: &[u32],
    seed: u64,
) -> Diameter {
    let graph = g.graph();
    if comp.len() <= exact_limit {
        return Diameter::Exact(graph.component_diameter(comp));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sources: Vec<u32> = comp.choose_multiple(&mut rng, 16).copied().collect();
    sources.extend(
        extra_sources
            .iter()
            .filter(|v| comp.binary_search(v).is_ok()),
    );
    let lower = sources
        .par_iter()
        .map(|&s| graph.eccentricity(s))
        .max()
        .unwrap_or(0);
    Diameter::Certified {
        lower,
        upper: 5,
        certified: false,
    }
}

/// Component reports in order of smallest vertex. Components are disjoint
/// vertex sets by construction, so equal components are never listed twice.
pub fn components_orth<A: GraphAlgebra>(
    alg: &A,
    g: &OrthGraph,
    exact_limit: usize,
    extra_sources: &[u32],
    seed: u64,
) -> Vec<ComponentReport> {
    let comps = g.graph().components();
    comps
        .into_par_iter()
        .enumerate()
        .map(|(i, comp)| {
            let (kind, center) = classify_shape(g, &comp);
            let mut census = ClassCensus::default();
            for &v in &comp {
                census.add(g.class(v));
            }
            let diameter = diameter(
                g,
                &comp,
                exact_limit,
                extra_sources,
                seed.wrapping_add(i as u64),
            );
            ComponentReport {
                kind,
                size: comp.len(),
                diameter,
                center: center.map(|c| alg.show(g.point(c))),
                class_census: census,
                flagged: flag_component(alg, g, &comp, kind),
                vertices: comp,
            }
        })
        .collect()
}

/// How geodesic counts are expected to behave on a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicRule {
    /// Every pair has a unique geodesic.
    Unique,
    /// Split algebra with `ω ∈ F`, `char != 3`: two geodesics exactly when
    /// `d = 3` with both endpoints TypeC, `d = 4` with an endpoint TypeC, or `d = 5`.
    SplitOmega,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TrichotomyReport {
    pub pairs: u64,
    pub two_geodesic_pairs: u64,
    pub max_count: u64,
    /// Pair counts by distance `0..=5`; larger distances are folded into the last slot.
    pub distance_histogram: [u64; 6],
    pub mismatches: u64,
    pub first_mismatch: Option<(String, String, u32, u64)>,
    /// TypeC pairs violating `D <= 2 ⟺ n(x, y) = 0`.
    pub typec_rule_violations: u64,
}

impl TrichotomyReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.typec_rule_violations == 0
    }
}

/// Checks geodesic counts for every unordered pair of the component.
pub fn geodesic_trichotomy<A: GraphAlgebra>(
    alg: &A,
    g: &OrthGraph,
    comp: &[u32],
    rule: GeodesicRule,
) -> TrichotomyReport {
    let runs: Vec<(u32, &[u32])> = comp
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, &comp[i + 1..]))
        .collect();
    trichotomy_runs(alg, g, rule, &runs)
}

/// Checks geodesic counts from `sources` random vertices to every vertex of the component.
pub fn geodesic_trichotomy_sampled<A: GraphAlgebra>(
    alg: &A,
    g: &OrthGraph,
    comp: &[u32],
    rule: GeodesicRule,
    sources: usize,
    seed: u64,
) -> TrichotomyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let runs: Vec<(u32, &[u32])> = comp
        .choose_multiple(&mut rng, sources)
        .map(|&s| (s, comp))
        .collect();
    trichotomy_runs(alg, g, rule, &runs)
}

impl TrichotomyReport {
    pub fn merge(mut self, r: TrichotomyReport) -> TrichotomyReport {
        self.pairs += r.pairs;
        self.two_geodesic_pairs += r.two_geodesic_pairs;
        self.max_count = self.max_count.max(r.max_count);
        for k in 0..6 {
            self.distance_histogram[k] += r.distance_histogram[k];
        }
        self.mismatches += r.mismatches;
        self.typec_rule_violations += r.typec_rule_violations;
        if self.first_mismatch.is_none() {
            self.first_mismatch = r.first_mismatch;
        }
        self
    }
}

/// One BFS per run; each source is compared against its targets, skipping itself.
fn trichotomy_runs<A: GraphAlgebra>(
    alg: &A,
    g: &OrthGraph,
    rule: GeodesicRule,
    runs: &[(u32, &[u32])],
) -> TrichotomyReport {
    let f = alg.field();
    let graph = g.graph();
    let is_c = |v: u32| g.class(v) == ZeroDivisorClass::TypeC;
    let expected = |d: u32, s: u32, t: u32| -> u64 {
        match rule {
            GeodesicRule::Unique => 1,
            GeodesicRule::SplitOmega => {
                let two =
                    (d == 3 && is_c(s) && is_c(t)) || (d == 4 && (is_c(s) || is_c(t))) || d == 5;
                if two {
                    2
                } else {
                    1
                }
            }
        }
    };
    runs.par_iter()
        .map(|&(s, targets)| {
            let bfs = graph.bfs(s);
            let mut r = TrichotomyReport::default();
            for &t in targets.iter().filter(|&&t| t != s) {
                let d = bfs.dist[t as usize];
                let c = bfs.count[t as usize];
                r.pairs += 1;
                if d == UNREACHED {
                    r.mismatches += 1;
                    continue;
                }
                r.distance_histogram[(d as usize).min(5)] += 1;
                r.max_count = r.max_count.max(c);
                if c == 2 {
                    r.two_geodesic_pairs += 1;
                }
                if c != expected(d, s, t) {
                    r.mismatches += 1;
                    if r.first_mismatch.is_none() {
                        r.first_mismatch = Some((alg.show(g.point(s)), alg.show(g.point(t)), d, c));
                    }
                }
                if is_c(s) && is_c(t) && ((d <= 2) != f.is_zero(&alg.polar(g.point(s), g.point(t))))
                {
                    r.typec_rule_violations += 1;
                }
            }
            r
        })
        .reduce(TrichotomyReport::default, TrichotomyReport::merge)
}

/// Samples pairs of a component and compares certificate length with BFS distance.
/// Returns `(pairs, agreements)`.
pub fn certificates_match_bfs(
    alg: &OkuboAlgebra<FiniteField>,
    g: &OrthGraph,
    comp: &[u32],
    samples: usize,
    seed: u64,
) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = (0..samples)
        .map(|_| {
            (
                *comp.choose(&mut rng).expect("nonempty"),
                *comp.choose(&mut rng).expect("nonempty"),
            )
        })
        .collect();
    let agree = pairs
        .par_iter()
        .filter(|&&(s, t)| {
            let d = g.graph().bfs(s).dist[t as usize];
            match certify_distance(alg, g.point(s), g.point(t)) {
                Ok(cert) => cert.is_valid(alg) && cert.length() as u32 == d,
                Err(_) => false,
            }
        })
        .count();
    (pairs.len(), agree)
}
