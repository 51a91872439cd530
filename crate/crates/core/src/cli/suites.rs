use clap::ValueEnum;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{AnyAlgebra, CliError};
use crate::constructions::p8::{cube, det, identity_m3, mat_lin, traceless_from_index};
use crate::constructions::{
    find_canonical_basis, nilpotents, p8_norm, petersson_reconstruct_check, tau_from_idempotent,
    tau_report, CanonicalBasisSearch, P8Model,
};
use crate::field::{Field, FiniteField, RationalFunctionField};
use crate::graphs::{
    self, certificates_match_bfs, certify_distance, components_orth, geodesic_rule,
    geodesic_trichotomy, geodesic_trichotomy_sampled, nilpotent_lines_graph, vertices_orth,
    ComponentKind, ComponentReport, Diameter, GraphAlgebra, OrthGraph, P8Coords,
};
use crate::linalg::{self, Vec8};
use crate::okubo::{Char3Subclass, OkuboAlgebra, ZeroDivisorClass};
use crate::with_algebra;

pub const IDENTITY_TRIALS: usize = 1_000;
pub const PETERSSON_TRIALS: usize = 1_000;
/// Zero-divisor lines up to which annihilator checks cover every pair.
pub const ANNIHILATOR_EXHAUSTIVE: usize = 200;
pub const ANNIHILATOR_SAMPLES: usize = 10_000;
/// Pairs per infinite field, where arithmetic is slower.
pub const ANNIHILATOR_SAMPLES_INFINITE: usize = 500;
pub const CERTIFICATE_SAMPLES: usize = 200;
/// BFS sources per component when geodesic counts cannot be checked on all pairs.
pub const GEODESIC_SOURCES: usize = 64;
/// Traceless matrices and nilpotent pairs checked exhaustively up to these counts.
pub const MATRIX_MATRICES: u64 = 10_000_000;
pub const MATRIX_PAIRS: usize = 20_000_000;
pub const MATRIX_SAMPLES: usize = 1_000_000;
pub const CANONICAL_CUTOFF: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Annihilators,
    Zdiv,
    OrthComponents,
    Geodesics,
    Char3,
    #[value(name = "section5")]
    PseudoOctonion,
    Petersson,
    #[value(name = "appendix")]
    PrintedOutputs,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Identities,
        Suite::Annihilators,
        Suite::Zdiv,
        Suite::OrthComponents,
        Suite::Geodesics,
        Suite::Char3,
        Suite::PseudoOctonion,
        Suite::Petersson,
        Suite::PrintedOutputs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Annihilators => "annihilators",
            Suite::Zdiv => "zdiv",
            Suite::OrthComponents => "orth-components",
            Suite::Geodesics => "geodesics",
            Suite::Char3 => "char3",
            Suite::PseudoOctonion => "section5",
            Suite::Petersson => "petersson",
            Suite::PrintedOutputs => "appendix",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub exact_limit: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            exact_limit: graphs::EXACT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    /// `None` when the suite was skipped as not applicable.
    pub status: Option<bool>,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl SuiteResult {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.name(),
            status: Some(true),
            passed: true,
            lines: Vec::new(),
        }
    }

    fn skipped(suite: Suite, reason: String) -> Self {
        Self {
            suite: suite.name(),
            status: None,
            passed: true,
            lines: vec![format!("skipped: {reason}")],
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    /// Records a named check; a failing check fails the suite.
    fn check(&mut self, ok: bool, line: impl Into<String>) {
        self.lines.push(format!(
            "[{}] {}",
            if ok { "ok" } else { "FAILED" },
            line.into()
        ));
        if !ok {
            self.passed = false;
            self.status = Some(false);
        }
    }

    pub fn render(&self) -> String {
        let status = match self.status {
            None => "SKIPPED",
            Some(true) => "PASS",
            Some(false) => "FAIL",
        };
        let mut s = format!("suite {}: {status}\n", self.suite);
        for l in &self.lines {
            s.push_str("  ");
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

fn incompatible(suite: Suite, reason: impl Into<String>) -> CliError {
    CliError::IncompatibleSuite {
        suite: suite.name(),
        reason: reason.into(),
    }
}

/// Runs one suite, or every applicable suite for [`Suite::All`].
pub fn run_suite(
    alg: &AnyAlgebra,
    suite: Suite,
    opts: &SuiteOptions,
) -> Result<Vec<SuiteResult>, CliError> {
    if suite != Suite::All {
        return Ok(vec![run_one(alg, suite, opts, &mut GraphCache::default())?]);
    }
    let mut cache = GraphCache::default();
    Suite::EACH
        .iter()
        .map(|&s| match run_one(alg, s, opts, &mut cache) {
            Err(CliError::IncompatibleSuite { reason, .. }) => Ok(SuiteResult::skipped(s, reason)),
            r => r,
        })
        .collect()
}

/// The orthogonality graph, built once for the suites that share it.
#[derive(Default)]
struct GraphCache {
    graph: Option<(OrthGraph, Vec<ComponentReport>)>,
}

impl GraphCache {
    fn get(
        &mut self,
        a: &OkuboAlgebra<FiniteField>,
        opts: &SuiteOptions,
    ) -> &(OrthGraph, Vec<ComponentReport>) {
        self.graph.get_or_insert_with(|| {
            let g = OrthGraph::build(a);
            let extra: Vec<u32> = [
                [0, 0, 1, 0, -1, 0, 0, 0],
                [0, 0, 0, 1, 0, -1, 0, 0],
                [1, 0, 0, 0, 0, 0, 0, -1],
            ]
            .into_iter()
            .filter_map(|c| g.index_of(a.field(), &a.from_ints(c)))
            .collect();
            let comps = components_orth(a, &g, opts.exact_limit, &extra, opts.seed);
            (g, comps)
        })
    }
}

fn run_one(
    alg: &AnyAlgebra,
    suite: Suite,
    opts: &SuiteOptions,
    cache: &mut GraphCache,
) -> Result<SuiteResult, CliError> {
    let finite = || {
        alg.finite()
            .ok_or_else(|| incompatible(suite, "needs a finite field"))
    };
    match suite {
        Suite::Identities => Ok(with_algebra!(alg, a => identities(a, opts))),
        Suite::Annihilators => Ok(match alg {
            AnyAlgebra::Finite(a) => annihilators_finite(a, opts),
            AnyAlgebra::Rational(a) => annihilators_sampled(a, opts),
        }),
        Suite::Zdiv => Ok(zdiv(finite()?, opts)),
        Suite::OrthComponents => Ok(orth_components(finite()?, opts, cache)),
        Suite::Geodesics => Ok(geodesics(finite()?, opts, cache)),
        Suite::Char3 => match alg {
            AnyAlgebra::Finite(a) => char3_finite(a),
            AnyAlgebra::Rational(a) => char3_nonsplit(a),
        },
        Suite::PseudoOctonion => pseudo_octonion(finite()?, opts),
        Suite::Petersson => with_algebra!(alg, a => petersson(a, opts)),
        Suite::PrintedOutputs => with_algebra!(alg, a => printed_outputs(a)),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn identities<F: Field>(a: &OkuboAlgebra<F>, opts: &SuiteOptions) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Identities);
    let rep = a.identity_suite(IDENTITY_TRIALS, opts.seed);
    for id in &rep.identities {
        let failed = rep
            .counterexample
            .as_ref()
            .is_some_and(|c| c.identity == *id);
        r.check(!failed, format!("{id}: {} random tuples", rep.trials));
    }
    if let Some(c) = &rep.counterexample {
        r.note(format!(
            "counterexample for {}: {}",
            c.identity,
            c.inputs.join(", ")
        ));
    }
    r
}

#[derive(Default)]
struct AnnTally {
    elements: usize,
    pairs: usize,
    failures: usize,
    first: Option<String>,
}

impl AnnTally {
    fn merge(mut self, o: AnnTally) -> AnnTally {
        self.elements += o.elements;
        self.pairs += o.pairs;
        self.failures += o.failures;
        if self.first.is_none() {
            self.first = o.first;
        }
        self
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        self.first.get_or_insert(what);
    }
}

/// Annihilators are 4-dimensional and equal the images `x*𝒪`, `𝒪*x`; the
/// orthogonalizer is `F(x*x)` or 3-dimensional.
fn check_element<F: Field>(a: &OkuboAlgebra<F>, x: &Vec8<F::Elem>) -> AnnTally {
    let mut t = AnnTally {
        elements: 1,
        ..Default::default()
    };
    let f = a.field();
    let (Ok(l), Ok(r), Ok(o)) = (a.left_ann(x), a.right_ann(x), a.orthogonalizer(x)) else {
        t.fail(format!("{} is not a zero divisor", a.format_element(x)));
        return t;
    };
    let xx = a.mul(x, x);
    let o_ok = if a.is_zero(&xx) {
        o.dim() == 3
    } else {
        o.dim() == 1 && o.contains(f, &xx)
    };
    if l.dim() != 4 || r.dim() != 4 || l != a.left_image(x) || r != a.right_image(x) || !o_ok {
        t.fail(format!("annihilators of {}", a.format_element(x)));
    }
    t
}

/// `(x*𝒪) ∩ (𝒪*y)` is `F(x*y)` when `x*y != 0` and 3-dimensional otherwise.
fn check_pair<F: Field>(a: &OkuboAlgebra<F>, x: &Vec8<F::Elem>, y: &Vec8<F::Elem>) -> AnnTally {
    let mut t = AnnTally {
        pairs: 1,
        ..Default::default()
    };
    let xy = a.mul(x, y);
    let ok = match a.ann_intersection(x, y) {
        Ok(s) if a.is_zero(&xy) => s.dim() == 3,
        Ok(s) => s.dim() == 1 && s.contains(a.field(), &xy),
        Err(_) => false,
    };
    if !ok {
        t.fail(format!(
            "intersection for ({}, {})",
            a.format_element(x),
            a.format_element(y)
        ));
    }
    t
}

fn report_annihilators(mut r: SuiteResult, t: AnnTally, mode: &str) -> SuiteResult {
    r.check(
        t.failures == 0,
        format!(
            "{mode}: {} zero divisors, {} pairs, {} failures",
            t.elements, t.pairs, t.failures
        ),
    );
    if let Some(w) = t.first {
        r.note(format!("first failure: {w}"));
    }
    r
}

fn annihilators_finite(a: &OkuboAlgebra<FiniteField>, opts: &SuiteOptions) -> SuiteResult {
    let r = SuiteResult::new(Suite::Annihilators);
    let points = vertices_orth(a);
    let singles = points
        .par_iter()
        .map(|x| check_element(a, x))
        .reduce(AnnTally::default, AnnTally::merge);
    let (pairs, mode): (Vec<(usize, usize)>, &str) = if points.len() <= ANNIHILATOR_EXHAUSTIVE {
        (
            (0..points.len())
                .flat_map(|i| (0..points.len()).map(move |j| (i, j)))
                .collect(),
            "exhaustive",
        )
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let n = points.len();
        (
            (0..ANNIHILATOR_SAMPLES)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
                .collect(),
            "sampled pairs",
        )
    };
    let t = pairs
        .par_iter()
        .map(|&(i, j)| check_pair(a, &points[i], &points[j]))
        .reduce(AnnTally::default, AnnTally::merge);
    report_annihilators(r, singles.merge(t), mode)
}

fn annihilators_sampled<F: Field>(a: &OkuboAlgebra<F>, opts: &SuiteOptions) -> SuiteResult {
    let r = SuiteResult::new(Suite::Annihilators);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = AnnTally::default();
    for _ in 0..ANNIHILATOR_SAMPLES_INFINITE {
        let x = a.random_zero_divisor(&mut rng);
        let y = a.random_zero_divisor(&mut rng);
        t = t.merge(check_element(a, &x)).merge(check_pair(a, &x, &y));
    }
    report_annihilators(r, t, "sampled")
}

fn zdiv(a: &OkuboAlgebra<FiniteField>, opts: &SuiteOptions) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Zdiv);
    let z = graphs::zdiv_digraph_check(a, opts.seed);
    r.note(format!(
        "mode: {:?}, {} vertices, {} ordered pairs",
        z.mode, z.vertices, z.pairs_checked
    ));
    r.check(
        z.failures == 0,
        format!(
            "{} arcs, {} pairs joined through a witness, {} failures",
            z.arcs, z.witnessed, z.failures
        ),
    );
    r.check(z.strongly_connected, "strongly connected");
    r.check(
        z.directed_diameter == 2,
        format!("directed diameter {}", z.directed_diameter),
    );
    if let Some((x, y)) = z.first_failure {
        r.note(format!("first failure: ({x}, {y})"));
    }
    r
}

fn diameter_text(d: &Diameter) -> String {
    match d {
        Diameter::Exact(d) => d.to_string(),
        Diameter::Certified {
            lower,
            upper,
            certified: true,
        } => {
            format!(
                "at least {lower} (sampled eccentricities), at most {upper} (sampled certificates)"
            )
        }
        Diameter::Certified { lower, .. } => {
            format!("at least {lower} (sampled eccentricities; upper bound unchecked)")
        }
    }
}

fn orth_components(
    a: &OkuboAlgebra<FiniteField>,
    opts: &SuiteOptions,
    cache: &mut GraphCache,
) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::OrthComponents);
    let f = a.field();
    let q = f.size() as usize;
    let (g, comps) = cache.get(a, opts);
    let big_expected = f.characteristic() == 3 || f.omega().is_some();
    let count = |k: ComponentKind| comps.iter().filter(|c| c.kind == k).count();
    r.note(format!(
        "{} vertices; {} Pair, {} Star, {} Big components",
        g.len(),
        count(ComponentKind::Pair),
        count(ComponentKind::Star),
        count(ComponentKind::Big)
    ));
    r.check(
        comps.iter().all(|c| !c.flagged),
        "no squaring fixed points and every Pair is {[x], [x*x]}",
    );
    r.check(
        comps
            .iter()
            .filter(|c| c.kind == ComponentKind::Pair)
            .all(|c| c.size == 2 && c.diameter == Diameter::Exact(1)),
        "Pairs have diameter 1",
    );
    if big_expected {
        let bigs: Vec<&ComponentReport> = comps
            .iter()
            .filter(|c| c.kind == ComponentKind::Big)
            .collect();
        r.check(
            bigs.len() == 1 && count(ComponentKind::Star) == 0,
            "Pairs and exactly one Big component",
        );
        if let [big] = bigs.as_slice() {
            let samples = CERTIFICATE_SAMPLES;
            let (n, agree) = if big.size <= opts.exact_limit {
                certificates_match_bfs(a, g, &big.vertices, samples, opts.seed)
            } else {
                certified_lengths(a, g, &big.vertices, samples, opts.seed)
            };
            let mut diameter = big.diameter;
            if let Diameter::Certified { certified, .. } = &mut diameter {
                *certified = agree == n;
            }
            let five = match diameter {
                Diameter::Exact(d) => d == 5,
                Diameter::Certified {
                    lower,
                    upper,
                    certified,
                } => lower == 5 && upper == 5 && certified,
            };
            r.check(
                five,
                format!(
                    "Big component of {} vertices has diameter {}",
                    big.size,
                    diameter_text(&diameter)
                ),
            );
            let what = if big.size <= opts.exact_limit {
                "valid and geodesic"
            } else {
                "valid, of length at most 5"
            };
            r.check(
                agree == n,
                format!("constructive paths {what} on {agree}/{n} sampled pairs"),
            );
        }
    } else {
        let star = q * q + q + 1;
        r.check(count(ComponentKind::Big) == 0, "no Big component");
        r.check(
            comps
                .iter()
                .filter(|c| c.kind == ComponentKind::Star)
                .all(|c| c.size == star && c.diameter == Diameter::Exact(2)),
            format!("Stars have {star} vertices and diameter 2"),
        );
    }
    r
}

/// Certificates on sampled pairs of a large component: valid walks of length at most 5.
fn certified_lengths(
    a: &OkuboAlgebra<FiniteField>,
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
    let ok = pairs
        .par_iter()
        .filter(|&&(s, t)| {
            certify_distance(a, g.point(s), g.point(t))
                .is_ok_and(|c| c.is_valid(a) && c.length() <= 5)
        })
        .count();
    (pairs.len(), ok)
}

fn geodesics(
    a: &OkuboAlgebra<FiniteField>,
    opts: &SuiteOptions,
    cache: &mut GraphCache,
) -> SuiteResult {
    let mut r = SuiteResult::new(Suite::Geodesics);
    let rule = geodesic_rule(a.field());
    let (g, comps) = cache.get(a, opts);
    r.note(format!("expected counts: {rule:?}"));
    let mut sampled = 0;
    let mut total = graphs::TrichotomyReport::default();
    for (i, c) in comps.iter().filter(|c| c.size > 2).enumerate() {
        let t = if c.size > opts.exact_limit {
            sampled += 1;
            geodesic_trichotomy_sampled(
                a,
                g,
                &c.vertices,
                rule,
                GEODESIC_SOURCES,
                opts.seed.wrapping_add(i as u64),
            )
        } else {
            geodesic_trichotomy(a, g, &c.vertices, rule)
        };
        total = total.merge(t);
    }
    r.note(format!(
        "{} pairs, distances 1..5: {:?}, {} with two geodesics, at most {} geodesics",
        total.pairs,
        &total.distance_histogram[1..],
        total.two_geodesic_pairs,
        total.max_count
    ));
    r.check(
        total.mismatches == 0,
        format!(
            "geodesic counts match the expected pattern ({} mismatches)",
            total.mismatches
        ),
    );
    r.check(
        total.typec_rule_violations == 0,
        format!(
            "TypeC pairs: distance at most 2 exactly when n(x, y) = 0 ({} violations)",
            total.typec_rule_violations
        ),
    );
    if let Some((x, y, d, c)) = total.first_mismatch {
        r.note(format!(
            "first mismatch: ({x}, {y}) at distance {d} with {c} geodesics"
        ));
    }
    if sampled > 0 {
        r.note(format!(
            "{sampled} component(s) above the exact limit checked from {GEODESIC_SOURCES} sampled sources each"
        ));
    }
    r
}

fn char3_finite(a: &OkuboAlgebra<FiniteField>) -> Result<SuiteResult, CliError> {
    let f = a.field();
    if f.characteristic() != 3 {
        return Err(incompatible(Suite::Char3, "needs characteristic 3"));
    }
    let mut r = SuiteResult::new(Suite::Char3);
    let e = a.quaternionic_idempotent()?;
    r.check(
        a.is_idempotent(&e),
        format!("e = {} is idempotent", a.format_element(&e)),
    );
    let c = a.centralizer(&e)?;
    r.note(format!("dim C(e) = {}", c.dim()));
    let typec: Vec<Vec8<_>> = vertices_orth(a)
        .into_par_iter()
        .filter(|x| GraphAlgebra::class_of(a, x) == ZeroDivisorClass::TypeC)
        .collect();
    r.check(
        typec.iter().all(|x| c.contains(f, x)),
        format!("all {} TypeC lines lie in C(e)", typec.len()),
    );
    let singular: Vec<&Vec8<_>> = typec
        .iter()
        .filter(|x| a.char3_subclass(x).ok() == Some(Char3Subclass::SingularType))
        .collect();
    let rows: Vec<Vec<_>> = singular.iter().map(|x| x.to_vec()).collect();
    let span = linalg::span(f, 8, &rows);
    let q = f.size() as usize;
    r.check(
        singular.len() == q + 1 && span.dim() == 2,
        format!(
            "{} SingularType lines spanning a {}-dimensional space",
            singular.len(),
            span.dim()
        ),
    );
    let pairwise = singular
        .iter()
        .all(|x| singular.iter().all(|y| a.orthogonal(x, y)));
    r.check(pairwise, "SingularType elements are pairwise orthogonal");
    if f.is_one(a.alpha()) && f.is_one(a.beta()) {
        let x = a.from_ints([0, 0, -1, 1, -1, 1, 1, -1]);
        let y = a.from_ints([1, -1, 1, -1, -1, 1, 0, 0]);
        r.check(
            span.contains(f, &x) && span.contains(f, &y),
            "the space is spanned by x and φ(x)",
        );
    }
    Ok(r)
}

/// Elements of the distance-three argument for a non-split algebra with `α = 1`.
pub struct NonSplitElements<E> {
    pub x: Vec8<E>,
    pub y: Vec8<E>,
    pub u: Vec8<E>,
    pub v: Vec8<E>,
    pub w: Vec8<E>,
    pub v_prime: Vec8<E>,
}

pub fn nonsplit_elements<F: Field>(a: &OkuboAlgebra<F>, k: &F::Elem) -> NonSplitElements<F::Elem> {
    let f = a.field();
    let x = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    let y = a.from_ints([0, 0, 0, 1, 0, -1, 0, 0]);
    let sum_x = a.from_ints([0, 0, 0, 1, 0, 1, 1, 0]);
    let sum_y = a.from_ints([0, 0, 1, 0, 1, 0, 0, 1]);
    let u = a.add(&sum_x, &a.scale(k, &sum_y));
    let mut v = a.zero();
    v[crate::okubo::Z01] = k.clone();
    v[crate::okubo::Z02] = f.neg(&f.one());
    let w = a.mul(&v, &u);
    let mut v_prime = a.zero();
    v_prime[crate::okubo::Z22] = f.one();
    v_prime[crate::okubo::Z11] = f.neg(k);
    NonSplitElements {
        x,
        y,
        u,
        v,
        w,
        v_prime,
    }
}

fn char3_nonsplit(a: &OkuboAlgebra<RationalFunctionField>) -> Result<SuiteResult, CliError> {
    let f = a.field();
    if f.characteristic() != 3 {
        return Err(incompatible(Suite::Char3, "needs characteristic 3"));
    }
    if a.is_split() || !f.is_one(a.alpha()) {
        return Err(incompatible(
            Suite::Char3,
            "over an infinite field needs α = 1 and β not a cube",
        ));
    }
    let mut r = SuiteResult::new(Suite::Char3);
    let b = a.beta().clone();
    for k in [f.one(), f.neg(&f.one()), b.clone()] {
        let s = nonsplit_elements(a, &k);
        let kk = f.format(&k);
        let xx = a.mul(&s.x, &s.x);
        let yy = a.mul(&s.y, &s.y);
        let explicit = {
            let mut w = a.zero();
            let bk = f.mul(&b, &k);
            let k2 = f.mul(&k, &k);
            w[crate::okubo::Z10] = bk.clone();
            w[crate::okubo::Z20] = f.neg(&bk);
            w[crate::okubo::Z01] = f.neg(&b);
            w[crate::okubo::Z02] = k2.clone();
            w[crate::okubo::Z11] = b.clone();
            w[crate::okubo::Z22] = f.neg(&k2);
            w
        };
        let coeff = f.mul(&b, &f.add(&b, &f.pow(&k, 3)));
        r.check(
            a.add(&xx, &a.scale(&f.div(&k, &b).expect("β != 0"), &yy)) == s.u
                && a.is_zero(&a.mul(&s.u, &s.u)),
            format!("k = {kk}: u_k = x*x + (k/β) y*y and u_k*u_k = 0"),
        );
        r.check(
            f.is_zero(&a.bilin(&s.v, &s.u)) && s.w == explicit && s.w == a.mul(&s.u, &s.v_prime),
            format!("k = {kk}: v_k ⊥ u_k and w_k = v_k*u_k = u_k*v'_k has the stated coordinates"),
        );
        let ww = a.mul(&s.w, &s.w);
        r.check(
            ww == a.scale(&coeff, &s.u) && !f.is_zero(&coeff),
            format!(
                "k = {kk}: w_k*w_k = β(β + k³) u_k with β(β + k³) = {} != 0",
                f.format(&coeff)
            ),
        );
        let anti = |z: &Vec8<_>| a.is_zero(&a.add(&a.mul(z, &s.w), &a.mul(&s.w, z)));
        let o = a.orthogonalizer(&s.u)?;
        let rows = vec![xx.to_vec(), yy.to_vec(), s.w.to_vec()];
        r.check(
            anti(&xx) && anti(&yy) && o == linalg::span(f, 8, &rows),
            format!("k = {kk}: O(u_k) = span{{x*x, y*y, w_k}} and w_k anticommutes with x*x, y*y"),
        );
    }
    let s = nonsplit_elements(a, &f.one());
    let (xx, yy) = (a.mul(&s.x, &s.x), a.mul(&s.y, &s.y));
    r.check(a.orthogonal(&xx, &yy), "x*x and y*y are orthogonal");
    match certify_distance(a, &s.x, &s.y) {
        Ok(c) => {
            let p = c.printed(a);
            r.check(
                c.is_valid(a)
                    && c.length() == 3
                    && c.vertices == vec![s.x.clone(), xx, yy, s.y.clone()],
                format!("path of length {}: {}", p.length, p.vertices.join(" | ")),
            );
        }
        Err(e) => r.check(false, format!("no certificate: {e}")),
    }
    Ok(r)
}

fn pseudo_octonion(
    a: &OkuboAlgebra<FiniteField>,
    opts: &SuiteOptions,
) -> Result<SuiteResult, CliError> {
    let f = a.field();
    if f.characteristic() == 3 || f.omega().is_none() {
        return Err(incompatible(
            Suite::PseudoOctonion,
            "needs a primitive cube root of unity (|F| ≡ 1 mod 3)",
        ));
    }
    let model =
        P8Model::new(f.clone()).map_err(|e| incompatible(Suite::PseudoOctonion, e.to_string()))?;
    let mut r = SuiteResult::new(Suite::PseudoOctonion);
    let elems = f.elements()?;
    let q = elems.len() as u64;
    let total = q.pow(8);
    let id = identity_m3(f);
    let cube_law = |n: u64| {
        let x = traceless_from_index(f, &elems, n);
        if x.is_zero(f) || !f.is_zero(&p8_norm(f, &x).expect("char != 3")) {
            return (0u64, 0u64);
        }
        let expected = mat_lin(f, &det(f, x.entries()), &id, &f.zero(), &id);
        (1, u64::from(cube(f, x.entries()) != expected))
    };
    let (indices, mode): (Vec<u64>, &str) = if total <= MATRIX_MATRICES {
        ((0..total).collect(), "exhaustive")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (
            (0..MATRIX_SAMPLES)
                .map(|_| rng.random_range(0..total))
                .collect(),
            "sampled",
        )
    };
    let (zero_norm, bad) = indices
        .par_iter()
        .map(|&n| cube_law(n))
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    r.check(
        bad == 0,
        format!("{mode}: x³ = det(x)·I for all {zero_norm} nonzero traceless x with norm 0"),
    );

    let nil: Vec<_> = nilpotents(f)
        .into_iter()
        .filter(|x| !x.is_zero(f))
        .collect();
    let n = nil.len();
    let disagree = |&(i, j): &(usize, usize)| {
        let (assoc, star) = model.orth_equiv_check(&nil[i], &nil[j]);
        u64::from(assoc != star)
    };
    let (checked, bad, mode) = if n * n <= MATRIX_PAIRS {
        let bad: u64 = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| disagree(&(i, j))).sum::<u64>())
            .sum();
        (n * n, bad, "exhaustive")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 1);
        let pairs: Vec<(usize, usize)> = (0..MATRIX_SAMPLES)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        (pairs.len(), pairs.par_iter().map(disagree).sum(), "sampled")
    };
    r.check(
        bad == 0,
        format!("{mode}: xy = yx = 0 ⟺ x*y = y*x = 0 on {checked} nilpotent pairs"),
    );

    let p8 = P8Coords { model };
    let nil_graph = nilpotent_lines_graph(&p8);
    let comps = nil_graph.graph().components();
    let all: Vec<u32> = (0..nil_graph.len() as u32).collect();
    let diameter = if nil_graph.len() <= opts.exact_limit {
        Diameter::Exact(nil_graph.graph().component_diameter(&all))
    } else {
        graphs::diameter(&nil_graph, &all, opts.exact_limit, &[], opts.seed)
    };
    let five = match diameter {
        Diameter::Exact(d) => d == 5,
        Diameter::Certified { lower, .. } => lower == 5,
    };
    r.check(
        comps.len() == 1 && five,
        format!(
            "nilpotent-lines graph: {} vertices, connected, diameter {}",
            nil_graph.len(),
            diameter_text(&diameter)
        ),
    );
    let g = OrthGraph::build(&p8);
    let big = g
        .graph()
        .components()
        .into_iter()
        .max_by_key(Vec::len)
        .unwrap_or_default();
    let same = big.len() == nil_graph.len()
        && big.iter().all(|&v| {
            let Some(i) = nil_graph.index_of(f, g.point(v)) else {
                return false;
            };
            let mapped: Option<Vec<u32>> = g
                .neighbors(v)
                .iter()
                .map(|&w| nil_graph.index_of(f, g.point(w)))
                .collect();
            mapped.is_some_and(|mut m| {
                m.sort_unstable();
                m == nil_graph.neighbors(i)
            })
        });
    r.check(
        same,
        format!(
            "largest component of the pseudo-octonion graph ({} vertices) equals it edge for edge",
            big.len()
        ),
    );
    Ok(r)
}

fn petersson<F: Field>(a: &OkuboAlgebra<F>, opts: &SuiteOptions) -> Result<SuiteResult, CliError> {
    let f = a.field();
    let quaternionic = f.characteristic() == 3 && a.is_split();
    let e = if quaternionic {
        a.quaternionic_idempotent()?
    } else {
        a.graded_idempotent()
            .map_err(|_| incompatible(Suite::Petersson, "needs α to be a cube"))?
    };
    let mut r = SuiteResult::new(Suite::Petersson);
    r.note(format!("e = {}", a.format_element(&e)));
    let t = tau_report(a, &e, PETERSSON_TRIALS, opts.seed)
        .map_err(|e| incompatible(Suite::Petersson, e.to_string()))?;
    r.check(t.closed_forms_agree, "e*(e*x) = n(e, x)e - x*e");
    r.check(t.tau_cubed_is_identity, "τ³ = id");
    r.check(t.tau_is_automorphism, "τ is an automorphism");
    r.check(
        t.fix_equals_centralizer,
        format!("Fix(τ) = C(e), of dimension {}", t.fix_dim),
    );
    r.check(t.unital, "x·y = (e*x)*(y*e) has unit e");
    r.check(
        t.composes_norms,
        format!("n(x·y) = n(x)n(y) on {PETERSSON_TRIALS} random pairs"),
    );
    if quaternionic {
        r.check(
            t.unipotent && t.fix_dim == 6,
            "(τ - id)² = 0 and dim Fix(τ) = 6",
        );
    }
    let tau =
        tau_from_idempotent(a, &e).map_err(|e| incompatible(Suite::Petersson, e.to_string()))?;
    let p = petersson_reconstruct_check(a, &e, &tau, PETERSSON_TRIALS, opts.seed)
        .map_err(|e| incompatible(Suite::Petersson, e.to_string()))?;
    r.check(
        p.passed(),
        format!(
            "x*y = τ(x̄)·τ²(ȳ) on {} basis and {} random pairs",
            p.basis_pairs, p.random_pairs
        ),
    );
    if let Some((x, y)) = &p.counterexample {
        r.note(format!("counterexample: ({x}, {y})"));
    }
    Ok(r)
}

/// Bounded search for a basis with the Zorn table and unipotent `τ`; reported, not required.
pub fn canonical_basis_note(a: &OkuboAlgebra<FiniteField>) -> Option<String> {
    let e = a.quaternionic_idempotent().ok()?;
    Some(match find_canonical_basis(a, &e, CANONICAL_CUTOFF).ok()? {
        CanonicalBasisSearch::Found { candidates, .. } => {
            format!("canonical basis found after {candidates} candidates")
        }
        CanonicalBasisSearch::NotFound { candidates } => {
            format!("no canonical basis within {candidates} candidates")
        }
    })
}

fn printed_outputs<F: Field>(a: &OkuboAlgebra<F>) -> Result<SuiteResult, CliError> {
    let f = a.field();
    if !f.is_one(a.alpha()) {
        return Err(incompatible(
            Suite::PrintedOutputs,
            "the printed outputs are for α = 1",
        ));
    }
    let mut r = SuiteResult::new(Suite::PrintedOutputs);
    let x = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    let y = a.from_ints([0, 0, 0, 1, 0, -1, 0, 0]);
    let (xx, yy) = (a.mul(&x, &x), a.mul(&y, &y));
    let b = f.format(a.beta());
    let three_b2 = f.format(&f.mul(&f.from_i64(3), &f.mul(a.beta(), a.beta())));
    let outputs = [
        (
            "mult[x,x]",
            a.format_vector(&xx),
            "{0, 0, 0, 1, 0, 1, 1, 0}".to_string(),
        ),
        (
            "mult[y,y]",
            a.format_vector(&yy),
            format!("{{0, 0, {b}, 0, {b}, 0, 0, {b}}}"),
        ),
        ("n[x,xx]", f.format(&a.bilin(&x, &xx)), "0".to_string()),
        ("n[y,yy]", f.format(&a.bilin(&y, &yy)), "0".to_string()),
        ("n[xx,yy]", f.format(&a.bilin(&xx, &yy)), three_b2),
    ];
    for (what, got, want) in outputs {
        r.check(got == want, format!("{what} = {got} (expected {want})"));
    }
    Ok(r)
}
