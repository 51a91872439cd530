use std::fmt::Write as _;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::components::{
    components_orth, geodesic_trichotomy, ClassCensus, ComponentKind, ComponentReport, Diameter,
    GeodesicRule,
};
use super::zdiv::{out_neighbours, zdiv_check_points, ZdivMode, ZDIV_BFS_LIMIT};
use super::{certify_distance, GraphAlgebra, GraphError, OrthGraph};
use crate::field::{Field, FiniteField};
use crate::okubo::OkuboAlgebra;

/// Pairs certified per component whose diameter is not computed exactly.
const CERTIFIED_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZdivSummary {
    pub strongly_connected: bool,
    pub directed_diameter: u32,
    pub mode: ZdivMode,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    #[serde(rename = "Pair")]
    pub pairs: usize,
    #[serde(rename = "Star")]
    pub stars: usize,
    #[serde(rename = "Big")]
    pub big: usize,
}

/// The structured graph report. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub field: String,
    pub alpha: String,
    pub beta: String,
    pub vertex_count: usize,
    pub class_census: ClassCensus,
    pub component_census: ComponentCensus,
    pub components: Vec<ComponentReport>,
    /// `"pass"`, `"fail"`, or `"skipped"` when a component exceeds the exact limit.
    pub geodesic_trichotomy: &'static str,
    pub zdiv: ZdivSummary,
}

impl GraphReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Two geodesics can only occur when `ω ∈ F`; finite Okubo algebras are split.
pub fn geodesic_rule(f: &FiniteField) -> GeodesicRule {
    if f.size() % 3 == 1 {
        GeodesicRule::SplitOmega
    } else {
        GeodesicRule::Unique
    }
}

/// Known distance-five endpoints, used as extra diameter sources.
fn extremal_sources(alg: &OkuboAlgebra<FiniteField>, g: &OrthGraph) -> Vec<u32> {
    let f = alg.field();
    [
        [0, 0, 1, 0, -1, 0, 0, 0],
        [0, 0, 0, 1, 0, -1, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, -1],
    ]
    .into_iter()
    .filter_map(|c| g.index_of(f, &alg.from_ints(c)))
    .collect()
}

/// Runs `certify_distance` on sampled pairs; all must give valid walks of length ≤ 5.
fn certify_component(
    alg: &OkuboAlgebra<FiniteField>,
    g: &OrthGraph,
    comp: &[u32],
    seed: u64,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = (0..CERTIFIED_SAMPLES)
        .map(|_| {
            (
                *comp.choose(&mut rng).expect("nonempty"),
                *comp.choose(&mut rng).expect("nonempty"),
            )
        })
        .collect();
    pairs.par_iter().all(
        |&(s, t)| match certify_distance(alg, g.point(s), g.point(t)) {
            Ok(c) => c.is_valid(alg) && c.length() <= 5,
            Err(_) => false,
        },
    )
}

/// Builds the report for `Γ_O` of `alg` (and the `Γ_Z` check on the same vertices).
pub fn export_report(
    alg: &OkuboAlgebra<FiniteField>,
    g: &OrthGraph,
    exact_limit: usize,
    seed: u64,
) -> GraphReport {
    let f = alg.field();
    let extra = extremal_sources(alg, g);
    let mut components = components_orth(alg, g, exact_limit, &extra, seed);
    for (i, c) in components.iter_mut().enumerate() {
        if let Diameter::Certified { certified, .. } = &mut c.diameter {
            *certified = certify_component(alg, g, &c.vertices, seed.wrapping_add(i as u64));
        }
    }
    let mut class_census = ClassCensus::default();
    let mut component_census = ComponentCensus::default();
    for c in &components {
        class_census.type_a += c.class_census.type_a;
        class_census.type_b += c.class_census.type_b;
        class_census.type_c += c.class_census.type_c;
        match c.kind {
            ComponentKind::Pair => component_census.pairs += 1,
            ComponentKind::Star => component_census.stars += 1,
            ComponentKind::Big => component_census.big += 1,
        }
    }
    let rule = geodesic_rule(f);
    let mut skipped = false;
    let mut failed = false;
    for c in &components {
        if c.size > exact_limit {
            skipped = true;
        } else if c.size > 1 && !geodesic_trichotomy(alg, g, &c.vertices, rule).passed() {
            failed = true;
        }
    }
    let z = zdiv_check_points(alg, g.points(), seed);
    GraphReport {
        field: f.spec_string(),
        alpha: f.format(alg.alpha()),
        beta: f.format(alg.beta()),
        vertex_count: g.len(),
        class_census,
        component_census,
        components,
        geodesic_trichotomy: if failed {
            "fail"
        } else if skipped {
            "skipped"
        } else {
            "pass"
        },
        zdiv: ZdivSummary {
            strongly_connected: z.strongly_connected && z.failures == 0,
            directed_diameter: z.directed_diameter,
            mode: z.mode,
        },
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT for one component of `Γ_O`; a star centre is drawn double.
pub fn export_dot<A: GraphAlgebra>(alg: &A, g: &OrthGraph, comp: &[u32]) -> String {
    let graph = g.graph();
    let center = (comp.len() > 2)
        .then(|| {
            comp.iter()
                .copied()
                .find(|&v| graph.degree(v) == comp.len() - 1)
        })
        .flatten()
        .filter(|&c| comp.iter().all(|&v| v == c || graph.degree(v) == 1));
    let mut out = String::from("graph orthogonality {\n");
    for &v in comp {
        let label = format!("{} [{:?}]", alg.show(g.point(v)), g.class(v));
        let extra = if Some(v) == center {
            ", shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(out, "  v{v} [label={}{extra}];", quote(&label));
    }
    for &u in comp {
        for &v in graph.neighbors(u).iter().filter(|&&v| v > u) {
            let _ = writeln!(out, "  v{u} -- v{v};");
        }
    }
    out.push_str("}\n");
    out
}

/// Directed DOT for `Γ_Z`, arc `[x] -> [y]` when `x*y = 0`.
pub fn export_zdiv_dot<A: GraphAlgebra>(alg: &A, g: &OrthGraph) -> Result<String, GraphError> {
    if g.len() > ZDIV_BFS_LIMIT {
        return Err(GraphError::TooLarge(g.len()));
    }
    let out_nb = out_neighbours(alg, g.points());
    let mut out = String::from("digraph zero_divisors {\n");
    for v in 0..g.len() as u32 {
        let label = format!("{} [{:?}]", alg.show(g.point(v)), g.class(v));
        let _ = writeln!(out, "  v{v} [label={}];", quote(&label));
    }
    for (u, nb) in out_nb.iter().enumerate() {
        for v in nb {
            let _ = writeln!(out, "  v{u} -> v{v};");
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn expect_keys<'a>(
    v: &'a Value,
    keys: &[&str],
    at: &str,
) -> Result<&'a serde_json::Map<String, Value>, String> {
    let obj = v
        .as_object()
        .ok_or_else(|| format!("{at}: expected an object"))?;
    for k in keys {
        if !obj.contains_key(*k) {
            return Err(format!("{at}: missing key {k:?}"));
        }
    }
    Ok(obj)
}

fn expect_count(v: &Value, at: &str) -> Result<u64, String> {
    v.as_u64()
        .ok_or_else(|| format!("{at}: expected a non-negative integer"))
}

/// Checks a parsed report against the report schema.
pub fn validate_report(v: &Value) -> Result<(), String> {
    let top = expect_keys(
        v,
        &[
            "field",
            "alpha",
            "beta",
            "vertex_count",
            "components",
            "geodesic_trichotomy",
            "zdiv",
        ],
        "report",
    )?;
    for k in ["field", "alpha", "beta"] {
        if !top[k].is_string() {
            return Err(format!("report.{k}: expected a string"));
        }
    }
    let n = expect_count(&top["vertex_count"], "report.vertex_count")?;
    let comps = top["components"]
        .as_array()
        .ok_or("report.components: expected an array")?;
    let mut total = 0;
    for (i, c) in comps.iter().enumerate() {
        let at = format!("report.components[{i}]");
        let obj = expect_keys(c, &["kind", "size", "diameter", "class_census"], &at)?;
        if !matches!(obj["kind"].as_str(), Some("Pair" | "Star" | "Big")) {
            return Err(format!("{at}.kind: expected Pair, Star or Big"));
        }
        let size = expect_count(&obj["size"], &format!("{at}.size"))?;
        total += size;
        match &obj["diameter"] {
            Value::Number(d) if d.is_u64() => {}
            d @ Value::Object(_) => {
                let o = expect_keys(
                    d,
                    &["lower", "upper", "certified"],
                    &format!("{at}.diameter"),
                )?;
                let lo = expect_count(&o["lower"], &format!("{at}.diameter.lower"))?;
                let hi = expect_count(&o["upper"], &format!("{at}.diameter.upper"))?;
                if lo > hi || !o["certified"].is_boolean() {
                    return Err(format!("{at}.diameter: inconsistent bounds"));
                }
            }
            _ => return Err(format!("{at}.diameter: expected an integer or bounds")),
        }
        let census = expect_keys(
            &obj["class_census"],
            &["TypeA", "TypeB", "TypeC"],
            &format!("{at}.class_census"),
        )?;
        let mut in_census = 0;
        for k in ["TypeA", "TypeB", "TypeC"] {
            in_census += expect_count(&census[k], &format!("{at}.class_census.{k}"))?;
        }
        if in_census != size {
            return Err(format!("{at}: class census does not add up to size"));
        }
    }
    if total != n {
        return Err("report: component sizes do not add up to vertex_count".into());
    }
    if !matches!(
        top["geodesic_trichotomy"].as_str(),
        Some("pass" | "fail" | "skipped")
    ) {
        return Err("report.geodesic_trichotomy: expected pass, fail or skipped".into());
    }
    let z = expect_keys(
        &top["zdiv"],
        &["strongly_connected", "directed_diameter"],
        "report.zdiv",
    )?;
    if !z["strongly_connected"].is_boolean() {
        return Err("report.zdiv.strongly_connected: expected a boolean".into());
    }
    expect_count(&z["directed_diameter"], "report.zdiv.directed_diameter")?;
    Ok(())
}
