use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::field::RationalFunctionField;

fn split(q: u64) -> OkuboAlgebra<FiniteField> {
    let f = match q {
        4 => FiniteField::new(2, 2, None).unwrap(),
        p => FiniteField::prime(p).unwrap(),
    };
    OkuboAlgebra::split(f)
}

/// Points of the hyperbolic quadric in the projective 7-space.
fn quadric_points(q: u64) -> usize {
    ((q.pow(4) - 1) * (q.pow(3) + 1) / (q - 1)) as usize
}

#[test]
fn vertex_counts_match_quadric() {
    for q in [2, 3, 4] {
        let a = split(q);
        let v = vertices_orth(&a);
        assert_eq!(v.len(), quadric_points(q), "q = {q}");
        let keys: Vec<u64> = v.iter().map(|p| point_key(q, p)).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
    assert_eq!(quadric_points(2), 135);
    assert_eq!(quadric_points(3), 1120);
}

#[test]
fn nth_point_enumerates_every_point_once() {
    let f = FiniteField::prime(3).unwrap();
    let elems = f.elements().unwrap();
    let mut keys: Vec<u64> = (0..projective_point_count(3))
        .map(|n| point_key(3, &nth_point(&elems, f.one(), n)))
        .collect();
    let total = keys.len();
    keys.sort_unstable();
    keys.dedup();
    assert_eq!(keys.len(), total);
    assert_eq!(total, 3280);
}

#[test]
fn kernel_adjacency_equals_pair_scan() {
    for q in [2, 3] {
        let a = split(q);
        let g = OrthGraph::build(&a);
        let h = OrthGraph::build_by_pair_scan(&a);
        assert_eq!(g.graph(), h.graph(), "q = {q}");
        assert!(g.graph().is_symmetric());
    }
}

#[test]
fn kernel_adjacency_sampled_over_gf4() {
    let a = split(4);
    let g = OrthGraph::build(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let idx: Vec<u32> = (0..g.len() as u32).collect();
    for &i in idx.choose_multiple(&mut rng, 500) {
        let brute: Vec<u32> = (0..g.len() as u32)
            .filter(|&j| j != i && a.orthogonal(g.point(i), g.point(j)))
            .collect();
        assert_eq!(g.neighbors(i), brute.as_slice());
    }
}

#[test]
fn gf2_components_are_pairs_and_stars() {
    let a = split(2);
    let g = OrthGraph::build(&a);
    let comps = components_orth(&a, &g, EXACT_LIMIT, &[], 0);
    assert_eq!(comps.iter().map(|c| c.size).sum::<usize>(), 135);
    for c in &comps {
        assert!(!c.flagged);
        match c.kind {
            ComponentKind::Pair => {
                assert_eq!(c.size, 2);
                assert_eq!(c.diameter, Diameter::Exact(1));
                assert_eq!(c.class_census.type_a, 2);
            }
            ComponentKind::Star => {
                assert_eq!(c.size, 7);
                assert_eq!(c.diameter, Diameter::Exact(2));
                assert_eq!(c.class_census.type_c, 1);
                assert_eq!(c.class_census.type_b, 6);
            }
            ComponentKind::Big => panic!("no large component without ω"),
        }
    }
}

#[test]
fn pair_of_z10() {
    let a = split(2);
    let nb = neighbors_orth(&a, &a.basis(Z10_IDX)).unwrap();
    assert_eq!(nb, vec![a.basis(Z20_IDX)]);
    assert_eq!(
        neighbors_orth(&a, &a.basis(Z10_IDX).map(|_| Fq(0))),
        Err(GraphError::NotAVertex)
    );
}

const Z10_IDX: usize = crate::okubo::Z10;
const Z20_IDX: usize = crate::okubo::Z20;

#[test]
fn star_centre_over_gf2() {
    let a = split(2);
    let x = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    let c = a.mul(&x, &x);
    assert_eq!(a.classify(&c).unwrap(), ZeroDivisorClass::TypeC);
    let nb = neighbors_orth(&a, &c).unwrap();
    assert_eq!(nb.len(), 6);
    assert!(nb
        .iter()
        .all(|y| a.classify(y).unwrap() == ZeroDivisorClass::TypeB));
    assert!(nb
        .iter()
        .any(|y| canonicalize(a.field(), y) == canonicalize(a.field(), &x)));
}

#[test]
fn big_component_over_gf3() {
    let a = split(3);
    let g = OrthGraph::build(&a);
    let comps = components_orth(&a, &g, EXACT_LIMIT, &[], 0);
    let big: Vec<&ComponentReport> = comps
        .iter()
        .filter(|c| c.kind == ComponentKind::Big)
        .collect();
    assert_eq!(big.len(), 1);
    assert_eq!(big[0].diameter, Diameter::Exact(5));
    assert!(comps.iter().all(|c| c.kind != ComponentKind::Star));
    let x = g
        .index_of(a.field(), &a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]))
        .unwrap();
    let y = g
        .index_of(a.field(), &a.from_ints([1, 0, 0, 0, 0, 0, 0, -1]))
        .unwrap();
    assert_eq!(g.graph().bfs(x).dist[y as usize], 5);

    let t = geodesic_trichotomy(&a, &g, &big[0].vertices, GeodesicRule::Unique);
    assert!(t.passed(), "{t:?}");
    assert_eq!(t.max_count, 1);
    assert!(t.distance_histogram[5] > 0);
}

#[test]
fn geodesic_counts_at_distance_two_are_common_neighbours() {
    let a = split(3);
    let g = OrthGraph::build(&a);
    let gr = g.graph();
    for s in (0..g.len() as u32).step_by(37) {
        let b = gr.bfs(s);
        for t in 0..g.len() as u32 {
            if b.dist[t as usize] == 2 {
                let common = gr
                    .neighbors(s)
                    .iter()
                    .filter(|v| gr.has_edge(**v, t))
                    .count() as u64;
                assert_eq!(b.count[t as usize], common);
            }
        }
    }
}

#[test]
fn certificates_for_known_pairs() {
    let a = split(4);
    let x = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    let y = a.from_ints([0, 0, 0, 1, 0, -1, 0, 0]);
    let c = certify_distance(&a, &x, &y).unwrap();
    assert!(c.is_valid(&a));
    assert_eq!(c.length(), 5);

    let a = split(3);
    let x = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    let y = a.from_ints([1, 0, 0, 0, 0, 0, 0, -1]);
    let c = certify_distance(&a, &x, &y).unwrap();
    assert!(c.is_valid(&a));
    assert_eq!(c.length(), 5);
    assert_eq!(
        certify_distance(&a, &a.basis(Z10_IDX), &y),
        Err(GraphError::BadEndpoint)
    );
}

#[test]
fn certificates_agree_with_bfs_over_gf3() {
    let a = split(3);
    let g = OrthGraph::build(&a);
    let comps = components_orth(&a, &g, EXACT_LIMIT, &[], 0);
    let big = comps.iter().find(|c| c.kind == ComponentKind::Big).unwrap();
    let (n, agree) = certificates_match_bfs(&a, &g, &big.vertices, 200, 11);
    assert_eq!(agree, n);
}

#[test]
fn certificates_agree_with_bfs_over_gf4() {
    let a = split(4);
    let g = OrthGraph::build(&a);
    let comps = components_orth(&a, &g, EXACT_LIMIT, &[], 0);
    let big = comps.iter().find(|c| c.kind == ComponentKind::Big).unwrap();
    let (n, agree) = certificates_match_bfs(&a, &g, &big.vertices, 1000, 4);
    assert_eq!((n, agree), (1000, 1000));
}

#[test]
fn certificate_over_nonsplit_rational_field() {
    let f = RationalFunctionField::new(3, "t").unwrap();
    let t = f.generator().unwrap();
    let a = OkuboAlgebra::new(f.clone(), f.one(), t).unwrap();
    let x = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    let y = a.from_ints([0, 0, 0, 1, 0, -1, 0, 0]);
    let c = certify_distance(&a, &x, &y).unwrap();
    assert!(c.is_valid(&a));
    assert_eq!(c.length(), 3);
    assert_eq!(
        c.vertices,
        vec![x.clone(), a.mul(&x, &x), a.mul(&y, &y), y.clone()]
    );
}

#[test]
fn zdiv_over_gf2_is_exhaustive_and_diameter_two() {
    let a = split(2);
    let r = zdiv_digraph_check(&a, 0);
    assert_eq!(r.mode, ZdivMode::ExhaustiveBfs);
    assert_eq!(r.pairs_checked, 135 * 134);
    assert!(r.passed(), "{r:?}");
    assert!(r.witnessed > 0);
}

#[test]
fn zdiv_witness_for_z10_z01() {
    let a = split(3);
    let (x, y) = (a.basis(Z10_IDX), a.basis(crate::okubo::Z01));
    assert!(!a.is_zero(&a.mul(&x, &y)));
    assert!(a.ann_intersection(&x, &y).unwrap().dim() >= 1);
    let z = zdiv_witness(&a, &x, &y).unwrap();
    assert!(a.is_zero(&a.mul(&x, &z)) && a.is_zero(&a.mul(&z, &y)) && !a.is_zero(&z));
}

#[test]
fn dot_exports() {
    let a = split(2);
    let g = OrthGraph::build(&a);
    let comps = components_orth(&a, &g, EXACT_LIMIT, &[], 0);
    let pair = comps
        .iter()
        .find(|c| c.kind == ComponentKind::Pair)
        .unwrap();
    let dot = export_dot(&a, &g, &pair.vertices);
    assert_eq!(dot.matches(" -- ").count(), 1);
    assert_eq!(dot.matches("[label=").count(), 2);

    let star = comps
        .iter()
        .find(|c| c.kind == ComponentKind::Star)
        .unwrap();
    let dot = export_dot(&a, &g, &star.vertices);
    assert_eq!(dot.matches("[label=").count(), 7);
    assert_eq!(dot.matches("doublecircle").count(), 1);
    assert!(dot.contains("[TypeC]\", shape=doublecircle"));

    let z = export_zdiv_dot(&a, &g).unwrap();
    assert!(z.starts_with("digraph"));
    assert_eq!(z.matches("[label=").count(), 135);
}

#[test]
fn report_round_trips_through_validator() {
    let a = split(2);
    let g = OrthGraph::build(&a);
    let r = export_report(&a, &g, EXACT_LIMIT, 0);
    assert_eq!(r.vertex_count, 135);
    assert_eq!(r.geodesic_trichotomy, "pass");
    assert!(r.zdiv.strongly_connected);
    assert_eq!(r.zdiv.directed_diameter, 2);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    validate_report(&v).unwrap();
    assert_eq!(v["field"], "2");

    let mut broken = v.clone();
    broken["vertex_count"] = 134.into();
    assert!(validate_report(&broken).is_err());
    let mut broken = v.clone();
    broken.as_object_mut().unwrap().remove("zdiv");
    assert!(validate_report(&broken).is_err());
}

#[test]
fn certified_diameter_when_over_limit() {
    let a = split(3);
    let g = OrthGraph::build(&a);
    let r = export_report(&a, &g, 100, 5);
    let big = r
        .components
        .iter()
        .find(|c| c.kind == ComponentKind::Big)
        .unwrap();
    match big.diameter {
        Diameter::Certified {
            lower,
            upper,
            certified,
        } => {
            assert_eq!(lower, 5, "extremal pair is among the sources");
            assert_eq!(upper, 5);
            assert!(certified);
        }
        Diameter::Exact(_) => panic!("expected certified bounds"),
    }
    assert_eq!(r.geodesic_trichotomy, "skipped");
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    validate_report(&v).unwrap();
}
