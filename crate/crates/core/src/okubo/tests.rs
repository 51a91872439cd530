use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::field::{FiniteField, Fq, RationalFunctionField};
use crate::linalg::span;

fn split(q: u64) -> OkuboAlgebra<FiniteField> {
    let f = match q {
        4 => FiniteField::new(2, 2, None).unwrap(),
        9 => FiniteField::new(3, 2, None).unwrap(),
        p => FiniteField::prime(p).unwrap(),
    };
    OkuboAlgebra::split(f)
}

fn spanned(a: &OkuboAlgebra<FiniteField>, idx: &[usize]) -> Subspace<Fq> {
    let vs: Vec<Vec<Fq>> = idx.iter().map(|&i| a.basis(i).to_vec()).collect();
    span(a.field(), 8, &vs)
}

fn vspan(a: &OkuboAlgebra<FiniteField>, vs: &[Vec8<Fq>]) -> Subspace<Fq> {
    let vs: Vec<Vec<Fq>> = vs.iter().map(|v| v.to_vec()).collect();
    span(a.field(), 8, &vs)
}

/// All nonzero vectors with first nonzero coordinate 1.
fn projective_points(a: &OkuboAlgebra<FiniteField>) -> Vec<Vec8<Fq>> {
    let elems = a.field().elements().unwrap();
    let q = elems.len();
    let mut out = Vec::new();
    for n in 1..q.pow(8) {
        let mut m = n;
        let v: Vec8<Fq> = std::array::from_fn(|_| {
            let d = m % q;
            m /= q;
            elems[d]
        });
        if v.iter()
            .find(|c| !a.field().is_zero(c))
            .is_some_and(|c| a.field().is_one(c))
        {
            out.push(v);
        }
    }
    out
}

#[test]
fn table_entries() {
    let a = split(5);
    assert_eq!(a.mul(&a.basis(Z10), &a.basis(Z10)), a.basis(Z20));
    assert_eq!(a.mul(&a.basis(Z10), &a.basis(Z01)), a.neg(&a.basis(Z11)));
    assert!(a.is_zero(&a.mul(&a.basis(Z10), &a.basis(Z20))));
    let x = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    assert_eq!(a.mul(&x, &x), a.from_ints([0, 0, 0, 1, 0, 1, 1, 0]));
}

#[test]
fn table_carries_parameters() {
    let f = FiniteField::prime(7).unwrap();
    let (al, be) = (f.from_i64(2), f.from_i64(3));
    let a = OkuboAlgebra::new(f.clone(), al, be).unwrap();
    assert_eq!(
        a.mul(&a.basis(Z20), &a.basis(Z20)),
        a.scale(&al, &a.basis(Z10))
    );
    assert_eq!(
        a.mul(&a.basis(Z22), &a.basis(Z22)),
        a.scale(&f.mul(&al, &be), &a.basis(Z11))
    );
    assert_eq!(
        a.mul(&a.basis(Z02), &a.basis(Z02)),
        a.scale(&be, &a.basis(Z01))
    );
    assert_eq!(
        OkuboAlgebra::new(f.clone(), f.zero(), be).unwrap_err(),
        AlgebraError::ZeroParameter
    );
}

#[test]
fn gram_pairings() {
    let f = FiniteField::prime(7).unwrap();
    let a = OkuboAlgebra::new(f.clone(), f.from_i64(2), f.from_i64(3)).unwrap();
    let g = a.gram();
    for i in 0..8 {
        assert!(f.is_zero(g.get(i, i)));
        for j in 0..8 {
            assert_eq!(g.get(i, j), g.get(j, i));
            assert_eq!(*g.get(i, j), a.bilin(&a.basis(i), &a.basis(j)));
        }
    }
    assert_eq!(*g.get(Z10, Z20), f.from_i64(2));
    assert_eq!(*g.get(Z01, Z02), f.from_i64(3));
    assert_eq!(*g.get(Z11, Z22), f.from_i64(6));
    assert_eq!(*g.get(Z12, Z21), f.from_i64(6));
    assert!(f.is_zero(g.get(Z10, Z01)));
}

#[test]
fn bilin_and_norm_examples() {
    let a = split(5);
    let f = a.field();
    let x = a.from_ints([0, 0, 0, 1, 0, 1, 1, 0]);
    let y = a.from_ints([0, 0, 1, 0, 1, 0, 0, 1]);
    assert_eq!(a.bilin(&x, &y), f.from_i64(3));
    let a3 = split(3);
    let x3 = a3.from_ints([0, 0, 0, 1, 0, 1, 1, 0]);
    let y3 = a3.from_ints([0, 0, 1, 0, 1, 0, 0, 1]);
    assert!(a3.field().is_zero(&a3.bilin(&x3, &y3)));
    assert!(f.is_zero(&a.qnorm(&a.basis(Z10))));
    assert_eq!(a.qnorm(&a.from_ints([1, 1, 0, 0, 0, 0, 0, 0])), f.one());
    assert!(f.is_zero(&a.qnorm(&a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]))));
    assert!(a.is_zero_divisor(&a.basis(Z10)));
    assert!(!a.is_zero_divisor(&a.from_ints([1, 1, 0, 0, 0, 0, 0, 0])));
    assert!(!a.is_zero_divisor(&a.zero()));
}

#[test]
fn perp_examples() {
    let a = split(5);
    let p = a.perp(&a.basis(Z10));
    assert_eq!(p, spanned(&a, &[Z10, Z01, Z02, Z11, Z22, Z12, Z21]));
    assert_eq!(a.perp(&a.zero()).dim(), 8);
    assert!(!spanned(&a, &[Z10]).contains(a.field(), &a.basis(Z20)));
}

#[test]
fn annihilator_examples() {
    let a = split(5);
    let z10 = a.basis(Z10);
    assert_eq!(
        a.left_ann(&z10).unwrap(),
        spanned(&a, &[Z20, Z01, Z11, Z21])
    );
    assert_eq!(
        a.right_ann(&z10).unwrap(),
        spanned(&a, &[Z20, Z02, Z22, Z12])
    );
    assert_eq!(a.orthogonalizer(&z10).unwrap(), spanned(&a, &[Z20]));
    assert_eq!(
        a.left_ann(&a.from_ints([1, 1, 0, 0, 0, 0, 0, 0]))
            .unwrap_err(),
        AlgebraError::NotZeroDivisor
    );
    let x = a.from_ints([0, 0, 0, 1, 0, 1, 1, 0]);
    let b1 = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
    let b2 = a.from_ints([0, 0, 1, 0, 0, 0, 0, -1]);
    assert_eq!(a.orthogonalizer(&x).unwrap(), vspan(&a, &[x, b1, b2]));
}

#[test]
fn ann_intersection_examples() {
    let a = split(5);
    let (z10, z01, z20) = (a.basis(Z10), a.basis(Z01), a.basis(Z20));
    assert_eq!(a.ann_intersection(&z10, &z01).unwrap(), spanned(&a, &[Z11]));
    assert_eq!(a.ann_intersection(&z10, &z10).unwrap(), spanned(&a, &[Z20]));
    assert_eq!(a.ann_intersection(&z10, &z20).unwrap().dim(), 3);
}

#[test]
fn classification_examples() {
    let a = split(5);
    assert_eq!(a.classify(&a.basis(Z10)).unwrap(), ZeroDivisorClass::TypeA);
    assert_eq!(
        a.classify(&a.from_ints([0, 0, 1, 0, -1, 0, 0, 0])).unwrap(),
        ZeroDivisorClass::TypeB
    );
    assert_eq!(
        a.classify(&a.from_ints([0, 0, 0, 1, 0, 1, 1, 0])).unwrap(),
        ZeroDivisorClass::TypeC
    );
    assert_eq!(
        a.classify(&a.from_ints([1, 1, 0, 0, 0, 0, 0, 0]))
            .unwrap_err(),
        AlgebraError::NotZeroDivisor
    );
}

#[test]
fn idempotent_examples() {
    let a = split(3);
    let e = a.quaternionic_idempotent().unwrap();
    assert_eq!(e, a.from_ints([1; 8]));
    assert!(a.is_idempotent(&e));
    assert!(a.is_idempotent(&a.from_ints([1, 1, 0, 0, 0, 0, 0, 0])));
    assert!(!a.is_idempotent(&a.basis(Z10)));
    assert_eq!(
        split(5).quaternionic_idempotent().unwrap_err(),
        AlgebraError::NotChar3
    );
    let c = a.centralizer(&e).unwrap();
    assert_eq!(c.dim(), 6);
    assert!(c.contains(a.field(), &e));
    let s = a.from_ints([0, 0, -1, 1, -1, 1, 1, -1]);
    assert!(c.contains(a.field(), &s));
    assert!(c.basis().iter().all(|b| a
        .field()
        .is_zero(&a.bilin(&s, &std::array::from_fn(|i| b[i])))));
    assert_eq!(
        a.centralizer(&a.basis(Z10)).unwrap_err(),
        AlgebraError::NotIdempotent
    );
}

#[test]
fn non_split_char3_has_no_quaternionic_idempotent() {
    let f = RationalFunctionField::new(3, "t").unwrap();
    let t = f.generator().unwrap();
    let a = OkuboAlgebra::new(f.clone(), f.one(), t).unwrap();
    assert!(!a.is_split());
    assert_eq!(
        a.quaternionic_idempotent().unwrap_err(),
        AlgebraError::NotSplit
    );
}

#[test]
fn quaternionic_idempotent_for_cube_parameters() {
    let f = FiniteField::prime(7).unwrap();
    let a = OkuboAlgebra::new(f.clone(), f.from_i64(6), f.from_i64(6)).unwrap();
    assert!(a.is_split());
    let g = a.graded_idempotent().unwrap();
    assert!(a.is_idempotent(&g));
    let f9 = FiniteField::new(3, 2, None).unwrap();
    let t = f9.generator().unwrap();
    let a9 = OkuboAlgebra::new(f9.clone(), t, f9.mul(&t, &t)).unwrap();
    let e = a9.quaternionic_idempotent().unwrap();
    assert!(a9.is_idempotent(&e));
    assert_eq!(a9.centralizer(&e).unwrap().dim(), 6);
}

#[test]
fn char3_subclass_examples() {
    let a = split(3);
    let singular = a.from_ints([0, 0, -1, 1, -1, 1, 1, -1]);
    let quadratic = a.from_ints([0, 0, 0, 1, 0, 1, 1, 0]);
    assert_eq!(
        a.char3_subclass(&singular).unwrap(),
        Char3Subclass::SingularType
    );
    assert_eq!(
        a.char3_subclass(&quadratic).unwrap(),
        Char3Subclass::QuadraticType
    );
    assert_eq!(
        a.char3_subclass(&a.basis(Z10)).unwrap_err(),
        AlgebraError::NotTypeC
    );
    assert_eq!(
        split(7).char3_subclass(&split(7).basis(Z10)).unwrap_err(),
        AlgebraError::NotChar3
    );
}

/// A permutation of the basis that is an automorphism of the split algebra in
/// characteristic 3, mapping one singular-type element to another.
#[test]
#[allow(clippy::needless_range_loop)]
fn explicit_automorphism_respects_all_products() {
    let a = split(3);
    let image = [Z21, Z12, Z11, Z22, Z02, Z01, Z10, Z20];
    let phi = |x: &Vec8<Fq>| -> Vec8<Fq> {
        let mut out = a.zero();
        for k in 0..8 {
            out[image[k]] = x[k];
        }
        out
    };
    for i in 0..8 {
        for j in 0..8 {
            let (x, y) = (a.basis(i), a.basis(j));
            assert_eq!(
                phi(&a.mul(&x, &y)),
                a.mul(&phi(&x), &phi(&y)),
                "{} * {}",
                BASIS_NAMES[i],
                BASIS_NAMES[j]
            );
        }
    }
    let x = a.from_ints([0, 0, -1, 1, -1, 1, 1, -1]);
    let y = a.from_ints([1, -1, 1, -1, -1, 1, 0, 0]);
    assert_eq!(phi(&x), y);
    assert!(a.is_zero(&a.mul(&y, &y)));
    assert!(a.orthogonal(&x, &y));
    assert_eq!(a.char3_subclass(&y).unwrap(), Char3Subclass::SingularType);
}

#[test]
fn identity_suite_passes_over_finite_and_rational_fields() {
    for q in [2, 3, 4, 5, 7] {
        let r = split(q).identity_suite(300, 1);
        assert!(r.passed(), "GF({q}): {:?}", r.counterexample);
    }
    let f = RationalFunctionField::new(3, "t").unwrap();
    let t = f.generator().unwrap();
    let a = OkuboAlgebra::new(f.clone(), f.one(), t).unwrap();
    let r = a.identity_suite(200, 2);
    assert!(r.passed(), "{:?}", r.counterexample);
}

#[test]
fn identity_suite_finds_corrupted_table() {
    let a = split(4);
    let one = a.field().one();
    let bad = a.with_patched_product(Z10, Z10, Some((Z10, one)));
    let r = bad.identity_suite(1000, 3);
    let cex = r.counterexample.expect("corruption must be detected");
    assert_eq!(cex.inputs.len(), 3);
    assert!(IDENTITY_NAMES.contains(&cex.identity));
}

#[test]
fn exhaustive_annihilator_structure_small_fields() {
    for q in [2, 3] {
        let a = split(q);
        let f = a.field();
        for x in projective_points(&a)
            .iter()
            .filter(|x| a.is_zero_divisor(x))
        {
            let l = a.left_ann(x).unwrap();
            let r = a.right_ann(x).unwrap();
            assert_eq!((l.dim(), r.dim()), (4, 4));
            assert_eq!(l, a.left_image(x));
            assert_eq!(r, a.right_image(x));
            let o = a.orthogonalizer(x).unwrap();
            assert_eq!(o, linalg::intersect(f, &l, &r).unwrap());
            let xx = a.mul(x, x);
            if a.is_zero(&xx) {
                assert_eq!(o.dim(), 3);
            } else {
                assert_eq!(o, vspan(&a, &[xx]));
            }
        }
    }
}

#[test]
fn zero_square_products_of_orthogonal_pairs_square_to_zero() {
    for q in [2, 3] {
        let a = split(q);
        let c: Vec<Vec8<Fq>> = projective_points(&a)
            .into_iter()
            .filter(|x| a.is_zero_divisor(x) && a.is_zero(&a.mul(x, x)))
            .collect();
        for x in &c {
            for y in c.iter().filter(|y| a.field().is_zero(&a.bilin(x, y))) {
                let xy = a.mul(x, y);
                let yx = a.mul(y, x);
                assert!(a.is_zero(&a.mul(&xy, &xy)));
                assert!(a.is_zero(&a.mul(&yx, &yx)));
            }
        }
    }
}

/// Zero-square elements of `O(x)` for `x = z02 + z12 + z22` are
/// `γa + δb` (projectively, with `x` added) where `γ² + γδ + δ² = 0`.
#[test]
fn zero_square_lines_in_orthogonalizer() {
    for (q, expected) in [(2, 0), (3, 1), (4, 2), (5, 0), (7, 2)] {
        let a = split(q);
        let f = a.field();
        let x = a.from_ints([0, 0, 0, 1, 0, 1, 1, 0]);
        let b1 = a.from_ints([0, 0, 1, 0, -1, 0, 0, 0]);
        let b2 = a.from_ints([0, 0, 1, 0, 0, 0, 0, -1]);
        let elems = f.elements().unwrap();
        let mut lines = 0;
        // projective (γ : δ): (1 : δ) and (0 : 1)
        let mut params: Vec<(Fq, Fq)> = elems.iter().map(|d| (f.one(), *d)).collect();
        params.push((f.zero(), f.one()));
        for (g, d) in params {
            let y = a.add(&a.scale(&g, &b1), &a.scale(&d, &b2));
            let sq = a.mul(&y, &y);
            // y*y is always a multiple of x; the coefficient vanishes exactly on the quadric
            assert!(vspan(&a, &[sq, x]).dim() <= 1);
            let quad = f.add(&f.add(&f.mul(&g, &g), &f.mul(&g, &d)), &f.mul(&d, &d));
            assert_eq!(a.is_zero(&sq), f.is_zero(&quad));
            if a.is_zero(&sq) {
                lines += 1;
            }
        }
        assert_eq!(lines, expected, "GF({q})");
    }
}

#[test]
fn element_formatting() {
    let a = split(3);
    assert_eq!(
        a.format_element(&a.from_ints([0, 0, 1, 0, -1, 0, 0, 0])),
        "z01 - z11"
    );
    assert_eq!(a.format_element(&a.zero()), "0");
    assert_eq!(
        a.format_element(&a.from_ints([-1, 0, 0, 0, 0, 0, 0, 1])),
        "-z10 + z21"
    );
    assert_eq!(
        a.format_vector(&a.from_ints([0, 0, 0, 1, 0, 1, 1, 0])),
        "{0, 0, 0, 1, 0, 1, 1, 0}"
    );
    let a4 = split(4);
    let t = a4.field().generator().unwrap();
    assert_eq!(a4.format_element(&a4.scale(&t, &a4.basis(Z12))), "t*z12");
    assert_eq!(
        a4.format_element(&a4.scale(&a4.field().add(&t, &a4.field().one()), &a4.basis(Z12))),
        "(t+1)*z12"
    );
}

fn zero_divisor_strategy(q: u64) -> impl Strategy<Value = u64> {
    any::<u64>().prop_map(move |s| s.wrapping_add(q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_annihilator_dimensions(seed in zero_divisor_strategy(0), q in prop::sample::select(vec![4u64, 5, 7])) {
        let a = split(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let x = a.random_zero_divisor(&mut rng);
            let l = a.left_ann(&x).unwrap();
            let r = a.right_ann(&x).unwrap();
            prop_assert_eq!(l.dim(), 4);
            prop_assert_eq!(r.dim(), 4);
            prop_assert_eq!(&l, &a.left_image(&x));
            prop_assert_eq!(&r, &a.right_image(&x));
            let o = a.orthogonalizer(&x).unwrap();
            prop_assert!(o.dim() == 1 || o.dim() == 3);
            prop_assert_eq!(o, linalg::intersect(a.field(), &l, &r).unwrap());
        }
    }

    #[test]
    fn classification_is_scale_invariant(seed in any::<u64>(), q in prop::sample::select(vec![3u64, 4, 5, 7])) {
        let a = split(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = a.random_zero_divisor(&mut rng);
        let c = a.field().random_nonzero(&mut rng);
        prop_assert_eq!(a.classify(&x).unwrap(), a.classify(&a.scale(&c, &x)).unwrap());
    }

    #[test]
    fn intersection_of_images_is_spanned_by_product(seed in any::<u64>(), q in prop::sample::select(vec![3u64, 4, 5])) {
        let a = split(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = a.random_zero_divisor(&mut rng);
        let y = a.random_zero_divisor(&mut rng);
        let s = a.ann_intersection(&x, &y).unwrap();
        let xy = a.mul(&x, &y);
        if a.is_zero(&xy) {
            prop_assert_eq!(s.dim(), 3);
        } else {
            prop_assert_eq!(s, vspan(&a, &[xy]));
        }
    }

    #[test]
    fn perp_is_a_hyperplane(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
        let f = if q == 4 { FiniteField::new(2, 2, None).unwrap() } else { FiniteField::prime(q).unwrap() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = OkuboAlgebra::new(f.clone(), f.random_nonzero(&mut rng), f.random_nonzero(&mut rng)).unwrap();
        let x = a.random_element(&mut rng);
        prop_assume!(!a.is_zero(&x));
        prop_assert_eq!(a.perp(&x).dim(), 7);
    }

    #[test]
    fn middle_element_squares_to_zero(seed in any::<u64>(), q in prop::sample::select(vec![4u64, 5, 7])) {
        let a = split(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| loop {
            let x = a.random_zero_divisor(rng);
            if a.is_zero(&a.mul(&x, &x)) {
                return x;
            }
        };
        let x = pick(&mut rng);
        let y = loop {
            let y = pick(&mut rng);
            if a.field().is_zero(&a.bilin(&x, &y)) {
                break y;
            }
        };
        let xy = a.mul(&x, &y);
        let yx = a.mul(&y, &x);
        prop_assert!(a.is_zero(&a.mul(&xy, &xy)));
        prop_assert!(a.is_zero(&a.mul(&yx, &yx)));
    }
}
