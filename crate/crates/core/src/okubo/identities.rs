use std::fmt::Debug;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::OkuboAlgebra;
use crate::field::Field;
use crate::linalg::Vec8;

/// A symmetric composition algebra presented concretely enough to test its
/// defining identities on random elements.
pub trait SymmetricComposition {
    type F: Field;
    type V: Clone + PartialEq + Debug;

    fn scalars(&self) -> &Self::F;
    fn product(&self, x: &Self::V, y: &Self::V) -> Self::V;
    fn plus(&self, x: &Self::V, y: &Self::V) -> Self::V;
    fn minus(&self, x: &Self::V, y: &Self::V) -> Self::V;
    fn times(&self, c: &<Self::F as Field>::Elem, x: &Self::V) -> Self::V;
    fn norm(&self, x: &Self::V) -> <Self::F as Field>::Elem;
    fn polar(&self, x: &Self::V, y: &Self::V) -> <Self::F as Field>::Elem;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::V;
    fn show(&self, x: &Self::V) -> String;
}

/// First failing identity together with its inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub identity: &'static str,
    pub inputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub trials: usize,
    pub identities: Vec<&'static str>,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub const IDENTITY_NAMES: [&str; 6] = [
    "polarization",
    "composition",
    "associativity-of-form",
    "flexible-norm",
    "linearized-flexible",
    "fourth-power",
];

/// Checks, on `trials` random triples: `n(x+y) - n(x) - n(y) = n(x,y)`,
/// `n(x*y) = n(x)n(y)`, `n(x*y, z) = n(x, y*z)`, `(x*y)*x = x*(y*x) = n(x)y`,
/// `(x*y)*z + (z*y)*x = x*(y*z) + z*(y*x) = n(x,z)y` and
/// `(x*x)*(x*x) = n(x, x*x)x - n(x)x*x`.
pub fn check_identities<A: SymmetricComposition>(
    alg: &A,
    trials: usize,
    seed: u64,
) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport {
        trials,
        identities: IDENTITY_NAMES.to_vec(),
        counterexample: None,
    };
    for _ in 0..trials {
        let x = alg.sample(&mut rng);
        let y = alg.sample(&mut rng);
        let z = alg.sample(&mut rng);
        if let Some(name) = first_failure(alg, &x, &y, &z) {
            report.counterexample = Some(Counterexample {
                identity: name,
                inputs: vec![alg.show(&x), alg.show(&y), alg.show(&z)],
            });
            break;
        }
    }
    report
}

fn first_failure<A: SymmetricComposition>(
    alg: &A,
    x: &A::V,
    y: &A::V,
    z: &A::V,
) -> Option<&'static str> {
    let f = alg.scalars();
    let m = |a: &A::V, b: &A::V| alg.product(a, b);

    let lhs = f.sub(
        &f.sub(&alg.norm(&alg.plus(x, y)), &alg.norm(x)),
        &alg.norm(y),
    );
    if lhs != alg.polar(x, y) {
        return Some(IDENTITY_NAMES[0]);
    }
    let xy = m(x, y);
    if alg.norm(&xy) != f.mul(&alg.norm(x), &alg.norm(y)) {
        return Some(IDENTITY_NAMES[1]);
    }
    if alg.polar(&xy, z) != alg.polar(x, &m(y, z)) {
        return Some(IDENTITY_NAMES[2]);
    }
    let nxy = alg.times(&alg.norm(x), y);
    if m(&xy, x) != nxy || m(x, &m(y, x)) != nxy {
        return Some(IDENTITY_NAMES[3]);
    }
    let nxz = alg.times(&alg.polar(x, z), y);
    let left = alg.plus(&m(&xy, z), &m(&m(z, y), x));
    let right = alg.plus(&m(x, &m(y, z)), &m(z, &m(y, x)));
    if left != nxz || right != nxz {
        return Some(IDENTITY_NAMES[4]);
    }
    let xx = m(x, x);
    let expected = alg.minus(
        &alg.times(&alg.polar(x, &xx), x),
        &alg.times(&alg.norm(x), &xx),
    );
    if m(&xx, &xx) != expected {
        return Some(IDENTITY_NAMES[5]);
    }
    None
}

impl<F: Field> SymmetricComposition for OkuboAlgebra<F> {
    type F = F;
    type V = Vec8<F::Elem>;

    fn scalars(&self) -> &F {
        self.field()
    }

    fn product(&self, x: &Self::V, y: &Self::V) -> Self::V {
        self.mul(x, y)
    }

    fn plus(&self, x: &Self::V, y: &Self::V) -> Self::V {
        self.add(x, y)
    }

    fn minus(&self, x: &Self::V, y: &Self::V) -> Self::V {
        self.sub(x, y)
    }

    fn times(&self, c: &F::Elem, x: &Self::V) -> Self::V {
        self.scale(c, x)
    }

    fn norm(&self, x: &Self::V) -> F::Elem {
        self.qnorm(x)
    }

    fn polar(&self, x: &Self::V, y: &Self::V) -> F::Elem {
        self.bilin(x, y)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::V {
        self.random_element(rng)
    }

    fn show(&self, x: &Self::V) -> String {
        self.format_element(x)
    }
}

impl<F: Field> OkuboAlgebra<F> {
    pub fn identity_suite(&self, trials: usize, seed: u64) -> IdentityReport {
        check_identities(self, trials, seed)
    }
}
