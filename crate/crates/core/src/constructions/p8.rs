//! Pseudo-octonions: traceless 3×3 matrices with the product
//! `x*y = μxy + (1−μ)yx − tr(xy)/3·I`, `μ = (1−ω²)/3`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ConstructionError;
use crate::field::{Field, FieldError, FiniteField, Fq};
use crate::linalg::Vec8;
use crate::okubo::SymmetricComposition;

pub type M3<E> = [[E; 3]; 3];

/// A 3×3 matrix of trace zero. Coordinates are the eight entries other than
/// `(3,3)`, row by row; `m33 = −m11 − m22`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TracelessMatrix<E> {
    m: M3<E>,
}

impl<E: Clone + Eq> TracelessMatrix<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, m: M3<E>) -> Result<Self, ConstructionError> {
        if !f.is_zero(&trace(f, &m)) {
            return Err(ConstructionError::NotTraceless);
        }
        Ok(Self { m })
    }

    pub fn from_coords<F: Field<Elem = E>>(f: &F, c: &Vec8<E>) -> Self {
        let m33 = f.neg(&f.add(&c[0], &c[4]));
        let m = [
            [c[0].clone(), c[1].clone(), c[2].clone()],
            [c[3].clone(), c[4].clone(), c[5].clone()],
            [c[6].clone(), c[7].clone(), m33],
        ];
        Self { m }
    }

    pub fn coords(&self) -> Vec8<E> {
        let m = &self.m;
        [
            m[0][0].clone(),
            m[0][1].clone(),
            m[0][2].clone(),
            m[1][0].clone(),
            m[1][1].clone(),
            m[1][2].clone(),
            m[2][0].clone(),
            m[2][1].clone(),
        ]
    }

    pub fn entries(&self) -> &M3<E> {
        &self.m
    }

    /// The matrix unit `E_ij` (`i != j`), zero-based.
    pub fn unit<F: Field<Elem = E>>(f: &F, i: usize, j: usize) -> Self {
        assert_ne!(i, j, "diagonal units are not traceless");
        let mut m = zero_m3(f);
        m[i][j] = f.one();
        Self { m }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F) -> Self {
        Self { m: zero_m3(f) }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.m.iter().flatten().all(|c| f.is_zero(c))
    }
}

fn zero_m3<F: Field>(f: &F) -> M3<F::Elem> {
    std::array::from_fn(|_| std::array::from_fn(|_| f.zero()))
}

pub fn identity_m3<F: Field>(f: &F) -> M3<F::Elem> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { f.one() } else { f.zero() }))
}

pub fn mat_mul<F: Field>(f: &F, a: &M3<F::Elem>, b: &M3<F::Elem>) -> M3<F::Elem> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j])))
        })
    })
}

pub fn mat_lin<F: Field>(
    f: &F,
    s: &F::Elem,
    a: &M3<F::Elem>,
    t: &F::Elem,
    b: &M3<F::Elem>,
) -> M3<F::Elem> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| f.add(&f.mul(s, &a[i][j]), &f.mul(t, &b[i][j])))
    })
}

pub fn trace<F: Field>(f: &F, a: &M3<F::Elem>) -> F::Elem {
    f.add(&f.add(&a[0][0], &a[1][1]), &a[2][2])
}

pub fn det<F: Field>(f: &F, a: &M3<F::Elem>) -> F::Elem {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        f.sub(
            &f.mul(&a[r1][c1], &a[r2][c2]),
            &f.mul(&a[r1][c2], &a[r2][c1]),
        )
    };
    let t0 = f.mul(&a[0][0], &minor(1, 2, 1, 2));
    let t1 = f.mul(&a[0][1], &minor(1, 2, 0, 2));
    let t2 = f.mul(&a[0][2], &minor(1, 2, 0, 1));
    f.add(&f.sub(&t0, &t1), &t2)
}

/// Sum of the principal 2×2 minors: the `λ` coefficient of the characteristic
/// polynomial `λ³ − tr·λ² + s·λ − det`.
pub fn minor_sum<F: Field>(f: &F, a: &M3<F::Elem>) -> F::Elem {
    let m = |i: usize, j: usize| f.sub(&f.mul(&a[i][i], &a[j][j]), &f.mul(&a[i][j], &a[j][i]));
    f.add(&f.add(&m(0, 1), &m(0, 2)), &m(1, 2))
}

fn inv3<F: Field>(f: &F) -> Result<F::Elem, ConstructionError> {
    f.inv(&f.from_i64(3)).map_err(|_| ConstructionError::Char3)
}

/// `n(x) = −s(x)/3`; meaningful in characteristic 2 as well.
pub fn p8_norm<F: Field>(
    f: &F,
    x: &TracelessMatrix<F::Elem>,
) -> Result<F::Elem, ConstructionError> {
    Ok(f.neg(&f.mul(&minor_sum(f, &x.m), &inv3(f)?)))
}

/// `n(x, y) = tr(xy)/3`.
pub fn p8_bilin<F: Field>(
    f: &F,
    x: &TracelessMatrix<F::Elem>,
    y: &TracelessMatrix<F::Elem>,
) -> Result<F::Elem, ConstructionError> {
    Ok(f.mul(&trace(f, &mat_mul(f, &x.m, &y.m)), &inv3(f)?))
}

/// The two kinds of nonzero norm-zero traceless matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum P8ZeroDivisorKind {
    /// `det = 0`, hence `x³ = 0`.
    Nilpotent,
    /// `det != 0`; `x³ = det(x)·I` and `x` is conjugate to a multiple of `diag(1, ω, ω²)`.
    OmegaType,
}

pub fn p8_classify_zero_divisor<F: Field>(
    f: &F,
    x: &TracelessMatrix<F::Elem>,
) -> Result<P8ZeroDivisorKind, ConstructionError> {
    if x.is_zero(f) || !f.is_zero(&p8_norm(f, x)?) {
        return Err(ConstructionError::NotZeroDivisor);
    }
    Ok(if f.is_zero(&det(f, &x.m)) {
        P8ZeroDivisorKind::Nilpotent
    } else {
        P8ZeroDivisorKind::OmegaType
    })
}

pub fn cube<F: Field>(f: &F, a: &M3<F::Elem>) -> M3<F::Elem> {
    mat_mul(f, &mat_mul(f, a, a), a)
}

/// Traceless matrix with coordinate vector number `n` in base-`q` digits,
/// least significant digit first.
pub fn traceless_from_index(f: &FiniteField, elems: &[Fq], n: u64) -> TracelessMatrix<Fq> {
    let q = elems.len() as u64;
    let mut m = n;
    let c: Vec8<Fq> = std::array::from_fn(|_| {
        let d = (m % q) as usize;
        m /= q;
        elems[d]
    });
    TracelessMatrix::from_coords(f, &c)
}

/// All traceless `x` with `x³ = 0`, zero included, in index order.
pub fn nilpotents(f: &FiniteField) -> Vec<TracelessMatrix<Fq>> {
    let elems = f.elements().expect("finite");
    let total = (elems.len() as u64).pow(8);
    let zero = zero_m3(f);
    (0..total)
        .into_par_iter()
        .filter_map(|n| {
            let x = traceless_from_index(f, &elems, n);
            (cube(f, &x.m) == zero).then_some(x)
        })
        .collect()
}

/// Pseudo-octonion product context; needs `char != 3` and a primitive cube root of 1.
#[derive(Debug, Clone)]
pub struct P8Model<F: Field> {
    field: F,
    omega: F::Elem,
    mu: F::Elem,
    inv3: F::Elem,
}

impl<F: Field> P8Model<F> {
    pub fn new(field: F) -> Result<Self, ConstructionError> {
        let inv3 = inv3(&field)?;
        let omega = field.omega().ok_or(ConstructionError::NoCubeRoot)?;
        let w2 = field.mul(&omega, &omega);
        let mu = field.mul(&field.sub(&field.one(), &w2), &inv3);
        Ok(Self {
            field,
            omega,
            mu,
            inv3,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn omega(&self) -> &F::Elem {
        &self.omega
    }

    /// `diag(1, ω, ω²)`.
    pub fn omega_matrix(&self) -> TracelessMatrix<F::Elem> {
        let f = &self.field;
        let mut m = zero_m3(f);
        m[0][0] = f.one();
        m[1][1] = self.omega.clone();
        m[2][2] = f.mul(&self.omega, &self.omega);
        TracelessMatrix { m }
    }

    pub fn mul(
        &self,
        x: &TracelessMatrix<F::Elem>,
        y: &TracelessMatrix<F::Elem>,
    ) -> TracelessMatrix<F::Elem> {
        let f = &self.field;
        let xy = mat_mul(f, &x.m, &y.m);
        let yx = mat_mul(f, &y.m, &x.m);
        let one_minus_mu = f.sub(&f.one(), &self.mu);
        let mut m = mat_lin(f, &self.mu, &xy, &one_minus_mu, &yx);
        let shift = f.mul(&trace(f, &xy), &self.inv3);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f.sub(&row[i], &shift);
        }
        TracelessMatrix { m }
    }

    pub fn norm(&self, x: &TracelessMatrix<F::Elem>) -> F::Elem {
        let f = &self.field;
        f.neg(&f.mul(&minor_sum(f, &x.m), &self.inv3))
    }

    pub fn bilin(&self, x: &TracelessMatrix<F::Elem>, y: &TracelessMatrix<F::Elem>) -> F::Elem {
        let f = &self.field;
        f.mul(&trace(f, &mat_mul(f, &x.m, &y.m)), &self.inv3)
    }

    /// `(xy = yx = 0, x*y = y*x = 0)`.
    pub fn orth_equiv_check(
        &self,
        x: &TracelessMatrix<F::Elem>,
        y: &TracelessMatrix<F::Elem>,
    ) -> (bool, bool) {
        let f = &self.field;
        let zero = zero_m3(f);
        let assoc = mat_mul(f, &x.m, &y.m) == zero && mat_mul(f, &y.m, &x.m) == zero;
        let star = self.mul(x, y).is_zero(f) && self.mul(y, x).is_zero(f);
        (assoc, star)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> TracelessMatrix<F::Elem> {
        let c: Vec8<F::Elem> = std::array::from_fn(|_| self.field.random(rng));
        TracelessMatrix::from_coords(&self.field, &c)
    }
}

impl<F: Field> SymmetricComposition for P8Model<F> {
    type F = F;
    type V = TracelessMatrix<F::Elem>;

    fn scalars(&self) -> &F {
        &self.field
    }

    fn product(&self, x: &Self::V, y: &Self::V) -> Self::V {
        self.mul(x, y)
    }

    fn plus(&self, x: &Self::V, y: &Self::V) -> Self::V {
        let one = self.field.one();
        TracelessMatrix {
            m: mat_lin(&self.field, &one, &x.m, &one, &y.m),
        }
    }

    fn minus(&self, x: &Self::V, y: &Self::V) -> Self::V {
        let one = self.field.one();
        TracelessMatrix {
            m: mat_lin(&self.field, &one, &x.m, &self.field.neg(&one), &y.m),
        }
    }

    fn times(&self, c: &F::Elem, x: &Self::V) -> Self::V {
        TracelessMatrix {
            m: mat_lin(&self.field, c, &x.m, &self.field.zero(), &x.m),
        }
    }

    fn norm(&self, x: &Self::V) -> F::Elem {
        P8Model::norm(self, x)
    }

    fn polar(&self, x: &Self::V, y: &Self::V) -> F::Elem {
        self.bilin(x, y)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::V {
        self.random(rng)
    }

    fn show(&self, x: &Self::V) -> String {
        let rows: Vec<String> =
            x.m.iter()
                .map(|r| {
                    r.iter()
                        .map(|c| self.field.format(c))
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect();
        format!("[[{}]]", rows.join("], ["))
    }
}

impl From<FieldError> for ConstructionError {
    fn from(e: FieldError) -> Self {
        ConstructionError::Field(e)
    }
}
