//! The Okubo algebra `O_{α,β}` with isotropic norm: multiplication table,
//! norm and polar form, zero-divisor structure and idempotents.

mod idempotents;
mod identities;

use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linalg::{self, Matrix, Subspace, Vec8};

pub use idempotents::Char3Subclass;
pub use identities::{
    check_identities, Counterexample, IdentityReport, SymmetricComposition, IDENTITY_NAMES,
};

/// Basis names in coordinate order.
pub const BASIS_NAMES: [&str; 8] = ["z10", "z20", "z01", "z02", "z11", "z22", "z12", "z21"];

/// Grading `(i, j)` of each basis vector.
pub const BASIS_GRADES: [(u8, u8); 8] = [
    (1, 0),
    (2, 0),
    (0, 1),
    (0, 2),
    (1, 1),
    (2, 2),
    (1, 2),
    (2, 1),
];

pub const Z10: usize = 0;
pub const Z20: usize = 1;
pub const Z01: usize = 2;
pub const Z02: usize = 3;
pub const Z11: usize = 4;
pub const Z22: usize = 5;
pub const Z12: usize = 6;
pub const Z21: usize = 7;

/// One product of basis vectors: `sign * α^a * β^b * z_target`.
#[derive(Clone, Copy)]
struct Term {
    target: usize,
    sign: i8,
    alpha: u8,
    beta: u8,
}

const fn t(target: usize, sign: i8, alpha: u8, beta: u8) -> Option<Term> {
    Some(Term {
        target,
        sign,
        alpha,
        beta,
    })
}

/// Row = left factor, column = right factor, both in basis order.
#[rustfmt::skip]
const TABLE: [[Option<Term>; 8]; 8] = [
    [t(Z20, 1, 0, 0), None, t(Z11, -1, 0, 0), None, t(Z21, -1, 0, 0), None, None, t(Z01, -1, 1, 0)],
    [None, t(Z10, 1, 1, 0), None, t(Z22, -1, 0, 0), None, t(Z12, -1, 1, 0), t(Z02, -1, 1, 0), None],
    [None, t(Z21, -1, 0, 0), t(Z02, 1, 0, 0), None, None, t(Z20, -1, 0, 1), None, t(Z22, -1, 0, 0)],
    [t(Z12, -1, 0, 0), None, None, t(Z01, 1, 0, 1), t(Z10, -1, 0, 1), None, t(Z11, -1, 0, 1), None],
    [None, t(Z01, -1, 1, 0), t(Z12, -1, 0, 0), None, t(Z22, 1, 0, 0), None, t(Z20, -1, 0, 1), None],
    [t(Z02, -1, 1, 0), None, None, t(Z21, -1, 0, 1), None, t(Z11, 1, 1, 1), None, t(Z10, -1, 1, 1)],
    [t(Z22, -1, 0, 0), None, t(Z10, -1, 0, 1), None, None, t(Z01, -1, 1, 1), t(Z21, 1, 0, 1), None],
    [None, t(Z11, -1, 1, 0), None, t(Z20, -1, 0, 1), t(Z02, -1, 1, 0), None, None, t(Z12, 1, 1, 0)],
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("alpha and beta must be nonzero")]
    ZeroParameter,
    #[error("element is not a zero divisor")]
    NotZeroDivisor,
    #[error("element is not a nonzero idempotent")]
    NotIdempotent,
    #[error("the field does not have characteristic 3")]
    NotChar3,
    #[error("the algebra is not split")]
    NotSplit,
    #[error("element does not square to zero")]
    NotTypeC,
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("zero-square element outside the centralizer of the quaternionic idempotent")]
    NotInCentralizer,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Kind of a zero divisor `x`, by the behaviour of `x*x`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum ZeroDivisorClass {
    /// `n(x, x*x) != 0`
    TypeA,
    /// `x*x != 0` and `n(x, x*x) = 0`
    TypeB,
    /// `x*x = 0`
    TypeC,
}

/// Nonzero product `b_i*b_j = c·b_k` as `(k, c)`.
type StructureTable<E> = [[Option<(usize, E)>; 8]; 8];

/// `O_{α,β}` over a field. Structure constants and the Gram matrix are
/// precomputed; the value is immutable and cheap to share.
#[derive(Debug, Clone)]
pub struct OkuboAlgebra<F: Field> {
    field: F,
    alpha: F::Elem,
    beta: F::Elem,
    structure: StructureTable<F::Elem>,
    gram: Matrix<F::Elem>,
}

impl<F: Field> OkuboAlgebra<F> {
    pub fn new(field: F, alpha: F::Elem, beta: F::Elem) -> Result<Self, AlgebraError> {
        if field.is_zero(&alpha) || field.is_zero(&beta) {
            return Err(AlgebraError::ZeroParameter);
        }
        let coef = |term: &Term| -> F::Elem {
            let mut c = field.mul(
                &field.pow(&alpha, term.alpha as u64),
                &field.pow(&beta, term.beta as u64),
            );
            if term.sign < 0 {
                c = field.neg(&c);
            }
            c
        };
        let structure = std::array::from_fn(|i| {
            std::array::from_fn(|j| TABLE[i][j].as_ref().map(|term| (term.target, coef(term))))
        });
        let ab = field.mul(&alpha, &beta);
        let mut gram = Matrix::zeros(&field, 8, 8);
        for (i, j, v) in [
            (Z10, Z20, &alpha),
            (Z01, Z02, &beta),
            (Z11, Z22, &ab),
            (Z12, Z21, &ab),
        ] {
            gram.set(i, j, v.clone());
            gram.set(j, i, v.clone());
        }
        Ok(Self {
            field,
            alpha,
            beta,
            structure,
            gram,
        })
    }

    /// The split algebra `O_{1,1}`.
    pub fn split(field: F) -> Self {
        let one = field.one();
        Self::new(field, one.clone(), one).expect("1 is nonzero")
    }

    /// Replaces one structure constant. Only meant for fault-injection tests.
    pub fn with_patched_product(
        mut self,
        left: usize,
        right: usize,
        value: Option<(usize, F::Elem)>,
    ) -> Self {
        self.structure[left][right] = value;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn alpha(&self) -> &F::Elem {
        &self.alpha
    }

    pub fn beta(&self) -> &F::Elem {
        &self.beta
    }

    pub fn gram(&self) -> &Matrix<F::Elem> {
        &self.gram
    }

    /// Structure constant of `z_left * z_right`.
    pub fn product_of_basis(&self, left: usize, right: usize) -> Vec8<F::Elem> {
        let mut out = self.zero();
        if let Some((k, c)) = &self.structure[left][right] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn zero(&self) -> Vec8<F::Elem> {
        std::array::from_fn(|_| self.field.zero())
    }

    pub fn basis(&self, i: usize) -> Vec8<F::Elem> {
        std::array::from_fn(|j| {
            if i == j {
                self.field.one()
            } else {
                self.field.zero()
            }
        })
    }

    pub fn element(&self, coeffs: &[F::Elem]) -> Vec8<F::Elem> {
        assert_eq!(coeffs.len(), 8);
        std::array::from_fn(|i| coeffs[i].clone())
    }

    pub fn from_ints(&self, coeffs: [i64; 8]) -> Vec8<F::Elem> {
        coeffs.map(|c| self.field.from_i64(c))
    }

    pub fn add(&self, x: &Vec8<F::Elem>, y: &Vec8<F::Elem>) -> Vec8<F::Elem> {
        std::array::from_fn(|i| self.field.add(&x[i], &y[i]))
    }

    pub fn sub(&self, x: &Vec8<F::Elem>, y: &Vec8<F::Elem>) -> Vec8<F::Elem> {
        std::array::from_fn(|i| self.field.sub(&x[i], &y[i]))
    }

    pub fn scale(&self, c: &F::Elem, x: &Vec8<F::Elem>) -> Vec8<F::Elem> {
        std::array::from_fn(|i| self.field.mul(c, &x[i]))
    }

    pub fn neg(&self, x: &Vec8<F::Elem>) -> Vec8<F::Elem> {
        std::array::from_fn(|i| self.field.neg(&x[i]))
    }

    pub fn is_zero(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|c| self.field.is_zero(c))
    }

    /// Bilinear extension of the structure table.
    pub fn mul(&self, x: &Vec8<F::Elem>, y: &Vec8<F::Elem>) -> Vec8<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                if let Some((k, c)) = &self.structure[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(c, &f.mul(xi, yj)));
                }
            }
        }
        out
    }

    /// Polar form `x^T G y`.
    pub fn bilin(&self, x: &Vec8<F::Elem>, y: &Vec8<F::Elem>) -> F::Elem {
        let f = &self.field;
        let ab = f.mul(&self.alpha, &self.beta);
        let pair = |i: usize, j: usize| f.add(&f.mul(&x[i], &y[j]), &f.mul(&x[j], &y[i]));
        let s1 = f.mul(&self.alpha, &pair(Z10, Z20));
        let s2 = f.mul(&self.beta, &pair(Z01, Z02));
        let s3 = f.mul(&ab, &f.add(&pair(Z11, Z22), &pair(Z12, Z21)));
        f.add(&f.add(&s1, &s2), &s3)
    }

    /// The quadratic norm as an explicit sum over hyperbolic pairs, valid in
    /// characteristic 2.
    pub fn qnorm(&self, x: &Vec8<F::Elem>) -> F::Elem {
        let f = &self.field;
        let ab = f.mul(&self.alpha, &self.beta);
        let s1 = f.mul(&self.alpha, &f.mul(&x[Z10], &x[Z20]));
        let s2 = f.mul(&self.beta, &f.mul(&x[Z01], &x[Z02]));
        let s3 = f.mul(
            &ab,
            &f.add(&f.mul(&x[Z11], &x[Z22]), &f.mul(&x[Z12], &x[Z21])),
        );
        f.add(&f.add(&s1, &s2), &s3)
    }

    pub fn is_zero_divisor(&self, x: &Vec8<F::Elem>) -> bool {
        !self.is_zero(x) && self.field.is_zero(&self.qnorm(x))
    }

    fn require_zero_divisor(&self, x: &Vec8<F::Elem>) -> Result<(), AlgebraError> {
        if self.is_zero_divisor(x) {
            Ok(())
        } else {
            Err(AlgebraError::NotZeroDivisor)
        }
    }

    /// Matrix of `y ↦ x*y`.
    pub fn left_mult_matrix(&self, x: &Vec8<F::Elem>) -> Matrix<F::Elem> {
        let cols: Vec<Vec8<F::Elem>> = (0..8).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_fn(8, 8, |i, j| cols[j][i].clone())
    }

    /// Matrix of `y ↦ y*x`.
    pub fn right_mult_matrix(&self, x: &Vec8<F::Elem>) -> Matrix<F::Elem> {
        let cols: Vec<Vec8<F::Elem>> = (0..8).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_fn(8, 8, |i, j| cols[j][i].clone())
    }

    /// `{y : y*x = 0}`.
    pub fn left_ann(&self, x: &Vec8<F::Elem>) -> Result<Subspace<F::Elem>, AlgebraError> {
        self.require_zero_divisor(x)?;
        Ok(linalg::kernel(&self.field, &self.right_mult_matrix(x)))
    }

    /// `{y : x*y = 0}`.
    pub fn right_ann(&self, x: &Vec8<F::Elem>) -> Result<Subspace<F::Elem>, AlgebraError> {
        self.require_zero_divisor(x)?;
        Ok(linalg::kernel(&self.field, &self.left_mult_matrix(x)))
    }

    /// `x * O`, the image of left multiplication by `x`.
    pub fn left_image(&self, x: &Vec8<F::Elem>) -> Subspace<F::Elem> {
        let vs: Vec<Vec<F::Elem>> = (0..8)
            .map(|j| self.mul(x, &self.basis(j)).to_vec())
            .collect();
        linalg::span(&self.field, 8, &vs)
    }

    /// `O * x`, the image of right multiplication by `x`.
    pub fn right_image(&self, x: &Vec8<F::Elem>) -> Subspace<F::Elem> {
        let vs: Vec<Vec<F::Elem>> = (0..8)
            .map(|j| self.mul(&self.basis(j), x).to_vec())
            .collect();
        linalg::span(&self.field, 8, &vs)
    }

    /// `{y : x*y = y*x = 0}`.
    pub fn orthogonalizer(&self, x: &Vec8<F::Elem>) -> Result<Subspace<F::Elem>, AlgebraError> {
        self.require_zero_divisor(x)?;
        Ok(self.orthogonalizer_unchecked(x))
    }

    pub(crate) fn orthogonalizer_unchecked(&self, x: &Vec8<F::Elem>) -> Subspace<F::Elem> {
        let m = self.left_mult_matrix(x).stack(&self.right_mult_matrix(x));
        linalg::kernel(&self.field, &m)
    }

    /// `(x * O) ∩ (O * y)`.
    pub fn ann_intersection(
        &self,
        x: &Vec8<F::Elem>,
        y: &Vec8<F::Elem>,
    ) -> Result<Subspace<F::Elem>, AlgebraError> {
        self.require_zero_divisor(x)?;
        self.require_zero_divisor(y)?;
        Ok(
            linalg::intersect(&self.field, &self.left_image(x), &self.right_image(y))
                .expect("both subspaces live in dimension 8"),
        )
    }

    pub fn classify(&self, x: &Vec8<F::Elem>) -> Result<ZeroDivisorClass, AlgebraError> {
        self.require_zero_divisor(x)?;
        Ok(self.classify_unchecked(x))
    }

    pub(crate) fn classify_unchecked(&self, x: &Vec8<F::Elem>) -> ZeroDivisorClass {
        let xx = self.mul(x, x);
        if self.is_zero(&xx) {
            ZeroDivisorClass::TypeC
        } else if self.field.is_zero(&self.bilin(x, &xx)) {
            ZeroDivisorClass::TypeB
        } else {
            ZeroDivisorClass::TypeA
        }
    }

    /// Perp of `x` with respect to the polar form.
    pub fn perp(&self, x: &Vec8<F::Elem>) -> Subspace<F::Elem> {
        linalg::perp_of_vector(&self.field, &self.gram, x)
    }

    /// Whether `x*y = y*x = 0`.
    pub fn orthogonal(&self, x: &Vec8<F::Elem>, y: &Vec8<F::Elem>) -> bool {
        self.is_zero(&self.mul(x, y)) && self.is_zero(&self.mul(y, x))
    }

    /// Signed linear combination of basis names, e.g. `z01 - z11`.
    pub fn format_element(&self, x: &Vec8<F::Elem>) -> String {
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let negative = f.is_one(&f.neg(c)) && !f.is_one(c);
            let body = if f.is_one(c) || negative {
                BASIS_NAMES[i].to_string()
            } else {
                let s = f.format(c);
                if s.contains(['+', '/', '-']) {
                    format!("({s})*{}", BASIS_NAMES[i])
                } else {
                    format!("{s}*{}", BASIS_NAMES[i])
                }
            };
            match (out.is_empty(), negative) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Coefficient vector in the form `{c1, c2, ..., c8}`.
    pub fn format_vector(&self, x: &Vec8<F::Elem>) -> String {
        let parts: Vec<String> = x.iter().map(|c| self.field.format(c)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Uniformly random coefficient vector.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vec8<F::Elem> {
        std::array::from_fn(|_| self.field.random(rng))
    }

    /// Rejection-sampled zero divisor. Over infinite fields norm zero is not hit
    /// by chance, so products `a * z_ij` with a random `a` are used instead.
    pub fn random_zero_divisor<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vec8<F::Elem> {
        if self.field.order().is_some() {
            loop {
                let x = self.random_element(rng);
                if self.is_zero_divisor(&x) {
                    return x;
                }
            }
        }
        loop {
            let a = self.random_element(rng);
            let b = self.basis(rng.random_range(0..8));
            let x = if rng.random_bool(0.5) {
                self.mul(&a, &b)
            } else {
                self.mul(&b, &a)
            };
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

#[cfg(test)]
mod tests;
