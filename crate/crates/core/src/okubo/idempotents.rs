use super::{AlgebraError, OkuboAlgebra, ZeroDivisorClass, BASIS_GRADES};
use crate::field::Field;
use crate::linalg::{self, Matrix, Subspace, Vec8};

/// The two kinds of zero-square elements in characteristic 3, according to
/// the idempotent `e + x` they produce with the quaternionic idempotent `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Char3Subclass {
    /// `x` is orthogonal to the whole centralizer; `e + x` is singular.
    SingularType,
    /// `e + x` is a quadratic idempotent.
    QuadraticType,
}

impl<F: Field> OkuboAlgebra<F> {
    pub fn is_idempotent(&self, x: &Vec8<F::Elem>) -> bool {
        !self.is_zero(x) && self.mul(x, x) == *x
    }

    /// Cube roots `(a, b)` of `(α, β)`. Their existence makes the algebra split:
    /// `a^{-i} b^{-j} z_ij` multiply by the table of `O_{1,1}`.
    pub fn split_roots(&self) -> Option<(F::Elem, F::Elem)> {
        let f = self.field();
        Some((f.cube_root(self.alpha())?, f.cube_root(self.beta())?))
    }

    pub fn is_split(&self) -> bool {
        self.split_roots().is_some()
    }

    /// Image of `sum_{ij} z_ij` of `O_{1,1}` under the splitting isomorphism.
    fn split_sum(&self, a: &F::Elem, b: &F::Elem) -> Result<Vec8<F::Elem>, AlgebraError> {
        let f = self.field();
        let ai = f.inv(a)?;
        let bi = f.inv(b)?;
        Ok(std::array::from_fn(|k| {
            let (i, j) = BASIS_GRADES[k];
            f.mul(&f.pow(&ai, i as u64), &f.pow(&bi, j as u64))
        }))
    }

    /// The unique quaternionic idempotent of the split algebra in characteristic 3.
    pub fn quaternionic_idempotent(&self) -> Result<Vec8<F::Elem>, AlgebraError> {
        if self.field().characteristic() != 3 {
            return Err(AlgebraError::NotChar3);
        }
        let (a, b) = self.split_roots().ok_or(AlgebraError::NotSplit)?;
        let e = self.split_sum(&a, &b)?;
        debug_assert!(self.is_idempotent(&e));
        Ok(e)
    }

    /// `λ z10 + λ² z20` with `λ³ α = 1`; exists whenever `α` is a cube.
    pub fn graded_idempotent(&self) -> Result<Vec8<F::Elem>, AlgebraError> {
        let f = self.field();
        let a = f.cube_root(self.alpha()).ok_or(AlgebraError::NotSplit)?;
        let lambda = f.inv(&a)?;
        let mut e = self.zero();
        e[super::Z10] = lambda.clone();
        e[super::Z20] = f.mul(&lambda, &lambda);
        Ok(e)
    }

    /// `{y : e*y = y*e}`.
    pub fn centralizer(&self, e: &Vec8<F::Elem>) -> Result<Subspace<F::Elem>, AlgebraError> {
        if !self.is_idempotent(e) {
            return Err(AlgebraError::NotIdempotent);
        }
        let f = self.field();
        let l = self.left_mult_matrix(e);
        let r = self.right_mult_matrix(e);
        let m = Matrix::from_fn(8, 8, |i, j| f.sub(l.get(i, j), r.get(i, j)));
        Ok(linalg::kernel(f, &m))
    }

    pub fn char3_subclass(&self, x: &Vec8<F::Elem>) -> Result<Char3Subclass, AlgebraError> {
        let e = self.quaternionic_idempotent()?;
        if self.classify(x)? != ZeroDivisorClass::TypeC {
            return Err(AlgebraError::NotTypeC);
        }
        let c = self.centralizer(&e)?;
        if !c.contains(self.field(), x) {
            return Err(AlgebraError::NotInCentralizer);
        }
        let f = self.field();
        let orthogonal = c.basis().iter().all(|b| {
            let b: Vec8<F::Elem> = std::array::from_fn(|i| b[i].clone());
            f.is_zero(&self.bilin(x, &b))
        });
        Ok(if orthogonal {
            Char3Subclass::SingularType
        } else {
            Char3Subclass::QuadraticType
        })
    }
}
