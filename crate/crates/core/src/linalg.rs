//! Dense exact linear algebra over any [`Field`]: row reduction, kernels,
//! spans and subspace intersections.
//!
//! Subspaces are stored by their reduced row-echelon basis, so two subspaces
//! are equal exactly when their stored bases are equal.

use thiserror::Error;

use crate::field::Field;

/// Coordinates in the fixed basis order `z10, z20, z01, z02, z11, z22, z12, z21`.
pub type Vec8<E> = [E; 8];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(f.zero(), |acc, k| {
                f.add(&acc, &f.mul(self.get(i, k), other.get(k, j)))
            })
        })
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        let mut rows = self.row_vecs();
        rref(f, &mut rows, self.cols).len()
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

/// Reduces `rows` to reduced row-echelon form in place (zero rows dropped),
/// returning the pivot column of each remaining row. First-nonzero pivoting.
pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        if !f.is_one(&rows[r][c]) {
            for x in rows[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F^n`, stored by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        span(f, ambient, &Matrix::identity(f, ambient).row_vecs())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&w[c]) {
                continue;
            }
            let factor = w[c].clone();
            for (x, y) in w.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        w.iter().all(|x| f.is_zero(x))
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(f, v))
    }

    /// Linear functionals vanishing on this subspace, as rows of a constraint matrix.
    pub fn constraints<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        if self.basis.is_empty() {
            return Matrix::identity(f, self.ambient).row_vecs();
        }
        kernel(f, &Matrix::from_rows(self.ambient, &self.basis)).basis
    }
}

/// Echelon basis of `{v : m v = 0}`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let cols = m.cols();
    let mut rows = m.row_vecs();
    let pivots = rref(f, &mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<F::Elem>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        })
        .collect();
    span(f, cols, &vectors)
}

pub fn span<F: Field>(f: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Subspace<F::Elem> {
    let mut rows: Vec<Vec<F::Elem>> = vectors.to_vec();
    for r in &rows {
        assert_eq!(
            r.len(),
            ambient,
            "vector length differs from ambient dimension"
        );
    }
    let pivots = rref(f, &mut rows, ambient);
    Subspace {
        ambient,
        basis: rows,
        pivots,
    }
}

/// `a ∩ b` as the kernel of the stacked constraints of both subspaces.
pub fn intersect<F: Field>(
    f: &F,
    a: &Subspace<F::Elem>,
    b: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>, LinalgError> {
    if a.ambient != b.ambient {
        return Err(LinalgError::DimensionMismatch(a.ambient, b.ambient));
    }
    let mut constraints = a.constraints(f);
    constraints.extend(b.constraints(f));
    if constraints.is_empty() {
        return Ok(Subspace::full(f, a.ambient));
    }
    Ok(kernel(f, &Matrix::from_rows(a.ambient, &constraints)))
}

pub fn sum<F: Field>(
    f: &F,
    a: &Subspace<F::Elem>,
    b: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>, LinalgError> {
    if a.ambient != b.ambient {
        return Err(LinalgError::DimensionMismatch(a.ambient, b.ambient));
    }
    let mut vectors = a.basis.clone();
    vectors.extend(b.basis.iter().cloned());
    Ok(span(f, a.ambient, &vectors))
}

/// `{a : x^T gram a = 0}`.
pub fn perp_of_vector<F: Field>(f: &F, gram: &Matrix<F::Elem>, x: &[F::Elem]) -> Subspace<F::Elem> {
    let functional: Vec<F::Elem> = (0..gram.cols())
        .map(|j| dot(f, x, &gram.column(j)))
        .collect();
    kernel(f, &Matrix::from_rows(gram.cols(), &[functional]))
}
