//! The Zorn vector-matrix algebra `[a u; v b]`, `a, b` scalars, `u, v` 3-vectors.

use rand::Rng;

use crate::field::Field;

pub type V3<E> = [E; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZornElement<E> {
    pub a: E,
    pub b: E,
    pub u: V3<E>,
    pub v: V3<E>,
}

/// Names of the canonical basis in coordinate order.
pub const ZORN_BASIS_NAMES: [&str; 8] = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"];

#[derive(Debug, Clone)]
pub struct ZornAlgebra<F: Field> {
    field: F,
}

impl<F: Field> ZornAlgebra<F> {
    pub fn new(field: F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    fn zero3(&self) -> V3<F::Elem> {
        std::array::from_fn(|_| self.field.zero())
    }

    pub fn zero(&self) -> ZornElement<F::Elem> {
        ZornElement {
            a: self.field.zero(),
            b: self.field.zero(),
            u: self.zero3(),
            v: self.zero3(),
        }
    }

    pub fn one(&self) -> ZornElement<F::Elem> {
        ZornElement {
            a: self.field.one(),
            b: self.field.one(),
            u: self.zero3(),
            v: self.zero3(),
        }
    }

    /// Canonical basis: `e1, e2`, `u_i = [0 −f_i; 0 0]`, `v_i = [0 0; f_i 0]`.
    pub fn basis(&self, k: usize) -> ZornElement<F::Elem> {
        let f = &self.field;
        let mut x = self.zero();
        match k {
            0 => x.a = f.one(),
            1 => x.b = f.one(),
            2..=4 => x.u[k - 2] = f.neg(&f.one()),
            5..=7 => x.v[k - 5] = f.one(),
            _ => panic!("basis index {k} out of range"),
        }
        x
    }

    /// Coordinates in the canonical basis.
    pub fn coords(&self, x: &ZornElement<F::Elem>) -> [F::Elem; 8] {
        let f = &self.field;
        [
            x.a.clone(),
            x.b.clone(),
            f.neg(&x.u[0]),
            f.neg(&x.u[1]),
            f.neg(&x.u[2]),
            x.v[0].clone(),
            x.v[1].clone(),
            x.v[2].clone(),
        ]
    }

    pub fn from_coords(&self, c: &[F::Elem; 8]) -> ZornElement<F::Elem> {
        let f = &self.field;
        ZornElement {
            a: c[0].clone(),
            b: c[1].clone(),
            u: [f.neg(&c[2]), f.neg(&c[3]), f.neg(&c[4])],
            v: [c[5].clone(), c[6].clone(), c[7].clone()],
        }
    }

    fn dot(&self, x: &V3<F::Elem>, y: &V3<F::Elem>) -> F::Elem {
        let f = &self.field;
        (0..3).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&x[i], &y[i])))
    }

    fn cross(&self, x: &V3<F::Elem>, y: &V3<F::Elem>) -> V3<F::Elem> {
        let f = &self.field;
        std::array::from_fn(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            f.sub(&f.mul(&x[j], &y[k]), &f.mul(&x[k], &y[j]))
        })
    }

    fn lin3(&self, terms: &[(&F::Elem, &V3<F::Elem>)]) -> V3<F::Elem> {
        let f = &self.field;
        std::array::from_fn(|i| {
            terms
                .iter()
                .fold(f.zero(), |acc, (c, v)| f.add(&acc, &f.mul(c, &v[i])))
        })
    }

    pub fn mul(&self, x: &ZornElement<F::Elem>, y: &ZornElement<F::Elem>) -> ZornElement<F::Elem> {
        let f = &self.field;
        let one = f.one();
        let minus = f.neg(&one);
        let a = f.add(&f.mul(&x.a, &y.a), &self.dot(&x.u, &y.v));
        let b = f.add(&f.mul(&x.b, &y.b), &self.dot(&x.v, &y.u));
        let vxv = self.cross(&x.v, &y.v);
        let uxu = self.cross(&x.u, &y.u);
        let u = self.lin3(&[(&x.a, &y.u), (&y.b, &x.u), (&minus, &vxv)]);
        let v = self.lin3(&[(&y.a, &x.v), (&x.b, &y.v), (&one, &uxu)]);
        ZornElement { a, b, u, v }
    }

    pub fn norm(&self, x: &ZornElement<F::Elem>) -> F::Elem {
        let f = &self.field;
        f.sub(&f.mul(&x.a, &x.b), &self.dot(&x.u, &x.v))
    }

    pub fn conj(&self, x: &ZornElement<F::Elem>) -> ZornElement<F::Elem> {
        let f = &self.field;
        ZornElement {
            a: x.b.clone(),
            b: x.a.clone(),
            u: std::array::from_fn(|i| f.neg(&x.u[i])),
            v: std::array::from_fn(|i| f.neg(&x.v[i])),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ZornElement<F::Elem> {
        let c: [F::Elem; 8] = std::array::from_fn(|_| self.field.random(rng));
        self.from_coords(&c)
    }
}

/// Products of canonical basis elements: `(sign, index)` or `None` for zero.
/// Row = left factor, order `e1 e2 u1 u2 u3 v1 v2 v3`.
#[rustfmt::skip]
pub const ZORN_TABLE: [[Option<(i8, usize)>; 8]; 8] = [
    [Some((1, 0)), None, Some((1, 2)), Some((1, 3)), Some((1, 4)), None, None, None],
    [None, Some((1, 1)), None, None, None, Some((1, 5)), Some((1, 6)), Some((1, 7))],
    [None, Some((1, 2)), None, Some((1, 7)), Some((-1, 6)), Some((-1, 0)), None, None],
    [None, Some((1, 3)), Some((-1, 7)), None, Some((1, 5)), None, Some((-1, 0)), None],
    [None, Some((1, 4)), Some((1, 6)), Some((-1, 5)), None, None, None, Some((-1, 0))],
    [Some((1, 5)), None, Some((-1, 1)), None, None, None, Some((1, 4)), Some((-1, 3))],
    [Some((1, 6)), None, None, Some((-1, 1)), None, Some((-1, 4)), None, Some((1, 2))],
    [Some((1, 7)), None, None, None, Some((-1, 1)), Some((1, 3)), Some((-1, 2)), None],
];

impl<F: Field> ZornAlgebra<F> {
    /// The tabulated product of two canonical basis elements.
    pub fn table_product(&self, i: usize, j: usize) -> ZornElement<F::Elem> {
        match ZORN_TABLE[i][j] {
            None => self.zero(),
            Some((s, k)) => {
                let b = self.basis(k);
                if s < 0 {
                    let f = &self.field;
                    let c = self.coords(&b).map(|x| f.neg(&x));
                    self.from_coords(&c)
                } else {
                    b
                }
            }
        }
    }
}
