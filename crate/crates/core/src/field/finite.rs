use std::sync::Arc;

use rand::Rng;

use super::poly::{self, Poly};
use super::{is_prime, Field, FieldError, MAX_DEGREE, MAX_ORDER};

/// Element of a finite field, identified by its position in the enumeration order.
///
/// For GF(p) the index is the residue. For GF(p^k) it is `sum c_i p^i` over the
/// coefficients of the reduced polynomial representative, so ascending index is
/// lexicographic order on `(c_{k-1}, ..., c_0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u32);

#[derive(Debug)]
struct Inner {
    p: u64,
    k: usize,
    q: u64,
    modulus: Poly,
    /// Extension fields only: discrete exponent and log tables for a primitive element.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Full addition table for small extension fields.
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// GF(p) or GF(p^k). Cheap to clone; immutable after construction.
#[derive(Debug, Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// GF(p^k) with the given monic modulus (low degree first), or the
    /// lexicographically smallest monic irreducible one.
    pub fn new(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::NonPrimeP(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(k));
        }
        let q = p
            .checked_pow(k as u32)
            .filter(|&q| k == 1 || q <= MAX_ORDER)
            .ok_or(FieldError::OrderTooLarge(p.saturating_pow(k as u32)))?;
        let modulus = match modulus {
            None if k == 1 => vec![0, 1],
            None => poly::default_modulus(k, p),
            Some(m) => {
                let m = poly::trim(m.iter().map(|c| c % p).collect());
                if m.len() != k + 1 || m[k] != 1 {
                    return Err(FieldError::BadModulus(k));
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(poly::format(&m, "t"), p));
                }
                m
            }
        };
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            exp: vec![],
            log: vec![],
            add: None,
            neg: vec![],
        };
        if k > 1 {
            build_tables(&mut inner);
        }
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.k
    }

    pub fn size(&self) -> u64 {
        self.inner.q
    }

    /// Monic modulus, low degree first (`t` for prime fields).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn element(&self, index: u64) -> Fq {
        assert!(index < self.inner.q, "index out of range");
        Fq(index as u32)
    }

    pub fn coefficients(&self, a: Fq) -> Vec<u64> {
        digits(a.0 as u64, self.inner.p, self.inner.k)
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Fq {
        let (_, r) = poly::divrem(
            &poly::trim(coeffs.iter().map(|c| c % self.inner.p).collect()),
            &self.inner.modulus,
            self.inner.p,
        );
        Fq(undigits(&r, self.inner.p) as u32)
    }

    fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }
}

fn digits(mut idx: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = idx % p;
        idx /= p;
    }
    out
}

fn undigits(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_tables(inner: &mut Inner) {
    let (p, k, q) = (inner.p, inner.k, inner.q);
    let mulmod = |a: u64, b: u64| -> u64 {
        let prod = poly::mul(
            &poly::trim(digits(a, p, k)),
            &poly::trim(digits(b, p, k)),
            p,
        );
        undigits(&poly::divrem(&prod, &inner.modulus, p).1, p)
    };
    let order = q - 1;
    let mut exp = Vec::with_capacity(order as usize);
    let mut generator_found = false;
    for g in 2..q {
        exp.clear();
        let mut x = 1u64;
        let mut ok = true;
        for i in 0..order {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x as u32);
            x = mulmod(x, g);
        }
        if ok && x == 1 {
            generator_found = true;
            break;
        }
    }
    if !generator_found {
        // q = 2: the only nonzero element is 1.
        exp = vec![1];
    }
    let mut log = vec![0u32; q as usize];
    for (i, &e) in exp.iter().enumerate() {
        log[e as usize] = i as u32;
    }
    inner.neg = (0..q)
        .map(|a| {
            undigits(
                &digits(a, p, k)
                    .iter()
                    .map(|&c| (p - c) % p)
                    .collect::<Vec<_>>(),
                p,
            ) as u32
        })
        .collect();
    if q <= 256 {
        let mut table = vec![0u32; (q * q) as usize];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                table[(a * q + b) as usize] = undigits(&sum, p) as u32;
            }
        }
        inner.add = Some(table);
    }
    inner.exp = exp;
    inner.log = log;
}

impl Field for FiniteField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq(0)
    }

    fn one(&self) -> Fq {
        Fq(1)
    }

    fn from_i64(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.inner.p as i64) as u32)
    }

    #[inline]
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let inner = &*self.inner;
        if inner.k == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Fq(if s >= inner.p { s - inner.p } else { s } as u32);
        }
        if let Some(table) = &inner.add {
            return Fq(table[(a.0 as u64 * inner.q + b.0 as u64) as usize]);
        }
        if inner.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0 as u64, b.0 as u64, 0u64, 1u64);
        for _ in 0..inner.k {
            out += ((x % inner.p + y % inner.p) % inner.p) * place;
            x /= inner.p;
            y /= inner.p;
            place *= inner.p;
        }
        Fq(out as u32)
    }

    #[inline]
    fn neg(&self, a: &Fq) -> Fq {
        let inner = &*self.inner;
        if inner.k == 1 {
            Fq(if a.0 == 0 {
                0
            } else {
                (inner.p - a.0 as u64) as u32
            })
        } else {
            Fq(inner.neg[a.0 as usize])
        }
    }

    #[inline]
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let inner = &*self.inner;
        if inner.k == 1 {
            return Fq((a.0 as u64 * b.0 as u64 % inner.p) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let order = inner.q as usize - 1;
        let mut l = inner.log[a.0 as usize] as usize + inner.log[b.0 as usize] as usize;
        if l >= order {
            l -= order;
        }
        Fq(inner.exp[l])
    }

    fn inv(&self, a: &Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let inner = &*self.inner;
        if inner.k == 1 {
            return Ok(Fq(poly::inv_mod(a.0 as u64, inner.p) as u32));
        }
        let order = inner.q as usize - 1;
        let l = inner.log[a.0 as usize] as usize;
        Ok(Fq(inner.exp[(order - l) % order]))
    }

    #[inline]
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn elements(&self) -> Result<Vec<Fq>, FieldError> {
        Ok((0..self.inner.q).map(|i| Fq(i as u32)).collect())
    }

    fn cube_root(&self, a: &Fq) -> Option<Fq> {
        (0..self.inner.q)
            .map(|i| Fq(i as u32))
            .find(|c| self.mul(&self.mul(c, c), c) == *a)
    }

    fn is_cube(&self, a: &Fq) -> bool {
        if a.0 == 0 {
            return true;
        }
        let order = self.inner.q - 1;
        let g = if order.is_multiple_of(3) { 3 } else { 1 };
        self.pow(a, order / g) == self.one()
    }

    fn format(&self, a: &Fq) -> String {
        if self.is_prime_field() {
            a.0.to_string()
        } else {
            poly::format(&poly::trim(self.coefficients(*a)), "t")
        }
    }

    fn parse(&self, s: &str) -> Result<Fq, FieldError> {
        let err = || FieldError::ParseElement(s.to_string());
        let t = s.trim();
        if let Ok(n) = t.parse::<i64>() {
            return Ok(self.from_i64(n));
        }
        if self.is_prime_field() {
            return Err(err());
        }
        let coeffs = poly::parse(t, "t", self.inner.p).ok_or_else(err)?;
        Ok(self.from_coefficients(&coeffs))
    }

    fn variable(&self) -> Option<&str> {
        (!self.is_prime_field()).then_some("t")
    }

    fn generator(&self) -> Option<Fq> {
        (!self.is_prime_field()).then(|| self.from_coefficients(&[0, 1]))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.random_range(0..self.inner.q) as u32)
    }

    fn spec_string(&self) -> String {
        let inner = &*self.inner;
        if inner.k == 1 {
            inner.p.to_string()
        } else {
            let coeffs: Vec<String> = inner.modulus.iter().rev().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", inner.p, inner.k, coeffs.join(","))
        }
    }

    fn primitive_cube_roots(&self) -> Vec<Fq> {
        let one = self.one();
        (0..self.inner.q)
            .map(|i| Fq(i as u32))
            .filter(|x| {
                *x != one && {
                    let v = self.add(&self.add(&self.mul(x, x), x), &one);
                    self.is_zero(&v)
                }
            })
            .collect()
    }
}
