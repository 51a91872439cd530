use std::sync::Arc;

use rand::Rng;

use super::poly::{self, Poly};
use super::{is_prime, Field, FieldError};

/// Reduced fraction of polynomials over GF(p): gcd(num, den) = 1, den monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn numerator(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> &[u64] {
        &self.den
    }
}

/// The rational-function field GF(p)(t). Never enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionField {
    p: u64,
    var: Arc<str>,
}

impl RationalFunctionField {
    pub fn new(p: u64, var: &str) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::NonPrimeP(p));
        }
        Ok(Self { p, var: var.into() })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn from_polys(&self, num: &[u64], den: &[u64]) -> Result<RatFn, FieldError> {
        let num = poly::trim(num.iter().map(|c| c % self.p).collect());
        let den = poly::trim(den.iter().map(|c| c % self.p).collect());
        if den.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.normalize(num, den))
    }

    fn normalize(&self, num: Poly, den: Poly) -> RatFn {
        let p = self.p;
        if num.is_empty() {
            return RatFn { num, den: vec![1] };
        }
        let g = poly::gcd(&num, &den, p);
        let num = poly::divrem(&num, &g, p).0;
        let den = poly::divrem(&den, &g, p).0;
        let lc_inv = poly::inv_mod(*den.last().unwrap(), p);
        RatFn {
            num: poly::scale(&num, lc_inv, p),
            den: poly::scale(&den, lc_inv, p),
        }
    }

    fn scalar_cube_root(&self, c: u64) -> Option<u64> {
        let p = self.p;
        if c == 0 || p <= 3 {
            // cubing is the identity on GF(2) and GF(3)
            return Some(c);
        }
        if !(p - 1).is_multiple_of(3) {
            // cubing is a bijection; its inverse exponent is 3^{-1} mod p-1
            let e = poly::inv_mod(3, p - 1);
            return Some(pow_mod(c, e, p));
        }
        if pow_mod(c, (p - 1) / 3, p) != 1 {
            return None;
        }
        (1..p).find(|&x| x * x % p * x % p == c)
    }

    /// Cube root of a monic polynomial, if it is a cube.
    fn monic_poly_cube_root(&self, f: &[u64]) -> Option<Poly> {
        let p = self.p;
        let n = poly::degree(f)?;
        if n % 3 != 0 {
            return None;
        }
        let m = n / 3;
        if p == 3 {
            // Frobenius: (sum g_i t^i)^3 = sum g_i t^{3i} over GF(3)
            if f.iter().enumerate().any(|(i, &c)| i % 3 != 0 && c != 0) {
                return None;
            }
            return Some(f.iter().step_by(3).copied().collect());
        }
        // cube root of the reversed polynomial as a power series with constant term 1
        let rev: Vec<u64> = f.iter().rev().copied().collect();
        let inv3 = poly::inv_mod(3, p);
        let mut g = vec![1u64];
        for k in 1..=m {
            let cube = poly::mul(&poly::mul(&g, &g, p), &g, p);
            let known = cube.get(k).copied().unwrap_or(0);
            let target = rev.get(k).copied().unwrap_or(0);
            g.push((target + p - known) % p * inv3 % p);
        }
        let root: Poly = poly::trim(g.into_iter().rev().collect());
        (poly::mul(&poly::mul(&root, &root, p), &root, p) == f).then_some(root)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn wrap(s: String) -> String {
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

impl Field for RationalFunctionField {
    type Elem = RatFn;

    fn zero(&self) -> RatFn {
        RatFn {
            num: vec![],
            den: vec![1],
        }
    }

    fn one(&self) -> RatFn {
        RatFn {
            num: vec![1],
            den: vec![1],
        }
    }

    fn from_i64(&self, n: i64) -> RatFn {
        RatFn {
            num: poly::constant(n.rem_euclid(self.p as i64) as u64, self.p),
            den: vec![1],
        }
    }

    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let p = self.p;
        if a.den == b.den {
            return self.normalize(poly::add(&a.num, &b.num, p), a.den.clone());
        }
        let num = poly::add(
            &poly::mul(&a.num, &b.den, p),
            &poly::mul(&b.num, &a.den, p),
            p,
        );
        self.normalize(num, poly::mul(&a.den, &b.den, p))
    }

    fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        let p = self.p;
        self.normalize(poly::mul(&a.num, &b.num, p), poly::mul(&a.den, &b.den, p))
    }

    fn neg(&self, a: &RatFn) -> RatFn {
        RatFn {
            num: poly::neg(&a.num, self.p),
            den: a.den.clone(),
        }
    }

    fn inv(&self, a: &RatFn) -> Result<RatFn, FieldError> {
        if a.num.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.normalize(a.den.clone(), a.num.clone()))
    }

    fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn elements(&self) -> Result<Vec<RatFn>, FieldError> {
        Err(FieldError::InfiniteField)
    }

    fn cube_root(&self, a: &RatFn) -> Option<RatFn> {
        if a.num.is_empty() {
            return Some(self.zero());
        }
        let p = self.p;
        let lc = *a.num.last().unwrap();
        let c = self.scalar_cube_root(lc)?;
        let num_root = self.monic_poly_cube_root(&poly::monic(&a.num, p))?;
        let den_root = self.monic_poly_cube_root(&a.den)?;
        Some(self.normalize(poly::scale(&num_root, c, p), den_root))
    }

    fn is_cube(&self, a: &RatFn) -> bool {
        self.cube_root(a).is_some()
    }

    fn format(&self, a: &RatFn) -> String {
        let num = poly::format(&a.num, &self.var);
        if a.den == [1] {
            num
        } else {
            format!("{}/{}", wrap(num), wrap(poly::format(&a.den, &self.var)))
        }
    }

    fn parse(&self, s: &str) -> Result<RatFn, FieldError> {
        let err = || FieldError::ParseElement(s.to_string());
        let strip = |x: &str| -> String {
            let x = x.trim();
            x.strip_prefix('(')
                .and_then(|y| y.strip_suffix(')'))
                .unwrap_or(x)
                .to_string()
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (strip(n), strip(d)),
            None => (strip(s), "1".to_string()),
        };
        let num = poly::parse(&num, &self.var, self.p).ok_or_else(err)?;
        let den = poly::parse(&den, &self.var, self.p).ok_or_else(err)?;
        if den.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.normalize(num, den))
    }

    fn variable(&self) -> Option<&str> {
        Some(&self.var)
    }

    fn generator(&self) -> Option<RatFn> {
        Some(RatFn {
            num: vec![0, 1],
            den: vec![1],
        })
    }

    /// Numerator of degree at most 2; denominator 1 or a random monic linear polynomial.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RatFn {
        let p = self.p;
        let num: Poly = (0..3).map(|_| rng.random_range(0..p)).collect();
        let den = if rng.random_bool(0.5) {
            vec![1]
        } else {
            vec![rng.random_range(0..p), 1]
        };
        self.normalize(poly::trim(num), den)
    }

    fn spec_string(&self) -> String {
        format!("{}({})", self.p, self.var)
    }

    fn primitive_cube_roots(&self) -> Vec<RatFn> {
        let p = self.p;
        if p == 3 || !(p - 1).is_multiple_of(3) {
            return Vec::new();
        }
        let mut roots: Vec<u64> = (2..p)
            .map(|g| pow_mod(g, (p - 1) / 3, p))
            .find(|&w| w != 1)
            .map(|w| vec![w, w * w % p])
            .unwrap_or_default();
        roots.sort_unstable();
        roots.into_iter().map(|w| self.from_i64(w as i64)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3t() -> RationalFunctionField {
        RationalFunctionField::new(3, "t").unwrap()
    }

    #[test]
    fn division_cancels() {
        let f = gf3t();
        let a = f.parse("t^2-1").unwrap();
        let b = f.parse("t-1").unwrap();
        assert_eq!(f.div(&a, &b).unwrap(), f.parse("t+1").unwrap());
        assert_eq!(f.format(&f.div(&b, &a).unwrap()), "1/(t+1)");
    }

    #[test]
    fn canonical_form_has_monic_denominator() {
        let f = gf3t();
        let x = f.from_polys(&[1], &[0, 2]).unwrap();
        assert_eq!(x.denominator(), &[0, 1]);
        assert_eq!(x.numerator(), &[2]);
        assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
    }

    #[test]
    fn cube_test() {
        let f = gf3t();
        let t = f.generator().unwrap();
        assert!(!f.is_cube(&t));
        assert!(f.is_cube(&f.pow(&t, 3)));
        let x = f.parse("(t^3+2)/(t^6)").unwrap();
        assert!(f.is_cube(&x));
        let f5 = RationalFunctionField::new(5, "t").unwrap();
        let y = f5.parse("t+2").unwrap();
        let y3 = f5.pow(&y, 3);
        let root = f5.cube_root(&y3).unwrap();
        assert_eq!(f5.pow(&root, 3), y3);
        assert!(!f5.is_cube(&f5.mul(&y3, &y)));
        let f7 = RationalFunctionField::new(7, "t").unwrap();
        assert!(!f7.is_cube(&f7.from_i64(2)));
        assert!(f7.is_cube(&f7.from_i64(6)));
        let f2 = RationalFunctionField::new(2, "t").unwrap();
        let z = f2.parse("(t+1)/t").unwrap();
        assert_eq!(
            f2.cube_root(&f2.pow(&z, 3)).map(|r| f2.pow(&r, 3)),
            Some(f2.pow(&z, 3))
        );
        assert!(f2.is_cube(&f2.one()));
    }

    #[test]
    fn no_cube_roots_of_unity_in_char_three() {
        assert!(gf3t().primitive_cube_roots().is_empty());
        let f7 = RationalFunctionField::new(7, "t").unwrap();
        let roots: Vec<String> = f7
            .primitive_cube_roots()
            .iter()
            .map(|x| f7.format(x))
            .collect();
        assert_eq!(roots, ["2", "4"]);
    }

    #[test]
    fn enumeration_is_refused() {
        assert_eq!(gf3t().elements().unwrap_err(), FieldError::InfiniteField);
    }
}
