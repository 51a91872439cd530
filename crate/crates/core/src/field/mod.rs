//! Exact field arithmetic: prime fields, extension fields given by an explicit
//! irreducible modulus, and the rational-function field GF(p)(t).

mod finite;
pub mod poly;
mod ratfunc;

use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

pub use finite::{FiniteField, Fq};
pub use ratfunc::{RatFn, RationalFunctionField};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 8;
/// Largest supported order of a finite field.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus {0} is reducible over GF({1})")]
    ReducibleModulus(String, u64),
    #[error("extension degree {0} is not supported (max {MAX_DEGREE})")]
    UnsupportedDegree(usize),
    #[error("field order {0} exceeds the supported maximum")]
    OrderTooLarge(u64),
    #[error("modulus must be monic of degree {0}")]
    BadModulus(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("the field is infinite")]
    InfiniteField,
    #[error("cannot parse field element {0:?}")]
    ParseElement(String),
    #[error("cannot parse field descriptor {0:?}")]
    ParseSpec(String),
}

/// Arithmetic context of an exact field.
///
/// Elements are plain values; every operation goes through the context, which
/// keeps element types small (finite field elements are a `u32` index).
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)] // the field is a runtime value
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn characteristic(&self) -> u64;
    /// `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// Elements in the canonical enumeration order.
    fn elements(&self) -> Result<Vec<Self::Elem>, FieldError>;
    /// Some `c` with `c^3 = a`, if one exists.
    fn cube_root(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_cube(&self, a: &Self::Elem) -> bool;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    /// Symbol of the polynomial variable, if elements can mention one.
    fn variable(&self) -> Option<&str>;
    /// The element represented by the polynomial variable.
    fn generator(&self) -> Option<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn spec_string(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Roots of `x^2 + x + 1` other than 1, in enumeration order.
    fn primitive_cube_roots(&self) -> Vec<Self::Elem>;

    /// The first primitive cube root of unity, if the field has one.
    fn omega(&self) -> Option<Self::Elem> {
        self.primitive_cube_roots().into_iter().next()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Prime,
    Extension,
    RationalFunction,
}

/// Parameters of a field, as parsed from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub p: u64,
    pub k: usize,
    /// Monic modulus, coefficients low degree first. `None` selects the default.
    pub modulus: Option<Vec<u64>>,
    /// Name of the transcendental for rational-function fields.
    pub var: String,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        Self {
            kind: FieldKind::Prime,
            p,
            k: 1,
            modulus: None,
            var: "t".into(),
        }
    }

    pub fn extension(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Self {
        Self {
            kind: FieldKind::Extension,
            p,
            k,
            modulus,
            var: "t".into(),
        }
    }

    pub fn rational(p: u64) -> Self {
        Self {
            kind: FieldKind::RationalFunction,
            p,
            k: 1,
            modulus: None,
            var: "t".into(),
        }
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }
}

/// Field descriptor grammar: `p`, `p^k`, `p^k/c_k,...,c_0`, `p(t)`, plus the
/// shortcuts `gf2 gf3 gf4 gf5 gf7 gf9 gf13 gf3t`.
impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        let bad = || FieldError::ParseSpec(s.to_string());
        let lower = s.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("gf") {
            return match rest {
                "2" | "3" | "5" | "7" | "13" => Ok(Self::prime(rest.parse().map_err(|_| bad())?)),
                "4" => Ok(Self::extension(2, 2, None)),
                "9" => Ok(Self::extension(3, 2, None)),
                "3t" => Ok(Self::rational(3)),
                _ => Err(bad()),
            };
        }
        if let Some(open) = s.find('(') {
            let var = s[open + 1..].strip_suffix(')').ok_or_else(bad)?.trim();
            if var.is_empty()
                || !var.chars().all(|c| c.is_ascii_alphabetic())
                || var.starts_with('z')
            {
                return Err(bad());
            }
            let p = s[..open].trim().parse().map_err(|_| bad())?;
            return Ok(Self::rational(p).with_var(var));
        }
        let (base, modulus) = match s.split_once('/') {
            Some((b, m)) => (b, Some(m)),
            None => (s, None),
        };
        let (p, k) = match base.split_once('^') {
            Some((p, k)) => (
                p.trim().parse().map_err(|_| bad())?,
                k.trim().parse().map_err(|_| bad())?,
            ),
            None => (base.trim().parse().map_err(|_| bad())?, 1usize),
        };
        let modulus = match modulus {
            None => None,
            Some(m) => {
                let mut coeffs: Vec<u64> = m
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?;
                coeffs.reverse();
                Some(coeffs)
            }
        };
        if k == 1 && modulus.is_none() {
            Ok(Self::prime(p))
        } else {
            Ok(Self::extension(p, k, modulus))
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field of any supported kind.
#[derive(Debug, Clone)]
pub enum AnyField {
    Finite(FiniteField),
    Rational(RationalFunctionField),
}

pub fn make_field(spec: &FieldSpec) -> Result<AnyField, FieldError> {
    match spec.kind {
        FieldKind::Prime | FieldKind::Extension => {
            FiniteField::new(spec.p, spec.k, spec.modulus.clone()).map(AnyField::Finite)
        }
        FieldKind::RationalFunction => {
            RationalFunctionField::new(spec.p, &spec.var).map(AnyField::Rational)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grammar() {
        assert_eq!("7".parse::<FieldSpec>().unwrap(), FieldSpec::prime(7));
        assert_eq!(
            "2^2".parse::<FieldSpec>().unwrap(),
            FieldSpec::extension(2, 2, None)
        );
        assert_eq!(
            "2^2/1,1,1".parse::<FieldSpec>().unwrap(),
            FieldSpec::extension(2, 2, Some(vec![1, 1, 1]))
        );
        assert_eq!(
            "3^2/1,0,1".parse::<FieldSpec>().unwrap(),
            FieldSpec::extension(3, 2, Some(vec![1, 0, 1]))
        );
        assert_eq!("3(t)".parse::<FieldSpec>().unwrap(), FieldSpec::rational(3));
        assert_eq!("gf3t".parse::<FieldSpec>().unwrap(), FieldSpec::rational(3));
        assert_eq!(
            "gf4".parse::<FieldSpec>().unwrap(),
            FieldSpec::extension(2, 2, None)
        );
        assert!("gf6".parse::<FieldSpec>().is_err());
        assert!("x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(
            make_field(&FieldSpec::prime(6)).unwrap_err(),
            FieldError::NonPrimeP(6)
        );
        assert!(matches!(
            make_field(&FieldSpec::extension(2, 2, Some(vec![1, 0, 1]))),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert_eq!(
            make_field(&FieldSpec::extension(2, 9, None)).unwrap_err(),
            FieldError::UnsupportedDegree(9)
        );
        assert!(make_field(&FieldSpec::rational(9)).is_err());
    }
}
