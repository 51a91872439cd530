//! Expressions over a field and an Okubo algebra: `c*zIJ` terms joined by
//! `+`/`-`, field literals in print syntax (`3b^2`, `(t+1)/t`), and `*`
//! between two elements meaning the algebra product, evaluated left to right.

use thiserror::Error;

use crate::field::Field;
use crate::linalg::Vec8;
use crate::okubo::{OkuboAlgebra, BASIS_NAMES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected {found} at offset {at} in {src:?}")]
    Syntax {
        src: String,
        at: usize,
        found: String,
    },
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("{0}")]
    Type(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer literal {0} is out of range")]
    Range(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value<E> {
    Scalar(E),
    Element(Vec8<E>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((at, Tok::Num(chars[start..i].iter().map(|p| p.1).collect())));
        } else if c.is_alphabetic() {
            let start = i;
            // a name is letters followed by digits, so `3b2` is not a name
            while i < chars.len() && chars[i].1.is_alphabetic() {
                i += 1;
            }
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((
                at,
                Tok::Ident(chars[start..i].iter().map(|p| p.1).collect()),
            ));
        } else if "+-*/^(),".contains(c) {
            out.push((at, Tok::Op(c)));
            i += 1;
        } else if c == '−' {
            out.push((at, Tok::Op('-')));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                src: src.into(),
                at,
                found: format!("{c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a F,
    alg: Option<&'a OkuboAlgebra<F>>,
}

type Res<E> = Result<Value<E>, ExprError>;

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn error(&self) -> ExprError {
        match self.toks.get(self.pos) {
            Some((at, t)) => ExprError::Syntax {
                src: self.src.into(),
                at: *at,
                found: match t {
                    Tok::Num(s) | Tok::Ident(s) => format!("{s:?}"),
                    Tok::Op(c) => format!("{c:?}"),
                },
            },
            None => ExprError::Syntax {
                src: self.src.into(),
                at: self.src.len(),
                found: "end of input".into(),
            },
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Res<F::Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let r = self.term()?;
                acc = self.add(acc, r, false)?;
            } else if self.eat('-') {
                let r = self.term()?;
                acc = self.add(acc, r, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Res<F::Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let r = self.unary()?;
                acc = self.mul(acc, r)?;
            } else if self.eat('/') {
                let r = self.unary()?;
                acc = self.div(acc, r)?;
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))
            ) {
                let r = self.power()?;
                acc = self.mul(acc, r)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Res<F::Elem> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.negate(v));
        }
        self.eat('+');
        self.power()
    }

    fn power(&mut self) -> Res<F::Elem> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(self.error());
        };
        self.pos += 1;
        let e: u64 = n.parse().map_err(|_| ExprError::Range(n.clone()))?;
        let Value::Scalar(s) = base else {
            return Err(ExprError::Type(
                "only field elements can be raised to a power",
            ));
        };
        let f = self.field;
        let s = if negative {
            f.inv(&s).map_err(|_| ExprError::DivisionByZero)?
        } else {
            s
        };
        Ok(Value::Scalar(f.pow(&s, e)))
    }

    fn atom(&mut self) -> Res<F::Elem> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let v: i64 = n.parse().map_err(|_| ExprError::Range(n.clone()))?;
                Ok(Value::Scalar(f.from_i64(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.name(&name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error());
                }
                Ok(v)
            }
            _ => Err(self.error()),
        }
    }

    fn name(&self, name: &str) -> Res<F::Elem> {
        if let (Some(v), Some(g)) = (self.field.variable(), self.field.generator()) {
            if v == name {
                return Ok(Value::Scalar(g));
            }
        }
        let Some(alg) = self.alg else {
            return Err(ExprError::UnknownName(name.into()));
        };
        match name {
            "alpha" | "α" => Ok(Value::Scalar(alg.alpha().clone())),
            "beta" | "β" => Ok(Value::Scalar(alg.beta().clone())),
            _ => BASIS_NAMES
                .iter()
                .position(|b| *b == name)
                .map(|i| Value::Element(alg.basis(i)))
                .ok_or_else(|| ExprError::UnknownName(name.into())),
        }
    }

    fn alg(&self) -> &OkuboAlgebra<F> {
        self.alg.expect("elements only arise with an algebra")
    }

    fn negate(&self, v: Value<F::Elem>) -> Value<F::Elem> {
        match v {
            Value::Scalar(s) => Value::Scalar(self.field.neg(&s)),
            Value::Element(x) => Value::Element(self.alg().neg(&x)),
        }
    }

    fn add(&self, a: Value<F::Elem>, b: Value<F::Elem>, minus: bool) -> Res<F::Elem> {
        let f = self.field;
        let b = if minus { self.negate(b) } else { b };
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(f.add(&x, &y))),
            (Value::Element(x), Value::Element(y)) => Ok(Value::Element(self.alg().add(&x, &y))),
            (Value::Scalar(s), e @ Value::Element(_))
            | (e @ Value::Element(_), Value::Scalar(s))
                if f.is_zero(&s) =>
            {
                Ok(e)
            }
            _ => Err(ExprError::Type(
                "cannot add a nonzero field element to an algebra element",
            )),
        }
    }

    fn mul(&self, a: Value<F::Elem>, b: Value<F::Elem>) -> Res<F::Elem> {
        let f = self.field;
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(f.mul(&x, &y)),
            (Value::Scalar(s), Value::Element(x)) | (Value::Element(x), Value::Scalar(s)) => {
                Value::Element(self.alg().scale(&s, &x))
            }
            (Value::Element(x), Value::Element(y)) => Value::Element(self.alg().mul(&x, &y)),
        })
    }

    fn div(&self, a: Value<F::Elem>, b: Value<F::Elem>) -> Res<F::Elem> {
        let Value::Scalar(d) = b else {
            return Err(ExprError::Type("cannot divide by an algebra element"));
        };
        let inv = self.field.inv(&d).map_err(|_| ExprError::DivisionByZero)?;
        self.mul(a, Value::Scalar(inv))
    }
}

fn run<F: Field>(field: &F, alg: Option<&OkuboAlgebra<F>>, src: &str) -> Res<F::Elem> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        field,
        alg,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error());
    }
    Ok(v)
}

/// A field element; the field's variable is the only name allowed.
pub fn parse_scalar<F: Field>(field: &F, src: &str) -> Result<F::Elem, ExprError> {
    match run(field, None, src)? {
        Value::Scalar(s) => Ok(s),
        Value::Element(_) => Err(ExprError::Type("expected a field element")),
    }
}

/// An element of `alg`; a bare `0` is the zero element.
pub fn parse_element<F: Field>(
    alg: &OkuboAlgebra<F>,
    src: &str,
) -> Result<Vec8<F::Elem>, ExprError> {
    match run(alg.field(), Some(alg), src)? {
        Value::Element(x) => Ok(x),
        Value::Scalar(s) if alg.field().is_zero(&s) => Ok(alg.zero()),
        Value::Scalar(_) => Err(ExprError::Type(
            "expected an algebra element, found a field element",
        )),
    }
}
