//! Polynomial text syntax: `+ - * ^`, parentheses, decimal integers and
//! identifiers, e.g. `z^4 + x*y*z^2 + (x^3+y^3)*z + a*x^2*y^2`.
//!
//! Text is parsed once into an [`Expr`] tree which can then be evaluated in
//! any [`Algebra`]: a polynomial ring over a field, or integer polynomials for
//! families over `Z`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{PolyRing, Polynomial};
use crate::coeff::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Symbol(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Target of expression evaluation.
pub trait Algebra {
    type Value;
    fn integer(&self, n: u64) -> Result<Self::Value>;
    fn symbol(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, n: u32) -> Result<Self::Value>;
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn evaluate<A: Algebra>(&self, alg: &A) -> Result<A::Value> {
        match self {
            Expr::Int(n) => alg.integer(*n),
            Expr::Symbol(s) => alg.symbol(s),
            Expr::Neg(a) => alg.neg(a.evaluate(alg)?),
            Expr::Add(a, b) => alg.add(a.evaluate(alg)?, b.evaluate(alg)?),
            Expr::Sub(a, b) => alg.sub(a.evaluate(alg)?, b.evaluate(alg)?),
            Expr::Mul(a, b) => alg.mul(a.evaluate(alg)?, b.evaluate(alg)?),
            Expr::Pow(a, n) => alg.pow(a.evaluate(alg)?, *n),
        }
    }

    /// Every identifier in the expression.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Symbol(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { offset: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let n = self.number()?;
                    let n = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), n))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse { offset: start, message: "integer literal too large".into() })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Expr::Symbol(name.to_string()))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Evaluation into `K[x_1..x_n]`. Identifiers resolve to ring variables, then
/// to the supplied constants, then to the field's named elements.
pub struct RingAlgebra<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    constants: HashMap<String, F::Elem>,
}

impl<'a, F: Field> RingAlgebra<'a, F> {
    pub fn new(ring: &'a Arc<PolyRing<F>>) -> Self {
        let constants = ring.field().named_elements().into_iter().collect();
        RingAlgebra { ring, constants }
    }

    pub fn with_constant(mut self, name: &str, value: F::Elem) -> Self {
        self.constants.insert(name.to_string(), value);
        self
    }
}

impl<F: Field> Algebra for RingAlgebra<'_, F> {
    type Value = Polynomial<F>;

    fn integer(&self, n: u64) -> Result<Polynomial<F>> {
        Ok(Polynomial::constant(self.ring, self.ring.field().from_u64(n)))
    }

    fn symbol(&self, name: &str) -> Result<Polynomial<F>> {
        if let Some(i) = self.ring.var_index(name) {
            return Ok(Polynomial::var(self.ring, i));
        }
        match self.constants.get(name) {
            Some(c) => Ok(Polynomial::constant(self.ring, c.clone())),
            None => Err(Error::validation(format!(
                "undeclared symbol {name:?} (ring variables: {:?})",
                self.ring.vars()
            ))),
        }
    }

    fn add(&self, a: Polynomial<F>, b: Polynomial<F>) -> Result<Polynomial<F>> {
        a.checked_add(&b)
    }

    fn sub(&self, a: Polynomial<F>, b: Polynomial<F>) -> Result<Polynomial<F>> {
        a.checked_sub(&b)
    }

    fn neg(&self, a: Polynomial<F>) -> Result<Polynomial<F>> {
        Ok(-&a)
    }

    fn mul(&self, a: Polynomial<F>, b: Polynomial<F>) -> Result<Polynomial<F>> {
        a.checked_mul(&b)
    }

    fn pow(&self, a: Polynomial<F>, n: u32) -> Result<Polynomial<F>> {
        Ok(a.pow(n))
    }
}

/// Parses `text` as a polynomial in `ring`.
pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Polynomial<F>> {
    Expr::parse(text)?.evaluate(&RingAlgebra::new(ring))
}
