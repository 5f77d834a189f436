use std::fmt;
use std::sync::Arc;

use super::{upoly, Field, FieldDescriptor};
use crate::error::{Error, Result};

/// A reduced fraction of univariate polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn<E> {
    num: Vec<E>,
    den: Vec<E>,
}

impl<E> RatFn<E> {
    pub fn numerator(&self) -> &[E] {
        &self.num
    }

    pub fn denominator(&self) -> &[E] {
        &self.den
    }
}

/// The rational function field `K(t)` over a finite base `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionField<F> {
    base: F,
    var: Arc<str>,
}

impl<F: Field> RationalFunctionField<F> {
    pub fn new(base: F, var: &str) -> Self {
        RationalFunctionField { base, var: var.into() }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// The transcendental `t`.
    pub fn transcendental(&self) -> RatFn<F::Elem> {
        RatFn { num: vec![self.base.zero(), self.base.one()], den: vec![self.base.one()] }
    }

    pub fn from_base(&self, c: F::Elem) -> RatFn<F::Elem> {
        let mut num = vec![c];
        upoly::trim(&self.base, &mut num);
        RatFn { num, den: vec![self.base.one()] }
    }

    /// Builds `num/den` in lowest terms.
    pub fn fraction(&self, num: Vec<F::Elem>, den: Vec<F::Elem>) -> Result<RatFn<F::Elem>> {
        let mut num = num;
        let mut den = den;
        upoly::trim(&self.base, &mut num);
        upoly::trim(&self.base, &mut den);
        if den.is_empty() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(self.reduce(num, den))
    }

    fn reduce(&self, num: Vec<F::Elem>, den: Vec<F::Elem>) -> RatFn<F::Elem> {
        let b = &self.base;
        if num.is_empty() {
            return RatFn { num, den: vec![b.one()] };
        }
        let g = upoly::gcd(b, &num, &den);
        let (mut num, mut den) = if g.len() > 1 {
            (upoly::divrem(b, &num, &g).0, upoly::divrem(b, &den, &g).0)
        } else {
            (num, den)
        };
        let lc = den.last().cloned().expect("nonzero denominator");
        if !b.is_one(&lc) {
            let inv = b.inv(&lc).expect("nonzero lead");
            num = upoly::scale(b, &num, &inv);
            den = upoly::scale(b, &den, &inv);
        }
        RatFn { num, den }
    }

    /// Re-normalizes an element; canonical inputs come back unchanged.
    pub fn normalize(&self, a: &RatFn<F::Elem>) -> RatFn<F::Elem> {
        self.reduce(a.num.clone(), a.den.clone())
    }
}

impl<F: Field> fmt::Debug for RationalFunctionField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.base, self.var)
    }
}

impl<F: Field> Field for RationalFunctionField<F> {
    type Elem = RatFn<F::Elem>;

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    fn order(&self) -> Option<u128> {
        None
    }

    fn zero(&self) -> Self::Elem {
        RatFn { num: Vec::new(), den: vec![self.base.one()] }
    }

    fn one(&self) -> Self::Elem {
        RatFn { num: vec![self.base.one()], den: vec![self.base.one()] }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            return self.reduce(upoly::add(k, &a.num, &b.num), a.den.clone());
        }
        let num = upoly::add(k, &upoly::mul(k, &a.num, &b.den), &upoly::mul(k, &b.num, &a.den));
        self.reduce(num, upoly::mul(k, &a.den, &b.den))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFn { num: a.num.iter().map(|c| self.base.neg(c)).collect(), den: a.den.clone() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        // cross-cancel first so the products stay small
        let g1 = upoly::gcd(k, &a.num, &b.den);
        let g2 = upoly::gcd(k, &b.num, &a.den);
        let (an, bd) = if g1.len() > 1 {
            (upoly::divrem(k, &a.num, &g1).0, upoly::divrem(k, &b.den, &g1).0)
        } else {
            (a.num.clone(), b.den.clone())
        };
        let (bn, ad) = if g2.len() > 1 {
            (upoly::divrem(k, &b.num, &g2).0, upoly::divrem(k, &a.den, &g2).0)
        } else {
            (b.num.clone(), a.den.clone())
        };
        let num = upoly::mul(k, &an, &bn);
        let den = upoly::mul(k, &ad, &bd);
        let lc = den.last().cloned().expect("nonzero denominator");
        if k.is_one(&lc) {
            RatFn { num, den }
        } else {
            let inv = k.inv(&lc).expect("nonzero lead");
            RatFn { num: upoly::scale(k, &num, &inv), den: upoly::scale(k, &den, &inv) }
        }
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if a.num.is_empty() {
            return Err(Error::Arithmetic(format!("inverse of zero in {self:?}")));
        }
        Ok(self.reduce(a.den.clone(), a.num.clone()))
    }

    fn from_u64(&self, n: u64) -> Self::Elem {
        self.from_base(self.base.from_u64(n))
    }

    fn frobenius(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        // injective on polynomials, so coprimality and monicity survive
        RatFn {
            num: upoly::frobenius(&self.base, &a.num, e),
            den: upoly::frobenius(&self.base, &a.den, e),
        }
    }

    fn named_elements(&self) -> Vec<(String, Self::Elem)> {
        let mut out: Vec<(String, Self::Elem)> = self
            .base
            .named_elements()
            .into_iter()
            .map(|(n, c)| (n, self.from_base(c)))
            .collect();
        out.push((self.var.to_string(), self.transcendental()));
        out
    }

    fn elements(&self, _limit: usize) -> Option<Vec<Self::Elem>> {
        None
    }

    fn format(&self, a: &Self::Elem) -> String {
        let num = upoly::format(&self.base, &a.num, &self.var);
        if a.den.len() == 1 {
            return num;
        }
        let den = upoly::format(&self.base, &a.den, &self.var);
        format!("({num})/({den})")
    }

    fn descriptor(&self) -> FieldDescriptor {
        let (p, m) = match self.base.descriptor() {
            FieldDescriptor::Prime { p } => (p, 1),
            FieldDescriptor::Extension { p, m, .. } => (p, m),
            FieldDescriptor::RationalFunction { p, m, .. } => (p, m),
        };
        FieldDescriptor::RationalFunction { p, m, var: self.var.to_string() }
    }

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        RationalFunctionField::normalize(self, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::PrimeField;

    #[test]
    fn inverse_law_in_f3_t() {
        let f = RationalFunctionField::new(PrimeField::new(3).unwrap(), "t");
        let t = f.transcendental();
        let t1 = f.add(&t, &f.one());
        let inv = f.inv(&t1).unwrap();
        assert_eq!(f.mul(&t1, &inv), f.one());
        assert_eq!(f.format(&inv), "(1)/(t+1)");
    }

    #[test]
    fn lowest_terms_with_monic_denominator() {
        let f = RationalFunctionField::new(PrimeField::new(5).unwrap(), "t");
        // (2t^2 - 2)/(2t - 2) = t + 1
        let x = f.fraction(vec![3, 0, 2], vec![3, 2]).unwrap();
        assert_eq!(x.numerator(), &[1, 1]);
        assert_eq!(x.denominator(), &[1]);
        assert!(f.fraction(vec![1], vec![]).is_err());
    }

    #[test]
    fn frobenius_char2_binomial() {
        let f = RationalFunctionField::new(PrimeField::new(2).unwrap(), "t");
        let a = f.add(&f.transcendental(), &f.one());
        let a4 = f.frobenius(&a, 2);
        assert_eq!(a4.numerator(), &[1, 0, 0, 0, 1]);
        assert_eq!(a4, f.pow(&a, 4));
    }
}
