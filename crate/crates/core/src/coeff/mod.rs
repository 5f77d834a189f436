//! Coefficient fields: `F_p`, `GF(p^m)` and the rational function fields
//! `F_p(t)`, `GF(p^m)(t)`.
//!
//! Arithmetic goes through a [`Field`] value acting as context, so elements
//! are plain data (`u32` residues for prime fields). [`FieldElement`] pairs a
//! value with its field for callers that want checked mixed-field arithmetic.

mod extension;
mod prime;
mod ratfun;
pub(crate) mod upoly;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use extension::{is_irreducible, smallest_irreducible, ExtensionField};
pub use prime::{is_prime, PrimeField, MAX_CHARACTERISTIC};
pub use ratfun::{RatFn, RationalFunctionField};

/// Field operations. Every method assumes its arguments are canonical elements
/// of `self`.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + Eq + Hash + Send + Sync + 'static;

    fn characteristic(&self) -> u32;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u128>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    // the field is the context, so these take `self`
    #[allow(clippy::wrong_self_convention)]
    fn from_u64(&self, n: u64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem {
        let a = self.from_u64(n.unsigned_abs());
        if n < 0 {
            self.neg(&a)
        } else {
            a
        }
    }
    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
    /// `a^{p^e}`.
    fn frobenius(&self, a: &Self::Elem, e: u32) -> Self::Elem;
    /// Elements addressable by name in polynomial text (`s`, `t`).
    fn named_elements(&self) -> Vec<(String, Self::Elem)>;
    /// Every element, when the field is finite with at most `limit` elements.
    fn elements(&self, limit: usize) -> Option<Vec<Self::Elem>>;
    fn format(&self, a: &Self::Elem) -> String;
    fn descriptor(&self) -> FieldDescriptor;
    /// Canonical form of `a`; the identity for canonical inputs.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }
}

/// Serializable description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    Prime {
        p: u32,
    },
    Extension {
        p: u32,
        m: u32,
        #[serde(default = "default_gen", skip_serializing_if = "is_default_gen")]
        gen: String,
    },
    RationalFunction {
        p: u32,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        m: u32,
        var: String,
    },
}

fn default_gen() -> String {
    "s".to_string()
}

fn is_default_gen(g: &String) -> bool {
    g == "s"
}

fn one() -> u32 {
    1
}

fn is_one(m: &u32) -> bool {
    *m == 1
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDescriptor::Prime { p }
            | FieldDescriptor::Extension { p, .. }
            | FieldDescriptor::RationalFunction { p, .. } => *p,
        }
    }

    /// Validates the descriptor and constructs the field.
    pub fn build(&self) -> Result<AnyField> {
        Ok(match self {
            FieldDescriptor::Prime { p } => AnyField::Prime(PrimeField::new(*p)?),
            FieldDescriptor::Extension { p, m, gen } => {
                if *m == 1 {
                    AnyField::Prime(PrimeField::new(*p)?)
                } else {
                    AnyField::Extension(ExtensionField::with_generator_name(*p, *m, gen)?)
                }
            }
            FieldDescriptor::RationalFunction { p, m, var } => {
                if *m == 1 {
                    AnyField::RationalPrime(RationalFunctionField::new(PrimeField::new(*p)?, var))
                } else {
                    let base = ExtensionField::new(*p, *m)?;
                    AnyField::RationalExtension(RationalFunctionField::new(base, var))
                }
            }
        })
    }
}

/// `GF(p^m)` with the deterministic modulus; `m = 1` gives the prime field.
pub fn make_extension(p: u32, m: u32) -> Result<FieldDescriptor> {
    if m == 0 {
        return Err(Error::validation("extension degree must be at least 1"));
    }
    PrimeField::new(p)?;
    if m == 1 {
        return Ok(FieldDescriptor::Prime { p });
    }
    let desc = FieldDescriptor::Extension { p, m, gen: default_gen() };
    desc.build()?;
    Ok(desc)
}

/// A constructed field of any supported kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Prime(PrimeField),
    Extension(ExtensionField),
    RationalPrime(RationalFunctionField<PrimeField>),
    RationalExtension(RationalFunctionField<ExtensionField>),
}

/// Runs `$body` with `$f` bound to the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            $crate::coeff::AnyField::Prime($f) => $body,
            $crate::coeff::AnyField::Extension($f) => $body,
            $crate::coeff::AnyField::RationalPrime($f) => $body,
            $crate::coeff::AnyField::RationalExtension($f) => $body,
        }
    };
}

impl AnyField {
    pub fn descriptor(&self) -> FieldDescriptor {
        with_field!(self, f => f.descriptor())
    }
}

/// A field element tagged with its field; mixed-field operations fail.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement<F: Field> {
    field: F,
    value: F::Elem,
}

impl<F: Field> FieldElement<F> {
    pub fn new(field: F, value: F::Elem) -> Self {
        let value = field.normalize(&value);
        FieldElement { field, value }
    }

    pub fn from_i64(field: F, n: i64) -> Self {
        let value = field.from_i64(n);
        FieldElement { field, value }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn value(&self) -> &F::Elem {
        &self.value
    }

    pub fn into_value(self) -> F::Elem {
        self.value
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::structural(format!(
                "field mismatch: {:?} vs {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    fn wrap(&self, value: F::Elem) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(&self.value, &other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(&self.value)?))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(&self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn frobenius(&self, e: u32) -> Self {
        self.wrap(self.field.frobenius(&self.value, e))
    }
}

impl<F: Field> fmt::Debug for FieldElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.format(&self.value), self.field)
    }
}

impl<F: Field> fmt::Display for FieldElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}
