use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, TermOrder};
use crate::coeff::Field;
use crate::error::{Error, Result};

/// Polynomial ring `K[x_1..x_n]` with a fixed term order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: TermOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, order: TermOrder) -> Result<Arc<Self>> {
        if order.nvars() != vars.len() {
            return Err(Error::validation(format!(
                "term order covers {} variables, ring has {}",
                order.nvars(),
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::validation(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::validation(format!("duplicate variable {v:?}")));
            }
            if field.named_elements().iter().any(|(n, _)| n == v) {
                return Err(Error::validation(format!(
                    "variable {v:?} clashes with a named field element"
                )));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    /// Degrevlex ring over the given variable names.
    pub fn with_vars(field: F, vars: &[&str]) -> Result<Arc<Self>> {
        let n = vars.len();
        Self::new(field, vars.iter().map(|s| s.to_string()).collect(), TermOrder::degrevlex(n))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same variables and field under another order.
    pub fn with_order(&self, order: TermOrder) -> Result<Arc<Self>> {
        PolyRing::new(self.field.clone(), self.vars.clone(), order)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A nonzero coefficient with its monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub mono: Monomial,
}

// ---------------------------------------------------------------------------
// Term-list kernels. Inputs are sorted strictly descending with nonzero
// coefficients; outputs keep that invariant.

pub(crate) fn merge_add<F: Field>(
    f: &F,
    ord: &TermOrder,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = f.add(&a[i].coeff, &b[j].coeff);
                if !f.is_zero(&c) {
                    out.push(Term { coeff: c, mono: a[i].mono.clone() });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a - c·m·b`.
pub(crate) fn sub_mul_term<F: Field>(
    f: &F,
    ord: &TermOrder,
    a: &[Term<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
    b: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let neg_c = f.neg(c);
    let mut i = 0;
    for t in b {
        let mono = t.mono.mul(m);
        while i < a.len() && ord.cmp(&a[i].mono, &mono) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].mono == mono {
            let v = f.add(&a[i].coeff, &f.mul(&neg_c, &t.coeff));
            if !f.is_zero(&v) {
                out.push(Term { coeff: v, mono });
            }
            i += 1;
        } else {
            out.push(Term { coeff: f.mul(&neg_c, &t.coeff), mono });
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

pub(crate) fn scale_shift<F: Field>(
    f: &F,
    c: &F::Elem,
    m: &Monomial,
    a: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|t| Term { coeff: f.mul(c, &t.coeff), mono: t.mono.mul(m) }).collect()
}

/// Sorts and combines an arbitrary term list.
pub(crate) fn canonicalize<F: Field>(
    f: &F,
    ord: &TermOrder,
    terms: Vec<Term<F::Elem>>,
) -> Vec<Term<F::Elem>> {
    let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
    for t in terms {
        let c = f.normalize(&t.coeff);
        match acc.get_mut(&t.mono) {
            Some(v) => *v = f.add(v, &c),
            None => {
                acc.insert(t.mono, c);
            }
        }
    }
    let mut out: Vec<Term<F::Elem>> = acc
        .into_iter()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(mono, coeff)| Term { coeff, mono })
        .collect();
    out.sort_by(|a, b| ord.cmp(&b.mono, &a.mono));
    out
}

pub(crate) fn mul_terms<F: Field>(
    f: &F,
    ord: &TermOrder,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return scale_shift(f, &a[0].coeff, &a[0].mono, b);
    }
    if b.len() == 1 {
        return scale_shift(f, &b[0].coeff, &b[0].mono, a);
    }
    let mut all = Vec::with_capacity(a.len() * b.len());
    for s in a {
        for t in b {
            all.push(Term { coeff: f.mul(&s.coeff, &t.coeff), mono: s.mono.mul(&t.mono) });
        }
    }
    canonicalize(f, ord, all)
}

// ---------------------------------------------------------------------------

/// Sparse polynomial; terms sorted strictly descending in the ring's order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

pub(crate) fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        let f = ring.field();
        let c = f.normalize(&c);
        let terms = if f.is_zero(&c) {
            Vec::new()
        } else {
            vec![Term { coeff: c, mono: Monomial::one(ring.nvars()) }]
        };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        Self::monomial(ring, ring.field().one(), Monomial::var_power(ring.nvars(), i, 1))
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, c: F::Elem, mono: Monomial) -> Self {
        assert_eq!(mono.nvars(), ring.nvars(), "monomial arity does not match ring");
        let f = ring.field();
        let c = f.normalize(&c);
        let terms = if f.is_zero(&c) { Vec::new() } else { vec![Term { coeff: c, mono }] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: Vec<(F::Elem, Monomial)>) -> Self {
        let terms = terms
            .into_iter()
            .map(|(coeff, mono)| {
                assert_eq!(mono.nvars(), ring.nvars(), "monomial arity does not match ring");
                Term { coeff, mono }
            })
            .collect();
        Polynomial { ring: ring.clone(), terms: canonicalize(ring.field(), ring.order(), terms) }
    }

    /// Trusted constructor for kernels that already keep the invariants.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !ring.field().is_zero(&t.coeff)));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].mono.degree() == w[1].mono.degree())
    }

    /// Coefficient of `mono`, zero if absent.
    pub fn coefficient(&self, mono: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|t| &t.mono == mono)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::structural(format!(
                "ring mismatch: {:?} vs {:?}",
                self.ring.vars(),
                other.ring.vars()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let terms = merge_add(self.ring.field(), self.ring.order(), &self.terms, &other.terms);
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let terms = mul_terms(self.ring.field(), self.ring.order(), &self.terms, &other.terms);
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.ring.field();
        let terms = scale_shift(f, c, &Monomial::one(self.ring.nvars()), &self.terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_monomial(&self, c: &F::Elem, m: &Monomial) -> Self {
        let terms = scale_shift(self.ring.field(), c, m, &self.terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^{p^e}`, computed termwise since the Frobenius is a ring map.
    pub fn frobenius(&self, e: u32) -> Self {
        let f = self.ring.field();
        let q = (f.characteristic() as u64)
            .checked_pow(e)
            .and_then(|q| u32::try_from(q).ok())
            .expect("Frobenius exponent overflows u32");
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: f.frobenius(&t.coeff, e), mono: t.mono.pow(q) })
            .collect();
        // order is multiplicative, so powering preserves sortedness
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field().inv(lc).expect("nonzero lead");
                self.scale(&inv)
            }
        }
    }

    /// Re-expresses the polynomial in a ring with the same variables and
    /// field but possibly a different order.
    pub fn to_ring(&self, ring: &Arc<PolyRing<F>>) -> Result<Self> {
        if ring.vars() != self.ring.vars() || ring.field() != self.ring.field() {
            return Err(Error::structural("target ring has different variables or field"));
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.order().cmp(&b.mono, &a.mono));
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = self.ring.field();
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let c = f.format(&t.coeff);
            let c = if c.contains(['+', '-', '/']) { format!("({c})") } else { c };
            let m = t.mono.format(self.ring.vars());
            let piece = match (c.as_str(), t.mono.is_one()) {
                (_, true) => c,
                ("1", false) => m,
                _ => format!("{c}*{m}"),
            };
            if k > 0 {
                out.push_str(" + ");
            }
            out.push_str(&piece);
        }
        out
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: f.neg(&t.coeff), mono: t.mono.clone() })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}
