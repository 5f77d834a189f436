use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{
    make_extension, AnyField, ExtensionField, Field, PrimeField, RationalFunctionField,
};
use crate::error::{Error, Result};
use crate::multiplicity::{hk_function, hs_function, HKSample, HSSample, QuotientRingSpec};
use crate::polyring::{
    parse_polynomial, Algebra, Expr, IdealPresentation, Monomial, PolyRing, Polynomial, TermOrder,
};

/// The base of a family: `F_p[t_1..t_k]` or the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyBase {
    Param { p: u32, params: Vec<String> },
    Integers,
}

/// Polynomial with integer coefficients, exponents over the family variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<Vec<u32>, i128>,
}

impl IntPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i128)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    fn constant(nvars: usize, c: i128) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; nvars], c);
        }
        IntPoly { terms }
    }
}

fn overflow() -> Error {
    Error::validation("integer coefficient overflow while expanding a family generator")
}

/// Evaluation of polynomial text into `Z[vars]` with checked arithmetic.
struct IntAlgebra<'a> {
    vars: &'a [String],
}

impl Algebra for IntAlgebra<'_> {
    type Value = IntPoly;

    fn integer(&self, n: u64) -> Result<IntPoly> {
        Ok(IntPoly::constant(self.vars.len(), n as i128))
    }

    fn symbol(&self, name: &str) -> Result<IntPoly> {
        let i = self.vars.iter().position(|v| v == name).ok_or_else(|| {
            Error::validation(format!("undeclared symbol {name:?} (variables: {:?})", self.vars))
        })?;
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        Ok(IntPoly { terms: BTreeMap::from([(e, 1)]) })
    }

    fn add(&self, mut a: IntPoly, b: IntPoly) -> Result<IntPoly> {
        for (e, c) in b.terms {
            let slot = a.terms.entry(e).or_insert(0);
            *slot = slot.checked_add(c).ok_or_else(overflow)?;
        }
        a.terms.retain(|_, c| *c != 0);
        Ok(a)
    }

    fn sub(&self, a: IntPoly, b: IntPoly) -> Result<IntPoly> {
        let b = self.neg(b)?;
        self.add(a, b)
    }

    fn neg(&self, mut a: IntPoly) -> Result<IntPoly> {
        for c in a.terms.values_mut() {
            *c = c.checked_neg().ok_or_else(overflow)?;
        }
        Ok(a)
    }

    fn mul(&self, a: IntPoly, b: IntPoly) -> Result<IntPoly> {
        let mut out = IntPoly::default();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea
                    .iter()
                    .zip(eb)
                    .map(|(x, y)| x.checked_add(*y).ok_or_else(overflow))
                    .collect::<Result<_>>()?;
                let c = ca.checked_mul(*cb).ok_or_else(overflow)?;
                let slot = out.terms.entry(e).or_insert(0);
                *slot = slot.checked_add(c).ok_or_else(overflow)?;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    fn pow(&self, a: IntPoly, n: u32) -> Result<IntPoly> {
        let mut acc = IntPoly::constant(self.vars.len(), 1);
        for _ in 0..n {
            acc = self.mul(acc, a.clone())?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
enum Parametric {
    /// Generators in `F_p[params ++ vars]`.
    Param { ring: Arc<PolyRing<PrimeField>>, defining: Vec<Polynomial<PrimeField>>, ideal: Vec<Polynomial<PrimeField>> },
    Integers { defining: Vec<IntPoly>, ideal: Vec<IntPoly> },
}

/// A parametric defining ideal `J(t)` and family ideal `I(t)`.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    base: FamilyBase,
    vars: Vec<String>,
    order: TermOrder,
    defining_text: Vec<String>,
    ideal_text: Vec<String>,
    generators: Parametric,
}

impl FamilySpec {
    pub fn new(
        base: FamilyBase,
        vars: &[&str],
        order: Option<TermOrder>,
        defining: &[&str],
        ideal: &[&str],
    ) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let order = order.unwrap_or_else(|| TermOrder::degrevlex(vars.len()));
        // validates names and order arity
        PolyRing::new(PrimeField::new(2)?, vars.clone(), order.clone())?;
        if ideal.is_empty() {
            return Err(Error::validation("the family ideal needs at least one generator"));
        }
        let generators = match &base {
            FamilyBase::Param { p, params } => {
                let mut all = params.clone();
                all.extend(vars.iter().cloned());
                let ring = PolyRing::new(PrimeField::new(*p)?, all.clone(), TermOrder::degrevlex(all.len()))
                    .map_err(|e| match e {
                        Error::Validation(m) => {
                            Error::validation(format!("parameters and variables: {m}"))
                        }
                        other => other,
                    })?;
                let parse = |texts: &[&str], what: &str| -> Result<Vec<Polynomial<PrimeField>>> {
                    texts
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            let g = parse_polynomial(&ring, t)?;
                            if g.is_zero() {
                                return Err(Error::validation(format!("{what} generator {i} ({t:?}) is zero")));
                            }
                            Ok(g)
                        })
                        .collect()
                };
                let defining = parse(defining, "defining")?;
                let ideal = parse(ideal, "ideal")?;
                Parametric::Param { ring, defining, ideal }
            }
            FamilyBase::Integers => {
                let alg = IntAlgebra { vars: &vars };
                let parse = |texts: &[&str], what: &str| -> Result<Vec<IntPoly>> {
                    texts
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            let g = Expr::parse(t)?.evaluate(&alg)?;
                            if g.is_zero() {
                                return Err(Error::validation(format!("{what} generator {i} ({t:?}) is zero")));
                            }
                            Ok(g)
                        })
                        .collect()
                };
                Parametric::Integers { defining: parse(defining, "defining")?, ideal: parse(ideal, "ideal")? }
            }
        };
        Ok(FamilySpec {
            base,
            vars,
            order,
            defining_text: defining.iter().map(|s| s.to_string()).collect(),
            ideal_text: ideal.iter().map(|s| s.to_string()).collect(),
            generators,
        })
    }

    pub fn base(&self) -> &FamilyBase {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        match &self.base {
            FamilyBase::Param { params, .. } => params,
            FamilyBase::Integers => &[],
        }
    }

    /// The family with its ideal replaced by the bracket power `I^[q]`, taken
    /// generator-wise on the parametric polynomials.
    pub fn bracket_family(&self, q: u64) -> Result<FamilySpec> {
        let mut out = self.clone();
        match &mut out.generators {
            Parametric::Param { ring, ideal, .. } => {
                let e = crate::polyring::frobenius_exponent(ring.field().characteristic(), q)?;
                for g in ideal.iter_mut() {
                    *g = g.frobenius(e);
                }
            }
            Parametric::Integers { .. } => {
                return Err(Error::validation(
                    "bracket powers over the integers depend on the fiber characteristic",
                ))
            }
        }
        out.ideal_text = out.ideal_text.iter().map(|t| format!("({t})^{q}")).collect();
        Ok(out)
    }
}

/// A point of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberSpec {
    /// Parameter values as polynomial text in the generator `s` of `GF(p^m)`.
    Special { values: BTreeMap<String, String>, m: u32 },
    /// The generic point of a one-parameter base, over `F_p(t)`.
    Generic,
    /// Reduction of an integer family modulo `p`.
    Prime(u32),
}

impl FiberSpec {
    pub fn special(values: &[(&str, &str)]) -> Self {
        FiberSpec::Special {
            values: values.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            m: 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            FiberSpec::Special { values, m } => {
                let body = values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
                if *m > 1 {
                    format!("{body}[m={m}]")
                } else {
                    body
                }
            }
            FiberSpec::Generic => "GENERIC".to_string(),
            FiberSpec::Prime(p) => format!("p={p}"),
        }
    }
}

impl fmt::Display for FiberSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A specialized fiber: the quotient ring and the ideal over the fiber's field.
#[derive(Clone, Debug)]
pub struct FiberData<F: Field> {
    pub label: String,
    pub ring: QuotientRingSpec<F>,
    pub ideal: IdealPresentation<F>,
}

#[derive(Clone, Debug)]
pub enum Fiber {
    Prime(FiberData<PrimeField>),
    Extension(FiberData<ExtensionField>),
    Generic(FiberData<RationalFunctionField<PrimeField>>),
}

macro_rules! with_fiber {
    ($fiber:expr, $d:ident => $body:expr) => {
        match $fiber {
            Fiber::Prime($d) => $body,
            Fiber::Extension($d) => $body,
            Fiber::Generic($d) => $body,
        }
    };
}

impl Fiber {
    pub fn label(&self) -> &str {
        with_fiber!(self, d => &d.label)
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Fiber::Generic(_))
    }

    pub fn dimension(&self) -> usize {
        with_fiber!(self, d => d.ring.dimension())
    }

    pub fn characteristic(&self) -> u32 {
        with_fiber!(self, d => d.ring.ring().field().characteristic())
    }

    pub fn hk_function(&self, e_max: u32) -> Result<Vec<HKSample>> {
        with_fiber!(self, d => hk_function(&d.ring, &d.ideal, e_max))
    }

    pub fn hs_function(&self, n_max: u32) -> Result<Vec<HSSample>> {
        with_fiber!(self, d => hs_function(&d.ring, &d.ideal, n_max))
    }

    /// Generators of `J` and `I` as text.
    pub fn describe(&self) -> (Vec<String>, Vec<String>) {
        with_fiber!(self, d => (
            d.ring.defining().iter().map(|g| g.format()).collect(),
            d.ideal.generators().iter().map(|g| g.format()).collect(),
        ))
    }
}

/// Element of `field` given as text in its named elements.
fn parse_element<F: Field>(field: &F, text: &str) -> Result<F::Elem> {
    let ring = PolyRing::new(field.clone(), Vec::new(), TermOrder::degrevlex(0))?;
    let c = parse_polynomial(&ring, text)?;
    Ok(c.coefficient(&Monomial::one(0)))
}

struct Substitution<'a, F: Field> {
    field: &'a F,
    values: &'a [F::Elem],
    ring: &'a Arc<PolyRing<F>>,
}

impl<F: Field> Substitution<'_, F> {
    fn param(&self, g: &Polynomial<PrimeField>) -> Polynomial<F> {
        let k = self.values.len();
        let terms = g
            .terms()
            .iter()
            .map(|t| {
                let e = t.mono.exponents();
                let mut c = self.field.from_u64(t.coeff as u64);
                for (v, &a) in self.values.iter().zip(&e[..k]) {
                    c = self.field.mul(&c, &self.field.pow(v, a as u64));
                }
                (c, Monomial::new(&e[k..]))
            })
            .collect();
        Polynomial::from_terms(self.ring, terms)
    }

    fn integer(&self, g: &IntPoly) -> Polynomial<F> {
        let p = self.field.characteristic() as i128;
        let terms = g
            .terms()
            .map(|(e, c)| (self.field.from_u64(c.rem_euclid(p) as u64), Monomial::new(e)))
            .collect();
        Polynomial::from_terms(self.ring, terms)
    }
}

impl FamilySpec {
    fn build_fiber<F: Field>(&self, field: F, values: Vec<F::Elem>, label: String) -> Result<FiberData<F>> {
        let ring = PolyRing::new(field.clone(), self.vars.clone(), self.order.clone())?;
        let sub = Substitution { field: &field, values: &values, ring: &ring };
        let (defining, ideal): (Vec<Polynomial<F>>, Vec<Polynomial<F>>) = match &self.generators {
            Parametric::Param { defining, ideal, .. } => (
                defining.iter().map(|g| sub.param(g)).collect(),
                ideal.iter().map(|g| sub.param(g)).collect(),
            ),
            Parametric::Integers { defining, ideal } => (
                defining.iter().map(|g| sub.integer(g)).collect(),
                ideal.iter().map(|g| sub.integer(g)).collect(),
            ),
        };
        if let Some(i) = defining.iter().position(|g| g.is_zero()) {
            return Err(Error::validation(format!(
                "degenerate fiber {label}: defining generator {i} ({:?}) vanishes",
                self.defining_text[i]
            )));
        }
        let ideal: Vec<_> = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        if ideal.is_empty() {
            return Err(Error::validation(format!(
                "degenerate fiber {label}: every generator of the ideal {:?} vanishes",
                self.ideal_text
            )));
        }
        let quotient = QuotientRingSpec::new(&ring, defining)
            .map_err(|e| Error::validation(format!("degenerate fiber {label}: {e}")))?;
        let ideal = IdealPresentation::new(&ring, ideal)?;
        Ok(FiberData { label, ring: quotient, ideal })
    }
}

/// `A(p) = A ⊗ k(p)` and `I(p)` at the given point of the base.
pub fn specialize_fiber(family: &FamilySpec, fiber: &FiberSpec) -> Result<Fiber> {
    let label = fiber.label();
    match (&family.base, fiber) {
        (FamilyBase::Param { p, params }, FiberSpec::Special { values, m }) => {
            for k in values.keys() {
                if !params.contains(k) {
                    return Err(Error::validation(format!("fiber {label}: unknown parameter {k:?}")));
                }
            }
            let texts = params
                .iter()
                .map(|name| {
                    values.get(name).ok_or_else(|| {
                        Error::validation(format!("fiber {label}: no value for parameter {name:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match make_extension(*p, *m)?.build()? {
                AnyField::Prime(f) => {
                    let vals = texts.iter().map(|t| parse_element(&f, t)).collect::<Result<_>>()?;
                    Ok(Fiber::Prime(family.build_fiber(f, vals, label)?))
                }
                AnyField::Extension(f) => {
                    let vals = texts.iter().map(|t| parse_element(&f, t)).collect::<Result<_>>()?;
                    Ok(Fiber::Extension(family.build_fiber(f, vals, label)?))
                }
                _ => unreachable!("make_extension yields finite fields"),
            }
        }
        (FamilyBase::Param { p, params }, FiberSpec::Generic) => {
            if params.len() != 1 {
                return Err(Error::validation(format!(
                    "a generic fiber needs exactly one parameter, the family has {}",
                    params.len()
                )));
            }
            let f = RationalFunctionField::new(PrimeField::new(*p)?, &params[0]);
            let vals = vec![f.transcendental()];
            Ok(Fiber::Generic(family.build_fiber(f, vals, label)?))
        }
        (FamilyBase::Integers, FiberSpec::Prime(p)) => {
            let f = PrimeField::new(*p)?;
            Ok(Fiber::Prime(family.build_fiber(f, Vec::new(), label)?))
        }
        (FamilyBase::Param { .. }, FiberSpec::Prime(_)) => Err(Error::validation(
            "prime fibers need a family over the integers",
        )),
        (FamilyBase::Integers, _) => Err(Error::validation(
            "a family over the integers only has prime fibers",
        )),
    }
}
