use std::fmt;
use std::sync::Arc;

use super::prime::PrimeField;
use super::{upoly, Field, FieldDescriptor};
use crate::error::{Error, Result};

/// `GF(p^m) = F_p[s]/(modulus)`, elements stored as trimmed coefficient
/// vectors of degree `< m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    base: PrimeField,
    modulus: Arc<[u32]>,
    gen: Arc<str>,
}

impl ExtensionField {
    /// `GF(p^m)` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_generator_name(p, m, "s")
    }

    pub fn with_generator_name(p: u32, m: u32, gen: &str) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let modulus = smallest_irreducible(base, m)?;
        Ok(ExtensionField { base, modulus: modulus.into(), gen: gen.into() })
    }

    /// Uses a caller-supplied modulus, given lowest coefficient first.
    pub fn with_modulus(p: u32, modulus: Vec<u32>, gen: &str) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let mut modulus: Vec<u32> = modulus.into_iter().map(|c| base.from_u64(c as u64)).collect();
        upoly::trim(&base, &mut modulus);
        if modulus.len() < 2 {
            return Err(Error::validation("extension modulus must have degree at least 1"));
        }
        if modulus.last() != Some(&1) {
            return Err(Error::validation("extension modulus must be monic"));
        }
        if !is_irreducible(base, &modulus) {
            return Err(Error::validation(format!(
                "modulus {} is reducible over F_{p}",
                upoly::format(&base, &modulus, gen)
            )));
        }
        Ok(ExtensionField { base, modulus: modulus.into(), gen: gen.into() })
    }

    pub fn degree(&self) -> u32 {
        (self.modulus.len() - 1) as u32
    }

    /// Modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// The class of `s`.
    pub fn generator(&self) -> Vec<u32> {
        upoly::rem(&self.base, &[0, 1], &self.modulus)
    }

    /// Reduces an arbitrary coefficient vector into canonical form.
    pub fn element(&self, coeffs: &[u32]) -> Vec<u32> {
        let mut v: Vec<u32> = coeffs.iter().map(|&c| self.base.from_u64(c as u64)).collect();
        upoly::trim(&self.base, &mut v);
        upoly::rem(&self.base, &v, &self.modulus)
    }
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {}",
            self.base.p(),
            self.degree(),
            upoly::format(&self.base, &self.modulus, &self.gen)
        )
    }
}

/// Rabin-style test: no factor of degree `i ≤ m/2` divides `f`, checked via
/// `gcd(f, s^{p^i} - s) = 1`.
pub fn is_irreducible(base: PrimeField, f: &[u32]) -> bool {
    let m = match upoly::degree(f) {
        Some(0) | None => return false,
        Some(m) => m,
    };
    if m == 1 {
        return true;
    }
    let p = base.p() as u128;
    let x = vec![0, 1];
    let mut h = upoly::rem(&base, &x, f);
    for _ in 1..=m / 2 {
        h = upoly::pow_mod(&base, &h, p, f);
        let diff = upoly::sub(&base, &h, &x);
        if upoly::gcd(&base, f, &diff).len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree `m`, ordering candidates by their
/// coefficient vectors read from `s^{m-1}` down to the constant term.
pub fn smallest_irreducible(base: PrimeField, m: u32) -> Result<Vec<u32>> {
    if m == 0 {
        return Err(Error::validation("extension degree must be at least 1"));
    }
    let p = base.p() as u128;
    let count = p
        .checked_pow(m)
        .ok_or_else(|| Error::validation(format!("GF({p}^{m}) is too large")))?;
    let m = m as usize;
    for k in 0..count {
        let mut coeffs = vec![0u32; m + 1];
        coeffs[m] = 1;
        let mut rest = k;
        for c in coeffs[..m].iter_mut() {
            *c = (rest % p) as u32;
            rest /= p;
        }
        if is_irreducible(base, &coeffs) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field for ExtensionField {
    type Elem = Vec<u32>;

    fn characteristic(&self) -> u32 {
        self.base.p()
    }

    fn order(&self) -> Option<u128> {
        (self.base.p() as u128).checked_pow(self.degree())
    }

    fn zero(&self) -> Vec<u32> {
        Vec::new()
    }

    fn one(&self) -> Vec<u32> {
        vec![1]
    }

    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        upoly::add(&self.base, a, b)
    }

    fn sub(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        upoly::sub(&self.base, a, b)
    }

    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|c| self.base.neg(c)).collect()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        upoly::rem(&self.base, &upoly::mul(&self.base, a, b), &self.modulus)
    }

    fn inv(&self, a: &Vec<u32>) -> Result<Vec<u32>> {
        if a.is_empty() {
            return Err(Error::Arithmetic(format!("inverse of zero in {self:?}")));
        }
        let (g, s) = upoly::ext_gcd_inverse(&self.base, a, &self.modulus);
        debug_assert_eq!(g, vec![1]);
        Ok(s)
    }

    fn from_u64(&self, n: u64) -> Vec<u32> {
        let c = self.base.from_u64(n);
        if c == 0 {
            Vec::new()
        } else {
            vec![c]
        }
    }

    fn frobenius(&self, a: &Vec<u32>, e: u32) -> Vec<u32> {
        let e = e % self.degree();
        let p = self.base.p() as u64;
        let mut out = a.clone();
        for _ in 0..e {
            out = self.pow(&out, p);
        }
        out
    }

    fn named_elements(&self) -> Vec<(String, Vec<u32>)> {
        vec![(self.gen.to_string(), self.generator())]
    }

    fn elements(&self, limit: usize) -> Option<Vec<Vec<u32>>> {
        let total = self.order()?;
        if total > limit as u128 {
            return None;
        }
        let p = self.base.p() as u128;
        let m = self.degree() as usize;
        Some(
            (0..total)
                .map(|k| {
                    let mut rest = k;
                    let coeffs: Vec<u32> = (0..m)
                        .map(|_| {
                            let c = (rest % p) as u32;
                            rest /= p;
                            c
                        })
                        .collect();
                    self.element(&coeffs)
                })
                .collect(),
        )
    }

    fn format(&self, a: &Vec<u32>) -> String {
        upoly::format(&self.base, a, &self.gen)
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Extension {
            p: self.base.p(),
            m: self.degree(),
            gen: self.gen.to_string(),
        }
    }
}
