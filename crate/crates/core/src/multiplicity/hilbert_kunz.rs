use num_rational::Ratio;
use rayon::prelude::*;

use super::{abs, to_f64, QuotientRingSpec, Rational};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::polyring::IdealPresentation;

/// One value of the Hilbert–Kunz function: `length = ℓ(A/(J + I^[q]))` with
/// `q = p^e`, normalized by `q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HKSample {
    pub p: u32,
    pub e: u32,
    pub q: u64,
    pub dim: u32,
    pub length: u64,
    pub normalized: Rational,
}

impl HKSample {
    fn new(p: u32, e: u32, dim: u32, length: u64) -> Result<Self> {
        let q = (p as u64)
            .checked_pow(e)
            .ok_or_else(|| Error::validation(format!("{p}^{e} overflows")))?;
        let den = (q as i128)
            .checked_pow(dim)
            .ok_or_else(|| Error::validation(format!("q^d = {q}^{dim} overflows")))?;
        Ok(HKSample { p, e, q, dim, length, normalized: Ratio::new(length as i128, den) })
    }

    /// `q^d`, the normalizing denominator before reduction.
    pub fn scale(&self) -> u128 {
        (self.q as u128).pow(self.dim)
    }

    pub fn decimal(&self) -> f64 {
        to_f64(&self.normalized)
    }
}

/// Limit estimate from a run of consecutive samples. `d_hat` and
/// `error_bound` are empirical and carry no guarantee.
#[derive(Clone, Debug, PartialEq)]
pub struct HKEstimate {
    pub value: Rational,
    pub d_hat: Rational,
    pub error_bound: Rational,
    pub samples: Vec<HKSample>,
}

impl HKEstimate {
    pub fn value_f64(&self) -> f64 {
        to_f64(&self.value)
    }

    pub fn d_hat_f64(&self) -> f64 {
        to_f64(&self.d_hat)
    }

    pub fn error_bound_f64(&self) -> f64 {
        to_f64(&self.error_bound)
    }
}

/// `ℓ(A/(J + I^[p^e]))` for `e = 1..=e_max`, in order. Primality to the origin
/// is checked at `e = 1`; for larger `e` the bracket power only shrinks.
pub fn hk_function<F: Field>(
    r: &QuotientRingSpec<F>,
    ideal: &IdealPresentation<F>,
    e_max: u32,
) -> Result<Vec<HKSample>> {
    if e_max == 0 {
        return Err(Error::validation("e_max must be at least 1"));
    }
    r.check_ring(ideal)?;
    let p = r.ring().field().characteristic();
    let dim = r.dimension() as u32;
    let first = r.basis_with(&ideal.frobenius_power(p as u64)?)?;
    r.require_primary(&first, "the ideal")?;
    if first.is_unit() {
        return (1..=e_max).map(|e| HKSample::new(p, e, dim, 0)).collect();
    }
    let first_len = first.colength().finite().expect("checked zero-dimensional");
    let mut rest: Vec<Result<HKSample>> = (2..=e_max)
        .into_par_iter()
        .map(|e| {
            let q = (p as u64)
                .checked_pow(e)
                .ok_or_else(|| Error::validation(format!("{p}^{e} overflows")))?;
            let gb = r.basis_with(&ideal.frobenius_power(q)?)?;
            let len = gb.colength().finite().ok_or_else(|| {
                Error::Arithmetic(format!("bracket power at e = {e} lost finite colength"))
            })?;
            HKSample::new(p, e, dim, len)
        })
        .collect();
    let mut out = vec![HKSample::new(p, 1, dim, first_len)?];
    for s in rest.drain(..) {
        out.push(s?);
    }
    Ok(out)
}

/// `value` is the last normalized sample, `d_hat = max p^e·|n(e+1) − n(e)|`
/// over consecutive pairs and `error_bound = 2·d_hat/p^{e_max}`.
pub fn hk_estimate(samples: &[HKSample]) -> Result<HKEstimate> {
    if samples.len() < 2 {
        return Err(Error::validation("an estimate needs at least two samples"));
    }
    let p = samples[0].p;
    for w in samples.windows(2) {
        if w[1].p != p || w[1].e != w[0].e + 1 {
            return Err(Error::validation(
                "samples must share a characteristic and have consecutive exponents",
            ));
        }
    }
    let mut d_hat = Rational::from_integer(0);
    for w in samples.windows(2) {
        let step = abs(w[1].normalized - w[0].normalized) * Rational::from_integer(w[0].q as i128);
        if step > d_hat {
            d_hat = step;
        }
    }
    let last = samples.last().expect("nonempty");
    let error_bound = d_hat * Rational::from_integer(2) / Rational::from_integer(last.q as i128);
    Ok(HKEstimate { value: last.normalized, d_hat, error_bound, samples: samples.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::PrimeField;
    use crate::polyring::{parse_polynomial, PolyRing};

    fn rat(n: i128, d: i128) -> Rational {
        Ratio::new(n, d)
    }

    #[test]
    fn regular_ring() {
        let r = PolyRing::with_vars(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        let a = QuotientRingSpec::polynomial_ring(&r);
        let m = IdealPresentation::maximal(&r).unwrap();
        let s = hk_function(&a, &m, 3).unwrap();
        assert_eq!(s.iter().map(|s| s.length).collect::<Vec<_>>(), [8, 64, 512]);
        assert!(s.iter().all(|s| s.normalized == rat(1, 1)));
        let est = hk_estimate(&s).unwrap();
        assert_eq!((est.value, est.d_hat, est.error_bound), (rat(1, 1), rat(0, 1), rat(0, 1)));
    }

    #[test]
    fn quartic_first_sample() {
        let r = PolyRing::with_vars(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        let f = parse_polynomial(&r, "z^4 + x*y*z^2 + (x^3+y^3)*z").unwrap();
        let a = QuotientRingSpec::new(&r, vec![f]).unwrap();
        let s = hk_function(&a, &IdealPresentation::maximal(&r).unwrap(), 1).unwrap();
        assert_eq!((s[0].length, s[0].normalized), (8, rat(2, 1)));
    }

    #[test]
    fn monomial_staircase() {
        let r = PolyRing::with_vars(PrimeField::new(3).unwrap(), &["x", "y"]).unwrap();
        let a = QuotientRingSpec::polynomial_ring(&r);
        let i = IdealPresentation::parse(&r, &["x^2", "y^3"]).unwrap();
        let s = hk_function(&a, &i, 3).unwrap();
        assert_eq!(s[0].length, 54);
        assert!(s.iter().all(|s| s.normalized == rat(6, 1) && s.length == 6 * s.q * s.q));
    }

    #[test]
    fn estimator_arithmetic() {
        let mk = |e, n: Rational| HKSample {
            p: 2,
            e,
            q: 1 << e,
            dim: 2,
            length: 0,
            normalized: n,
        };
        let est = hk_estimate(&[mk(1, rat(2, 1)), mk(2, rat(11, 4))]).unwrap();
        assert_eq!(est.d_hat, rat(3, 2));
        assert_eq!(est.error_bound, rat(3, 4));
        assert_eq!(est.value, rat(11, 4));
        assert!(hk_estimate(&[mk(1, rat(2, 1))]).is_err());
        assert!(hk_estimate(&[mk(1, rat(2, 1)), mk(3, rat(2, 1))]).is_err());
    }

    #[test]
    fn validation() {
        let r = PolyRing::with_vars(PrimeField::new(3).unwrap(), &["x", "y"]).unwrap();
        let a = QuotientRingSpec::polynomial_ring(&r);
        let m = IdealPresentation::maximal(&r).unwrap();
        assert!(matches!(hk_function(&a, &m, 0), Err(Error::Validation(_))));
        let bad = IdealPresentation::parse(&r, &["x*y", "x - 1"]).unwrap();
        let err = hk_function(&a, &bad, 2).unwrap_err();
        assert!(err.to_string().contains("power of x"), "{err}");
        let line = IdealPresentation::parse(&r, &["x"]).unwrap();
        assert!(matches!(hk_function(&a, &line, 2), Err(Error::Validation(_))));
        let unit = IdealPresentation::parse(&r, &["x", "1"]).unwrap();
        let s = hk_function(&a, &unit, 2).unwrap();
        assert!(s.iter().all(|s| s.length == 0));
    }
}
