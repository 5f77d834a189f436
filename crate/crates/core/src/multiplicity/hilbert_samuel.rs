use rayon::prelude::*;

use super::QuotientRingSpec;
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::polyring::IdealPresentation;

/// `length = ℓ(A/(J + I^n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HSSample {
    pub n: u32,
    pub length: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSEstimate {
    pub dimension: usize,
    /// The stabilized `d`-th difference, `d!` times the leading coefficient.
    pub multiplicity: i128,
    /// First and last `n` of the samples that enter the agreeing differences.
    pub window: (u32, u32),
    /// `d`-th differences; entry `k` uses samples `k..=k+d`.
    pub differences: Vec<i128>,
}

pub const DEFAULT_STABLE_RUN: usize = 3;

/// `ℓ(A/(J + I^n))` for `n = 1..=n_max`.
pub fn hs_function<F: Field>(
    r: &QuotientRingSpec<F>,
    ideal: &IdealPresentation<F>,
    n_max: u32,
) -> Result<Vec<HSSample>> {
    if n_max == 0 {
        return Err(Error::validation("n_max must be at least 1"));
    }
    let first = r.basis_with(ideal)?;
    r.require_primary(&first, "the ideal")?;
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let gb = if n == 1 { first.clone() } else { r.basis_with(&ideal.ordinary_power(n)?)? };
            let length = gb.colength().finite().ok_or_else(|| {
                Error::Arithmetic(format!("power n = {n} lost finite colength"))
            })?;
            Ok(HSSample { n, length })
        })
        .collect()
}

/// Multiplicity from the `d`-th differences, declared stable once the last
/// three agree.
pub fn hs_multiplicity(samples: &[HSSample], d: usize) -> Result<HSEstimate> {
    hs_multiplicity_with_run(samples, d, DEFAULT_STABLE_RUN)
}

/// As [`hs_multiplicity`] with a configurable number of agreeing differences.
pub fn hs_multiplicity_with_run(samples: &[HSSample], d: usize, run: usize) -> Result<HSEstimate> {
    let run = run.max(1);
    if samples.len() < d + run {
        return Err(Error::validation(format!(
            "{} samples are too few for dimension {d}; need at least {}",
            samples.len(),
            d + run
        )));
    }
    for w in samples.windows(2) {
        if w[1].n != w[0].n + 1 {
            return Err(Error::validation("samples must have consecutive n"));
        }
        if w[1].length < w[0].length {
            return Err(Error::validation(format!(
                "lengths decrease between n = {} and n = {}",
                w[0].n, w[1].n
            )));
        }
    }
    let mut diffs: Vec<i128> = samples.iter().map(|s| s.length as i128).collect();
    for _ in 0..d {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let last = *diffs.last().expect("enough samples");
    let mut start = diffs.len() - 1;
    while start > 0 && diffs[start - 1] == last {
        start -= 1;
    }
    if diffs.len() - start < run {
        return Err(Error::validation(format!(
            "differences of order {d} have not stabilized ({:?}); increase n_max",
            &diffs[diffs.len().saturating_sub(run)..]
        )));
    }
    let n0 = samples[0].n;
    Ok(HSEstimate {
        dimension: d,
        multiplicity: last,
        window: (n0 + start as u32, samples.last().unwrap().n),
        differences: diffs,
    })
}
