use std::collections::HashSet;

use rayon::prelude::*;

use super::{hk_estimate, hk_function, HKEstimate, QuotientRingSpec, Rational};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::polyring::{IdealPresentation, Polynomial};

/// Polynomials whose residues form a basis of `((J + x) : m)/(J + x)`.
pub fn socle_basis<F: Field>(
    r: &QuotientRingSpec<F>,
    sop: &IdealPresentation<F>,
) -> Result<Vec<Polynomial<F>>> {
    if sop.len() != r.dimension() {
        return Err(Error::validation(format!(
            "not a system of parameters: {} elements in a ring of dimension {}",
            sop.len(),
            r.dimension()
        )));
    }
    let gb = r.basis_with(sop)?;
    if gb.is_unit() {
        return Err(Error::validation("not a system of parameters: it generates the unit ideal"));
    }
    r.require_primary(&gb, "the system of parameters")?;
    gb.socle()
}

/// The default coefficient grid: every field element when the field is finite
/// with at most 64 elements.
pub fn default_grid<F: Field>(field: &F) -> Option<Vec<F::Elem>> {
    field.elements(64)
}

#[derive(Clone, Debug)]
pub struct RSigRow<F: Field> {
    /// Coordinates over the socle basis.
    pub coefficients: Vec<F::Elem>,
    pub element: Polynomial<F>,
    pub estimate: HKEstimate,
    /// `e_HK(x) − e_HK(x, u)` from the two estimates.
    pub difference: Rational,
}

/// Grid search for the F-rational signature at a fixed system of parameters.
/// The minimum over a finite grid only bounds the true infimum from above.
#[derive(Clone, Debug)]
pub struct RSigResult<F: Field> {
    pub sop: IdealPresentation<F>,
    pub socle: Vec<Polynomial<F>>,
    pub base: HKEstimate,
    pub rows: Vec<RSigRow<F>>,
    /// Index of the first row attaining the minimum difference.
    pub minimum: usize,
}

impl<F: Field> RSigResult<F> {
    pub fn min_row(&self) -> &RSigRow<F> {
        &self.rows[self.minimum]
    }

    pub fn min_difference(&self) -> Rational {
        self.min_row().difference
    }

    /// Rows whose difference is below `-(error bounds)`; empty when the
    /// estimates are mutually consistent.
    pub fn inconsistent_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| row.difference < -(self.base.error_bound + row.estimate.error_bound))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Coefficient vectors over the two affine charts: last coordinate 1, then
/// first coordinate 1, remaining coordinates from `grid`. Duplicates dropped.
fn chart_candidates<E: Clone + Eq + std::hash::Hash>(n: usize, grid: &[E], one: &E) -> Vec<Vec<E>> {
    let mut free: Vec<Vec<E>> = vec![vec![]];
    for _ in 1..n {
        free = free
            .into_iter()
            .flat_map(|v| {
                grid.iter().map(move |c| {
                    let mut v = v.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in &free {
        let mut last = v.clone();
        last.push(one.clone());
        if seen.insert(last.clone()) {
            out.push(last);
        }
    }
    for v in &free {
        let mut first = vec![one.clone()];
        first.extend(v.iter().cloned());
        if seen.insert(first.clone()) {
            out.push(first);
        }
    }
    out
}

pub fn rsig_search<F: Field>(
    r: &QuotientRingSpec<F>,
    sop: &IdealPresentation<F>,
    grid: &[F::Elem],
    e_max: u32,
) -> Result<RSigResult<F>> {
    let socle = socle_basis(r, sop)?;
    let field = r.ring().field();
    if socle.len() > 1 && grid.is_empty() {
        return Err(Error::validation(format!(
            "the socle has dimension {} but the coefficient grid is empty",
            socle.len()
        )));
    }
    let base = hk_estimate(&hk_function(r, sop, e_max)?)?;
    let candidates = chart_candidates(socle.len(), grid, &field.one());
    let rows = candidates
        .into_par_iter()
        .map(|coefficients| {
            let mut element = Polynomial::zero(r.ring());
            for (c, u) in coefficients.iter().zip(&socle) {
                element = &element + &u.scale(c);
            }
            let ideal = sop.extended([element.clone()])?;
            let estimate = hk_estimate(&hk_function(r, &ideal, e_max)?)?;
            let difference = base.value - estimate.value;
            Ok(RSigRow { coefficients, element, estimate, difference })
        })
        .collect::<Result<Vec<_>>>()?;
    let minimum = (0..rows.len())
        .min_by(|&a, &b| rows[a].difference.cmp(&rows[b].difference).then(a.cmp(&b)))
        .expect("at least one candidate");
    Ok(RSigResult { sop: sop.clone(), socle, base, rows, minimum })
}

#[derive(Clone, Debug)]
pub struct CSigRow {
    /// Position in the candidate list.
    pub index: usize,
    pub colength: u64,
    pub estimate: HKEstimate,
    pub ratio: Rational,
}

#[derive(Clone, Debug)]
pub struct CSigResult {
    pub base: HKEstimate,
    pub base_colength: u64,
    pub rows: Vec<CSigRow>,
    pub skipped: Vec<usize>,
    pub warnings: Vec<String>,
    /// Index into `rows` of the smallest ratio.
    pub minimum: Option<usize>,
}

impl CSigResult {
    pub fn min_ratio(&self) -> Option<Rational> {
        self.minimum.map(|i| self.rows[i].ratio)
    }
}

/// `(e_HK(x) − e_HK(I)) / (ℓ(R/x) − ℓ(R/I))` for each candidate `I ⊋ (x)`.
pub fn csig_search<F: Field>(
    r: &QuotientRingSpec<F>,
    sop: &IdealPresentation<F>,
    candidates: &[IdealPresentation<F>],
    e_max: u32,
) -> Result<CSigResult> {
    let sop_gb = r.basis_with(sop)?;
    r.require_primary(&sop_gb, "the system of parameters")?;
    let base_colength = sop_gb.colength().finite().expect("checked zero-dimensional");
    let base = hk_estimate(&hk_function(r, sop, e_max)?)?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut warnings = Vec::new();
    for (index, cand) in candidates.iter().enumerate() {
        let gb = r.basis_with(cand)?;
        for g in sop.generators() {
            if !gb.contains(g)? {
                return Err(Error::validation(format!(
                    "candidate {index} does not contain the parameter {}",
                    g.format()
                )));
            }
        }
        let colength = gb.colength().finite().expect("contains an m-primary ideal");
        if colength == base_colength {
            skipped.push(index);
            warnings.push(format!(
                "candidate {index} equals the parameter ideal modulo J; skipped (zero denominator)"
            ));
            continue;
        }
        let estimate = hk_estimate(&hk_function(r, cand, e_max)?)?;
        let ratio = (base.value - estimate.value)
            / Rational::from_integer(base_colength as i128 - colength as i128);
        rows.push(CSigRow { index, colength, estimate, ratio });
    }
    let minimum = (0..rows.len()).min_by(|&a, &b| rows[a].ratio.cmp(&rows[b].ratio).then(a.cmp(&b)));
    Ok(CSigResult { base, base_colength, rows, skipped, warnings, minimum })
}
