use rayon::prelude::*;

use super::{specialize_fiber, Fiber, FamilyBase, FamilySpec, FiberSpec};
use crate::error::{Error, Result};
use crate::multiplicity::{abs, hk_estimate, HKEstimate, HKSample, HSSample, Rational};

/// Per-fiber data of a sweep, in configuration order.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberRow {
    pub label: String,
    pub generic: bool,
    pub characteristic: u32,
    pub dim: usize,
    pub hk: Vec<HKSample>,
    pub estimate: Option<HKEstimate>,
    pub hs: Vec<HSSample>,
}

/// A failed comparison: the fiber and the exponent (or power) where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub fiber: String,
    pub index: u32,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Verdict { pass: violations.is_empty(), violations }
    }

    pub fn label(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    Semicontinuity,
    Monotonicity,
    HilbertSamuel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub kind: SweepKind,
    pub rows: Vec<FiberRow>,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

impl SweepResult {
    pub fn row(&self, label: &str) -> Option<&FiberRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

fn fibers_of(family: &FamilySpec, fibers: &[FiberSpec]) -> Result<Vec<Fiber>> {
    let mut labels = std::collections::HashSet::new();
    for f in fibers {
        if !labels.insert(f.label()) {
            return Err(Error::validation(format!("fiber {} listed twice", f.label())));
        }
    }
    fibers.iter().map(|f| specialize_fiber(family, f)).collect()
}

fn require_generic(family: &FamilySpec, fibers: &[FiberSpec]) -> Result<()> {
    if !matches!(family.base(), FamilyBase::Param { params, .. } if params.len() == 1) {
        return Err(Error::validation("this check needs a family with exactly one parameter"));
    }
    if !fibers.contains(&FiberSpec::Generic) {
        return Err(Error::validation("this check needs a GENERIC fiber"));
    }
    Ok(())
}

fn dimension_warnings(rows: &[FiberRow]) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(first) = rows.first() {
        for r in rows {
            if r.dim != first.dim {
                out.push(format!(
                    "fiber {} has dimension {} but fiber {} has dimension {}",
                    r.label, r.dim, first.label, first.dim
                ));
            }
        }
    }
    out
}

/// Specializes every fiber and computes its Hilbert–Kunz samples (and
/// Hilbert–Samuel samples when `n_max > 0`). Fibers run in parallel; rows keep
/// configuration order.
pub fn fiber_rows(family: &FamilySpec, fibers: &[FiberSpec], e_max: u32, n_max: u32) -> Result<Vec<FiberRow>> {
    let fibers = fibers_of(family, fibers)?;
    fibers
        .par_iter()
        .map(|f| {
            let hk = if e_max > 0 { f.hk_function(e_max)? } else { Vec::new() };
            let estimate = if hk.len() >= 2 { Some(hk_estimate(&hk)?) } else { None };
            let hs = if n_max > 0 { f.hs_function(n_max)? } else { Vec::new() };
            Ok(FiberRow {
                label: f.label().to_string(),
                generic: f.is_generic(),
                characteristic: f.characteristic(),
                dim: f.dimension(),
                hk,
                estimate,
                hs,
            })
        })
        .collect()
}

fn generic_row(rows: &[FiberRow]) -> Result<&FiberRow> {
    rows.iter().find(|r| r.generic).ok_or_else(|| Error::validation("no GENERIC row in the table"))
}

/// `length_GENERIC(e) ≤ length_s(e)` for every special fiber `s` and every `e`.
pub fn semicontinuity_verdict(rows: &[FiberRow]) -> Result<Verdict> {
    let g = generic_row(rows)?;
    let mut violations = Vec::new();
    for s in rows.iter().filter(|r| !r.generic) {
        for (a, b) in g.hk.iter().zip(&s.hk) {
            if a.length > b.length {
                violations.push(Violation {
                    fiber: s.label.clone(),
                    index: b.e,
                    detail: format!("length GENERIC = {} > {} = length {}", a.length, b.length, s.label),
                });
            }
        }
    }
    Ok(Verdict::from_violations(violations))
}

/// `estimate_GENERIC ≤ estimate_s + error_GENERIC + error_s` for every special `s`.
pub fn monotonicity_verdict(rows: &[FiberRow]) -> Result<Verdict> {
    let g = generic_row(rows)?;
    let ge = g.estimate.as_ref().ok_or_else(|| Error::validation("GENERIC row has no estimate"))?;
    let mut violations = Vec::new();
    for s in rows.iter().filter(|r| !r.generic) {
        let se = s.estimate.as_ref().ok_or_else(|| {
            Error::validation(format!("fiber {} has no estimate", s.label))
        })?;
        if ge.value > se.value + ge.error_bound + se.error_bound {
            violations.push(Violation {
                fiber: s.label.clone(),
                index: se.samples.last().map_or(0, |x| x.e),
                detail: format!(
                    "estimate GENERIC = {} exceeds {} + error bounds {} + {}",
                    ge.value, se.value, ge.error_bound, se.error_bound
                ),
            });
        }
    }
    Ok(Verdict::from_violations(violations))
}

/// The GENERIC tuple `(ℓ(A/I), ℓ(A/I²), ...)` is lexicographically at most
/// every special tuple.
pub fn hs_verdict(rows: &[FiberRow]) -> Result<Verdict> {
    let g = generic_row(rows)?;
    let gl: Vec<u64> = g.hs.iter().map(|s| s.length).collect();
    let mut violations = Vec::new();
    for s in rows.iter().filter(|r| !r.generic) {
        let sl: Vec<u64> = s.hs.iter().map(|s| s.length).collect();
        if gl > sl {
            let k = gl.iter().zip(&sl).position(|(a, b)| a != b).unwrap_or(0);
            violations.push(Violation {
                fiber: s.label.clone(),
                index: k as u32 + 1,
                detail: format!(
                    "GENERIC tuple exceeds {} first at n = {}: {} > {}",
                    s.label,
                    k + 1,
                    gl[k],
                    sl[k]
                ),
            });
        }
    }
    Ok(Verdict::from_violations(violations))
}

pub fn term_semicontinuity_check(family: &FamilySpec, fibers: &[FiberSpec], e_max: u32) -> Result<SweepResult> {
    require_generic(family, fibers)?;
    let rows = fiber_rows(family, fibers, e_max, 0)?;
    let verdict = semicontinuity_verdict(&rows)?;
    let warnings = dimension_warnings(&rows);
    Ok(SweepResult { kind: SweepKind::Semicontinuity, rows, verdict, warnings })
}

pub fn hk_monotonicity_check(family: &FamilySpec, fibers: &[FiberSpec], e_max: u32) -> Result<SweepResult> {
    require_generic(family, fibers)?;
    if e_max < 2 {
        return Err(Error::validation("the monotonicity check needs e_max ≥ 2 for estimates"));
    }
    let rows = fiber_rows(family, fibers, e_max, 0)?;
    let verdict = monotonicity_verdict(&rows)?;
    let warnings = dimension_warnings(&rows);
    Ok(SweepResult { kind: SweepKind::Monotonicity, rows, verdict, warnings })
}

pub fn hs_family_sweep(family: &FamilySpec, fibers: &[FiberSpec], n_max: u32) -> Result<SweepResult> {
    require_generic(family, fibers)?;
    if n_max == 0 {
        return Err(Error::validation("n_max must be at least 1"));
    }
    let rows = fiber_rows(family, fibers, 0, n_max)?;
    let verdict = hs_verdict(&rows)?;
    let warnings = dimension_warnings(&rows);
    Ok(SweepResult { kind: SweepKind::HilbertSamuel, rows, verdict, warnings })
}

/// One prime of a reduction-mod-p sweep. `delta[k]` is
/// `|n(e_{k+1}) − n(e_k)|` and `scaled[k] = p·delta[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModpRow {
    pub p: u32,
    pub dim: usize,
    pub hk: Vec<HKSample>,
    pub delta: Vec<Rational>,
    pub scaled: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModpResult {
    pub rows: Vec<ModpRow>,
    /// For each consecutive pair of exponents, the maximum of `p·δ_p` over
    /// the primes.
    pub common_bound: Vec<Rational>,
    pub skipped: Vec<(u32, String)>,
    pub warnings: Vec<String>,
}

impl ModpResult {
    /// Reported only: a table exists and every column has a finite bound.
    pub fn verdict(&self) -> Verdict {
        if self.rows.is_empty() {
            Verdict {
                pass: false,
                violations: vec![Violation {
                    fiber: "all".into(),
                    index: 0,
                    detail: "every prime was skipped".into(),
                }],
            }
        } else {
            Verdict { pass: true, violations: Vec::new() }
        }
    }
}

pub fn modp_verdict_bound(rows: &[ModpRow]) -> Vec<Rational> {
    let width = rows.iter().map(|r| r.scaled.len()).min().unwrap_or(0);
    (0..width)
        .map(|k| rows.iter().map(|r| r.scaled[k]).max().expect("nonempty"))
        .collect()
}

/// Normalized lengths per prime with the step diagnostics. Degenerate primes
/// are skipped with a warning.
pub fn modp_sweep(family: &FamilySpec, primes: &[u32], e_max: u32) -> Result<ModpResult> {
    if *family.base() != FamilyBase::Integers {
        return Err(Error::validation("the mod-p sweep needs a family over the integers"));
    }
    let computed: Vec<(u32, Result<ModpRow>)> = primes
        .par_iter()
        .map(|&p| {
            let row = specialize_fiber(family, &FiberSpec::Prime(p)).and_then(|f| {
                let hk = f.hk_function(e_max)?;
                let delta: Vec<Rational> =
                    hk.windows(2).map(|w| abs(w[1].normalized - w[0].normalized)).collect();
                let scaled = delta.iter().map(|d| *d * Rational::from_integer(p as i128)).collect();
                Ok(ModpRow { p, dim: f.dimension(), hk, delta, scaled })
            });
            (p, row)
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut warnings = Vec::new();
    for (p, r) in computed {
        match r {
            Ok(row) => rows.push(row),
            Err(Error::Validation(m)) if m.contains("degenerate fiber") => {
                warnings.push(format!("prime {p} skipped: {m}"));
                skipped.push((p, m));
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(first) = rows.first() {
        for r in &rows {
            if r.dim != first.dim {
                warnings.push(format!(
                    "fiber p={} has dimension {} but p={} has dimension {}",
                    r.p, r.dim, first.p, first.dim
                ));
            }
        }
    }
    let common_bound = modp_verdict_bound(&rows);
    Ok(ModpResult { rows, common_bound, skipped, warnings })
}

/// Plausibility probe for the uniform constants `C` and `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformBoundReport {
    pub rows: Vec<FiberRow>,
    /// `max ℓ(A/I^n)/n^d` over fibers and `n`.
    pub c_hat: Option<Rational>,
    /// `max p^e·|Δ_e|` over fibers.
    pub d_hat: Option<Rational>,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

pub fn uniform_bound_verdict(rows: &[FiberRow]) -> (Option<Rational>, Option<Rational>, Verdict) {
    let c_hat = rows
        .iter()
        .flat_map(|r| {
            r.hs.iter().map(move |s| {
                Rational::new(s.length as i128, (s.n as i128).pow(r.dim as u32))
            })
        })
        .max();
    let d_hat = rows.iter().filter_map(|r| r.estimate.as_ref().map(|e| e.d_hat)).max();
    let mut violations = Vec::new();
    if c_hat.is_none() {
        violations.push(Violation { fiber: "all".into(), index: 0, detail: "no Hilbert–Samuel samples".into() });
    }
    if d_hat.is_none() {
        violations.push(Violation { fiber: "all".into(), index: 0, detail: "no Hilbert–Kunz estimates".into() });
    }
    (c_hat, d_hat, Verdict::from_violations(violations))
}

/// Requires `assume_reduced`: the convergence bound presupposes reduced
/// fibers, which is not checked.
pub fn uniform_bound_probe(
    family: &FamilySpec,
    fibers: &[FiberSpec],
    e_max: u32,
    n_max: u32,
    assume_reduced: bool,
) -> Result<UniformBoundReport> {
    if !assume_reduced {
        return Err(Error::validation(
            "the uniform-bound probe assumes reduced fibers; set assume_reduced to acknowledge",
        ));
    }
    if e_max < 2 || n_max == 0 {
        return Err(Error::validation("the probe needs e_max ≥ 2 and n_max ≥ 1"));
    }
    let rows = fiber_rows(family, fibers, e_max, n_max)?;
    let (c_hat, d_hat, verdict) = uniform_bound_verdict(&rows);
    let warnings = dimension_warnings(&rows);
    Ok(UniformBoundReport { rows, c_hat, d_hat, verdict, warnings })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    const MONSKY: &str = "z^4 + x*y*z^2 + (x^3+y^3)*z + t*x^2*y^2";

    fn monsky() -> FamilySpec {
        FamilySpec::new(
            FamilyBase::Param { p: 2, params: vec!["t".into()] },
            &["x", "y", "z"],
            None,
            &[MONSKY],
            &["x", "y", "z"],
        )
        .unwrap()
    }

    fn three() -> Vec<FiberSpec> {
        vec![FiberSpec::Generic, FiberSpec::special(&[("t", "0")]), FiberSpec::special(&[("t", "1")])]
    }

    fn lengths(r: &FiberRow) -> Vec<u64> {
        r.hk.iter().map(|s| s.length).collect()
    }

    #[test]
    fn monsky_semicontinuity() {
        let res = term_semicontinuity_check(&monsky(), &three(), 4).unwrap();
        assert!(res.verdict.pass);
        assert_eq!(lengths(res.row("GENERIC").unwrap()), [8, 44, 188, 764]);
        assert_eq!(lengths(res.row("t=0").unwrap()), [8, 44, 212, 932]);
        assert_eq!(lengths(res.row("t=1").unwrap()), [8, 44, 196, 784]);
        assert!(res.warnings.is_empty());
        assert_eq!(semicontinuity_verdict(&res.rows).unwrap(), res.verdict);
    }

    #[test]
    fn constant_family_is_equal_everywhere() {
        let fam = FamilySpec::new(
            FamilyBase::Param { p: 3, params: vec!["t".into()] },
            &["x", "y"],
            None,
            &["x^2 - y^3"],
            &["x", "y"],
        )
        .unwrap();
        let fibers = [FiberSpec::Generic, FiberSpec::special(&[("t", "0")]), FiberSpec::special(&[("t", "2")])];
        let res = term_semicontinuity_check(&fam, &fibers, 3).unwrap();
        assert!(res.verdict.pass);
        assert!(res.rows.iter().all(|r| lengths(r) == lengths(&res.rows[0])));
        let mono = hk_monotonicity_check(&fam, &fibers, 3).unwrap();
        assert!(mono.verdict.pass);
        let hs = hs_family_sweep(&fam, &fibers, 5).unwrap();
        assert!(hs.verdict.pass);
    }

    #[test]
    fn verdicts_name_the_violating_pair() {
        let res = term_semicontinuity_check(&monsky(), &three(), 3).unwrap();
        let mut rows = res.rows.clone();
        // swap the GENERIC flag so t=0 plays the generic point
        rows[0].generic = false;
        rows[1].generic = true;
        let v = semicontinuity_verdict(&rows).unwrap();
        assert!(!v.pass);
        assert_eq!(v.violations[0].fiber, "GENERIC");
        assert_eq!(v.violations[0].index, 3);
    }

    #[test]
    fn hs_sweep_on_the_quartic_family() {
        let res = hs_family_sweep(&monsky(), &three(), 4).unwrap();
        assert!(res.verdict.pass);
        for r in &res.rows {
            assert_eq!(r.hs.iter().map(|s| s.length).collect::<Vec<_>>(), [1, 4, 10, 20]);
        }
        let fam = FamilySpec::new(
            FamilyBase::Param { p: 2, params: vec!["t".into()] },
            &["x", "y"],
            None,
            &[],
            &["x^2", "y^2 + t*x*y"],
        )
        .unwrap();
        let fibers = [FiberSpec::Generic, FiberSpec::special(&[("t", "0")]), FiberSpec::special(&[("t", "1")])];
        assert!(hs_family_sweep(&fam, &fibers, 4).unwrap().verdict.pass);
    }

    #[test]
    fn checks_need_a_generic_fiber() {
        let fibers = [FiberSpec::special(&[("t", "0")])];
        assert!(term_semicontinuity_check(&monsky(), &fibers, 2).is_err());
        let twice = [FiberSpec::Generic, FiberSpec::Generic];
        assert!(term_semicontinuity_check(&monsky(), &twice, 2).is_err());
    }

    #[test]
    fn regular_integer_family() {
        let fam = FamilySpec::new(FamilyBase::Integers, &["x", "y", "z"], None, &[], &["x", "y", "z"]).unwrap();
        let res = modp_sweep(&fam, &[2, 3, 5], 2).unwrap();
        assert_eq!(res.rows.len(), 3);
        for r in &res.rows {
            assert!(r.hk.iter().all(|s| s.normalized == Rational::from_integer(1)));
            assert!(r.delta.iter().all(|d| *d == Rational::from_integer(0)));
        }
        assert_eq!(res.common_bound, vec![Rational::from_integer(0)]);
        assert!(res.verdict().pass);
    }

    #[test]
    fn degenerate_primes_are_skipped() {
        let fam = FamilySpec::new(FamilyBase::Integers, &["x", "y"], None, &["3*x*y"], &["x", "y"]).unwrap();
        let res = modp_sweep(&fam, &[2, 3], 2).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert_eq!(res.skipped[0].0, 3);
        assert!(!res.warnings.is_empty());
    }

    #[test]
    fn uniform_probe_needs_acknowledgement() {
        let fam = FamilySpec::new(
            FamilyBase::Param { p: 2, params: vec!["t".into()] },
            &["x", "y", "z"],
            None,
            &[],
            &["x", "y", "z"],
        )
        .unwrap();
        let fibers = [FiberSpec::special(&[("t", "0")])];
        assert!(uniform_bound_probe(&fam, &fibers, 3, 4, false).is_err());
        let rep = uniform_bound_probe(&fam, &fibers, 3, 4, true).unwrap();
        assert!(rep.verdict.pass);
        assert_eq!(rep.d_hat, Some(Rational::from_integer(0)));
        // ℓ(k[x,y,z]/m^n) = C(n+2, 3) and the maximum of that over n^3 is at n = 1
        assert_eq!(rep.c_hat, Some(Rational::from_integer(1)));
    }

    fn family_poly() -> impl Strategy<Value = String> {
        let term = (0u32..3, 0u32..4, 0u32..4).prop_map(|(a, b, c)| format!("t^{a}*x^{b}*y^{c}"));
        prop::collection::vec(term, 1..4).prop_map(|v| v.join(" + "))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn generic_lengths_never_exceed_special_lengths(
            p in prop::sample::select(vec![2u32, 3]),
            defining in prop::collection::vec(family_poly(), 0..2),
            extra in family_poly(),
        ) {
            let d: Vec<&str> = defining.iter().map(|s| s.as_str()).collect();
            let Ok(fam) = FamilySpec::new(
                FamilyBase::Param { p, params: vec!["t".into()] },
                &["x", "y"],
                None,
                &d,
                &["x^2", "y^2", &extra],
            ) else {
                return Ok(());
            };
            let mut fibers = vec![FiberSpec::Generic];
            for v in 0..p {
                fibers.push(FiberSpec::special(&[("t", &v.to_string())]));
            }
            // degenerate special fibers are rejected individually
            let rows: Vec<FiberRow> = fibers
                .iter()
                .filter_map(|f| fiber_rows(&fam, std::slice::from_ref(f), 2, 0).ok())
                .flatten()
                .collect();
            let Some(g) = rows.iter().find(|r| r.generic) else { return Ok(()) };
            for s in rows.iter().filter(|r| !r.generic) {
                for (a, b) in g.hk.iter().zip(&s.hk) {
                    prop_assert!(a.length <= b.length, "{} vs {}: e = {}", g.label, s.label, a.e);
                }
            }
        }
    }
}
