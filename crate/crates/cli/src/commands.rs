use std::sync::Arc;

use hklab_core::coeff::Field;
use hklab_core::family::{
    fiber_rows, hs_verdict, modp_sweep, monotonicity_verdict, semicontinuity_verdict,
    uniform_bound_verdict, FamilySpec, FiberRow, Verdict,
};
use hklab_core::groebner::{groebner_basis, Colength};
use hklab_core::multiplicity::{
    csig_search, default_grid, hk_estimate, hk_function, hs_function, hs_multiplicity_with_run,
    rsig_search, to_f64, QuotientRingSpec, Rational, DEFAULT_STABLE_RUN,
};
use hklab_core::polyring::{parse_polynomial, IdealPresentation, Monomial, PolyRing, Polynomial};
use hklab_core::with_field;
use serde_json::{json, Value};

use crate::config::{term_order, FamilyConfig, RingConfig};
use crate::output::{decimal, emit_plotdata, estimate_json, int_json, rat_json, Writer};
use crate::{CliError, Command, CommonArgs, Outcome};

const DEFAULT_E_MAX: u32 = 4;
const DEFAULT_N_MAX: u32 = 6;

pub fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    let c = cmd.common();
    match cmd {
        Command::Sweep(_) => sweep(c),
        Command::Modp(_) => modp(c),
        _ => {
            let cfg = RingConfig::load(&c.config)?;
            let field = cfg.field.build()?;
            with_field!(field, f => ring_command(cmd, c, &cfg, f))
        }
    }
}

fn ring_command<F: Field>(cmd: &Command, c: &CommonArgs, cfg: &RingConfig, field: F) -> Result<Outcome, CliError> {
    let order = term_order(&cfg.vars, cfg.order.as_ref())?;
    let ring = PolyRing::new(field, cfg.vars.clone(), order)?;
    let out = Writer::new(&c.out, c.format)?;
    match cmd {
        Command::Groebner(_) => groebner(&ring, cfg, c, &out),
        Command::Hk(_) => hk(&ring, cfg, c, &out),
        Command::Hs(_) => hs(&ring, cfg, c, &out),
        Command::Rsig(_) => rsig(&ring, cfg, c, &out),
        Command::Csig(_) => csig(&ring, cfg, c, &out),
        Command::Disc(_) => disc(&ring, cfg, c, &out),
        Command::Sweep(_) | Command::Modp(_) => unreachable!("family commands are dispatched earlier"),
    }
}

fn polys<F: Field>(ring: &Arc<PolyRing<F>>, texts: &[String], field_name: &str) -> Result<Vec<Polynomial<F>>, CliError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| {
            parse_polynomial(ring, t)
                .map_err(|e| CliError::Validation(format!("field `{field_name}[{i}]`: {e}")))
        })
        .collect()
}

fn ideal<F: Field>(ring: &Arc<PolyRing<F>>, texts: &[String], field_name: &str) -> Result<IdealPresentation<F>, CliError> {
    if texts.is_empty() {
        return Err(CliError::Validation(format!("field `{field_name}`: at least one generator is required")));
    }
    let gens = polys(ring, texts, field_name)?;
    IdealPresentation::new(ring, gens).map_err(|e| CliError::Validation(format!("field `{field_name}`: {e}")))
}

fn quotient<F: Field>(ring: &Arc<PolyRing<F>>, cfg: &RingConfig) -> Result<QuotientRingSpec<F>, CliError> {
    Ok(QuotientRingSpec::new(ring, polys(ring, &cfg.defining, "defining")?)?)
}

fn texts<F: Field>(ps: &[Polynomial<F>]) -> Vec<String> {
    ps.iter().map(|g| g.format()).collect()
}

fn header(c: &CommonArgs, command: &str, cfg_field: Value) -> Value {
    json!({ "command": command, "field": cfg_field, "seed": c.seed })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn groebner<F: Field>(ring: &Arc<PolyRing<F>>, cfg: &RingConfig, c: &CommonArgs, out: &Writer) -> Result<Outcome, CliError> {
    let mut gens = polys(ring, &cfg.defining, "defining")?;
    gens.extend(polys(ring, &cfg.ideal, "ideal")?);
    let gb = groebner_basis(ring, &gens)?;
    let field = ring.field();
    let colength = gb.colength();
    let mut summary = json!({
        "basis": texts(gb.elements()),
        "colength": match colength { Colength::Finite(n) => json!(n), Colength::Infinite => json!("infinite") },
        "dimension": gb.dimension(),
        "primary_to_origin": gb.is_primary_to_origin()?,
    });
    if let Colength::Finite(_) = colength {
        let basis = gb.standard_monomials()?;
        let matrices: Vec<Value> = (0..ring.nvars())
            .map(|i| {
                let m = gb.multiplication_matrix(&Polynomial::var(ring, i))?;
                let rows: Vec<Vec<String>> =
                    m.to_rows().iter().map(|r| r.iter().map(|a| field.format(a)).collect()).collect();
                Ok(json!({ "variable": ring.vars()[i], "rows": rows }))
            })
            .collect::<Result<_, hklab_core::Error>>()?;
        let mons: Vec<String> = basis.monomials().iter().map(|m| m.format(ring.vars())).collect();
        summary = merge(summary, json!({ "standard_monomials": mons, "multiplication_matrices": matrices }));
    }
    println!("reduced Gröbner basis ({} elements):", gb.len());
    for g in gb.elements() {
        println!("  {g}");
    }
    println!("colength: {colength}");
    out.json("groebner", &merge(header(c, "groebner", json!(field.descriptor())), summary))?;
    Ok(Outcome { pass: true })
}

fn hk<F: Field>(ring: &Arc<PolyRing<F>>, cfg: &RingConfig, c: &CommonArgs, out: &Writer) -> Result<Outcome, CliError> {
    let r = quotient(ring, cfg)?;
    let i = ideal(ring, &cfg.ideal, "ideal")?;
    let e_max = cfg.e_max.unwrap_or(DEFAULT_E_MAX);
    let samples = hk_function(&r, &i, e_max)?;
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|s| {
            vec![
                s.e.to_string(),
                s.q.to_string(),
                s.length.to_string(),
                s.scale().to_string(),
                s.normalized.numer().to_string(),
                s.normalized.denom().to_string(),
                s.decimal().to_string(),
            ]
        })
        .collect();
    out.csv(
        "hk",
        &["e", "q", "length_num", "length_den", "normalized_num", "normalized_den", "normalized"],
        &rows,
    )?;
    let estimate = if samples.len() >= 2 { Some(hk_estimate(&samples)?) } else { None };
    println!("dimension d = {}", r.dimension());
    for s in &samples {
        println!("e = {}: length {} / {}^{} = {}", s.e, s.length, s.q, s.dim, s.decimal());
    }
    if let Some(est) = &estimate {
        println!(
            "estimate {} (D_hat {}, error bound {}, heuristic)",
            est.value_f64(),
            est.d_hat_f64(),
            est.error_bound_f64()
        );
    }
    let samples_json: Vec<Value> = samples
        .iter()
        .map(|s| json!({ "e": s.e, "q": s.q, "length": s.length, "normalized": rat_json(&s.normalized) }))
        .collect();
    out.json(
        "hk",
        &merge(
            header(c, "hk", json!(ring.field().descriptor())),
            json!({
                "dimension": r.dimension(),
                "samples": samples_json,
                "estimate": estimate.as_ref().map(estimate_json),
            }),
        ),
    )?;
    Ok(Outcome { pass: true })
}

fn hs<F: Field>(ring: &Arc<PolyRing<F>>, cfg: &RingConfig, c: &CommonArgs, out: &Writer) -> Result<Outcome, CliError> {
    let r = quotient(ring, cfg)?;
    let i = ideal(ring, &cfg.ideal, "ideal")?;
    let n_max = cfg.n_max.unwrap_or(DEFAULT_N_MAX);
    let d = r.dimension();
    let samples = hs_function(&r, &i, n_max)?;
    let run = cfg.stable_run.unwrap_or(DEFAULT_STABLE_RUN);
    let estimate = hs_multiplicity_with_run(&samples, d, run);
    let differences = estimate.as_ref().map(|e| e.differences.clone()).unwrap_or_default();
    let rows: Vec<Vec<String>> = samples
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let diff = k.checked_sub(d).and_then(|j| differences.get(j)).map(|v| v.to_string());
            vec![s.n.to_string(), s.length.to_string(), diff.unwrap_or_default()]
        })
        .collect();
    out.csv("hs", &["n", "length", "difference"], &rows)?;
    for s in &samples {
        println!("n = {}: length {}", s.n, s.length);
    }
    let summary = match &estimate {
        Ok(e) => {
            println!("multiplicity e = {} (stable on n = {}..={})", e.multiplicity, e.window.0, e.window.1);
            json!({
                "multiplicity": int_json(e.multiplicity),
                "window": [e.window.0, e.window.1],
                "differences": e.differences.iter().map(|v| int_json(*v)).collect::<Vec<_>>(),
            })
        }
        Err(err) => json!({ "multiplicity": null, "error": err.to_string() }),
    };
    let samples_json: Vec<Value> = samples.iter().map(|s| json!({ "n": s.n, "length": s.length })).collect();
    out.json(
        "hs",
        &merge(
            header(c, "hs", json!(ring.field().descriptor())),
            merge(json!({ "dimension": d, "samples": samples_json }), summary),
        ),
    )?;
    estimate?;
    Ok(Outcome { pass: true })
}

fn element<F: Field>(field: &F, text: &str, at: &str) -> Result<F::Elem, CliError> {
    let ring = PolyRing::with_vars(field.clone(), &[])?;
    let p = parse_polynomial(&ring, text).map_err(|e| CliError::Validation(format!("field `{at}`: {e}")))?;
    Ok(p.coefficient(&Monomial::one(0)))
}

fn rsig<F: Field>(ring: &Arc<PolyRing<F>>, cfg: &RingConfig, c: &CommonArgs, out: &Writer) -> Result<Outcome, CliError> {
    let r = quotient(ring, cfg)?;
    let sop = ideal(ring, &cfg.sop, "sop")?;
    let field = ring.field();
    let grid = match &cfg.grid {
        Some(g) => g
            .iter()
            .enumerate()
            .map(|(i, t)| element(field, t, &format!("grid[{i}]")))
            .collect::<Result<Vec<_>, _>>()?,
        None => default_grid(field).unwrap_or_default(),
    };
    let e_max = cfg.e_max.unwrap_or(DEFAULT_E_MAX);
    let res = rsig_search(&r, &sop, &grid, e_max)?;
    let rows: Vec<Vec<String>> = res
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let coeffs: Vec<String> = row.coefficients.iter().map(|a| field.format(a)).collect();
            vec![
                k.to_string(),
                coeffs.join(" "),
                row.element.format(),
                row.estimate.value.numer().to_string(),
                row.estimate.value.denom().to_string(),
                decimal(&row.estimate.value),
                row.difference.numer().to_string(),
                row.difference.denom().to_string(),
                decimal(&row.difference),
                decimal(&row.estimate.error_bound),
            ]
        })
        .collect();
    out.csv(
        "rsig",
        &[
            "row", "coefficients", "element", "estimate_num", "estimate_den", "estimate",
            "difference_num", "difference_den", "difference", "error_bound",
        ],
        &rows,
    )?;
    let bad = res.inconsistent_rows();
    let pass = bad.is_empty();
    let min = res.min_row();
    println!("socle: {}", texts(&res.socle).join(", "));
    println!("e_HK(sop) estimate {}", res.base.value_f64());
    println!("grid minimum {} at u = {} (an upper bound for the signature)", decimal(&min.difference), min.element);
    for &k in &bad {
        println!("FAIL: row {k} (u = {}) at e = {e_max}: estimates inconsistent", res.rows[k].element);
    }
    println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    let violations: Vec<Value> = bad
        .iter()
        .map(|&k| json!({ "row": k, "element": res.rows[k].element.format(), "e": e_max }))
        .collect();
    out.json(
        "rsig",
        &merge(
            header(c, "rsig", json!(field.descriptor())),
            json!({
                "sop": texts(sop.generators()),
                "socle": texts(&res.socle),
                "base": estimate_json(&res.base),
                "candidates": res.rows.len(),
                "minimum": {
                    "row": res.minimum,
                    "element": min.element.format(),
                    "difference": rat_json(&min.difference),
                },
                "verdict": if pass { "PASS" } else { "FAIL" },
                "violations": violations,
            }),
        ),
    )?;
    Ok(Outcome { pass })
}

fn csig<F: Field>(ring: &Arc<PolyRing<F>>, cfg: &RingConfig, c: &CommonArgs, out: &Writer) -> Result<Outcome, CliError> {
    let r = quotient(ring, cfg)?;
    let sop = ideal(ring, &cfg.sop, "sop")?;
    if cfg.candidates.is_empty() {
        return Err(CliError::Validation("field `candidates`: at least one candidate ideal is required".into()));
    }
    let candidates = cfg
        .candidates
        .iter()
        .enumerate()
        .map(|(i, t)| ideal(ring, t, &format!("candidates[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let e_max = cfg.e_max.unwrap_or(DEFAULT_E_MAX);
    let res = csig_search(&r, &sop, &candidates, e_max)?;
    let rows: Vec<Vec<String>> = res
        .rows
        .iter()
        .map(|row| {
            vec![
                row.index.to_string(),
                row.colength.to_string(),
                row.estimate.value.numer().to_string(),
                row.estimate.value.denom().to_string(),
                decimal(&row.estimate.value),
                row.ratio.numer().to_string(),
                row.ratio.denom().to_string(),
                decimal(&row.ratio),
            ]
        })
        .collect();
    out.csv(
        "csig",
        &["candidate", "colength", "estimate_num", "estimate_den", "estimate", "ratio_num", "ratio_den", "ratio"],
        &rows,
    )?;
    for w in &res.warnings {
        println!("warning: {w}");
    }
    match res.min_ratio() {
        Some(m) => println!("minimum ratio {} over {} candidates", to_f64(&m), res.rows.len()),
        None => println!("no candidate strictly contains the parameter ideal"),
    }
    out.json(
        "csig",
        &merge(
            header(c, "csig", json!(ring.field().descriptor())),
            json!({
                "sop": texts(sop.generators()),
                "base": estimate_json(&res.base),
                "base_colength": res.base_colength,
                "minimum": res.minimum.map(|i| json!({
                    "candidate": res.rows[i].index,
                    "ratio": rat_json(&res.rows[i].ratio),
                })),
                "skipped": res.skipped,
                "warnings": res.warnings,
            }),
        ),
    )?;
    Ok(Outcome { pass: true })
}

fn disc<F: Field>(ring: &Arc<PolyRing<F>>, cfg: &RingConfig, c: &CommonArgs, out: &Writer) -> Result<Outcome, CliError> {
    let mut gens = polys(ring, &cfg.defining, "defining")?;
    gens.extend(polys(ring, &cfg.ideal, "ideal")?);
    let gb = groebner_basis(ring, &gens)?;
    let Colength::Finite(n) = gb.colength() else {
        return Err(CliError::Validation("the discriminant needs a finite-dimensional quotient".into()));
    };
    let field = ring.field();
    let d = gb.trace_discriminant()?;
    let nonzero = !field.is_zero(&d);
    println!("dimension {n}, trace discriminant {}", field.format(&d));
    out.json(
        "disc",
        &merge(
            header(c, "disc", json!(field.descriptor())),
            json!({
                "basis": texts(gb.elements()),
                "dimension": n,
                "discriminant": field.format(&d),
                "nonzero": nonzero,
            }),
        ),
    )?;
    Ok(Outcome { pass: true })
}

fn family(cfg: &FamilyConfig) -> Result<FamilySpec, CliError> {
    let order = term_order(&cfg.vars, cfg.order.as_ref())?;
    let vars: Vec<&str> = cfg.vars.iter().map(String::as_str).collect();
    let defining: Vec<&str> = cfg.defining.iter().map(String::as_str).collect();
    let ideal: Vec<&str> = cfg.ideal.iter().map(String::as_str).collect();
    Ok(FamilySpec::new(cfg.base.clone().into(), &vars, Some(order), &defining, &ideal)?)
}

fn verdict_json(v: &Verdict) -> Value {
    let violations: Vec<Value> = v
        .violations
        .iter()
        .map(|x| json!({ "fiber": x.fiber, "index": x.index, "detail": x.detail }))
        .collect();
    json!({ "verdict": v.label(), "violations": violations })
}

fn report(name: &str, index: &str, v: &Verdict) {
    println!("{name}: {}", v.label());
    for x in &v.violations {
        println!("  FAIL at fiber {}, {index} = {}: {}", x.fiber, x.index, x.detail);
    }
}

fn row_verdict(v: &Verdict, fiber: &str, index: u32) -> &'static str {
    if v.violations.iter().any(|x| x.fiber == fiber && x.index == index) {
        "FAIL"
    } else {
        "PASS"
    }
}

const SWEEP_HEADER: [&str; 9] =
    ["fiber", "e", "length_num", "length_den", "normalized", "estimate", "D_hat", "error_bound", "verdict"];

fn hk_table(rows: &[FiberRow], v: &Verdict) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for r in rows {
        let est = |f: fn(&hklab_core::HKEstimate) -> Rational| {
            r.estimate.as_ref().map(|e| decimal(&f(e))).unwrap_or_default()
        };
        for s in &r.hk {
            out.push(vec![
                r.label.clone(),
                s.e.to_string(),
                s.length.to_string(),
                s.scale().to_string(),
                s.decimal().to_string(),
                est(|e| e.value),
                est(|e| e.d_hat),
                est(|e| e.error_bound),
                row_verdict(v, &r.label, s.e).to_string(),
            ]);
        }
    }
    out
}

fn sweep(c: &CommonArgs) -> Result<Outcome, CliError> {
    let cfg = FamilyConfig::load(&c.config)?;
    if cfg.primes().is_some() {
        return Err(CliError::Validation("field `fibers`: a list of primes belongs to the modp subcommand".into()));
    }
    let fam = family(&cfg)?;
    if fam.params().len() != 1 {
        return Err(CliError::Validation("field `base.params`: sweeps need exactly one parameter".into()));
    }
    let specs = cfg.fiber_specs()?;
    let e_max = cfg.e_max.unwrap_or(DEFAULT_E_MAX);
    let n_max = cfg.n_max.unwrap_or(0);
    if c.assume_reduced && n_max == 0 {
        return Err(CliError::Validation("field `n_max`: the uniform-bound probe needs n_max ≥ 1".into()));
    }
    let out = Writer::new(&c.out, c.format)?;
    let rows = fiber_rows(&fam, &specs, e_max, n_max)?;
    let mut pass = true;
    let mut summary = serde_json::Map::new();

    let semi = semicontinuity_verdict(&rows)?;
    report("semicontinuity", "e", &semi);
    out.csv("sweep_semicontinuity", &SWEEP_HEADER, &hk_table(&rows, &semi))?;
    pass &= semi.pass;
    summary.insert("semicontinuity".into(), verdict_json(&semi));

    if e_max >= 2 {
        let mono = monotonicity_verdict(&rows)?;
        report("monotonicity", "e", &mono);
        out.csv("sweep_monotonicity", &SWEEP_HEADER, &hk_table(&rows, &mono))?;
        pass &= mono.pass;
        summary.insert("monotonicity".into(), verdict_json(&mono));
    }

    if n_max > 0 {
        let hsv = hs_verdict(&rows)?;
        report("hilbert_samuel", "n", &hsv);
        let mut table = Vec::new();
        for r in &rows {
            for s in &r.hs {
                let den = (s.n as u128).pow(r.dim as u32);
                let normalized = s.length as f64 / den as f64;
                table.push(vec![
                    r.label.clone(),
                    s.n.to_string(),
                    s.length.to_string(),
                    den.to_string(),
                    normalized.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    row_verdict(&hsv, &r.label, s.n).to_string(),
                ]);
            }
        }
        let mut hdr = SWEEP_HEADER;
        hdr[1] = "n";
        out.csv("sweep_hs", &hdr, &table)?;
        pass &= hsv.pass;
        summary.insert("hilbert_samuel".into(), verdict_json(&hsv));
    }

    if c.assume_reduced {
        let (c_hat, d_hat, v) = uniform_bound_verdict(&rows);
        println!(
            "uniform bounds: C_hat = {}, D_hat = {}",
            c_hat.map(|x| decimal(&x)).unwrap_or_else(|| "none".into()),
            d_hat.map(|x| decimal(&x)).unwrap_or_else(|| "none".into())
        );
        report("uniform_bound", "e", &v);
        pass &= v.pass;
        summary.insert(
            "uniform_bound".into(),
            merge(
                json!({ "C_hat": c_hat.as_ref().map(rat_json), "D_hat": d_hat.as_ref().map(rat_json) }),
                verdict_json(&v),
            ),
        );
    }

    let mut warnings = Vec::new();
    if let Some(first) = rows.first() {
        for r in &rows {
            if r.dim != first.dim {
                warnings.push(format!("fiber {} has dimension {}, fiber {} has {}", r.label, r.dim, first.label, first.dim));
            }
        }
    }
    for w in &warnings {
        println!("warning: {w}");
    }
    if c.format != crate::Format::Csv && e_max > 0 {
        emit_plotdata(&rows, out.dir())?;
    }
    let fibers: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "fiber": r.label,
                "generic": r.generic,
                "dimension": r.dim,
                "hk_lengths": r.hk.iter().map(|s| s.length).collect::<Vec<_>>(),
                "hs_lengths": r.hs.iter().map(|s| s.length).collect::<Vec<_>>(),
                "estimate": r.estimate.as_ref().map(estimate_json),
            })
        })
        .collect();
    println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    out.json(
        "sweep",
        &json!({
            "command": "sweep",
            "seed": c.seed,
            "e_max": e_max,
            "n_max": n_max,
            "fibers": fibers,
            "checks": summary,
            "verdict": if pass { "PASS" } else { "FAIL" },
            "warnings": warnings,
            "note": "family axioms are not verified; only finite colength and primality to the origin are checked per fiber",
        }),
    )?;
    Ok(Outcome { pass })
}

fn modp(c: &CommonArgs) -> Result<Outcome, CliError> {
    let cfg = FamilyConfig::load(&c.config)?;
    let Some(primes) = cfg.primes() else {
        return Err(CliError::Validation("field `fibers`: modp needs {\"primes\": [...]}".into()));
    };
    let fam = family(&cfg)?;
    let e_max = cfg.e_max.unwrap_or(DEFAULT_E_MAX);
    let out = Writer::new(&c.out, c.format)?;
    let res = modp_sweep(&fam, primes, e_max)?;
    let mut table = Vec::new();
    for r in &res.rows {
        for (k, s) in r.hk.iter().enumerate() {
            let (delta, scaled) = match k.checked_sub(1) {
                Some(j) => (decimal(&r.delta[j]), decimal(&r.scaled[j])),
                None => (String::new(), String::new()),
            };
            table.push(vec![
                r.p.to_string(),
                s.e.to_string(),
                s.length.to_string(),
                s.scale().to_string(),
                s.normalized.numer().to_string(),
                s.normalized.denom().to_string(),
                s.decimal().to_string(),
                delta,
                scaled,
            ]);
        }
    }
    out.csv(
        "modp",
        &["p", "e", "length_num", "length_den", "normalized_num", "normalized_den", "normalized", "delta", "p_delta"],
        &table,
    )?;
    for w in &res.warnings {
        println!("warning: {w}");
    }
    let v = res.verdict();
    let bound: Vec<Value> = res.common_bound.iter().map(rat_json).collect();
    println!(
        "common bound on p·|Δ|: [{}]",
        res.common_bound.iter().map(decimal).collect::<Vec<_>>().join(", ")
    );
    report("modp", "e", &v);
    let rows: Vec<Value> = res
        .rows
        .iter()
        .map(|r| {
            json!({
                "p": r.p,
                "dimension": r.dim,
                "lengths": r.hk.iter().map(|s| s.length).collect::<Vec<_>>(),
                "p_delta": r.scaled.iter().map(rat_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let skipped: Vec<Value> = res.skipped.iter().map(|(p, m)| json!({ "p": p, "reason": m })).collect();
    out.json(
        "modp",
        &merge(
            json!({
                "command": "modp",
                "seed": c.seed,
                "e_max": e_max,
                "rows": rows,
                "common_bound": bound,
                "skipped": skipped,
                "warnings": res.warnings,
            }),
            verdict_json(&v),
        ),
    )?;
    Ok(Outcome { pass: v.pass })
}
