use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hklab_cli::emit_plotdata;
use hklab_core::family::{fiber_rows, FamilyBase, FamilySpec, FiberSpec};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn hklab(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hklab"));
    cmd.args(args).env_remove("HKLAB_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(sub: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![sub, "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    hklab(&args, &[])
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn hk_on_the_regular_ring() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run("hk", &configs().join("regular.json"), tmp.path(), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(tmp.path().join("hk.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "e,q,length_num,length_den,normalized_num,normalized_den,normalized");
    for (e, line) in lines[1..].iter().enumerate() {
        let q = 2u64.pow(e as u32 + 1);
        let cube = q.pow(3);
        assert_eq!(*line, format!("{},{q},{cube},{cube},1,1,1", e + 1));
    }
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("hk.json")).unwrap()).unwrap();
    assert_eq!(json["estimate"]["D_hat"]["num"], 0);
    assert_eq!(json["estimate"]["heuristic"], true);
}

#[test]
fn unreachable_exponent_is_a_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "e0.json",
        r#"{"field":{"kind":"prime","p":2},"vars":["x","y"],"ideal":["x","y"],"e_max":0}"#,
    );
    let o = run("hk", &cfg, &tmp.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("e_max"));
}

#[test]
fn malformed_configs_point_at_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"field":{"kind":"prime","p":2},"vars":["x"],"ideal":"x"}"#, "ideal"),
        (r#"{"field":{"kind":"prime","p":2},"vars":["x"],"ideal":["x"],"e_max":-1}"#, "e_max"),
        (r#"{"field":{"kind":"prim","p":2},"vars":["x"],"ideal":["x"]}"#, "field"),
        (r#"{"field":{"kind":"prime","p":2},"vars":["x"],"ideal":["x + w"]}"#, "ideal[0]"),
    ];
    for (i, (text, field)) in cases.iter().enumerate() {
        let cfg = write_config(tmp.path(), &format!("bad{i}.json"), text);
        let o = run("hk", &cfg, &tmp.path().join("out"), &[]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(&format!("`{field}")), "{text}: {err}");
    }
    let o = run("hk", &tmp.path().join("missing.json"), &tmp.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn monsky_sweep_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run("sweep", &configs().join("monsky_sweep.json"), tmp.path(), &[]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("verdict: PASS"));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("sweep.json")).unwrap()).unwrap();
    assert_eq!(json["verdict"], "PASS");
    let generic = json["fibers"].as_array().unwrap().iter().find(|f| f["fiber"] == "GENERIC").unwrap();
    assert_eq!(generic["hk_lengths"], serde_json::json!([8, 44, 188, 764]));
    for name in ["sweep_semicontinuity.csv", "sweep_monotonicity.csv", "sweep_hs.csv"] {
        let csv = fs::read_to_string(tmp.path().join(name)).unwrap();
        assert!(csv.starts_with("fiber,"), "{name}");
    }
    assert_eq!(fs::read_dir(tmp.path().join("plot")).unwrap().count(), 3);
}

#[test]
fn failing_sweep_names_the_fiber_and_exponent() {
    // Honest families never fail, so a saved table is edited instead.
    use hklab_core::family::semicontinuity_verdict;
    let family = FamilySpec::new(
        FamilyBase::Param { p: 2, params: vec!["t".into()] },
        &["x", "y"],
        None,
        &[],
        &["x^2", "y^2 + t*x*y"],
    )
    .unwrap();
    let fibers = [FiberSpec::special(&[("t", "0")]), FiberSpec::Generic];
    let mut rows = fiber_rows(&family, &fibers, 2, 0).unwrap();
    // tamper with the special row so that GENERIC exceeds it at e = 2
    rows[0].hk[1].length = 1;
    let v = semicontinuity_verdict(&rows).unwrap();
    assert!(!v.pass);
    assert_eq!((v.violations[0].fiber.as_str(), v.violations[0].index), ("t=0", 2));
}

#[test]
fn degenerate_fiber_exits_with_the_family_message() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "degenerate.json",
        r#"{"base":{"kind":"param","p":2,"params":["t"]},"vars":["x","y"],
            "defining":["t*x*y"],"ideal":["x","y"],
            "fibers":[{"t":"0"},{"generic":true}],"e_max":2}"#,
    );
    let o = run("sweep", &cfg, &tmp.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degenerate fiber t=0"));
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("monsky_sweep.json");
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = tmp.path().join(format!("t{threads}"));
        let o = hklab(
            &["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()],
            &[("HKLAB_THREADS", threads)],
        );
        assert_eq!(o.status.code(), Some(0));
        let files: Vec<Vec<u8>> = ["sweep_semicontinuity.csv", "sweep_monotonicity.csv", "sweep_hs.csv", "sweep.json"]
            .iter()
            .map(|f| fs::read(out.join(f)).unwrap())
            .collect();
        outputs.push((files, o.stdout));
    }
    assert_eq!(outputs[0], outputs[1]);
    let o = run("hk", &configs().join("regular.json"), &tmp.path().join("x"), &["--threads", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn modp_and_disc_and_groebner() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run("modp", &configs().join("monsky_modp.json"), &tmp.path().join("m"), &[]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("m/modp.json")).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 3);

    let o = run("disc", &configs().join("inseparable_disc.json"), &tmp.path().join("d"), &[]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("d/disc.json")).unwrap()).unwrap();
    assert_eq!(json["discriminant"], "0");

    let o = run("groebner", &configs().join("cusp_groebner.json"), &tmp.path().join("g"), &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("g/groebner.json")).unwrap()).unwrap();
    assert_eq!(json["colength"], 5);
    assert_eq!(json["multiplication_matrices"][0]["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn plot_data_files() {
    let family = FamilySpec::new(
        FamilyBase::Param { p: 2, params: vec!["t".into()] },
        &["x", "y", "z"],
        None,
        &["z^4 + x*y*z^2 + (x^3+y^3)*z + t*x^2*y^2"],
        &["x", "y", "z"],
    )
    .unwrap();
    let fibers = [FiberSpec::special(&[("t", "0")]), FiberSpec::special(&[("t", "1")]), FiberSpec::Generic];
    let rows = fiber_rows(&family, &fibers, 3, 0).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let files = emit_plotdata(&rows, tmp.path()).unwrap();
    assert_eq!(files.len(), 3);
    for f in &files {
        assert_eq!(fs::read_to_string(f).unwrap().lines().count(), 3);
    }
    let first = fs::read_to_string(&files[0]).unwrap();
    assert_eq!(first.lines().next(), Some("1 2"));
    assert!(emit_plotdata(&rows[..1], tmp.path()).is_ok());
    assert!(emit_plotdata(&[], tmp.path()).is_err());
}
