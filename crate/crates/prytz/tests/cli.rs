//! End-to-end runs of the `prytz` binary.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn prytz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prytz"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn square_file(dir: &Path, side: f64) -> PathBuf {
    write(
        dir,
        &format!("square_{side}.json"),
        &format!(r#"{{"closed": true, "vertices": [[0, 0], [{side}, 0], [{side}, {side}], [0, {side}]]}}"#),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
#[allow(clippy::approx_constant)]
fn tractrix_line_follows_the_straight_line_law() {
    let out = prytz(&["tractrix", "--line", "10", "--theta0", "1.5708", "--ell", "1", "--samples", "41"]);
    let v = stdout_json(&out);
    let c = (1.5708f64 / 2.0).tan().ln();
    let states = v["states"].as_array().unwrap();
    assert_eq!(states.len(), 41);
    for st in states {
        let f = |k: &str| st[k].as_f64().unwrap();
        assert!(((f("theta") / 2.0).tan().ln() - c - f("x")).abs() < 1e-8);
        // Chisel stays one rod length from the tracer.
        assert!(((f("chisel_x") - f("x")).hypot(f("chisel_y") - f("y")) - 1.0).abs() < 1e-12);
    }
    let last = states.last().unwrap();
    assert_eq!(last["x"].as_f64(), Some(10.0));
}

#[test]
fn tractrix_without_ell_is_a_usage_error() {
    let out = prytz(&["tractrix", "--line", "10", "--theta0", "1.5708"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--ell"));
}

#[test]
fn bad_path_files_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let garbage = write(dir.path(), "bad.json", "{not json");
    let short = write(dir.path(), "short.json", r#"{"closed": true, "vertices": [[0, 0]]}"#);
    let missing = dir.path().join("missing.json");
    for p in [&garbage, &short, &missing] {
        let out = prytz(&["tractrix", "--path", s(p), "--ell", "1"]);
        assert_eq!(code(&out), 3, "{}", p.display());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["tractrix", "--line", "1", "--ell", "abc"],
        &["tractrix", "--ell", "1"],
        &["tractrix", "--line", "1", "--ell", "-1"],
        &["menzin", "--ell", "1"],
        &["holonomy", "--ell", "1"],
    ] {
        assert_eq!(code(&prytz(args)), 2, "{args:?}");
    }
    assert_eq!(code(&prytz(&["--version"])), 0);
}

#[test]
fn tractrix_svg_of_square() {
    let dir = TempDir::new().unwrap();
    let sq = square_file(dir.path(), 1.0);
    let out = prytz(&["tractrix", "--path", s(&sq), "--theta0", "0.3", "--ell", "1", "--format", "svg"]);
    assert_eq!(code(&out), 0);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"viewBox="0 0 1000 1000""#));
    assert!(svg.contains(r#"class="tracer""#) && svg.contains(r#"class="chisel""#));
    assert!(svg.contains(r#"class="initial-circle""#));
}

#[test]
fn trace_loop_prints_area_identity() {
    let dir = TempDir::new().unwrap();
    let sq = square_file(dir.path(), 1.5);
    let out = prytz(&["trace", "--path", s(&sq), "--loop", "--theta0", "0.3", "--ell", "1"]);
    let v = stdout_json(&out);
    let stderr = String::from_utf8_lossy(&out.stderr);
    for key in ["A_region", "ell*sigma", "A_gamma", "residual"] {
        assert!(stderr.contains(key), "{stderr}");
    }
    let id = &v["area_identity"];
    assert!(id["residual"].as_f64().unwrap().abs() < 1e-6 * 2.25);
}

#[test]
fn trace_csv_columns() {
    let dir = TempDir::new().unwrap();
    let sq = square_file(dir.path(), 1.0);
    let out = prytz(&["trace", "--path", s(&sq), "--ell", "1", "--format", "csv", "--samples", "5"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["t", "x", "y", "theta", "chisel_x", "chisel_y"]
    );
    assert_eq!(rdr.records().count(), 5);
}

#[test]
fn trace_loop_on_open_path_fails() {
    let dir = TempDir::new().unwrap();
    let open = write(dir.path(), "open.json", r#"{"closed": false, "vertices": [[0, 0], [1, 0]]}"#);
    let out = prytz(&["trace", "--path", s(&open), "--loop", "--ell", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn holonomy_examples() {
    let dir = TempDir::new().unwrap();
    let big = square_file(dir.path(), 2.0);
    let v = stdout_json(&prytz(&["holonomy", "--path", s(&big), "--ell", "1"]));
    let t = v["classification"]["trace"].as_f64().unwrap();
    assert!((t + 5.63).abs() < 5e-3);

    let ode = stdout_json(&prytz(&["holonomy", "--path", s(&big), "--ell", "1", "--ode"]));
    assert!((ode["classification"]["trace"].as_f64().unwrap() - t).abs() < 1e-8);

    let tiny = square_file(dir.path(), 0.05);
    let v = stdout_json(&prytz(&["holonomy", "--path", s(&tiny), "--ell", "1"]));
    assert_eq!(v["classification"]["kind"], "elliptic");

    let back_and_forth = write(dir.path(), "deg.json", r#"{"closed": true, "vertices": [[0, 0], [1, 1]]}"#);
    let v = stdout_json(&prytz(&["holonomy", "--path", s(&back_and_forth), "--ell", "1"]));
    assert_eq!(v["classification"]["kind"], "identity");

    let out = prytz(&["holonomy", "--path", s(&big), "--ell", "1", "--format", "csv"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn menzin_min_check() {
    for args in [&["menzin", "--min-check"][..], &["menzin", "min-check"]] {
        let v = stdout_json(&prytz(args));
        assert!((v["value"].as_f64().unwrap() - 1.0137).abs() < 1e-3);
        assert!((v["value"].as_f64().unwrap() - v["closed_form"].as_f64().unwrap()).abs() < 1e-6);
    }
}

#[test]
fn menzin_parallelogram_and_circle() {
    let v = stdout_json(&prytz(&["menzin", "parallelogram", "--v", "2,0", "--w", "-0.5,2", "--ell", "1"]));
    assert!(v["attracting"].as_bool().unwrap());
    let v = stdout_json(&prytz(&["menzin", "circle", "--radius", "2", "--ell", "1"]));
    assert!((v["predicted_radius"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    assert_eq!(code(&prytz(&["menzin", "circle", "--radius", "0.5", "--ell", "1"])), 3);
    let out = prytz(&["menzin", "parallelogram", "--v", "1,0", "--w", "2,0", "--ell", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn menzin_scan_finds_square_transition() {
    let out = prytz(&["menzin", "scan", "--square-sweep", "1.74,1.78,5", "--ell", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["region_id", "n_vertices", "area", "area_over_pi_ell2", "trace", "kind", "winding", "marginal_flag"]
    );
    let kinds: Vec<String> = rdr.records().map(|r| r.unwrap()[5].to_string()).collect();
    // Sides 1.74, 1.75, 1.76 are elliptic; 1.77, 1.78 hyperbolic.
    assert_eq!(kinds, ["elliptic", "elliptic", "elliptic", "hyperbolic", "hyperbolic"]);
}

#[test]
fn menzin_scan_from_family_file_keeps_going_on_bad_regions() {
    let dir = TempDir::new().unwrap();
    let fam = write(
        dir.path(),
        "fam.json",
        r#"{"kind": "paths", "paths": [
            {"closed": true, "vertices": [[0, 0], [3, 0], [3, 3], [0, 3]]},
            {"closed": true, "vertices": [[0, 0], [0, 3], [3, 3], [3, 0]]},
            {"closed": true, "vertices": [[0, 0], [0.5, 0], [0, 0.5]]}
        ]}"#,
    );
    let out = prytz(&["menzin", "scan", "--family-file", s(&fam), "--ell", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<String>> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][5], "hyperbolic");
    assert_eq!(rows[0][6], "1");
    assert_eq!(rows[1][5], "error");
    assert_eq!(rows[2][5], "elliptic");
    assert_eq!(rows[2][6], "");
}

#[test]
fn hill_commands() {
    let dir = TempDir::new().unwrap();
    let pent = write(
        dir.path(),
        "pent.json",
        r#"{"closed": true, "vertices": [[0, 0], [1, -0.2], [1.4, 0.6], [0.7, 1.3], [-0.2, 0.8]]}"#,
    );
    let p = stdout_json(&prytz(&["hill", "predict", "--path", s(&pent), "--theta0", "0.5", "--ell", "4"]));
    assert!(p["x_bar"].as_f64().unwrap().abs() > 0.0);

    let m = stdout_json(&prytz(&["hill", "measure", "--path", s(&pent), "--theta0", "0.5", "--ell", "4"]));
    assert!((m["averaged_reading"].as_f64().unwrap() - m["prediction"]["averaged_predicted"].as_f64().unwrap()).abs() < 0.05);

    let study = stdout_json(&prytz(&["hill", "study", "--path", s(&pent), "--theta0", "0.5", "--ell", "1"]));
    assert!((study["raw_vs_area"]["slope"].as_f64().unwrap() - 3.0).abs() < 0.3);
    assert!(study["averaged_vs_area"]["slope"].as_f64().unwrap() > 3.7);
    assert_eq!(study["rows"].as_array().unwrap().len(), 3);

    let out = prytz(&["hill", "study", "--path", s(&pent), "--ell", "1", "--format", "csv", "--scales", "0.1,0.05,0.025,0.0125"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    for col in ["scale", "reading", "hill_prediction", "averaged_reading", "abs_err_raw_vs_area"] {
        assert!(headers.iter().any(|h| h == col), "{col}");
    }
    assert_eq!(rdr.records().count(), 4);

    let out = prytz(&["hill", "study", "--path", s(&pent), "--ell", "1", "--scales", "0.1,0.2,0.05"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let sq = square_file(dir.path(), 2.0);
    let cfg = write(
        dir.path(),
        "cfg.json",
        &format!(r#"{{"ell": 1.0, "path": {:?}, "format": "json", "theta0": {FRAC_PI_2}}}"#, s(&sq)),
    );
    let v = stdout_json(&prytz(&["holonomy", "--config", s(&cfg)]));
    assert!((v["classification"]["trace"].as_f64().unwrap() + 5.63).abs() < 5e-3);

    // Doubling ell quarters the area in rod units.
    let v = stdout_json(&prytz(&["holonomy", "--config", s(&cfg), "--ell", "2"]));
    assert_eq!(v["classification"]["kind"], "elliptic");

    let bad = write(dir.path(), "bad.json", r#"{"ell": 1.0, "elll": 2}"#);
    assert_eq!(code(&prytz(&["holonomy", "--config", s(&bad)])), 3);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let sq = square_file(dir.path(), 1.3);
    for fmt in ["json", "csv", "svg"] {
        let args = ["trace", "--path", s(&sq), "--loop", "--theta0", "0.2", "--ell", "1", "--format", fmt];
        let a = prytz(&args);
        let b = prytz(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{fmt}");
    }
    let args = ["menzin", "scan", "--square-sweep", "0.5,3,16", "--ell", "1"];
    assert_eq!(prytz(&args).stdout, prytz(&args).stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("out.json");
    let out = prytz(&["tractrix", "--line", "2", "--ell", "1", "--output", s(&target)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!(v["states"].is_array());
}

#[test]
fn json_output_round_trips_floats() {
    let v = stdout_json(&prytz(&["tractrix", "--line", "3", "--theta0", "0.1", "--ell", "0.7"]));
    let text = serde_json::to_string(&v).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v, again);
    let theta: f64 = v["final_theta"].as_f64().unwrap();
    assert_eq!(format!("{theta}").parse::<f64>().unwrap(), theta);
}
