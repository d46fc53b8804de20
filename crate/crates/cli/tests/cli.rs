//! End-to-end tests of the `kawahara` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn kawahara(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kawahara"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let header = reader.headers().unwrap().iter().map(str::to_string).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn coefficient(rows: &[Vec<String>], key: &str) -> f64 {
    rows.iter().find(|r| r[0] == "coefficient" && r[1] == key).unwrap()[2].parse().unwrap()
}

#[test]
fn stokes_csv_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["stokes", "--beta", "0.7", "--eps", "1e-3"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = csv_rows(&dir.path().join("stokes.csv"));
    assert_eq!(header, ["section", "key", "value"]);
    assert!((coefficient(&rows, "c2") - 3.4).abs() < 1e-13);
    assert!((coefficient(&rows, "c0") - 0.3).abs() < 1e-15);
    let profile: Vec<_> = rows.iter().filter(|r| r[0] == "profile").collect();
    assert_eq!(profile.len(), 512);
    let u0: f64 = profile[0][2].parse().unwrap();
    assert!((u0 - 9.982667e-4).abs() < 1e-10);
}

#[test]
fn stokes_at_zero_amplitude_is_flat() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["stokes", "--eps", "0", "--format", "json"], dir.path());
    assert_eq!(code(&out), 0);
    let file = json(&dir.path().join("stokes.json"));
    let profile = file["profile"].as_array().unwrap();
    assert!(profile.iter().all(|p| p[1].as_f64() == Some(0.0)));
    assert_eq!(file["config"]["eps"].as_f64(), Some(0.0));
}

#[test]
fn resonant_beta_is_rejected() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["stokes", "--beta", "0.2"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("resonant: N=2"), "{}", stderr(&out));
}

#[test]
fn inadmissible_beta_reports_window() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["collide", "--beta", "0.5", "--dn", "1"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("(0.6, 0.8)"), "{}", stderr(&out));
}

#[test]
fn collide_writes_site() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["collide", "--beta", "0.7"], dir.path());
    assert_eq!(code(&out), 0);
    let file = json(&dir.path().join("collision.json"));
    let mu0 = file["site"]["mu0"].as_f64().unwrap();
    assert!((mu0 - 0.5 * (1.0 - (3.0f64 / 7.0).sqrt())).abs() < 1e-12);
    assert_eq!(file["site"]["n"].as_i64(), Some(-1));
    assert_eq!(file["site"]["m"].as_i64(), Some(0));
}

#[test]
fn isola_second_order_meta() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["isola", "--order", "2"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let meta = json(&dir.path().join("isola_meta.json"));
    assert!((meta["mu2"].as_f64().unwrap() + 1.222020185321563).abs() < 1e-9);
    assert!(meta["mu_star_shift"].as_f64().is_some());
    let (header, rows) = csv_rows(&dir.path().join("isola_asym.csv"));
    assert_eq!(header, ["mu", "lambda_re", "lambda_im", "branch"]);
    assert!(rows.iter().all(|r| r[3] == "+" || r[3] == "-"));
}

#[test]
fn isola_dn2_reports_s2() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["isola", "--beta", "0.25", "--dn", "2"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let meta = json(&dir.path().join("isola_meta.json"));
    assert!((meta["s2"].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert_eq!(meta["growth_power"].as_u64(), Some(2));
}

#[test]
fn ffh_at_zero_amplitude_is_stable() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["ffh", "--eps", "0", "--mu-points", "21"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let file = json(&dir.path().join("isola_numeric.json"));
    assert_eq!(file["stable"].as_bool(), Some(true));
    let (header, rows) = csv_rows(&dir.path().join("spectrum.csv"));
    assert_eq!(header, ["mu", "lambda_re", "lambda_im"]);
    assert_eq!(rows.len(), 21 * 65);
}

#[test]
fn runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let names = ["spectrum.csv", "isola_numeric.json"];
    let mut snapshots = Vec::new();
    for _ in 0..2 {
        let out = kawahara(&["ffh", "--mu-points", "40", "--modes", "16"], dir.path());
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        snapshots.push(names.map(|name| fs::read(dir.path().join(name)).unwrap()));
    }
    for (i, name) in names.iter().enumerate() {
        assert!(snapshots[0][i] == snapshots[1][i], "{name} differs between runs");
    }
}

#[test]
fn compare_order_two_passes() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["compare", "--order", "2"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&dir.path().join("report.json"));
    assert_eq!(report["pass"].as_bool(), Some(true));
    assert_eq!(report["profile"].as_str(), Some("dn1-order2"));
}

#[test]
fn compare_order_one_fails_tight_profile() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["compare", "--order", "1", "--profile", "dn1-order2"], dir.path());
    assert_eq!(code(&out), 1);
    let report = json(&dir.path().join("report.json"));
    let failing: Vec<&str> = report["failing"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(failing.iter().any(|f| f.contains("im")), "{failing:?}");

    let out = kawahara(&["compare", "--order", "1"], dir.path());
    assert_eq!(code(&out), 0);
}

#[test]
fn compare_at_zero_amplitude_passes() {
    let dir = TempDir::new().unwrap();
    let out = kawahara(&["compare", "--eps", "0", "--mu-points", "21"], dir.path());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn invalid_arguments_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&kawahara(&["ffh", "--mu-points", "2"], dir.path())), 2);
    assert_eq!(code(&kawahara(&["ffh", "--no-such-flag"], dir.path())), 2);
    assert_eq!(code(&kawahara(&["isola", "--order", "3"], dir.path())), 2);
    assert_eq!(code(&kawahara(&["isola", "--dn", "4", "--beta", "0.07"], dir.path())), 2);
}
