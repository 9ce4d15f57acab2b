use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fluxscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fluxscat"))
        .args(args)
        .env_remove("FLUXSCAT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn field(s: &str) -> f64 {
    s.parse().unwrap()
}

fn dir_is_empty(dir: &Path) -> bool {
    fs::read_dir(dir).unwrap().next().is_none()
}

#[test]
fn single_step_sweep_is_rejected_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alpha.csv");
    let out = fluxscat(&["sweep-alpha", "--alpha-steps", "1", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(dir_is_empty(dir.path()));
}

#[test]
fn angle_outside_half_turn_is_rejected() {
    let out = fluxscat(&["sweep-chi", "--chi-max", "3.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("3.2"));
}

#[test]
fn malformed_flags_and_environment_are_usage_errors() {
    assert_eq!(fluxscat(&["sweep-chi", "--kh", "ten"]).status.code(), Some(2));
    assert_eq!(fluxscat(&["sweep-chi", "--kh", "10"]).status.code(), Some(2));
    assert_eq!(
        fluxscat(&["dispersion", "--a", "1", "--b", "0.2"]).status.code(),
        Some(2)
    );
    assert_eq!(fluxscat(&["bessel", "--nu", "-1", "--x", "1"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_fluxscat"))
        .args(["bessel", "--nu", "1", "--x", "1"])
        .env("FLUXSCAT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreachable_tolerance_is_an_accuracy_failure() {
    let out = fluxscat(&["bessel", "--nu", "150", "--x", "100", "--tol", "1e-20"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn angle_sweep_file_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chi.csv");
    let out = fluxscat(&[
        "sweep-chi",
        "--chi-min",
        "-3.1",
        "--chi-max",
        "3.1",
        "--chi-steps",
        "63",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("chi_rad,sigma_h,sigma_ab\n"));
    assert!(!csv.contains('\r'));
    let rows = rows(&csv);
    assert_eq!(rows.len(), 63);
    // forward cone: no closed-form value at the ends
    assert_eq!(rows[0][2], "");
    assert_eq!(rows[62][2], "");
    for r in &rows[1..62] {
        let mantissa = r[1].split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.len(), 18, "17 significant digits: {}", r[1]);
        assert!(field(&r[1]) >= 0.0);
    }
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("chi.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["subcommand"], "sweep-chi");
    assert_eq!(meta["rows"], 63);
    assert_eq!(meta["setup"]["order_max"], 600);
    assert_eq!(meta["parameters"]["tol"], 1e-10);
    assert!(meta["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2, "no temporary files left");
}

#[test]
fn barrier_free_flux_sweep_tracks_closed_form() {
    let csv = stdout(&fluxscat(&[
        "sweep-alpha",
        "--tan2eps",
        "0",
        "--alpha-min",
        "0.1",
        "--alpha-max",
        "2.9",
        "--alpha-steps",
        "15",
    ]));
    assert!(csv.starts_with("alpha_tilde,sigma_h,sigma_ab\n"));
    for r in rows(&csv) {
        let (h, ab) = (field(&r[1]), field(&r[2]));
        assert!((h - ab).abs() <= 0.15 * ab, "alpha {}: {h} vs {ab}", r[0]);
    }
}

#[test]
fn zero_flux_angle_sweep_is_silent() {
    let csv = stdout(&fluxscat(&["sweep-chi", "--alpha-tilde", "0", "--chi-steps", "30"]));
    for r in rows(&csv) {
        assert!(field(&r[1]) < 1e-12);
        assert_eq!(field(&r[2]), 0.0);
    }
}

#[test]
fn amplitude_row() {
    let csv = stdout(&fluxscat(&["amplitude", "--chi", "1.0"]));
    assert!(csv.starts_with("chi_rad,re_fh,im_fh,sigma_h,re_fasym,im_fasym\n"));
    let r = &rows(&csv)[0];
    let (re, im, sigma) = (field(&r[1]), field(&r[2]), field(&r[3]));
    assert!((re * re + im * im - sigma).abs() <= 1e-15 * sigma);
    let asym = field(&r[4]).hypot(field(&r[5]));
    assert!((asym - sigma.sqrt()).abs() <= 0.15 * sigma.sqrt());
    // forward direction: the asymptotic form diverges and is left empty
    let r = &rows(&stdout(&fluxscat(&["amplitude", "--chi", "3.141592653589793"])))[0];
    assert_eq!((r[4].as_str(), r[5].as_str()), ("", ""));
}

#[test]
fn bessel_row_with_and_without_oracle() {
    let csv = stdout(&fluxscat(&["bessel", "--nu", "0.5", "--x", "1.5707963267948966"]));
    assert!(csv.starts_with("nu,x,value,method,abs_error_estimate,oracle_value\n"));
    let r = &rows(&csv)[0];
    let expected = 2.0 / std::f64::consts::PI;
    assert!((field(&r[2]) - expected).abs() < 1e-15);
    assert_eq!(r[3], "series");
    assert!((field(&r[5]) - expected).abs() < 1e-12);
    // beyond the oracle's range the column is empty
    let r = &rows(&stdout(&fluxscat(&["bessel", "--nu", "3000", "--x", "4000"])))[0];
    assert_eq!(r[5], "");
}

#[test]
fn dispersion_round_trip() {
    let by_k = stdout(&fluxscat(&[
        "dispersion",
        "--a",
        "1",
        "--b",
        "0.2",
        "--k",
        "3",
        "--alpha",
        "3.5",
    ]));
    assert!(by_k.starts_with("lambda,omega_hbar,k,tan2eps,alpha_tilde\n"));
    let r = &rows(&by_k)[0];
    assert!((field(&r[0]) - 5.5).abs() < 1e-15);
    let omega = r[1].clone();
    let by_omega = stdout(&fluxscat(&[
        "dispersion",
        "--a",
        "1",
        "--b",
        "0.2",
        "--omega-hbar",
        &omega,
        "--alpha",
        "3.5",
    ]));
    let s = &rows(&by_omega)[0];
    assert!((field(&s[2]) - 3.0).abs() < 1e-14);
    assert!((field(&s[4]) - field(&r[4])).abs() < 1e-15);
    // evanescent: no propagating mode
    let out = fluxscat(&["dispersion", "--a", "-1", "--b", "0.9", "--k", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "sweep-alpha",
        "--alpha-min",
        "0.5",
        "--alpha-max",
        "1.5",
        "--alpha-steps",
        "5",
        "--kh",
        "40",
    ];
    assert_eq!(stdout(&fluxscat(&args)), stdout(&fluxscat(&args)));
}
