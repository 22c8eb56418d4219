use std::path::Path;
use std::process::{Command, Output};

use soler::{solve_profile, ShootingOptions};

fn soler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soler")).args(args).env_remove("SOLER_CACHE_DIR").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn profile_matches_library() {
    let o = soler(&["profile", "--omega", "0.9"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let lib = solve_profile(0.9, 1.0, &ShootingOptions::default()).unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), lib.to_csv_string());
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(code(&soler(&["profile", "--omega", "1.5"])), 2);
    assert_eq!(code(&soler(&["profile", "--omega", "0"])), 2);
    assert_eq!(code(&soler(&["spectrum", "--omega", "0.5", "--ell", "5", "--m", "7"])), 2);
    assert_eq!(code(&soler(&["spectrum", "--omega", "0.5", "--ell", "1", "--m", "0", "--eta2", "-1"])), 2);
    assert_eq!(code(&soler(&["charges", "--omega-min", "0.9", "--omega-max", "0.5", "--steps", "3"])), 2);
    assert_eq!(code(&soler(&["bogus"])), 2);
}

#[test]
fn empty_sweep_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("sweep.csv");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(code(&soler(&["plot", "--in", path(&empty), "--out", path(dir.path())])), 4);
    assert_eq!(code(&soler(&["report", "--in", path(&empty)])), 4);
}

#[test]
fn sweep_events_report_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let o = soler(&[
        "sweep", "--omega-min", "0.90", "--omega-max", "0.98", "--steps", "5", "--ell-max", "0", "--nodes", "48", "--out", path(out),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["sweep.csv", "events.json", "config.toml"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let events: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("events.json")).unwrap()).unwrap();
    let ev = events.as_array().unwrap();
    assert_eq!(ev.len(), 1, "{events}");
    assert_eq!(ev[0]["kind"], "pitchfork");
    let w = ev[0]["omega"].as_f64().unwrap();
    assert!((w - 0.936).abs() < 0.005, "{w}");

    let sweep = out.join("sweep.csv");
    let o = soler(&["report", "--in", path(&sweep), "--events", path(&out.join("events.json"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report.is_object());

    let figs = out.join("figs");
    assert_eq!(code(&soler(&["plot", "--in", path(&sweep), "--out", path(&figs)])), 0);
    let svg = std::fs::read_to_string(figs.join("spectrum_ell0.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn charges_table() {
    let o = soler(&["charges", "--omega-min", "0.8", "--omega-max", "0.9", "--steps", "3", "--rapidity", "0.5", "--alpha", "0.3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,Q,Sigma_re,Sigma_im,E"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        // Q^2 - |Sigma|^2 is the one-frequency charge squared, so Q > |Sigma|
        assert!(r[1] > (r[2] * r[2] + r[3] * r[3]).sqrt());
    }
}
