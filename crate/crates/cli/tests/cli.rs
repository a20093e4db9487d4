use std::process::{Command, Output};

use serde_json::Value;

fn gravloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gravloc"))
        .args(args)
        .env_remove("GRAVLOC_DENSITY")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--output", "json"];
    all.extend_from_slice(args);
    let out = gravloc(&all);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).expect("valid json document")
}

#[test]
fn solve_unit_mass() {
    let v = json(&["solve", "--mu", "1"]);
    let lp = v["lambda_prime_cm"].as_f64().unwrap();
    assert!((lp / 4.25103e23 - 1.0).abs() < 1e-5, "{lp}");
    assert_eq!(v["regime"], "Quantum");
    assert_eq!(v["mode"], "paper");
    assert_eq!(v["curvature_positive"], true);
}

#[test]
fn solve_rejects_zero_mass() {
    let out = gravloc(&["solve", "--mu", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("mu"), "{err}");
    assert!(stdout(&out).is_empty());
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["solve", "--mu", "1", "--density", "0"][..],
        &["solve", "--mu", "1", "--precision", "18"],
        &["solve", "--mu", "1", "--mode", "sideways"],
        &["solve"],
        &["sweep", "--mu-min", "10", "--mu-max", "1"],
        &["force-law", "--d-min", "5", "--d-max", "1"],
        &["e0-check", "--lambda", "-1", "--mass", "1"],
    ] {
        let out = gravloc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn both_modes_emit_paired_rows() {
    let v = json(&["--mode", "both", "solve", "--mu", "1e9"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["mode"], "paper");
    assert_eq!(rows[1]["mode"], "derived");
}

#[test]
fn e0_check_flags_mismatch() {
    let v = json(&["e0-check", "--lambda", "1", "--mass", "1"]);
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((ratio - 0.0449).abs() < 1e-4, "{ratio}");
    assert_eq!(v["mismatch"], true);
    assert_eq!(v["note"], "closed-form/integral mismatch");
    let table = stdout(&gravloc(&["e0-check", "--lambda", "1", "--mass", "1"]));
    assert!(table.contains("closed-form/integral mismatch"));
}

#[test]
fn sweep_json_round_trips() {
    let v = json(&[
        "--mode",
        "both",
        "sweep",
        "--mu-min",
        "1",
        "--mu-max",
        "1e30",
        "--per-decade",
        "2",
    ]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2 * 61);
    let parsed: Vec<gravloc::sweep::SweepRow> = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(
        serde_json::to_value(&parsed).unwrap().as_array().unwrap().len(),
        rows.len()
    );
    assert_eq!(parsed[0].regime, gravloc::regimes::RegimeLabel::Quantum);
    assert_eq!(
        parsed.last().unwrap().regime,
        gravloc::regimes::RegimeLabel::Classical
    );
}

#[test]
fn sweep_csv_to_file() {
    let path = std::env::temp_dir().join(format!("gravloc-sweep-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = gravloc(&[
        "--output", "csv", "sweep", "--mu-min", "1e-3", "--mu-max", "1e3", "--out", p,
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(gravloc::sweep::CSV_HEADER));
    assert_eq!(lines.count(), 61);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "--mode", "both", "--output", "csv", "sweep", "--mu-min", "1", "--mu-max", "1e20",
        ][..],
        &[
            "--output",
            "json",
            "force-law",
            "--d-min",
            "5",
            "--d-max",
            "50",
            "--points",
            "6",
        ],
        &["crossover"],
    ] {
        let a = gravloc(args);
        let b = gravloc(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn every_subcommand_emits_one_json_document() {
    for args in [
        &["constants"][..],
        &["solve", "--mu", "1e12"],
        &["asymptotics", "--mu", "1e20"],
        &["crossover"],
        &[
            "energy-profile",
            "--mu",
            "1e10",
            "--lp-min",
            "1e-7",
            "--lp-max",
            "1e-4",
            "--points",
            "5",
        ],
        &["force-law", "--d-min", "5", "--d-max", "100", "--points", "5"],
        &["e0-check", "--lambda", "2", "--mass", "3"],
    ] {
        json(args);
    }
}

#[test]
fn force_law_slope_is_inverse_square() {
    let v = json(&["force-law", "--d-min", "10", "--d-max", "100", "--points", "10"]);
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope + 2.0).abs() < 0.01, "{slope}");
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
}

#[test]
fn density_sources_take_precedence_in_order() {
    let dir = std::env::temp_dir();
    let cfg = dir.join(format!("gravloc-{}.conf", std::process::id()));
    std::fs::write(&cfg, "# test\ndensity = 1e27\noutput = json\n").unwrap();
    let run = |extra: &[&str], env: Option<&str>| -> f64 {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gravloc"));
        cmd.env_remove("GRAVLOC_DENSITY")
            .args(extra)
            .args(["--output", "json", "constants"]);
        if let Some(e) = env {
            cmd.env("GRAVLOC_DENSITY", e);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["rho_ref"]
            .as_f64()
            .unwrap()
    };
    let c = cfg.to_str().unwrap();
    assert_eq!(run(&[], None), 1e24);
    assert_eq!(run(&[], Some("1e25")), 1e25);
    assert_eq!(run(&["--config", c], Some("1e25")), 1e27);
    assert_eq!(run(&["--config", c, "--density", "1e28"], Some("1e25")), 1e28);
    std::fs::remove_file(&cfg).ok();
}

#[test]
fn density_shifts_crossover_by_tenth_power() {
    let a = json(&["crossover"])["crossover_mu"].as_f64().unwrap();
    let b = json(&["--density", "1e34", "crossover"])["crossover_mu"]
        .as_f64()
        .unwrap();
    assert!((b / a / 10.0 - 1.0).abs() < 1e-5, "{a} {b}");
}
