use std::f64::consts::FRAC_1_SQRT_2;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cf"))
        .args(args)
        .env_remove("CF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

/// The number after `key: ` in plain output.
fn field(text: &str, key: &str) -> f64 {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .and_then(|rest| rest.split_whitespace().next())
        .unwrap_or_else(|| panic!("no '{key}' in:\n{text}"))
        .parse()
        .unwrap()
}

#[test]
fn solve_dihedral_window() {
    let o = cf(&[
        "solve",
        "--group",
        "dihedral:4",
        "--omega",
        "window:1",
        "--z",
        "1",
        "--field",
        "complex",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!((field(&out, "value") - FRAC_1_SQRT_2).abs() < 1e-5, "{out}");
    assert!(field(&out, "certified_lower_bound") >= FRAC_1_SQRT_2 - 1e-4);
    assert!(out.contains("trace: {0,1,3} ⊂ Z_4"));
    assert!(out.contains("cf_condition: N = 1"));
}

#[test]
fn solve_trivial_cases() {
    let o = cf(&["solve", "--group", "cyclic:6", "--omega", "all", "--z", "1"]);
    assert!(o.status.success());
    assert!((field(&stdout(&o), "value") - 1.0).abs() < 1e-5);

    // index 1 is a transposition of S_3, so Ω is the subgroup {e, z}
    let o = cf(&[
        "solve",
        "--group",
        "symmetric:3",
        "--omega",
        "0,1",
        "--z",
        "1",
        "--field",
        "real",
    ]);
    assert!(o.status.success());
    assert!((field(&stdout(&o), "value") - 1.0).abs() < 1e-5);
    assert!(o.stderr.is_empty());
}

#[test]
fn solve_warns_when_symmetrizing() {
    let o = cf(&[
        "solve", "--group", "cyclic:5", "--omega", "0,1,2,4", "--z", "1", "--field", "real",
    ]);
    assert!(o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("warning") && err.contains("{0,1,4}"), "{err}");
}

#[test]
fn solve_json_round_trips() {
    let o = cf(&[
        "solve", "--group", "cyclic:4", "--omega", "window:1", "--z", "1", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "cf.solve/1");
    assert_eq!(v["group_order"], 4);
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value - FRAC_1_SQRT_2).abs() < 1e-5);
    let witness: cf_core::GroupFunction =
        serde_json::from_value(v["result"]["witness"].clone()).unwrap();
    assert_eq!(witness.group_order(), 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        cf(&["solve", "--group", "bogus:3", "--omega", "all", "--z", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cf(&["solve", "--group", "cyclic:4", "--omega", "1,3", "--z", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cf(&["solve", "--group", "cyclic:4", "--omega", "all", "--z", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cf(&["checkpd", "--group", "cyclic:3", "--values", "1,x,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cf(&["factor", "--values", "1,0.5"]).status.code(), Some(2));
    assert_eq!(
        cf(&["verify", "--matrix", "/nonexistent/matrix.txt"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn solver_failure_exits_three_with_residuals() {
    let o = cf(&[
        "solve",
        "--group",
        "cyclic:6",
        "--omega",
        "window:1",
        "--z",
        "1",
        "--max-iter",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("primal residual") && err.contains("--rho"),
        "{err}"
    );
}

#[test]
fn csv_group_tables() {
    let spec = format!("csv:{}", fixture("z3_table.csv"));
    let o = cf(&[
        "solve", "--group", &spec, "--omega", "all", "--z", "1", "--format", "csv",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("index,label,re,im\n"), "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn factor_inline_and_file() {
    let o = cf(&["factor", "--values", "0.5,1,0.5", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let theta = v["theta"].as_array().unwrap();
    assert_eq!(theta.len(), 2);
    for t in theta {
        assert!((t[0].as_f64().unwrap() - FRAC_1_SQRT_2).abs() < 1e-5);
        assert!(t[1].as_f64().unwrap().abs() < 1e-6);
    }
    let o = cf(&["factor", "--file", &fixture("psi_window.json")]);
    assert!(o.status.success());
    assert!(field(&stdout(&o), "reconstruction_error") < 1e-6);

    let o = cf(&[
        "factor",
        "--modular",
        "--values",
        "1,0.5,0,0.5",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["reconstruction_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn factor_seed_is_reported_and_env_wins() {
    let run = |seed_flag: &str, env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cf"));
        c.args([
            "factor",
            "--values",
            "0.25,0.5,1,0.5,0.25",
            "--format",
            "json",
            "--seed",
            seed_flag,
        ]);
        match env {
            Some(s) => c.env("CF_SEED", s),
            None => c.env_remove("CF_SEED"),
        };
        let v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(run("7", None), 7);
    assert_eq!(run("7", Some("11")), 11);
}

#[test]
fn factor_rejects_negative_symbol() {
    // 1 + cos(t)·1.5 changes sign
    let o = cf(&["factor", "--values", "0.75,1,0.75"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn checkpd_verdicts() {
    let o = cf(&["checkpd", "--group", "cyclic:5", "--values", "1,1,1,1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: pd"));

    let o = cf(&["checkpd", "--group", "cyclic:2", "--values", "1,1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: not_pd"));

    let o = cf(&[
        "checkpd",
        "--group",
        "cyclic:2",
        "--file",
        &fixture("z2_not_pd.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["verdict"], "not_pd");

    let o = cf(&[
        "checkpd",
        "--group",
        "cyclic:3",
        "--values",
        "1,0.5i,-0.5i",
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("pd,"));
}

#[test]
fn tables() {
    let o = cf(&["table", "km_punctured", "--format", "csv"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(rows.len(), 1 + 9);
    let six: Vec<&str> = rows[2].split(',').collect();
    assert_eq!(six[0], "6");
    assert!((six[1].parse::<f64>().unwrap() - 0.75).abs() < 1e-8);

    let o = cf(&[
        "table",
        "cf_window",
        "--from",
        "3",
        "--to",
        "3",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v["rows"][0];
    assert!((row[1].as_f64().unwrap() - 0.809017).abs() < 1e-4);
    assert!(row[3].as_f64().unwrap() <= 1e-4);

    let o = cf(&["table", "ruzsa", "--to", "8"]);
    assert!(o.status.success());
    for line in stdout(&o).lines().skip(1) {
        assert_eq!(line.split_whitespace().nth(2), Some("0"), "{line}");
    }

    let o = cf(&["table", "ladder", "--n", "1", "--moduli", "3,6,12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn verify_reports_failures() {
    let o = cf(&["verify", "--matrix", &fixture("corrupted_matrix.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[1].starts_with("PASS"), "{out}");
    assert!(lines[2].starts_with("FAIL"), "{out}");
    assert!(out.contains("1/2 PASS"));
}

#[test]
fn verify_default_matrix_json() {
    let o = cf(&["verify", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "cf.verify/1");
    assert_eq!(v["passed"], v["total"]);
    assert!(v["total"].as_u64().unwrap() >= 25);
    for inst in v["instances"].as_array().unwrap() {
        if inst["instance"]["group"]
            .as_str()
            .unwrap()
            .starts_with("cyclic")
        {
            for c in inst["report"]["comparisons"].as_array().unwrap() {
                assert!(c["gap"].as_f64().unwrap() <= 1e-6, "{c}");
            }
        }
    }
}
