use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conformable-hydrogen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn column(table: &Value, name: &str) -> Vec<f64> {
    let index = table["columns"]
        .as_array()
        .unwrap()
        .iter()
        .position(|c| c == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    table["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[index].as_f64().unwrap())
        .collect()
}

#[test]
fn energy_csv_reproduces_known_levels() {
    let out = run(&[
        "energy",
        "--n-max",
        "3",
        "--alpha-list",
        "0.5,1.0",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,n,energy_eV");
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"1.000000000000e+00,1,-1.360000000000e+01"));
    assert!(lines.contains(&"1.000000000000e+00,2,-3.400000000000e+00"));
    let row = lines
        .iter()
        .find(|l| l.starts_with("5.000000000000e-01,1,"))
        .unwrap();
    let e: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((e + 10.4307).abs() < 1e-4);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["energy", "--format", "json"],
        vec!["density", "--n", "2", "--l", "1", "--points", "200"],
        vec!["table", "--which", "radial"],
        vec!["verify", "--level", "quick"],
        vec![
            "slice", "--n", "2", "--l", "1", "--m", "1", "--points", "21",
        ],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_envelope_has_schema() {
    let table = json(&["energy", "--n-max", "2"]);
    assert_eq!(table["schema_version"], 1);
    assert_eq!(table["command"], "energy");
    assert_eq!(table["rows"].as_array().unwrap().len(), 12);
}

#[test]
fn density_integrates_to_one() {
    for alpha in ["0.5", "0.8", "1.0"] {
        let table = json(&[
            "density",
            "--n",
            "3",
            "--l",
            "1",
            "--alpha-list",
            alpha,
            "--points",
            "20000",
        ]);
        let a: f64 = alpha.parse().unwrap();
        let r = column(&table, "r");
        let rho = column(&table, "density");
        // trapezoid on u = r^α/α, whose measure is d^α r
        let u: Vec<f64> = r.iter().map(|x| x.powf(a) / a).collect();
        let total: f64 = (1..r.len())
            .map(|i| 0.5 * (rho[i] + rho[i - 1]) * (u[i] - u[i - 1]))
            .sum();
        assert!((total - 1.0).abs() < 1e-3, "alpha {alpha}: {total}");
    }
}

#[test]
fn table_command_meets_tolerance() {
    for which in ["radial", "psi"] {
        let table = json(&["table", "--which", which]);
        assert!(column(&table, "max_deviation").iter().all(|&d| d <= 1e-12));
    }
}

#[test]
fn slice_of_s_state_is_axially_symmetric() {
    for alpha in ["1.0", "0.7"] {
        let table = json(&[
            "slice", "--n", "2", "--l", "0", "--m", "0", "--points", "31", "--alpha", alpha,
        ]);
        let (x, y, p) = (
            column(&table, "x"),
            column(&table, "y"),
            column(&table, "psi_sq"),
        );
        for i in 0..p.len() {
            assert!(p[i] >= 0.0);
            let mirror = (0..p.len())
                .find(|&j| x[j] == -x[i] && y[j] == y[i])
                .expect("grid is symmetric");
            assert!((p[i] - p[mirror]).abs() <= 1e-12 * p[i].max(1e-300));
        }
    }
}

#[test]
fn ground_state_density_peaks_at_bohr_radius() {
    let table = json(&["density", "--n", "1", "--l", "0", "--alpha-list", "1.0"]);
    let (r, rho) = (column(&table, "r"), column(&table, "density"));
    let peak = (0..r.len())
        .max_by(|&i, &j| rho[i].total_cmp(&rho[j]))
        .unwrap();
    assert!((r[peak] - 1.0).abs() < 1e-9, "{}", r[peak]);
}

#[test]
fn slice_of_p_state_vanishes_on_axis() {
    let table = json(&[
        "slice", "--n", "2", "--l", "1", "--m", "1", "--points", "21",
    ]);
    let (x, p) = (column(&table, "x"), column(&table, "psi_sq"));
    let on_axis: Vec<f64> = x
        .iter()
        .zip(&p)
        .filter(|(x, _)| **x == 0.0)
        .map(|(_, p)| *p)
        .collect();
    assert!(!on_axis.is_empty());
    assert!(on_axis.iter().all(|&v| v < 1e-30));
    assert!(p.iter().all(|&v| v >= 0.0) && p.iter().any(|&v| v > 1e-6));
}

#[test]
fn verify_reports_checks() {
    let report = json(&["verify", "--level", "quick"]);
    assert_eq!(report["passed"], true);
    assert_eq!(report["checks_failed"], 0);
    let out = run(&["verify", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,measured,threshold,bound,passed\n"));
    let fault = run(&["verify", "--inject-fault", "perturbed-radial"]);
    assert_eq!(fault.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&fault.stdout).unwrap();
    assert_eq!(report["passed"], false);
}

#[test]
fn invalid_input_exits_with_usage_code() {
    for args in [
        vec!["energy", "--n-max", "0"],
        vec!["energy", "--alpha-list", "1.5"],
        vec!["energy", "--alpha-list", ""],
        vec!["density", "--n", "2", "--l", "2"],
        vec!["slice", "--n", "2", "--l", "1", "--m", "2"],
        vec!["bogus"],
        vec![],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("energy.csv");
    let out = run(&[
        "energy",
        "--n-max",
        "2",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = run(&["energy", "--n-max", "2", "--format", "csv"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}
