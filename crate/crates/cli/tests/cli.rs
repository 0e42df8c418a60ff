use std::process::{Command, Output};

use otto_forge::sweep::parse_json_table;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otto-forge"))
        .args(args)
        .output()
        .unwrap()
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otto-forge"))
        .args(args)
        .env(key, val)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

const BASE: [&str; 8] = ["--omega1", "7", "--omega2", "20", "--t1", "2", "--t2", "10"];

fn with_base<'a>(cmd: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(BASE);
    v.extend(rest);
    v
}

fn excess_sweep<'a>(extra: &[&'a str]) -> Vec<&'a str> {
    let mut rest = vec![
        "--bath",
        "squeezed:0",
        "--cycle",
        "modified",
        "--axis",
        "delta-n",
        "--start",
        "0",
        "--stop",
        "1",
        "--steps",
        "101",
    ];
    rest.extend(extra);
    with_base("sweep", &rest)
}

#[test]
fn thermal_standard_cycle() {
    let v = json(&run(&with_base(
        "cycle",
        &["--bath", "thermal", "--cycle", "standard"],
    )));
    assert!((v["eta"].as_f64().unwrap() - 0.65).abs() < 1e-12);
    assert_eq!(v["regime"], "GenuineHeatEngine");
    assert!(v["law_residual"].as_f64().unwrap() < 1e-9);
    for key in ["W1", "W2", "W3", "W4", "Q2", "Q4", "E2", "E4", "cop"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn modified_cycle_in_dual_regime() {
    let out = run(&[
        "cycle",
        "--omega1",
        "3",
        "--omega2",
        "20",
        "--t1",
        "2",
        "--t2",
        "10",
        "--bath",
        "squeezed:0.5",
        "--cycle",
        "modified",
    ]);
    let v = json(&out);
    assert_eq!(v["eta"].as_f64().unwrap(), 1.0);
    assert!((v["cop"].as_f64().unwrap() - 3.0 / 17.0).abs() < 1e-12);
    assert_eq!(v["regime"], "DualEngineRefrigerator");
    assert_eq!(v["laws"]["cop_ok"], true);
}

#[test]
fn composite_and_second_kind_baths() {
    let v = json(&run(&with_base(
        "cycle",
        &["--bath", "squeezed:0.3,1.0+displaced:0.5,-0.5"],
    )));
    assert_eq!(v["cycle"], "standard");
    let v = json(&run(&with_base(
        "cycle",
        &["--bath", "second-kind:0.4", "--cycle", "second-kind"],
    )));
    assert!((v["delta_n"].as_f64().unwrap() - 0.4).abs() < 1e-15);
    let v = json(&run(&with_base(
        "cycle",
        &["--bath", "second-kind:T=12", "--cycle", "second-kind"],
    )));
    assert!((v["hot_temperature"].as_f64().unwrap() - 12.0).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["cycle", "--omega1", "7", "--t1", "2", "--t2", "10"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("--omega2"));
    assert_eq!(code(&run(&with_base("cycle", &["--bath", "squeezed"]))), 2);
    assert_eq!(
        code(&run(&with_base("cycle", &["--bath", "squeezed:x"]))),
        2
    );
    assert_eq!(code(&run(&with_base("cycle", &["--cycle", "diesel"]))), 2);
    assert_eq!(
        code(&run(&["cycle", "--omega1", "7", "--omega2", "nope"])),
        2
    );
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn physics_errors_exit_3() {
    let o = run(&with_base(
        "cycle",
        &["--bath", "second-kind:0.3", "--cycle", "standard"],
    ));
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
    let o = run(&with_base(
        "cycle",
        &["--bath", "second-kind:-5", "--cycle", "second-kind"],
    ));
    assert_eq!(code(&o), 3);
}

#[test]
fn excess_sweep_csv() {
    let o = run(&excess_sweep(&[]));
    assert_eq!(code(&o), 0);
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    let eta_col = header.iter().position(|h| h == "eta").unwrap();
    let eta: Vec<f64> = reader
        .records()
        .map(|r| r.unwrap()[eta_col].parse().unwrap())
        .collect();
    assert_eq!(eta.len(), 101);
    assert!((eta[0] - 0.65).abs() < 1e-12);
    assert!((eta[10] - 0.80529).abs() < 1e-4);
    assert!(eta.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn sweep_output_is_deterministic_across_thread_counts() {
    let a = run_env(&excess_sweep(&[]), "OTTO_FORGE_THREADS", "1");
    let b = run_env(&excess_sweep(&[]), "OTTO_FORGE_THREADS", "4");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        code(&run_env(&excess_sweep(&[]), "OTTO_FORGE_THREADS", "zero")),
        2
    );
}

#[test]
fn sweep_usage_errors() {
    let mut args = excess_sweep(&[]);
    let steps = args.iter().position(|a| *a == "101").unwrap();
    args[steps] = "1";
    assert_eq!(code(&run(&args)), 2);
    // Displacement magnitude makes no sense for a squeezed bath.
    let args = with_base(
        "sweep",
        &[
            "--bath",
            "squeezed:0.5",
            "--axis",
            "displacement-mag",
            "--start",
            "0",
            "--stop",
            "1",
            "--steps",
            "3",
        ],
    );
    assert_eq!(code(&run(&args)), 2);
    assert_eq!(code(&run(&excess_sweep(&["--format", "xml"]))), 2);
}

#[test]
fn json_sweep_round_trips() {
    let o = run(&excess_sweep(&["--format", "json"]));
    assert_eq!(code(&o), 0);
    let rows = parse_json_table(&o.stdout).unwrap();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0].eta, Some(0.65));
    let again = otto_forge::sweep::emit_table(&rows, otto_forge::sweep::TableFormat::Json).unwrap();
    assert_eq!(again, o.stdout);
}

#[test]
fn sweep_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("excess.csv");
    let o = run(&excess_sweep(&["--out", path.to_str().unwrap()]));
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 102);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.json");
    std::fs::write(
        &path,
        r#"{"omega1": 5, "omega2": 20, "t1": 2, "t2": 10, "bath": "thermal", "cycle": "standard"}"#,
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let v = json(&run(&["cycle", "--config", cfg]));
    assert!((v["eta"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    let o = run(&["cycle", "--config", cfg, "--omega1", "7"]);
    let v = json(&o);
    assert!((v["eta"].as_f64().unwrap() - 0.65).abs() < 1e-12);
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("warning: --omega1 7 overrides config value 5")
    );

    std::fs::write(&path, r#"{"omega1": 5, "colour": "blue"}"#).unwrap();
    assert_eq!(code(&run(&["cycle", "--config", cfg])), 2);
    assert_eq!(
        code(&run(&["cycle", "--config", "/nonexistent/otto.json"])),
        2
    );
}

#[test]
fn ergotropy_with_oracle() {
    let v = json(&run(&[
        "ergotropy",
        "--nth",
        "0.15652",
        "--r",
        "0.5",
        "--omega",
        "20",
        "--oracle",
    ]));
    assert!((v["ergotropy"].as_f64().unwrap() - 7.130_865_967_378_077).abs() < 1e-12);
    assert!(v["oracle"]["ergotropy_rel_dev"].as_f64().unwrap() < 1e-5);
    assert!(v["oracle"]["cutoff"].as_u64().unwrap() > 0);
    assert!(v["oracle"]["entropy_rel_dev"].as_f64().unwrap() < 1e-6);
}

#[test]
fn ergotropy_classical_and_nonclassical() {
    let v = json(&run(&[
        "ergotropy",
        "--nth",
        "1",
        "--r",
        "0",
        "--omega",
        "5",
    ]));
    assert_eq!(v["ergotropy"].as_f64().unwrap(), 0.0);
    assert_eq!(v["nonclassical"], false);
    let v = json(&run(&[
        "ergotropy",
        "--nth",
        "0.5",
        "--r",
        "0.4",
        "--omega",
        "1",
    ]));
    assert_eq!(v["nonclassical"], true);
    let v = json(&run(&[
        "ergotropy",
        "--nth",
        "0",
        "--alpha-re",
        "1",
        "--alpha-im",
        "-1",
        "--omega",
        "2",
    ]));
    assert!((v["ergotropy"].as_f64().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn ergotropy_oracle_failure_exits_3() {
    let o = run(&[
        "ergotropy",
        "--nth",
        "0",
        "--r",
        "4",
        "--omega",
        "1",
        "--oracle",
    ]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cutoff"));
    assert_eq!(code(&run(&["ergotropy", "--nth", "-1", "--omega", "1"])), 2);
}

#[test]
fn audit_is_deterministic_and_clean() {
    let a = run(&["audit", "--samples", "1", "--seed", "7"]);
    let b = run(&["audit", "--samples", "1", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&run(&["audit", "--samples", "500", "--seed", "42"]));
    assert_eq!(v["total_violations"], 0);
    assert_eq!(code(&run(&["audit", "--samples", "0"])), 2);
}
