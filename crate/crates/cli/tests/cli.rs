use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn tlbraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlbraid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn ok_json(args: &[&str]) -> Value {
    let out = tlbraid(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    json_of(&out)
}

fn run_ok(args: &[&str]) {
    let out = tlbraid(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
}

fn amplitudes(state: &Value) -> Vec<(f64, f64)> {
    state["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| (z[0].as_f64().unwrap(), z[1].as_f64().unwrap()))
        .collect()
}

fn assert_amps(state: &Value, want: &[(usize, (f64, f64))]) {
    let amps = amplitudes(state);
    for (idx, &(re, im)) in amps.iter().enumerate() {
        let (wre, wim) = want
            .iter()
            .find(|(i, _)| *i == idx)
            .map_or((0.0, 0.0), |&(_, z)| z);
        assert!(
            (re - wre).abs() < 1e-12 && (im - wim).abs() < 1e-12,
            "amplitude {idx}: {re}+{im}i"
        );
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tlbraid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_all_at_defaults_passes() {
    let v = ok_json(&["verify", "all"]);
    assert_eq!(v["pass"], true);
    let suites: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["suite"].as_str().unwrap())
        .collect();
    assert_eq!(
        suites,
        ["tla", "braid", "ybe", "powers", "cnot", "psi", "structured"]
    );
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_outside_domain_is_a_config_error() {
    let out = tlbraid(&["verify", "tla", "--theta", "pi/4"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert!(v["error"].as_str().unwrap().contains("d^2 >= 1"));
}

#[test]
fn verify_powers_reports_order_sixteen() {
    let v = ok_json(&["verify", "powers", "--theta", "pi/8"]);
    let result = &v["results"][0];
    assert_eq!(result["pass"], true);
    assert!(result["notes"][0].as_str().unwrap().contains("[16]"));
    let names: Vec<&str> = result["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["relation"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"b1^16 = I"));
}

#[test]
fn failing_checks_exit_nonzero_with_failure_list() {
    let out = tlbraid(&["verify", "tla", "--theta", "pi/6", "--n", "2", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["pass"], false);
    let failures = v["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures[0]["relation"].is_string() && failures[0]["residual"].is_number());
}

#[test]
fn verify_bell_family() {
    let v = ok_json(&["verify", "braid", "--rep", "bell", "--n", "4"]);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["results"][0]["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["relation"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"b1 b3 = b3 b1"));
    let powers = ok_json(&["verify", "powers", "--rep", "bell"]);
    assert!(powers["results"][0]["notes"][0]
        .as_str()
        .unwrap()
        .contains("[8]"));
}

#[test]
fn generate_ghz() {
    let v = ok_json(&["generate", "ghz", "--n", "3"]);
    assert_amps(&v["state"], &[(0, (-S, 0.0)), (7, (-S, 0.0))]);
    let reports = v["entanglement"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert!((r["entropy_bits"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(r["schmidt_rank"], 2);
        assert_eq!(r["is_product"], false);
    }

    let one = ok_json(&["generate", "ghz", "--n", "1"]);
    assert_amps(&one["state"], &[(0, (-S, 0.0)), (1, (-S, 0.0))]);
}

#[test]
fn generate_inverse_ghz() {
    let v = ok_json(&["generate", "ghz", "--n", "4", "--inverse"]);
    assert_amps(&v["state"], &[(0, (-S, 0.0)), (15, (0.0, -S))]);
}

#[test]
fn generate_cluster() {
    let v = ok_json(&["generate", "cluster", "--n", "4", "--k", "3"]);
    let amps = amplitudes(&v["state"]);
    let want = [(0b0000, 0.5), (0b0011, 0.5), (0b1100, 0.5), (0b1111, -0.5)];
    let overlap: (f64, f64) = want.iter().fold((0.0, 0.0), |acc, &(i, w)| {
        (acc.0 + w * amps[i].0, acc.1 + w * amps[i].1)
    });
    assert!((overlap.0.hypot(overlap.1) - 1.0).abs() < 1e-10);
    let cut = &v["entanglement"][0];
    assert_eq!(cut["bipartition"], serde_json::json!([3, 4]));
    assert!((cut["entropy_bits"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn generate_basis_superpose() {
    let v = ok_json(&["generate", "basis-superpose", "--bits", "0110"]);
    assert_amps(&v["state"], &[(0b0110, (-S, 0.0)), (0b1001, (-S, 0.0))]);
    let missing = tlbraid(&["generate", "basis-superpose", "--n", "3"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn apply_bell_word() {
    let v = ok_json(&["apply", "b1 b2", "--rep", "bell", "--state", "000"]);
    assert_amps(
        &v["state"],
        &[
            (0b000, (0.5, 0.0)),
            (0b011, (0.5, 0.0)),
            (0b101, (0.5, 0.0)),
            (0b110, (0.5, 0.0)),
        ],
    );
}

#[test]
fn apply_cancelling_word() {
    let v = ok_json(&["apply", "b1 b1^-1", "--state", "01"]);
    assert_amps(&v["state"], &[(0b01, (1.0, 0.0))]);
}

#[test]
fn apply_structured_jones_word() {
    let v = ok_json(&[
        "apply", "b1 b2", "--rep", "jones", "--n", "5", "--k", "1", "--state", "00000",
    ]);
    assert_amps(&v["state"], &[(0, (-S, 0.0)), (31, (-S, 0.0))]);
    let large = ok_json(&["apply", "b1 b2", "--n", "16", "--state", &"0".repeat(16)]);
    assert_eq!(amplitudes(&large["state"]).len(), 1 << 16);
}

#[test]
fn apply_errors() {
    for args in [
        &["apply", "b1 b", "--state", "000"][..],
        &["apply", "b3", "--state", "000"],
        &["apply", "b1^0", "--state", "000"],
        &["apply", "b1", "--state", "01", "--n", "3"],
        &["apply", "b1", "--state", "012"],
    ] {
        let out = tlbraid(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(json_of(&out)["error"].is_string());
    }
}

#[test]
fn entropy_measurement_contrast() {
    let ghz = scratch("ghz.json");
    run_ok(&[
        "generate",
        "ghz",
        "--n",
        "3",
        "--out",
        ghz.to_str().unwrap(),
    ]);
    let state_arg = format!("@{}", ghz.display());
    for outcome in ["1:0", "1:1"] {
        let v = ok_json(&["entropy", "--state", &state_arg, "--measure", outcome]);
        assert!((v["measurement"]["probability"].as_f64().unwrap() - 0.5).abs() < 1e-12);
        for r in v["entanglement"].as_array().unwrap() {
            assert!(r["entropy_bits"].as_f64().unwrap() <= 1e-9);
        }
    }

    let psi = scratch("psi.json");
    run_ok(&[
        "apply",
        "b1 b2",
        "--rep",
        "bell",
        "--state",
        "000",
        "--out",
        psi.to_str().unwrap(),
    ]);
    let v = ok_json(&[
        "entropy",
        "--state",
        &format!("@{}", psi.display()),
        "--measure",
        "1:0",
    ]);
    for r in v["entanglement"].as_array().unwrap() {
        assert!((r["entropy_bits"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn entropy_of_product_and_bad_cuts() {
    let v = ok_json(&["entropy", "--state", "0110", "--cut", "1,3"]);
    assert_eq!(v["entanglement"][0]["entropy_bits"], 0.0);
    assert_eq!(v["entanglement"][0]["is_product"], true);
    for cut in ["0", "1,2,3,4", "2,2", "x"] {
        let out = tlbraid(&["entropy", "--state", "0110", "--cut", cut]);
        assert_eq!(out.status.code(), Some(2), "cut {cut}");
    }
    assert_eq!(
        tlbraid(&["entropy", "--state", "00", "--measure", "1:1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_file_and_flag_override() {
    let cfg = scratch("config.json");
    std::fs::write(&cfg, r#"{"theta": "pi/6", "n": 2, "format": "json"}"#).unwrap();
    let v = ok_json(&["--config", cfg.to_str().unwrap(), "verify", "powers"]);
    assert!(v["results"][0]["notes"][0]
        .as_str()
        .unwrap()
        .contains("[12]"));
    let v = ok_json(&[
        "--config",
        cfg.to_str().unwrap(),
        "--theta",
        "pi/8",
        "verify",
        "powers",
    ]);
    assert!(v["results"][0]["notes"][0]
        .as_str()
        .unwrap()
        .contains("[16]"));

    std::fs::write(&cfg, r#"{"theta": "pi/6", "bogus": 1}"#).unwrap();
    assert_eq!(
        tlbraid(&["--config", cfg.to_str().unwrap(), "verify", "ybe"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn text_format_and_determinism() {
    let out = tlbraid(&["generate", "ghz", "--n", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("|00>  -0.707106781187+0i"), "{text}");
    let a = tlbraid(&["verify", "structured", "--seed", "7"]).stdout;
    let b = tlbraid(&["verify", "structured", "--seed", "7"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn json_state_round_trips_through_files() {
    let path = scratch("cluster.json");
    run_ok(&[
        "generate",
        "cluster",
        "--n",
        "4",
        "--k",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::write(&path, saved["state"].to_string()).unwrap();
    let applied = ok_json(&[
        "apply",
        "b1",
        "--state",
        &format!("@{}", path.display()),
        "--n",
        "4",
        "--k",
        "2",
    ]);
    assert_eq!(applied["input"], saved["state"]);
}
