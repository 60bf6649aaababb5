use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_piso-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn canonical_w_right_nica_exits_zero() {
    let out = run(&[
        "check",
        "--semigroup",
        "Nk:k=2,max=4",
        "--rep",
        "canonical_W",
        "--checks",
        "right_nica",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["status"], "pass");
    assert_eq!(r["result"]["reports"][0]["check"], "right_nica");
}

#[test]
fn degenerate_free_right_nica_exits_one_with_witness() {
    let out = run(&[
        "check",
        "--semigroup",
        "Free:n=2,len=3",
        "--rep",
        "degenerate_free",
        "--checks",
        "right_nica",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let witnesses = r["result"]["reports"][0]["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["elements"] == serde_json::json!(["a", "b"])));
}

#[test]
fn malformed_window_exits_two() {
    let out = run(&["check", "--semigroup", "Nk:k=1,max=banana"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("banana"));
}

#[test]
fn unknown_check_and_bad_flags_exit_two() {
    assert_eq!(
        run(&["check", "--semigroup", "Nk:k=1,max=3", "--checks", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bd", "--p", "seven", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bd_reports_invariants() {
    let out = run(&["bd", "--p", "7", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["count"], "2");
    assert_eq!(r["result"]["supernatural"], "3·7^inf");
    assert_eq!(r["tool"], "piso-lab");
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["config"]["command"], "bd");
}

#[test]
fn bd_csv_has_fixed_header() {
    let out = run(&["bd", "--p", "7", "--q", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q,ord,L,count,supernatural"));
    assert_eq!(lines.next(), Some("7,2,3,1,2,3·7^inf"));
}

#[test]
fn bd_domain_error_exits_one() {
    let out = run(&["bd", "--p", "9", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn qa_flags_the_empty_middle_subset() {
    let out = run(&["qa", "--semigroup", "Nk:k=1,max=6", "--set", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let entries = r["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    let only_two = entries
        .iter()
        .find(|e| e["subset"] == serde_json::json!(["2"]))
        .expect("subset {2}");
    assert_eq!(only_two["nonzero"], false);
}

#[test]
fn odometer_carries_to_the_right() {
    let out = run(&[
        "odometer", "--d", "2", "--p", "3", "--depth", "1", "--steps", "2", "--start", "1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["orbit"], serde_json::json!(["(1,2)", "(0,0)", "(1,0)"]));
    assert_eq!(r["result"]["period"], "6");
}

#[test]
fn odometer_bad_start_exits_two() {
    let out = run(&["odometer", "--d", "2", "--p", "3", "--depth", "1", "--start", "1,2,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lcm_and_sigma() {
    let r = report(&run(&["lcm", "--semigroup", "Free:n=2,len=3", "--set", "ab,a"]));
    assert_eq!(r["result"]["right_lcm"], "ab");
    assert_eq!(r["result"]["left_lcm"], Value::Null);
    let r = report(&run(&[
        "sigma",
        "--semigroup",
        "NTimes:primes=2,3;maxexp=2",
        "--set",
        "4,6",
    ]));
    assert_eq!(r["result"]["sigma"], "12");
}

#[test]
fn norm_formula_matches_window() {
    let out = run(&["norm", "--semigroup", "Nk:k=1,max=5", "--function", "1_1 - 2/3*1_2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["formula"], "1");
}

#[test]
fn cp_mul_explicit_product() {
    let out = run(&[
        "cp-mul",
        "--semigroup",
        "Nk:k=1,max=4",
        "--left",
        "0 | 1_e | 1",
        "--right",
        "2 | 1_e | 0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let product = &report(&out)["result"]["products"][0]["product"];
    assert_eq!(
        product,
        &serde_json::json!([{"coeff": "1", "f": [{"coeff": "1", "u": "2"}], "x": "1", "y": "0"}])
    );
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = [
        "cp-mul",
        "--semigroup",
        "Free:n=2,len=2",
        "--seed",
        "7",
        "--samples",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "cp-mul",
        "--semigroup",
        "Free:n=2,len=2",
        "--seed",
        "8",
        "--samples",
        "5",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn beta_probe_passes() {
    let out = run(&[
        "beta", "--p", "3", "--q", "5", "--k", "2", "--l", "1", "--m", "1", "--n", "1", "--elem", "0", "--probe",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["probe"]["status"], "pass");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("piso-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bd.json");
    let out = run(&["bd", "--p", "5", "--q", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["result"]["p"], 5);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn thread_override_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_piso-lab"))
        .args(["check", "--semigroup", "Nk:k=1,max=3"])
        .env("PISO_LAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_piso-lab"))
        .args(["check", "--semigroup", "Nk:k=1,max=3"])
        .env("PISO_LAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
