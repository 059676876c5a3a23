use std::process::{Command, Output};

fn peaklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peaklab"))
        .args(args)
        .env_remove("PEAKLAB_MAX_N")
        .env_remove("PEAKLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dist_json_examples() {
    let o = peaklab(&["dist", "3^1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counts"], serde_json::json!({"0": "1", "1": "1"}));

    let v: serde_json::Value = serde_json::from_str(&stdout(&peaklab(&["dist", "2^2"]))).unwrap();
    assert_eq!(v["class_size"], "3");

    let v: serde_json::Value = serde_json::from_str(&stdout(&peaklab(&["dist", "1^6"]))).unwrap();
    assert_eq!(v["counts"]["0"], "1");
}

#[test]
fn dist_json_round_trips_through_the_library() {
    let text = stdout(&peaklab(&["dist", "3^2 2^1"]));
    let dist = peaklab::format::distribution_from_json(&text).unwrap();
    assert_eq!(peaklab::format::distribution_json(&dist), text);
    let csv = stdout(&peaklab(&["dist", "3^2 2^1", "--format", "csv"]));
    assert_eq!(peaklab::format::counts_from_csv(&csv).unwrap(), dist.counts());
}

#[test]
fn exit_codes() {
    assert_eq!(peaklab(&["dist", "2^0"]).status.code(), Some(2));
    assert_eq!(peaklab(&["dist", "derangement:6"]).status.code(), Some(2));
    assert_eq!(peaklab(&["dist", "3^2", "--n", "7"]).status.code(), Some(2));
    assert_eq!(peaklab(&["dist", "2^200"]).status.code(), Some(3));
    assert_eq!(peaklab(&["mgf", "2^200", "--s", "1"]).status.code(), Some(3));
    assert_eq!(peaklab(&["mgf", "2^2", "--s", "-1"]).status.code(), Some(2));
    let err = String::from_utf8(peaklab(&["dist", "2^3 x^1"]).stderr).unwrap();
    assert!(err.contains("column 5"), "{err}");
}

#[test]
fn max_n_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_peaklab"))
        .args(["dist", "2^4", "--format", "csv"])
        .env("PEAKLAB_MAX_N", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sampling_is_reproducible_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_peaklab"))
            .args(["sample", "2^10 3^2", "--num", "30000", "--seed", "7"])
            .env("PEAKLAB_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let a = run("1");
    assert_eq!(a, run("1"));
    assert_eq!(a, run("3"));
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["num_samples"], 30000);
    assert_eq!(v["seed"], 7);
    assert!(v["generator"].as_str().unwrap().contains("chacha8"));
}

#[test]
fn identity_samples_have_no_peaks() {
    let o = peaklab(&["sample", "1^10", "--num", "5", "--format", "csv"]);
    assert_eq!(stdout(&o), "k,count\n0,5\n");
}

#[test]
fn mgf_breakdown() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&peaklab(&["mgf", "identity:7", "--s", "1"]))).unwrap();
    assert!(v["residual"].as_f64().unwrap().abs() < 1e-15);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&peaklab(&["mgf", "3^1", "--s", "1"]))).unwrap();
    let sum = v["mean_term"].as_f64().unwrap() + v["s2_term"].as_f64().unwrap() + v["residual"].as_f64().unwrap();
    assert!((sum - v["log_mgf_exact"].as_f64().unwrap()).abs() < 1e-15);
    // E[e^{-p/√3}] over the two 3-cycles, with 0 and 1 peaks
    let exact = ((1.0 + (-1.0 / 3f64.sqrt()).exp()) / 2.0).ln();
    assert!((v["log_mgf_exact"].as_f64().unwrap() - exact).abs() < 1e-15);
}

#[test]
fn verify_suite_reports_and_exits_zero() {
    let o = peaklab(&["verify", "--suite", "moments"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().count() >= 5);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
    assert!(out.contains("sn_moments_from_peak_polynomial"));
    assert_ne!(peaklab(&["verify", "--suite", "nope"]).status.code(), Some(0));
}
