use std::process::{Command, Output};

fn backlund(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_backlund"))
        .args(args)
        .env_remove("BACKLUND_EPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_json_report() {
    let o = backlund(&[
        "verify", "--t-min", "5", "--t-max", "30", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        [
            "t_min",
            "t_max",
            "zeros",
            "windows",
            "unverifiable",
            "summary"
        ]
    );
    assert_eq!(v["zeros"].as_array().unwrap().len(), 3);
    assert_eq!(v["summary"]["total_zeros"], 3);
    let w = v["windows"][0].as_object().unwrap();
    let fields: Vec<_> = w.keys().cloned().collect();
    assert_eq!(
        fields,
        [
            "t_center",
            "theta_term",
            "c11_term",
            "c12_term",
            "c2_term",
            "window_count",
            "sign_changes_c11",
            "sign_changes_c12",
            "bound_satisfied",
            "delta_used",
            "epsilon_used"
        ]
    );
}

#[test]
fn theta_both_modes() {
    let o = backlund(&["theta", "--t", "100", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("exact 87.97216523178"));
    assert!(lines[1].starts_with("asymptotic 87.97216523178"));
    let diff: f64 = lines[2]
        .strip_prefix("difference ")
        .unwrap()
        .parse()
        .unwrap();
    assert!(diff.abs() < 1e-10);
}

#[test]
fn invalid_domain_is_a_usage_error() {
    let o = backlund(&["count", "--t", "-5"]);
    assert_eq!(o.status.code(), Some(64));
    let o = backlund(&["count"]);
    assert_eq!(o.status.code(), Some(64));
    let o = backlund(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn numeric_failure_reports_json_on_stderr() {
    let o = backlund(&["zeta", "--sigma", "1", "--t", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "pole");
}

#[test]
fn unverifiable_window_exits_two() {
    let t1 = "14.134725141734695";
    let o = backlund(&["verify", "--t-min", t1, "--t-max", "16"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["unverifiable"].as_array().unwrap().len(), 1);
}

#[test]
fn count_and_window() {
    let o = backlund(&["count", "--t", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 10);

    let o = backlund(&["window", "--t", "20"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["window_count"], 0);
    assert_eq!(v["delta_used"], 0.5);
    assert_eq!(v["epsilon_used"], 0.1);
}

#[test]
fn zeta_and_xi_values() {
    let o = backlund(&["zeta", "--sigma", "2", "--t", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["re"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    let o = backlund(&["xi", "--sigma", "1", "--t", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["re"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn env_override_of_target_eps() {
    let o = Command::new(env!("CARGO_BIN_EXE_backlund"))
        .args(["zeta", "--sigma", "0.5", "--t", "10"])
        .env("BACKLUND_EPS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
    let o = Command::new(env!("CARGO_BIN_EXE_backlund"))
        .args(["zeta", "--sigma", "0.5", "--t", "10"])
        .env("BACKLUND_EPS", "1e-6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn winding_demo_reports_zeros_minus_poles() {
    let o = backlund(&[
        "winding-demo",
        "--zeros",
        "4",
        "--poles",
        "5",
        "--seed",
        "11",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["winding_number"], -1);
    assert_eq!(v["expected"], -1);
    let o = backlund(&["winding-demo", "--zeros", "40", "--poles", "0"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn dump_contour_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.csv");
    let o = backlund(&[
        "dump-contour",
        "--t",
        "20",
        "--delta",
        "0.5",
        "--epsilon",
        "0.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["index", "sigma", "t", "re_f", "im_f", "accumulated_arg"]
    );
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(rows.len() > 4);
    let first = &rows[0];
    let last = rows.last().unwrap();
    assert_eq!((first[1], first[2]), (0.5, 19.5));
    assert_eq!((last[1], last[2]), (0.5, 20.5));
    // accumulated argument over pi is the c2 term of `window --t 20`
    let o = backlund(&["window", "--t", "20", "--delta", "0.5", "--epsilon", "0.1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c2 = v["c2_term"].as_f64().unwrap();
    assert!((last[5] / std::f64::consts::PI - c2).abs() < 1e-12);
}
