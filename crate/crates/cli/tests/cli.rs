//! End-to-end tests of the binary: exit codes, report shapes, and output
//! determinism.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn roots_a1_lists_two_roots() {
    let out = run(&["roots", "--algebra", "A1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    assert_eq!(v["tool"]["name"], "maxrank");
    assert_eq!(v["conventions"]["kappa0"]["coeffs"], serde_json::json!(["1"]));
}

#[test]
fn roots_tsv() {
    let out = run(&["roots", "--algebra", "B2", "--format", "tsv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert!(lines.contains(&"2\t1"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["roots"]);
    assert_eq!(out.status.code(), Some(2)); // missing --algebra
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gamma", "--algebra", "A2", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(2)); // tsv not meaningful here
}

#[test]
fn domain_errors_exit_1() {
    let out = run(&["roots", "--algebra", "C2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["subsys", "--algebra", "A2", "--chain", "dynkin[1]"]);
    assert_eq!(out.status.code(), Some(1)); // syntax error is reported
    let out = run(&["subsys", "--algebra", "A2", "--chain", "levi[9]"]);
    assert_eq!(out.status.code(), Some(1)); // out-of-range index
}

#[test]
fn gamma_report_is_deterministic() {
    let a = run(&["gamma", "--algebra", "G2", "--chain", "dynkin[1,n=3]"]);
    let b = run(&["gamma", "--algebra", "G2", "--chain", "dynkin[1,n=3]"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "repeated runs must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["gamma"]["free_rank"], 0);
    assert_eq!(v["gamma"]["invariant_factors"], serde_json::json!([3]));
    assert_eq!(v["zero_image_complement_roots"], serde_json::json!([]));
}

#[test]
fn example_so13_reports_quotient_and_existence() {
    let out = run(&["example-so13"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gamma"]["free_rank"], 0);
    // all existence verdicts false: finite non-cyclic quotient
    assert_eq!(v["existence"]["phi_bracket"], false);
    assert_eq!(v["existence"]["nonzero_poisson"], false);
    assert_eq!(v["existence"]["admissible"], false);
    assert_eq!(v["P_roots"].as_array().unwrap().len(), 12);
    // the computed invariant factors of the six-pair subsystem
    let factors = v["gamma"]["invariant_factors"].as_array().unwrap();
    assert!(factors.iter().all(|f| f == 2));
}

#[test]
fn verify_flow_with_data_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(
        f,
        r#"{{"kind":"phi","psi_gens":[[1,0]],"chi":[{{"conductor":3,"coeffs":["0","1"]}}]}}"#
    )
    .unwrap();
    let out = run(&[
        "verify",
        "--algebra",
        "G2",
        "--chain",
        "dynkin[1,n=3]",
        "--data",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["coefficient_equation"]["holds"], true);
    assert_eq!(v["oracle"]["residual_zero"], true);

    // a broken explicit spec fails, and --strict turns that into exit 1
    let bad = dir.path().join("bad.json");
    let mut f = std::fs::File::create(&bad).unwrap();
    write!(
        f,
        r#"{{"kind":"explicit","kappa2":"0","coeffs":[
            {{"root":[1,0],"c":"1"}},{{"root":[0,1],"c":"1"}},{{"root":[1,1],"c":"5"}}]}}"#
    )
    .unwrap();
    let out = run(&["verify", "--algebra", "A2", "--chain", "levi[]", "--data", bad.to_str().unwrap()]);
    assert!(out.status.success(), "non-strict failure keeps exit 0");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert!(!v["coefficient_equation"]["violations"].as_array().unwrap().is_empty());
    let out = run(&[
        "verify",
        "--algebra",
        "A2",
        "--chain",
        "levi[]",
        "--data",
        bad.to_str().unwrap(),
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_b2_symmetric_space() {
    let out = run(&["classify", "--algebra", "B2", "--chain", "dynkin[1,n=2]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["existence"]["phi_bracket"], true);
    assert_eq!(v["existence"]["nonzero_poisson"], false);
    assert_eq!(v["crosscheck"]["matches_existence"], true);
    // the only phi-bracket is zero, so the admissible bracket is -r_M
    let nu = v["admissible_bracket"].as_array().unwrap();
    assert_eq!(nu.len(), 2);
    for entry in nu {
        assert_eq!(entry["coefficient"]["coeffs"], serde_json::json!(["-1"]));
    }
}

#[test]
fn census_matches_between_jobs() {
    let a = run(&["census", "--algebra", "B3"]);
    let b = run(&["census", "--algebra", "B3", "--jobs", "4"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "parallel census must agree with sequential");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["source"], "brute-force");
    assert_eq!(v["total"], 31);
}

#[test]
fn prop2_single_subsystem() {
    let out = run(&["prop2", "--algebra", "G2", "--chain", "dynkin[1,n=3]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sub = &v["subsystem"];
    assert_eq!(sub["torsion_cyclic"], true);
    assert_eq!(sub["nonzero_torsion_elements_are_root_images"], true);
    assert_eq!(sub["cyclic_iff_at_most_one_dynkin"], true);
}

#[test]
fn enumerate_b2_lists_seven() {
    let out = run(&["enumerate", "--algebra", "B2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["subsystems"].as_array().unwrap().len(), 7);
    assert_eq!(v["truncated"], false);
}
