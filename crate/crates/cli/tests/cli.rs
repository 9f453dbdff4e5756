use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn burnside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(args)
        .env_remove("BURNSIDE_CATALOG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("burnside-cli-{}-{name}", std::process::id()))
}

#[test]
fn verify_epsilon_on_c4() {
    let out = burnside(&["verify", "--suite", "epsilon", "--group", "C4", "--no-timestamp"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let report = &v["reports"][0];
    assert_eq!(report["group"], "C4");
    assert!(report.get("elapsed_ms").is_none());
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["paper_ref"].is_string()));
}

#[test]
fn reports_are_reproducible() {
    let (a, b) = (temp("a.json"), temp("b.json"));
    for (path, jobs) in [(&a, "1"), (&b, "2")] {
        let out = burnside(&[
            "--jobs", jobs, "verify", "--suite", "phi,bL", "--max-order", "4", "--seed", "7", "--no-timestamp", "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = (std::fs::remove_file(a), std::fs::remove_file(b));
}

#[test]
fn epsilon_emit() {
    let out = burnside(&["epsilon", "--group", "C4", "--emit"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["count"], 4);
    let first = &v["sections"][0]["epsilon"];
    assert_eq!(first["src"], "C4");
    assert!(first["terms"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn atoric_and_hom_dim() {
    let v = json(&burnside(&["atoric", "--group", "C2xD8"]));
    assert_eq!(v["quotient"], "D8");
    let out = burnside(&["hom-dim", "--p", "Q8", "--q", "Q8", "--l", "Q8"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["counts"]["by_quotient"], 6);
}

#[test]
fn decompose_reports_summands() {
    let out = burnside(&["decompose", "--group", "S3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["total_dim"], 4);
    assert_eq!(v["checks"]["uv_identity"], true);
}

#[test]
fn errors_exit_nonzero() {
    assert_eq!(burnside(&["atoric", "--group", "Nope"]).status.code(), Some(2));
    assert_eq!(burnside(&["verify", "--suite", "nope", "--group", "C2"]).status.code(), Some(2));
    assert_eq!(burnside(&["verify", "--group", "C2", "--sample-count", "0"]).status.code(), Some(2));
    let bad = temp("bad.json");
    std::fs::write(&bad, "[{\"name\": ").unwrap();
    let out = burnside(&["groups-list", "--catalog", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_file(bad);
}

#[test]
fn extra_catalog_from_env() {
    let path = temp("extra.json");
    std::fs::write(&path, r#"[{"name": "V4perm", "degree": 4, "generators": [[1,0,3,2],[2,3,0,1]]}]"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(["verify", "--suite", "burnside", "--group", "V4perm", "--no-timestamp"])
        .env("BURNSIDE_CATALOG", &path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["reports"][0]["group"], "V4perm");
    let _ = std::fs::remove_file(path);
}
