use std::path::Path;
use std::process::{Command, Output};

fn siegel(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siegel"))
        .args(args)
        .env("SIEGEL_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn elliptic_census_mass_and_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = siegel(dir.path(), &["census", "--genus", "1", "--q", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("mass 3\n"));
    let fresh = siegel(dir.path(), &["census", "--genus", "1", "--q", "3", "--json"]);
    let cached = siegel(dir.path(), &["census", "--genus", "1", "--q", "3", "--json", "--cached-only"]);
    assert_eq!(stdout(&fresh), stdout(&cached));
}

#[test]
fn extension_degree_sets_field_size() {
    let dir = tempfile::tempdir().unwrap();
    let o = siegel(dir.path(), &["census", "--genus", "1", "--q", "3", "--ext", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["q"], 9);
    assert_eq!(v["mass"], "9");
}

#[test]
fn trace_is_conditional_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let o = siegel(dir.path(), &["trace", "--j", "6", "--k", "8", "--p", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("CONDITIONAL"));
    assert!(text.contains(": -27000"));
    let a = siegel(dir.path(), &["trace", "--j", "6", "--k", "8", "--p", "3", "--json"]);
    let b = siegel(dir.path(), &["trace", "--j", "6", "--k", "8", "--p", "3", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"], "-27000");
    assert_eq!(v["conditional"], true);
}

#[test]
fn weight_twelve_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let o = siegel(dir.path(), &["g1", "--weight", "12", "--ratios"]);
    assert_eq!(stdout(&o), "48 25 20\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = siegel(dir.path(), &["trace", "--j", "6", "--k", "8", "--p", "5", "--cached-only"]);
    assert_eq!(missing.status.code(), Some(2));
    let cap = siegel(dir.path(), &["census", "--genus", "2", "--q", "3", "--max-q-g2", "15"]);
    assert_eq!(cap.status.code(), Some(3));
    let even = siegel(dir.path(), &["census", "--genus", "2", "--q", "3", "--max-q-g2", "8"]);
    assert_eq!(even.status.code(), Some(3));
    let usage = siegel(dir.path(), &["satake"]);
    assert_eq!(usage.status.code(), Some(3));
    let psq = siegel(dir.path(), &["trace", "--j", "6", "--k", "8", "--p", "3", "--psq"]);
    assert_eq!(psq.status.code(), Some(3));
    // 31 is not a congruence prime for this pair
    let wrong = siegel(dir.path(), &["harder", "--row", "26", "10", "9", "31", "--pmax", "7"]);
    assert_eq!(wrong.status.code(), Some(1));
    let right = siegel(dir.path(), &["harder", "--row", "26", "10", "9", "29", "--pmax", "7"]);
    assert_eq!(right.status.code(), Some(0));
    assert!(stdout(&right).contains("verified"));
}

#[test]
fn genus_two_census_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let a = siegel(dir.path(), &["census", "--genus", "2", "--q", "5", "--json", "--threads", "1"]);
    let b = siegel(dir.path(), &["census", "--genus", "2", "--q", "5", "--json", "--resume"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["mass"], "125");
}

#[test]
fn satake_and_igusa() {
    let dir = tempfile::tempdir().unwrap();
    let o = siegel(dir.path(), &["satake", "--verify-all", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_object().unwrap().len(), 4);
    assert!(v.as_object().unwrap().values().all(|b| b == true));
    let o = siegel(dir.path(), &["igusa", "--form", "chi10", "--max-disc", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let coeffs = v["coeffs"].as_array().unwrap();
    assert!(coeffs.contains(&serde_json::json!([1, 0, 1, "-2"])));
    let o = siegel(dir.path(), &["satake", "--slopes", "6", "8", "2", "-1680", "-3936256"]);
    assert_eq!(stdout(&o), "4 4 15 15\n");
}

#[test]
fn cite_goes_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let o = siegel(dir.path(), &["census", "--genus", "1", "--q", "5", "--cite"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("reproduces:"));
    assert!(!stdout(&o).contains("reproduces:"));
}
