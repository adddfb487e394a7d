//! End-to-end runs of the `gmac` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs"].iter().collect()
}

fn cfg(name: &str) -> String {
    configs().join(name).display().to_string()
}

fn gmac(args: &[&str]) -> Output {
    gmac_env(args, None)
}

fn gmac_env(args: &[&str], cache_dir: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gmac"));
    c.args(args).env_remove("GMAC_CACHE_DIR");
    if let Some(d) = cache_dir {
        c.env("GMAC_CACHE_DIR", d);
    }
    c.output().expect("gmac runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn macpoly_a1_lambda_2() {
    let o = gmac(&["macpoly", "--algebra", &cfg("a1_polyx.json"), "--lambda", "2", "--Nq", "8", "--no-cache"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("m_(2) + (1 + q)*m_(0)"), "{s}");
    assert!(s.contains("s_(2) + q*s_(0)"), "{s}");
}

#[test]
fn bgg_verify_positive_and_negative() {
    let ok = gmac(&["bgg-verify", "--algebra", &cfg("a1_polyx.json"), "--lambda-max", "4", "--no-cache"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).ends_with("result: PASS\n"), "{}", stdout(&ok));
    let bad = gmac(&["bgg-verify", "--algebra", &cfg("a1_polyxy.json"), "--lambda-max", "2", "--no-cache"]);
    // a failed verification is a result, not an error
    assert_eq!(code(&bad), 0);
    assert!(stdout(&bad).contains("FAIL"), "{}", stdout(&bad));
}

#[test]
fn t3_and_phi() {
    let t3 = gmac(&["t3-verify"]);
    assert_eq!(code(&t3), 0);
    assert!(stdout(&t3).contains("PASS"));
    let phi = gmac(&["phi-verify", "--rs", "A2"]);
    assert_eq!(code(&phi), 0);
    assert!(stdout(&phi).contains("PASS"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&gmac(&["macpoly", "--algebra", "/nonexistent.json", "--lambda", "1"])), 2);
    assert_eq!(code(&gmac(&["no-such-command"])), 2);
    assert_eq!(code(&gmac(&["phi-verify", "--rs", "A1", "--generators", "1"])), 2);
    assert_eq!(code(&gmac(&["macpoly", "--algebra", &cfg("a1_polyx.json"), "--lambda", "-1", "--no-cache"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.json");
    std::fs::write(
        &big,
        r#"{"root_system":"A2","generators":[{"name":"x","q":1,"max_power":3},{"name":"y","q":1,"max_power":3}]}"#,
    )
    .unwrap();
    let o = gmac(&["cohomology", "--algebra", big.to_str().unwrap(), "--Nq", "8"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn output_is_deterministic() {
    let args = ["norms", "--algebra", &cfg("a2_polyx.json"), "--lambda-max", "1,1", "--Nq", "4", "--format", "json", "--no-cache"];
    let a = gmac(&args);
    let b = gmac(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_hit_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["macpoly", "--algebra", &cfg("a1_polyx.json"), "--lambda", "3", "--Nq", "6"];
    let cold = gmac(&[&args[..], &["--no-cache"]].concat());
    let first = gmac_env(&args, Some(dir.path()));
    let cache = dir.path().join("gmac-cache.json");
    assert!(cache.exists());
    let warm = gmac_env(&args, Some(dir.path()));
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert!(warm.stderr.is_empty(), "{}", String::from_utf8_lossy(&warm.stderr));
}

#[test]
fn stale_or_broken_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let args = ["macpoly", "--algebra", &cfg("a1_polyx.json"), "--lambda", "2", "--Nq", "5"];
    let cold = gmac(&[&args[..], &["--no-cache"]].concat());
    let first = gmac(&[&args[..], &["--cache", p]].concat());
    assert_eq!(cold.stdout, first.stdout);

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["version"] = serde_json::json!(v["version"].as_u64().unwrap() + 1);
    std::fs::write(&path, v.to_string()).unwrap();
    let stale = gmac(&[&args[..], &["--cache", p]].concat());
    assert_eq!(code(&stale), 0);
    assert_eq!(stale.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&stale.stderr).contains("another format version"));

    std::fs::write(&path, "not json").unwrap();
    let broken = gmac(&[&args[..], &["--cache", p]].concat());
    assert_eq!(code(&broken), 0);
    assert_eq!(broken.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&broken.stderr).contains("ignoring unreadable cache"));
}

#[test]
fn csv_and_json_formats() {
    let base = ["norm-product-verify", "--rs", "A1", "--lambda-max", "2", "--Nq", "4", "--no-cache"];
    let csv = gmac(&[&base[..], &["--format", "csv"]].concat());
    assert_eq!(code(&csv), 0);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains(','));
    assert_eq!(lines.count(), 3);
    let json = gmac(&[&base[..], &["--format", "json"]].concat());
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["command"], "norm-product-verify");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["status"], "FAIL");
}

#[test]
fn euler_and_pair() {
    let e = gmac(&["euler-verify", "--algebra", &cfg("a1_trunc_x2.json"), "--lambda-max", "2"]);
    assert_eq!(code(&e), 0, "{}", String::from_utf8_lossy(&e.stderr));
    assert!(stdout(&e).ends_with("result: PASS\n"));
    let p = gmac(&[
        "pair", "--algebra", &cfg("a1_polyx.json"), "--lambda", "0", "--mu", "0", "--Nq", "4", "--format", "json",
    ]);
    assert_eq!(code(&p), 0, "{}", String::from_utf8_lossy(&p.stderr));
    let v: serde_json::Value = serde_json::from_slice(&p.stdout).unwrap();
    assert_eq!(v["value"], "1");
}
