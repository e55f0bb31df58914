use std::process::{Command, Output};

fn vpf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vpf")).args(args).env_remove("VPF_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn plain_counts_and_chambers() {
    let o = vpf(&["count", "--type", "B", "--rank", "2", "--vector", "1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3");
    let o = vpf(&["chambers", "--type", "A", "--rank", "3", "--count-only"]);
    assert_eq!(stdout(&o), "7");
    let o = vpf(&["volume", "--type", "B", "--rank", "2", "--vector", "3,1"]);
    assert_eq!(stdout(&o), "7/2");
    let o = vpf(&["ehrhart", "--type", "B", "--rank", "2", "--vector", "1,1"]);
    assert_eq!(stdout(&o), "1/2*k^2 + 3/2*k + 1");
    let o = vpf(&["parametric", "--type", "A", "--rank", "2", "--vector", "2,1,-3"]);
    assert_eq!(stdout(&o), "h1 + 1");
}

#[test]
fn exit_codes() {
    let o = vpf(&["count", "--type", "A", "--rank", "2", "--vector", "1,1,-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in the root lattice"));
    let o = vpf(&["count", "--type", "B", "--rank", "2", "--vector", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = vpf(&["oracle", "count", "--type", "B", "--rank", "2", "--vector", "40,30"]);
    assert_eq!(o.status.code(), Some(3));
    let o = vpf(&["chambers", "--type", "A", "--rank", "5", "--count-only"]);
    assert_eq!(o.status.code(), Some(3));
    let o = vpf(&["count", "--type", "C", "--rank", "3", "--vector", "3,2,1", "--oracle-check"]);
    assert!(o.status.success());
}

#[test]
fn json_schema() {
    let o = vpf(&["count", "--type", "B", "--rank", "2", "--vector", "3,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["type", "rank", "vector", "value", "chamber_signature", "mns_count", "status", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["value"], "8");
    assert_eq!(v["status"], "inside_cone");
    let o = vpf(&["parametric", "--type", "B", "--rank", "2", "--vector", "3,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms = v["value"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[1]["character"], serde_json::json!([-1, -1]));
    assert_eq!(terms[1]["poly"]["1"], "1/8");
    let o = vpf(&["count", "--type", "B", "--rank", "2", "--vector", "-1,0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "outside_cone");
    assert_eq!(v["value"], "0");
}

#[test]
fn cache_hits_match_misses() {
    let dir = std::env::temp_dir().join(format!("vpf-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let args = ["count", "--type", "B", "--rank", "3", "--vector", "5,3,1", "--cache-dir", dir.to_str().unwrap()];
    let miss = vpf(&args);
    let files = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(files, 1);
    let hit = vpf(&args);
    assert_eq!(stdout(&miss), stdout(&hit));
    assert_eq!(stdout(&hit), stdout(&vpf(&args[..7])));
    // a stale schema version is ignored and rewritten
    let path = std::fs::read_dir(&dir).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&path).unwrap().replace("\"schema_version\":1", "\"schema_version\":0");
    std::fs::write(&path, text).unwrap();
    assert_eq!(stdout(&vpf(&args)), stdout(&miss));
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"schema_version\":1"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn convert_and_mpns() {
    let dir = std::env::temp_dir().join(format!("vpf-convert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("hrep.json");
    std::fs::write(&file, r#"{"C": [[1, 2], [-1, 0]], "lambda": [3, "1/2"]}"#).unwrap();
    let o = vpf(&["convert", file.to_str().unwrap()]);
    assert_eq!(stdout(&o), "-1 -2 1 0\n1 0 0 1\nrhs 3 1/2");
    let _ = std::fs::remove_dir_all(&dir);
    let o = vpf(&["mpns", "--type", "B", "--rank", "3", "--vector", "1070,1006,-37"]);
    assert_eq!(stdout(&o).lines().next(), Some("3"));
    let o = vpf(&["mpns", "--type", "B", "--rank", "2", "--vector", "3,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mns"][0]["tree"]["block"], "B[1,2]");
}
