use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eostrata")).args(args).output().unwrap()
}

#[test]
fn census_csv() {
    let out = run(&["census", "--c", "1", "--p", "2", "--m", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["p,m,c,label_word,label_oneline,count", "2,2,1,,1 2,5", "2,2,1,1,2 1,12"]);
}

#[test]
fn census_json_has_header_and_checks() {
    let out = run(&["census", "--c", "2", "--p", "2", "--m", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["header"]["command"], "census");
    assert_eq!(v["header"]["moduli"][0]["k"], 2);
    assert_eq!(v["checks"]["points"], 85);
    let counts: Vec<u64> = v["records"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [85, 0, 0, 0]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["census", "--c", "2", "--p", "3", "--m", "1"][..],
        &["verify", "--c", "2", "--g", "4", "--p", "2", "--m", "2", "--trials", "50", "--seed", "4"][..],
        &["strata", "--c", "3", "--g", "6"][..],
        &["bedard", "--c", "3"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strata.json");
    let out = run(&["strata", "--c", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--c", "1", "--g", "2", "--m", "2"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--c", "2", "--g", "3"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--c", "1", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["strata", "--c", "9"]).status.code(), Some(2));
    assert_ne!(run(&["nonsense"]).status.code(), Some(0));
}
