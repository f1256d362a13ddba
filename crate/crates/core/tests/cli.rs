use std::process::{Command, Output};

use detcode::cli::{run_suites, Cache, Suite};

fn detcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detcode")).args(args).env_remove("DETCODE_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(detcode(&["table", "--q", "2", "--l", "2", "--m", "3"]).status.code(), Some(0));
    assert_eq!(detcode(&["table", "--q", "1", "--l", "2", "--m", "3"]).status.code(), Some(2));
    assert_eq!(detcode(&["table", "--q", "6", "--l", "2", "--m", "3"]).status.code(), Some(2));
    assert_eq!(detcode(&["table", "--q", "2", "--l", "4", "--m", "3"]).status.code(), Some(2));
    assert_eq!(detcode(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(detcode(&["--help"]).status.code(), Some(0));
    assert_eq!(detcode(&["verify", "--suite", "oracle", "--max-m", "9"]).status.code(), Some(3));
    let conj = detcode(&["conjecture", "--q-list", "2", "--max-m", "3"]);
    assert!(matches!(conj.status.code(), Some(0) | Some(4)));
}

#[test]
fn json_round_trips() {
    let out = detcode(&["code", "--q", "2", "--l", "2", "--m", "3", "--t", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["n"], "21");
    assert_eq!(doc["k"], "6");
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
}

#[test]
fn csv_table_shape() {
    let out = detcode(&["table", "--q", "3", "--l", "2", "--m", "3", "--format", "csv"]);
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap().len(), 3);
    assert_eq!(reader.records().count(), 2 * 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let direct = detcode(&["table", "--q", "2", "--l", "3", "--m", "3", "--format", "json"]);
    let to_file = detcode(&["table", "--q", "2", "--l", "3", "--m", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&direct));
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--suite", "codes", "--q-list", "2", "--max-m", "3", "--format", "json"];
    let plain = detcode(&args);
    let cold = Command::new(env!("CARGO_BIN_EXE_detcode")).args(args).env("DETCODE_CACHE", dir.path()).output().unwrap();
    let warm = Command::new(env!("CARGO_BIN_EXE_detcode")).args(args).env("DETCODE_CACHE", dir.path()).output().unwrap();
    assert_eq!(plain.status.code(), Some(0));
    assert_eq!(stdout(&plain), stdout(&cold));
    assert_eq!(stdout(&plain), stdout(&warm));
    assert!(dir.path().join("records.jsonl").exists());
}

#[test]
fn suites_agree_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let mut cache = Cache::open(dir.path()).unwrap();
    let plain = run_suites(Suite::Oracle, &[2, 3], 3, 1 << 26, None).unwrap();
    let first = run_suites(Suite::Oracle, &[2, 3], 3, 1 << 26, Some(&mut cache)).unwrap();
    assert!(!cache.is_empty());
    let second = run_suites(Suite::Oracle, &[2, 3], 3, 1 << 26, Some(&mut cache)).unwrap();
    assert_eq!(plain, first);
    assert_eq!(plain, second);
    assert!(plain.iter().all(|r| r.failed() == 0));
}
