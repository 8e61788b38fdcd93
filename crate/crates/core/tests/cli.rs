use std::process::{Command, Output};

fn bcz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcz")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn periodic_json_reports_order_five() {
    let o = bcz(&["periodic", "--order", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["period"], 10);
}

#[test]
fn orbit_csv_has_header_and_rows() {
    let o = bcz(&["orbit", "--point", "1/3,1", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k_n,f_n,a_lo,a_hi,deep,block_end");
    assert_eq!(lines.len(), 5);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("bcz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("orbit.csv");
    let o = bcz(&["orbit", "--cf", "[1;1,1,...]", "--steps", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 11);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(bcz(&["orbit", "--point", "0.5,1"]).status.code(), Some(2));
    assert_eq!(bcz(&["orbit", "--point", "1/3,1/3"]).status.code(), Some(2));
    assert_eq!(bcz(&["orbit"]).status.code(), Some(2));
    assert_eq!(bcz(&["periodic", "--order", "0"]).status.code(), Some(2));
    let o = bcz(&["orbit", "--eplus", "2", "--eminus", "3", "--steps", "100000", "--precision-bits", "8"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at n = "));
}

#[test]
fn verify_passes_small_suite() {
    let o = bcz(&["verify", "--suite", "all", "--size", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn loglaw_reports_block_ends() {
    let o = bcz(&["loglaw", "--cf", "[1;1,1,...]", "--steps", "5000", "--format", "json"]);
    assert!(matches!(o.status.code(), Some(0) | Some(3)));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ns: Vec<i64> = v["block_ends"].as_array().unwrap().iter().map(|b| b["n"].as_i64().unwrap()).collect();
    assert_eq!(ns, [2, 8, 46, 302, 2060]);
}
