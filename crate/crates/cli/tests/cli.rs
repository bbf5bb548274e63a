use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sl2pf"))
        .args(args)
        .env_remove("SL2PF_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sl2pf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const ANTIDIAG: &str = r#"{"v":1,"field":{"p":3,"n":1},"matrix":[["0","2"],["1","0"]]}"#;
const SMALL: &str = r#"{"v":1,"field":{"p":5,"n":1},"matrix":[["1","T"],["0","1"]]}"#;

#[test]
fn identity_gives_zero_certificate() {
    let o = run(&["decompose"], r#"{"matrix":[["1","0"],["0","1"]]}"#);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with(r#"{"v":1,"field":{"p":3,"n":1},"slots":[{"family":"G9""#));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    for slot in doc["slots"].as_array().unwrap() {
        let params = slot.get("params").or_else(|| slot.get("quintuple")).unwrap();
        assert!(params.as_array().unwrap().iter().all(|p| p == "0"));
    }
}

#[test]
fn zero_corner_certificate() {
    let o = run(&["decompose"], ANTIDIAG);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#"{"family":"G9","params":["2","1","2","0","0","0","0","0","0"]}"#));
}

#[test]
fn determinant_not_one_exits_3() {
    let o = run(&["decompose"], r#"{"matrix":[["2","0"],["0","1"]]}"#);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn decompose_then_evaluate_round_trips() {
    let cert = run(&["decompose"], SMALL);
    assert_eq!(cert.status.code(), Some(0), "{}", String::from_utf8_lossy(&cert.stderr));
    let back = run(&["evaluate"], &stdout(&cert));
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout(&back).trim(), SMALL);
}

#[test]
fn evaluate_zero_certificate_is_identity() {
    let cert = stdout(&run(&["decompose"], r#"{"matrix":[["1","0"],["0","1"]]}"#));
    let back = run(&["evaluate"], &cert);
    assert_eq!(stdout(&back).trim(), r#"{"v":1,"field":{"p":3,"n":1},"matrix":[["1","0"],["0","1"]]}"#);
}

#[test]
fn truncated_certificate_exits_2() {
    let cert = stdout(&run(&["decompose"], ANTIDIAG));
    let o = run(&["evaluate"], &cert[..cert.len() / 2]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_accepts_and_rejects() {
    let m = scratch("verify-m.json", SMALL);
    let cert = stdout(&run(&["decompose"], SMALL));
    let good = scratch("verify-good.json", &cert);
    let o = run(&["verify", "--in", m.to_str().unwrap(), "--cert", good.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));

    // change the first parameter of the first slot
    let key = r#""params":[""#;
    let at = cert.find(key).unwrap() + key.len();
    let end = at + cert[at..].find('"').unwrap();
    let old = &cert[at..end];
    let new = if old == "1" { "2" } else { "1" };
    let bad = scratch("verify-bad.json", &format!("{}{}{}", &cert[..at], new, &cert[end..]));
    let o = run(&["verify", "--in", m.to_str().unwrap(), "--cert", bad.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mismatched_field_exits_2() {
    let o = run(&["decompose", "--field", "5"], ANTIDIAG);
    assert_eq!(o.status.code(), Some(2));
    let cert = stdout(&run(&["decompose"], ANTIDIAG));
    let o = run(&["evaluate", "--field", "3,2"], &cert);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extension_field_flag() {
    let m = stdout(&run(&["random", "--field", "3,2,T^2+1", "--seed", "7"], ""));
    assert!(m.contains(r#""field":{"p":3,"n":2,"modulus":[1,0,1]}"#));
    let cert = run(&["decompose"], &m);
    assert_eq!(cert.status.code(), Some(0), "{}", String::from_utf8_lossy(&cert.stderr));
    assert_eq!(stdout(&run(&["evaluate"], &stdout(&cert))), m);
}

#[test]
fn degree_cap_refusal_exits_4() {
    let steep = r#"{"matrix":[["T^6+T^4+1","T^3"],["T^3+T","1"]]}"#;
    let o = run(&["decompose", "--degree-cap", "2"], steep);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn bench_rows_and_header() {
    let o = run(&["bench", "--degree-cap", "2", "--count", "10"], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "q,deg,seed,ms,max_deg,trials");
    assert_eq!(lines.len(), 11);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let m = stdout(&run(&["random", "--factors", "5"], ""));
    let a = run(&["decompose"], &m);
    let b = run(&["decompose"], &m);
    assert_eq!(a.stdout, b.stdout);
    let seeded = Command::new(env!("CARGO_BIN_EXE_sl2pf"))
        .args(["random", "--factors", "5"])
        .env("SL2PF_SEED", "1")
        .output()
        .unwrap();
    assert_eq!(seeded.stdout, m.as_bytes());
}
