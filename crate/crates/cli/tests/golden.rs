use std::path::PathBuf;
use std::process::{Command, Output};

fn diffalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).expect("golden file exists")
}

fn assert_golden(args: &[&str], name: &str) {
    let out = diffalg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{args:?}");
}

#[test]
fn diff_twice() {
    assert_golden(&["diff", "--n", "2", "x^2"], "diff_n2_x2.txt");
}

#[test]
fn psi_both_directions() {
    assert_golden(&["psi", "[1,1,1,1]", "--from", "power"], "psi_from_power.txt");
    assert_golden(&["psi", "[1,1,2,6]", "--from", "hurwitz"], "psi_from_hurwitz.txt");
}

#[test]
fn mul_and_eval() {
    assert_golden(&["mul", "x + x'", "x - x'"], "mul.txt");
    assert_golden(&["eval", "x^2", r#"{"x":[1,1,1]}"#, "--order", "4"], "eval_x2.txt");
}

#[test]
fn rb_shuffle() {
    assert_golden(&["rb", "--op", "shuffle", r#"{"u":["x","y"],"v":["z"]}"#], "rb_shuffle.txt");
}

#[test]
fn stdin_dash() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_diffalg"))
        .args(["diff", "--n", "2", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x^2\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("diff_n2_x2.txt"));
}

#[test]
fn json_output_is_versioned() {
    let out = diffalg(&["diff", "x*y", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"], "x'*y + x*y'");
}

#[test]
fn series_ops() {
    let out = diffalg(&["hurwitz", "--op", "mul", "--order", "3", "[1,1]", "[1,1]"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[1,2,2,0]\n");
    let out = diffalg(&["power", "--op", "mul", "--order", "3", "[1,1]", "[1,1]"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[1,2,1,0]\n");
    let out = diffalg(&["power", "--op", "derive", "--order", "3", "[1,1,1,1]"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[1,2,3]\n");
}

#[test]
fn parse_and_usage_errors_exit_2() {
    assert_eq!(diffalg(&["diff", "x +"]).status.code(), Some(2));
    assert_eq!(diffalg(&["eval", "x'", "{}"]).status.code(), Some(2));
    assert_eq!(diffalg(&["laws", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(diffalg(&["hurwitz", "--op", "add", "[1]"]).status.code(), Some(2));
}

#[test]
fn laws_are_byte_identical_across_runs() {
    let a = diffalg(&["laws", "--seed", "7", "--trials", "3"]);
    let b = diffalg(&["laws", "--seed", "7", "--trials", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let json = diffalg(&["laws", "--seed", "7", "--trials", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}
