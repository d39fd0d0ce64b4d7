use std::io::Write;
use std::process::{Command, Output, Stdio};

const L2: &str = r#"{"n":2,"sigma":[[1,0],[1,0]],"tau":[[1,0],[1,0]]}"#;
const NOT_INVOLUTIVE: &str = r#"{"n":2,"sigma":[[1,0],[0,1]],"tau":[[0,1],[0,1]]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ybtwist"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_solution_on_l2() {
    let o = run(&["check-solution"], L2);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn enumerate_size_two() {
    let o = run(&["enumerate", "--size", "2"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().any(|l| l == L2));
}

#[test]
fn enumerate_braces_of_order_four() {
    let o = run(&["enumerate", "--size", "4", "--braces"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn invalid_solution_stops_at_the_gate() {
    let o = run(&["verify-twist", "--n", "3"], NOT_INVOLUTIVE);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL") && text.contains("involutive"));
    assert!(!text.contains("cocycle"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check-solution"], r#"{"n":2}"#).status.code(), Some(2));
    assert_eq!(run(&["check-solution"], r#"{"n":2,"sigma":[[0,0],[0,1]],"tau":[[0,1],[0,1]]}"#).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--size", "5"], "").status.code(), Some(3));
    assert_eq!(run(&["verify-twist", "--n", "20"], L2).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"], "").status.code(), Some(64));
    assert_eq!(run(&["check-solution", "--format", "yaml"], L2).status.code(), Some(64));
    assert_eq!(run(&["lyubashenko", "--tau", "(0 3)", "--size", "3"], "").status.code(), Some(2));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn pipelines_and_json() {
    let sols = stdout(&run(&["enumerate", "--size", "3"], ""));
    for cmd in [&["make-twist"][..], &["verify-twist", "--n", "2"], &["baxterize"], &["frt"]] {
        let o = run(cmd, &sols);
        assert_eq!(o.status.code(), Some(0), "{cmd:?}");
    }
    let o = run(&["frt", "--format", "json"], L2);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn output_is_deterministic() {
    let sols = stdout(&run(&["enumerate", "--size", "3"], ""));
    let a = run(&["baxterize", "--format", "json"], &sols);
    let b = run(&["baxterize", "--format", "json"], &sols);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn brace_commands() {
    let trivial = r#"{"n":2,"add":[[0,1],[1,0]],"circle":[[0,1],[1,0]]}"#;
    assert_eq!(run(&["check-brace"], trivial).status.code(), Some(0));
    let o = run(&["from-brace"], trivial);
    assert_eq!(stdout(&o).trim(), r#"{"n":2,"sigma":[[0,1],[0,1]],"tau":[[0,1],[0,1]]}"#);
    let broken = r#"{"n":2,"add":[[0,1],[1,0]],"circle":[[0,1],[1,1]]}"#;
    assert_eq!(run(&["check-brace"], broken).status.code(), Some(1));
}

#[test]
fn lyubashenko_three_cycle() {
    let o = run(&["lyubashenko", "--tau", "(0 1 2)", "--size", "3", "--check", "all"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("observations/delta2/almost-coassociative"));
}

#[test]
fn dump_prints_coordinates() {
    let o = run(&["make-twist", "--dump", "--flavor", "f"], L2);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# 4x4 nnz=4"));
}

#[test]
fn corpus_regeneration_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    assert_eq!(run(&["corpus", "--out", path], "").status.code(), Some(0));
    let manifest = std::fs::read(dir.path().join("manifest.json")).unwrap();
    assert_eq!(run(&["corpus", "--out", path, "--regenerate"], "").status.code(), Some(0));
    assert_eq!(std::fs::read(dir.path().join("manifest.json")).unwrap(), manifest);
    let count = std::fs::read_dir(dir.path().join("solutions")).unwrap().count();
    assert_eq!(count, 42);
    std::fs::write(dir.path().join("manifest.json"), "{}").unwrap();
    assert_eq!(run(&["corpus", "--out", path], "").status.code(), Some(1));
}
