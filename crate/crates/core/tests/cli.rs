use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motzkin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn count_prints_motzkin_numbers() {
    let o = run(&["count", "--upto", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 1 2 4 9 21 51 127");
    let j: serde_json::Value = serde_json::from_str(&stdout(&run(&["--format", "json", "count", "--upto", "5"]))).unwrap();
    assert_eq!(j, serde_json::json!(["1", "1", "2", "4", "9", "21"]));
}

#[test]
fn products_and_traces() {
    let o = run(&["mul", "--D", "4", "--n", "2", "e1", "e1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(4)[T1-T2,B1-B2]");
    assert_eq!(stdout(&run(&["trace", "--D", "4", "--n", "2", "g2"])).trim(), "1/2");
}

#[test]
fn gram_rank_at_root_of_unity() {
    let o = run(&["gram", "--D", "cos:4", "--shape", "3,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("120"), "{}", stdout(&o));
}

#[test]
fn fusion_expression() {
    let o = run(&["--format", "json", "fuse", "--D", "cos:5", "2,1 x 3,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[[5,1],[5,3]]"), "{}", stdout(&o));
}

#[test]
fn library_errors_exit_with_two() {
    let o = run(&["jw", "--D", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["count", "--D", "nonsense"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--upto", "x"]).status.code(), Some(2));
}

#[test]
fn gram_size_guard() {
    let o = run(&["--max-gram", "10", "gram", "--D", "4", "--shape", "3,4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scalar_suite_passes() {
    let o = run(&["verify", "--suite", "scalars"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("PASS") || l.contains("checks,")), "{out}");
}

#[test]
fn towers_suite_flags_known_mismatches() {
    let o = run(&["verify", "--suite", "towers", "--D", "cos:4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("FLAG") && out.contains("resolvent 4, ratio 5"), "{out}");
}

#[test]
fn bratteli_dot_output() {
    let o = run(&["--format", "dot", "bratteli", "--D", "4", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("digraph"), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"3:3\""), "{}", stdout(&o));
    let file = std::env::temp_dir().join(format!("motzkin-bratteli-{}.dot", std::process::id()));
    let o = run(&["bratteli", "--D", "4", "--depth", "3", "--dot", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&file).unwrap();
    std::fs::remove_file(&file).unwrap();
    assert!(written.starts_with("digraph"));
}
