use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kamforce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kamforce"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kamforce"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compile_zero() {
    let o = kamforce(&["compile", r"\x \y y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(K) I\n");
}

#[test]
fn run_full_trace() {
    let o = kamforce(&["run", "(I) a", "--stack", "b.c", "--trace", "full"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "1 push | I | a.b.c.π0");
    assert_eq!(lines[2], "2 I | a | b.c.π0");
}

#[test]
fn stuck_run_exits_one_with_replay() {
    let o = kamforce(&["run", "I"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("replay: kamforce run I"));
}

#[test]
fn gamma_synth_verifies() {
    let o = kamforce(&["gamma", "synth", "--from", "((p^q)^r)", "--to", "(q^p)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("VERIFIED\n"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(kamforce(&["compile", r"\x ("]).status.code(), Some(2));
    assert_eq!(kamforce(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kamforce(&["corpus", "replay", "nope"]).status.code(), Some(2));
    assert_eq!(kamforce(&["--budget", "0", "run", "a"]).status.code(), Some(2));
}

#[test]
fn pole_output_is_seeded_and_deterministic() {
    let args = [
        "pole",
        "falsify",
        "--term",
        "K",
        "--formula",
        "forall2 X/0 Y/0. (((X -> Y) -> X) -> X)",
        "--seed",
        "3",
    ];
    let a = kamforce(&args);
    let b = kamforce(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    let out = stdout(&a);
    assert!(out.starts_with("seed: 3\n"));
    assert!(out.contains("counterexample"));
}

#[test]
fn corpus_replay_and_list() {
    let o = kamforce(&["corpus", "replay", "succ-index", "--output", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().all(|l| l.split('\t').nth(2) == Some("pass")));
    let o = kamforce(&["corpus", "replay", "dse0", "--output", "tsv"]);
    assert_eq!(stdout(&o), "dse0\t-\tconstructed\t-\t-\n");
    let o = kamforce(&["corpus", "list"]);
    assert!(stdout(&o).lines().count() >= 30);
}

#[test]
fn arith_eval_checks_contract() {
    let o = kamforce(&["arith", "eval", "double", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("value 6"));
}

#[test]
fn force_transform_prints_formula() {
    let o = kamforce(&["force", "transform", "--cond", "q", "--formula", "n eps p"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "C[q∧1] → n ε p\n");
}

#[test]
fn nd_accepts_and_rejects() {
    let k = r#"{"lam": ["x", "A", {"lam": ["y", "B", {"hyp": "x"}]}]}"#;
    let o = with_stdin(&["nd", "-"], k);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with(r"⊢ \x \y x : A → B → A"), "{}", stdout(&o));
    let bad = r#"{"lam": ["x", "A", {"hyp": "y"}]}"#;
    let o = with_stdin(&["nd", "-"], bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("rejected at root.body"));
}

#[test]
fn balg_j_matches_translation() {
    let o = kamforce(&["balg", "j", "2"]);
    assert_eq!(o.status.code(), Some(0));
}
