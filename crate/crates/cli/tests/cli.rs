use std::path::PathBuf;
use std::process::{Command, Output};

use seqrcc::network::{algebraic_closure, Network};
use seqrcc::verify::closure_gap_network;

fn write(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn seqrcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqrcc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const PARTITION_EXAMPLE: &str = "\
semantics: partition
length: 4
vars: x y
x y : {TPP,NTPP} {PO,EQ} {EC,DC} {DC}
";

#[test]
fn verify_paper_passes() {
    let out = seqrcc(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().all(|l| l.contains(" PASS ")), "{text}");
}

#[test]
fn solve_gap_network_is_unsat() {
    let path = write("gap.qcn", &closure_gap_network().to_text());
    let out = seqrcc(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "UNSAT");
}

#[test]
fn solve_unconstrained_is_sat() {
    let path = write("free.qcn", "semantics: neighbour\nlength: 3\nvars: a b c\n");
    for extra in [&[][..], &["--force-search"][..]] {
        let mut args = vec!["solve", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        let out = seqrcc(&args);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        let (verdict, witness) = text.split_once('\n').unwrap();
        assert_eq!(verdict, "SAT");
        let net = Network::parse(witness).unwrap();
        assert!(net.is_scenario());
    }
}

#[test]
fn closure_of_partition_example() {
    let path = write("partition.qcn", PARTITION_EXAMPLE);
    let out = seqrcc(&["closure", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("x y : {TPP} {PO} {EC} {DC}"));
}

#[test]
fn closure_output_is_a_fixed_point() {
    let path = write("gap-closure.qcn", &closure_gap_network().to_text());
    let out = seqrcc(&["closure", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let reparsed = Network::parse(&stdout(&out)).unwrap();
    assert_eq!(algebraic_closure(&reparsed), reparsed);
    assert_eq!(reparsed, algebraic_closure(&closure_gap_network()));
}

#[test]
fn classify_prints_indices_then_patterns() {
    let path = write("classify.qcn", PARTITION_EXAMPLE);
    let out = seqrcc(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("1:"));
    assert!(lines[3].starts_with("4:"));
    assert!(lines[4..].contains(&"THEOREM1"), "{text}");
}

#[test]
fn plan_dc_to_po() {
    let start = write("start.qcn", "vars: x y\nx y : {DC}\n");
    let goal = write("goal.qcn", "vars: x y\nx y : {PO}\n");
    let (s, g) = (start.to_str().unwrap(), goal.to_str().unwrap());
    let out = seqrcc(&[
        "plan",
        "--start",
        s,
        "--goal",
        g,
        "--steps",
        "3",
        "--semantics",
        "neighbour",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("x y : {DC} {EC} {PO}"));

    let out = seqrcc(&[
        "plan",
        "--start",
        s,
        "--goal",
        g,
        "--steps",
        "2",
        "--semantics",
        "neighbour",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "UNSAT");

    let out = seqrcc(&[
        "plan",
        "--start",
        s,
        "--goal",
        g,
        "--steps",
        "3",
        "--semantics",
        "partition",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plan_with_constraints_file() {
    let start = write("start2.qcn", "vars: x y\nx y : {DC}\n");
    let goal = write("goal2.qcn", "vars: x y\nx y : {TPP}\n");
    let forbid_po = write(
        "no-po.qcn",
        "vars: x y\nx y : {DC,EC,TPP,NTPP,TPPI,NTPPI,EQ}\n",
    );
    let out = seqrcc(&[
        "plan",
        "--start",
        start.to_str().unwrap(),
        "--goal",
        goal.to_str().unwrap(),
        "--steps",
        "5",
        "--constraints",
        forbid_po.to_str().unwrap(),
        "--semantics",
        "neighbour",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(seqrcc(&[]).status.code(), Some(2));
    assert_eq!(seqrcc(&["solve"]).status.code(), Some(2));
    assert_eq!(
        seqrcc(&["closure", "/nonexistent/file.qcn"]).status.code(),
        Some(2)
    );
    let bad = write("bad.qcn", "vars: x y\nx y : {DC,XX}\n");
    let out = seqrcc(&["closure", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn help_exits_0() {
    assert_eq!(seqrcc(&["plan", "--help"]).status.code(), Some(0));
}
