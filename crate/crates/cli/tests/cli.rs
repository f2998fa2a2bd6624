//! End-to-end runs of the binary.

use std::process::{Command, Output};

fn partcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partcalc")).args(args).env_remove("PARTCALC_SEED").output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap().trim_end()
}

#[test]
fn quotient_reports_the_ideal_part() {
    let o = partcalc(&["quotient", "-p", r#"[["1","2"],["3","4"],["5","6"]]"#, "-b", r#"["2","3"]"#]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r#"{"partition":[["1","4"],["5","6"]],"ideal_part":["1","4"],"trivial":false}"#);
}

#[test]
fn restrict_and_adjust() {
    let o = partcalc(&["restrict", "-p", r#"[["1","2"],["3"]]"#, "-b", r#"["1","3"]"#]);
    assert_eq!(stdout(&o), r#"[["1"],["3"]]"#);
    let o = partcalc(&["adjust", "-p", r#"[["1","2","3"]]"#, "-f", r#"[["1"],["3"]]"#]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn insertion_with_and_without_a_map() {
    let o = partcalc(&["insert", "-p", r#"[["1","2"],["3"]]"#, "-a", "0", "-q", r#"[["4"],["5"]]"#, "--map", r#"{"1":0,"2":1}"#]);
    assert_eq!(stdout(&o), r#"[["1","4"],["2","5"],["3"]]"#);
    let o = partcalc(&["insert", "-p", r#"[["1"]]"#, "-a", "0", "-q", r#"[["4"],["5"]]"#]);
    assert_eq!(stdout(&o), r#"[{"coeff":"1","term":[["1","4"],["5"]]},{"coeff":"1","term":[["1","5"],["4"]]}]"#);
}

#[test]
fn bracket_values() {
    let o = partcalc(&["bracket", "-p", r#"[["1","2"]]"#, "-q", r#"[["3"],["4"]]"#]);
    assert_eq!(stdout(&o), r#"[{"coeff":"1","term":[["1","3"],["2","4"]]},{"coeff":"1","term":[["1","4"],["2","3"]]}]"#);
    let o = partcalc(&["bracket", "-p", r#"[["1","2"]]"#, "-q", r#"[["3"]]"#]);
    assert_eq!(stdout(&o), "[]");
}

#[test]
fn empty_operands_exit_two() {
    let o = partcalc(&["bracket", "-p", "[]", "-q", "[]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(r#""error":"EmptyOperand""#));
}

#[test]
fn bad_json_exits_one_with_position() {
    let o = partcalc(&["canon", "-p", "[[\"1\",\n"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(r#""error":"ParseError""#) && err.contains(r#""line":2"#), "{err}");
}

#[test]
fn overlapping_blocks_exit_two() {
    let o = partcalc(&["canon", "-p", r#"[["1","2"],["2"]]"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("blocks not disjoint"));
}

#[test]
fn reads_files_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.json");
    let output = dir.path().join("out.json");
    std::fs::write(&input, r#"[["2"],["1"]]"#).unwrap();
    let o = partcalc(&["canon", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(output).unwrap(), "[[\"1\"],[\"2\"]]\n");
}

#[test]
fn graph_commands() {
    let g = r#"{"kind":"ordinary","sigma":[["1","2"],["3","4"],["5","6"]],"vertices":[["1","6"],["2","3"],["4","5"]]}"#;
    let o = partcalc(&["graph", "quotient", "-g", g, "--select", "0,1"]);
    assert_eq!(stdout(&o), r#"{"kind":"ordinary","sigma":[["3","4"],["5","6"]],"fixed":[],"vertices":[["3","6"],["4","5"]]}"#);
    let o = partcalc(&["graph", "subgraph", "-g", g, "--select", "0,1"]);
    assert_eq!(stdout(&o), r#"{"kind":"ordinary","sigma":[["1","2"]],"fixed":[],"vertices":[["1"],["2"]]}"#);
    let o = partcalc(&["graph", "quotient", "-g", g, "--select", "0", "--format", "dot"]);
    assert!(stdout(&o).starts_with("graph G {"));
    let o = partcalc(&["graph", "dot", "-g", r#"{"sigma":[["2","3"]],"fixed":["1","4"],"vertices":[["1","2"],["3","4"]]}"#]);
    assert_eq!(stdout(&o).matches("shape=point").count(), 2);
}

#[test]
fn graph_bracket_matches_partition_bracket() {
    let g = r#"{"kind":"feynman","sigma":[["1","2"]],"vertices":[["1","2"]]}"#;
    let h = r#"{"kind":"feynman","sigma":[],"fixed":["3","4"],"vertices":[["3"],["4"]]}"#;
    let o = partcalc(&["graph", "bracket", "-g", g, "-H", h]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(text.contains(r#""vertices":[["1","3"],["2","4"]]"#) && text.contains(r#""vertices":[["1","4"],["2","3"]]"#));
}

#[test]
fn check_exit_codes_and_seed() {
    let o = partcalc(&["check", "coassoc", "--max-atoms", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""failure_count": 0"#));
    let by_alias = partcalc(&["check", "prop21", "--samples", "3"]);
    let by_name = partcalc(&["check", "quotient-laws", "--samples", "3"]);
    assert_eq!(by_alias.stdout, by_name.stdout);
    let o = partcalc(&["check", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let by_env = Command::new(env!("CARGO_BIN_EXE_partcalc"))
        .args(["check", "jacobi-signed", "--samples", "5"])
        .env("PARTCALC_SEED", "9")
        .output()
        .unwrap();
    let by_flag = partcalc(&["check", "jacobi-signed", "--samples", "5", "--seed", "9"]);
    assert_eq!(by_env.stdout, by_flag.stdout);
    assert!(stdout(&by_flag).contains(r#""seed": 9"#));
}
