//! End-to-end tests of the command-line surface: exit codes, the records
//! format, and re-parseability of every output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zermod"))
}

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

fn record_value<'a>(line: &'a str, key: &str) -> Option<String> {
    // key=value pairs, values optionally quoted
    let pat = format!("{}=", key);
    let rest = &line[line.find(&pat)? + pat.len()..];
    if let Some(stripped) = rest.strip_prefix('"') {
        let mut out = String::new();
        let mut chars = stripped.chars();
        while let Some(c) = chars.next() {
            match c {
                '\\' => out.push(chars.next()?),
                '"' => return Some(out),
                c => out.push(c),
            }
        }
        None
    } else {
        Some(rest.split(' ').next().unwrap_or(rest).to_string())
    }
}

#[test]
fn parse_round_trips_through_the_cli() {
    let o = run(&["--format", "records", "parse", "root(a / x)"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert_eq!(record_value(&line, "kind").as_deref(), Some("term"));
    assert_eq!(record_value(&line, "sort").as_deref(), Some("N"));
    let text = record_value(&line, "text").unwrap();
    // the canonical output parses again to the same canonical output
    let o2 = run(&["--format", "records", "parse", &text]);
    assert_eq!(record_value(&stdout(&o2), "text").unwrap(), text);
}

#[test]
fn parse_errors_exit_3() {
    let o = run(&["parse", "root(a, b)"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["parse", "eta(("]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn congruent_exit_codes() {
    let o = run(&["--ruleset", "arith", "congruent", "2 * 2 = 4", "4 = 4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--ruleset", "arith", "congruent", "2 * 2 = 4", "2 = 4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["--ruleset", "arith", "--fuel", "1", "congruent", "2 * 2 = 4", "4 = 4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normalize_records_and_trace_round_trip() {
    let o = run(&[
        "--format", "records", "--trace", "--ruleset", "arith", "normalize", "2 * 2",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let first = out.lines().next().unwrap();
    assert_eq!(record_value(first, "outcome").as_deref(), Some("normal-form"));
    let result = record_value(first, "result").unwrap();
    assert_eq!(result, "4");
    // the result parses in the same language
    let o2 = run(&["--ruleset", "arith", "parse", &result]);
    assert!(o2.status.success());
    // trace records carry rule names and positions
    assert!(out.lines().skip(1).all(|l| l.contains("rule=")));
    // fuel exhaustion exits 2
    let o = run(&["--ruleset", "naive", "--fuel", "10", "--lang", "naive", "normalize",
        "{ x in A | ~ x in x } in { x in A | ~ x in x }"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn axiomatize_output_reparses() {
    let o = run(&["--format", "records", "--ruleset", "arith", "axiomatize"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        let axiom = record_value(line, "axiom").unwrap();
        let o2 = run(&["--ruleset", "arith", "parse", &axiom]);
        assert!(o2.status.success(), "axiom `{}` does not reparse", axiom);
    }
}

#[test]
fn proof_commands() {
    let corpus = fixture("proofs/corpus.proof");
    let o = run(&["check-proof", &corpus]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["reduce-proof", &corpus]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--format", "records", "witness", &corpus]);
    // corpus proofs that are not existentials report failed; so the worst
    // code is 1, but even4's record carries witness=2
    let out = stdout(&o);
    let even4 = out
        .lines()
        .find(|l| record_value(l, "proof").as_deref() == Some("even4"))
        .expect("even4 record");
    assert_eq!(record_value(even4, "witness").as_deref(), Some("2"));
}

#[test]
fn graph_commands_round_trip() {
    let g2 = fixture("graphs/g2.graph");
    let g6 = fixture("graphs/g6.graph");
    let g4 = fixture("graphs/g4.graph");
    let lp = fixture("graphs/loop.graph");

    let o = run(&["--format", "records", "bisim", &g2, &g6]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(record_value(&out, "result").as_deref(), Some("bisimilar"));
    // witness pairs parse as node ids
    let witness = record_value(&out, "witness").unwrap();
    for pair in witness.split(' ') {
        let inner = pair.trim_start_matches('(').trim_end_matches(')');
        for id in inner.split(',') {
            zermod::graphs::node_id_from_str(id).unwrap();
        }
    }
    let o = run(&["bisim", &g2, &g4]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["member", &g2, &g4]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["member", &g4, &g2]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["--format", "records", "collapse", &g4]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        let set = record_value(line, "set").unwrap();
        zermod::graphs::parse_hf(&set).unwrap();
    }
    let o = run(&["collapse", &lp]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["--format", "records", "reify", &g4]);
    assert_eq!(o.status.code(), Some(0));
    let set = record_value(&stdout(&o), "set").unwrap();
    assert_eq!(set, "{{},{{}}}");
    let o = run(&["reify", &lp]);
    assert_eq!(o.status.code(), Some(1));

    // graph-of-set output reparses and reifies back
    let o = run(&["graph-of-set", "{{},{{}}}"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let g = zermod::graphs::parse_graph(&text).unwrap();
    assert_eq!(zermod::graphs::reify(&g).unwrap().to_string(), "{{},{{}}}");

    // constructions write re-parseable graphs
    let dir = std::env::temp_dir().join("zermod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let o = run(&["construct", "omega", "3"]);
    assert!(o.status.success());
    let om = zermod::graphs::parse_graph(&stdout(&o)).unwrap();
    let om_path = dir.join("om.graph");
    std::fs::write(&om_path, om.to_text("om")).unwrap();
    let o = run(&["construct", "pow", om_path.to_str().unwrap()]);
    assert!(o.status.success());
    zermod::graphs::parse_graph(&stdout(&o)).unwrap();
    let o = run(&[
        "construct", "compr", &g4, "--pred", "~(x in x)", "--var", "x",
    ]);
    assert!(o.status.success());
    zermod::graphs::parse_graph(&stdout(&o)).unwrap();
}

#[test]
fn translate_commands() {
    let o = run(&["--format", "records", "translate", "dagger", "x = y"]);
    assert!(o.status.success());
    assert_eq!(record_value(&stdout(&o), "result").as_deref(), Some("x ~~ y"));
    let o = run(&["--format", "records", "translate", "star", "i(a)"]);
    assert_eq!(record_value(&stdout(&o), "result").as_deref(), Some("opair(0, a)"));
    // star output reparses as zskol
    let o = run(&["--format", "records", "translate", "star", "a in b"]);
    let result = record_value(&stdout(&o), "result").unwrap();
    zermod::lang::parse_formula(&result, zermod::lang::Lang::Zskol).unwrap();
    let o = run(&["--format", "records", "translate", "circle", "t1 = t2"]);
    let result = record_value(&stdout(&o), "result").unwrap();
    zermod::lang::parse_formula(&result, zermod::lang::Lang::Zclass).unwrap();
    let o = run(&["--format", "records", "translate", "rel-pred", "G"]);
    assert_eq!(record_value(&stdout(&o), "result").as_deref(), Some("Rgraph(x)"));
    // the trace option lists applied clauses
    let o = run(&["--format", "records", "--trace", "translate", "star", "Nat(t)"]);
    assert!(stdout(&o).lines().any(|l| l.contains("name=formula:nat")));
}

#[test]
fn demos_succeed() {
    let o = run(&["demo", "even4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("witness: 2"), "{}", out);
    let o = run(&["demo", "crabbe"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("fuel-exhausted"));
    assert!(out.contains("normal-form"));
    let o = run(&["demo", "nosuch"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn fixture_dir_override() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("graphs");
    let o = bin()
        .env("ZERMOD_FIXTURE_DIR", dir)
        .args(["reify", "g4.graph"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rule_file_loading() {
    // a user rule file in the arith language
    let dir = std::env::temp_dir().join("zermod-cli-rules");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("double.rules");
    std::fs::write(&path, "dbl: 0 + y --> y\n").unwrap();
    let o = run(&[
        "--ruleset",
        path.to_str().unwrap(),
        "--lang",
        "arith",
        "normalize",
        "0 + 3",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("result: 3"));
}
