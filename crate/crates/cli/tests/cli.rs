use std::io::Write;
use std::process::{Command, Output};

use cliquecolor::certificate::Certificate;
use cliquecolor::constructions::by_name;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliquecolor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn lex_5_5_is_colored_with_13_colors() {
    let o = run(&["color-or-clique", "lex:5:5"]);
    assert_eq!(o.status.code(), Some(0));
    let cert = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!(cert.kind(), "coloring");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let colors = v["payload"]["colors"].as_array().unwrap();
    let distinct: std::collections::BTreeSet<u64> = colors.iter().map(|c| c.as_u64().unwrap()).collect();
    assert_eq!(distinct.len(), 13);
    assert_eq!(cert.verify(&by_name("lex:5:5").unwrap()), Ok(()));
}

#[test]
fn bk8_yields_its_six_clique() {
    let o = run(&["color-or-clique", "bk8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "clique");
    assert_eq!(v["payload"]["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn engine_mode_on_o5_emits_a_verified_certificate() {
    for mode in ["theorem1", "theorem2"] {
        let o = run(&["color-or-clique", "o5", "--mode", mode]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let cert = Certificate::from_json(&stdout(&o)).unwrap();
        assert!(["coloring", "clique", "high_clique"].contains(&cert.kind()));
        assert_eq!(cert.verify(&by_name("o5").unwrap()), Ok(()));
    }
}

#[test]
fn adversarial_join_exits_with_a_violation() {
    let o = run(&["color-or-clique", "join:c5:c5", "--r-vector", "2,2,1"]);
    assert_eq!(o.status.code(), Some(3));
    let cert = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!(cert.kind(), "violation");
    assert_eq!(cert.verify(&by_name("join:c5:c5").unwrap()), Ok(()));
}

#[test]
fn oversized_input_without_fast_paths_is_refused() {
    let o = run(&["color-or-clique", "k45", "--no-fast-paths"]);
    assert_eq!(o.status.code(), Some(2));
    let cert = Certificate::from_json(&stdout(&o)).unwrap();
    assert_eq!(cert.kind(), "refusal");
}

#[test]
fn parse_errors_exit_1() {
    assert_eq!(run(&["color-or-clique", "nonsense"]).status.code(), Some(1));
    let bad = write_temp("p edge 3 1\ne 1 9\n");
    assert_eq!(run(&["color-or-clique", bad.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["color-or-clique", "o5", "--r-vector", "2,0"]).status.code(), Some(1));
    assert_eq!(run(&["color-or-clique", "o5", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["choosable", "--d1", "--uniform", "2", "c4"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn dimacs_files_are_read() {
    let f = write_temp("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let o = run(&["color-or-clique", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "clique");
}

#[test]
fn choosable_examples() {
    for (args, want) in [
        (vec!["choosable", "--d1", "join:k4:e3"], "false"),
        (vec!["choosable", "--uniform", "2", "c4"], "true"),
        (vec!["choosable", "--uniform", "2", "c5"], "false"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
    assert_eq!(run(&["choosable", "--d1", "k12"]).status.code(), Some(2));
}

#[test]
fn verify_round_trip_tampering_and_wrong_graph() {
    let o = run(&["color-or-clique", "bk8"]);
    let good = write_temp(&stdout(&o));
    let path = good.path().to_str().unwrap();
    assert_eq!(run(&["verify", "bk8", path]).status.code(), Some(0));
    assert_eq!(run(&["verify", "o5", path]).status.code(), Some(4));

    let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vs = v["payload"]["vertices"].as_array_mut().unwrap();
    let members: Vec<u64> = vs.iter().map(|x| x.as_u64().unwrap()).collect();
    let outsider = (0..15).find(|x| !members.contains(x)).unwrap();
    vs[0] = serde_json::json!(outsider);
    let tampered = write_temp(&v.to_string());
    assert_eq!(run(&["verify", "bk8", tampered.path().to_str().unwrap()]).status.code(), Some(5));

    let garbage = write_temp("{}");
    assert_eq!(run(&["verify", "bk8", garbage.path().to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["color-or-clique", "o5", "--mode", "theorem1", "--seed", "3"]);
    let b = run(&["color-or-clique", "o5", "--mode", "theorem1", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn suites_report_and_exit_zero() {
    let o = run(&["suite", "mozhan"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mozhan:"));
    let o = run(&["suite", "transversal", "--seed", "2", "--count", "30", "--sequential"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("30 passed, 0 failed"));
    assert_eq!(run(&["suite", "nope"]).status.code(), Some(1));
}
