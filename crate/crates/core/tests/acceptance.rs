//! One pass/fail line per acceptance criterion. Run with `--nocapture` to see the table.

use std::time::Duration;

use cliquecolor::par::Parallelism;
use cliquecolor::suites::{self, SuiteReport};

const SEED: u64 = 7;

struct Line {
    id: usize,
    what: &'static str,
    budget: Duration,
    reports: Vec<SuiteReport>,
}

impl Line {
    fn new(id: usize, what: &'static str, budget_secs: u64, reports: Vec<SuiteReport>) -> Self {
        Line {
            id,
            what,
            budget: Duration::from_secs(budget_secs),
            reports,
        }
    }

    fn elapsed(&self) -> Duration {
        self.reports.iter().map(|r| r.elapsed).max().unwrap_or_default()
    }

    fn pass(&self) -> bool {
        self.reports.iter().all(SuiteReport::ok) && self.elapsed() <= self.budget
    }

    fn print(&self) {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let counts: Vec<String> = self
            .reports
            .iter()
            .map(|r| format!("{} {}/{}", r.name, r.passed(), r.cases))
            .collect();
        println!(
            "criterion {:>2}: {verdict}  {}  [{}] {:.2}s (budget {}s)",
            self.id,
            self.what,
            counts.join(", "),
            self.elapsed().as_secs_f64(),
            self.budget.as_secs()
        );
        for r in &self.reports {
            for f in r.failures.iter().take(5) {
                println!("              {}: {f}", r.name);
            }
        }
    }
}

#[test]
fn acceptance_criteria() {
    let par = Parallelism::Parallel;
    let (dichotomy, activation) = suites::dichotomy(SEED, 200, par);
    let lines = vec![
        Line::new(1, "O5 fixture: Δ=5, ω(H)=1, χ=5, critical, ω=4", 1, vec![suites::o5_fixture()]),
        Line::new(2, "bk8 fixture: n=15, 8-regular, ω=6, χ=8", 10, vec![suites::bk8_fixture()]),
        Line::new(3, "K_t ∨ B classification equivalence", 7200, vec![suites::classification(par)]),
        Line::new(4, "small pot vs naive choosability, 500 graphs", 1800, vec![suites::smallpot(SEED, 500, par)]),
        Line::new(5, "mixed joins, 1000 list assignments each", 60, vec![suites::mixed(SEED, 1000, par)]),
        Line::new(6, "partition invariants on the fixture set", 60, vec![suites::mozhan(par)]),
        Line::new(7, "engine dichotomy, 200 graphs in both modes", 3600, vec![dichotomy]),
        Line::new(8, "no fourth activation across the corpus", 3600, vec![activation]),
        Line::new(9, "lopsided transversals, 500 instances", 300, vec![suites::transversal(SEED, 500, par)]),
        Line::new(10, "hitting sets on grouped cliques", 60, vec![suites::hitting(SEED, 60, par)]),
        Line::new(11, "pipeline: lex(5,5), K17, 50 random Δ>=13", 1800, vec![suites::pipeline(SEED, 50, par)]),
    ];
    for l in &lines {
        l.print();
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass()).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
