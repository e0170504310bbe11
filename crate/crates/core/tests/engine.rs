use std::collections::BTreeSet;

use cliquecolor::constructions::{bk8, cycle, join, lex_product_cycle_clique, moser_spindle, o5, planted_clique};
use cliquecolor::engine::{
    build_partition, replay, run_engine, Built, ClubId, EngineStats, Mode, Outcome, PartitionState, RVector, Snapshot,
    StepResult, Witness,
};
use cliquecolor::graph::Graph;
use cliquecolor::par::{self, Parallelism};
use rand::SeedableRng;

fn rv(p: &[usize]) -> RVector {
    RVector::new(p.to_vec()).unwrap()
}

fn fixtures() -> Vec<(Graph, RVector)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    vec![
        (o5(), rv(&[2, 2])),
        (bk8(), rv(&[4, 3])),
        (moser_spindle(), rv(&[2, 1])),
        (lex_product_cycle_clique(5, 3).unwrap(), rv(&[4, 3])),
        (planted_clique(18, 8, 9, 10_000, &mut rng), rv(&[4, 4])),
    ]
}

fn witnesses(g: &Graph, r: &RVector) -> Vec<Witness> {
    (0..g.n()).filter_map(|v| Witness::from_oracle(g, v, r.total()).unwrap()).collect()
}

/// Every plain send allowed in the current state, ranked: destinations already sent to
/// first, then member index, then clubhouse index.
fn preferred_send(s: &PartitionState) -> Option<(usize, ClubId)> {
    let active = s.active_club();
    let sent: BTreeSet<ClubId> = active.send_history.iter().map(|e| e.to).collect();
    let mut legal = Vec::new();
    for &u in active.members.iter().filter(|&&u| !s.is_moved(u)) {
        for i in (0..s.r().k()).filter(|&i| i != active.part) {
            let nb: BTreeSet<usize> = s.neighbors_in_part(u, i).into_iter().collect();
            if nb.len() != s.r().parts[i] {
                continue;
            }
            let Some(t) = s
                .live_clubs()
                .find(|c| c.part == i && c.members.iter().copied().collect::<BTreeSet<_>>() == nb)
            else {
                continue;
            };
            let nbv: Vec<usize> = nb.iter().copied().collect();
            if !s.graph().is_clique(&nbv) || s.clubs_complete(active.id, t.id) {
                continue;
            }
            legal.push(((!sent.contains(&t.id), u, i), (u, t.id)));
        }
    }
    legal.into_iter().min().map(|(_, m)| m)
}

#[test]
fn choose_move_matches_the_legal_move_oracle() {
    let mut compared = 0;
    let mut moved = 0;
    for (g, r) in fixtures() {
        for w in witnesses(&g, &r) {
            let Built::Partition(mut s) = build_partition(&g, &r, &w).unwrap() else { continue };
            let mut stats = EngineStats::default();
            for _ in 0..200 {
                let got = s.choose_move().map(|c| {
                    assert_eq!(c.carrier, None);
                    (c.member, c.to)
                });
                assert_eq!(got, preferred_send(&s), "pivot {}", w.vertex);
                compared += 1;
                match s.step(&mut stats).unwrap() {
                    StepResult::Moved(_) => moved += 1,
                    StepResult::Restarted => {}
                    _ => break,
                }
                assert!(s.verify_state().is_valid());
            }
        }
    }
    assert!(compared > 50 && moved > 0, "compared {compared}, moved {moved}");
}

#[test]
fn runs_are_deterministic_and_replay() {
    for (g, r) in fixtures() {
        for w in witnesses(&g, &r).into_iter().take(4) {
            for mode in [Mode::Theorem1, Mode::Theorem2] {
                let a = run_engine(&g, &r, &w, mode).unwrap();
                let b = run_engine(&g, &r, &w, mode).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn violation_snapshot_survives_json_and_replays() {
    let g = join(&cycle(5), &cycle(5));
    let r = rv(&[2, 2, 1]);
    let w = witnesses(&g, &r).remove(0);
    let run = run_engine(&g, &r, &w, Mode::Theorem1).unwrap();
    let Outcome::AssumptionViolation(v) = run.outcome else {
        panic!("expected a violation, got {}", run.outcome.kind());
    };
    let text = serde_json::to_string(&v.snapshot).unwrap();
    let back: Snapshot = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v.snapshot);
    assert_eq!(back.graph(), g);
    match replay(&back).unwrap().outcome {
        Outcome::AssumptionViolation(again) => assert_eq!(again.claim, v.claim),
        other => panic!("replay gave {}", other.kind()),
    }
}

#[test]
fn parallel_and_sequential_runs_agree() {
    let cases: Vec<(Graph, RVector, Witness)> = fixtures()
        .into_iter()
        .flat_map(|(g, r)| witnesses(&g, &r).into_iter().map(move |w| (g.clone(), r.clone(), w)))
        .collect();
    let go = |mode| {
        par::map(&cases, mode, |(g, r, w)| {
            let run = run_engine(g, r, w, Mode::Theorem2).unwrap();
            (run.outcome.kind(), run.stats)
        })
    };
    assert_eq!(go(Parallelism::Sequential), go(Parallelism::Parallel));
}
