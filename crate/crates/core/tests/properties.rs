use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cliquecolor::certificate::{Certificate, EngineConfig};
use cliquecolor::constructions::{clique_groups, complete, cycle, join, lex_product_cycle_clique};
use cliquecolor::engine::{build_partition, replay, run_engine, Built, EngineStats, Mode, Outcome, RVector, StepResult, Witness};
use cliquecolor::graph::{verify_clique, verify_coloring, CliqueCertificate, Graph};
use cliquecolor::list::{f_choosable, l_colorable, ListAssignment, ListSizeFunction};
use cliquecolor::oracle::{chromatic_number_exact, critical_subgraph, is_vertex_critical, max_clique_exact};
use cliquecolor::reduction::{
    color_or_clique, find_independent_transversal, hitting_set, maximum_cliques, peel_set, transversal_exists_exhaustive,
};
use cliquecolor::suites::random_transversal_instance;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == k).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn constructions_match_closed_forms(n in 3usize..12, c in prop::sample::select(vec![5usize, 7, 9]), k in 1usize..5) {
        let kn = complete(n);
        prop_assert_eq!(kn.edge_count(), n * (n - 1) / 2);
        prop_assert!(kn.is_regular() && kn.max_degree() == n - 1);
        let cn = cycle(n);
        prop_assert_eq!(cn.edge_count(), n);
        prop_assert!(cn.is_regular() && cn.max_degree() == 2);
        let lex = lex_product_cycle_clique(c, k).unwrap();
        prop_assert_eq!(lex.n(), c * k);
        prop_assert!(lex.is_regular() && lex.max_degree() == 3 * k - 1);
        prop_assert_eq!(lex.edge_count(), c * k * (3 * k - 1) / 2);
        let j = join(&kn, &cn);
        prop_assert_eq!(j.edge_count(), kn.edge_count() + cn.edge_count() + n * n);
    }

    #[test]
    fn chromatic_number_agrees_with_uniform_lists(g in graph(8)) {
        let chi = chromatic_number_exact(&g).unwrap();
        let colorable = |k: usize| {
            let colors: Vec<usize> = (0..k).collect();
            l_colorable(&g, &ListAssignment::uniform(g.n(), &colors)).unwrap()
        };
        let c = colorable(chi).expect("χ colors suffice");
        prop_assert!(verify_coloring(&g, &c, true).unwrap());
        prop_assert!(chi == 0 || colorable(chi - 1).is_none());
    }

    #[test]
    fn maximum_clique_is_maximum(g in graph(9)) {
        let c = max_clique_exact(&g).unwrap();
        prop_assert!(verify_clique(&g, &c).unwrap());
        let bigger = subsets_of_size(g.n(), c.size() + 1).any(|s| g.is_clique(&s));
        prop_assert!(!bigger);
    }

    #[test]
    fn critical_subgraphs_are_critical(g in graph(8)) {
        let k = chromatic_number_exact(&g).unwrap();
        prop_assume!(k > 0);
        let sub = critical_subgraph(&g, k).unwrap();
        prop_assert!(is_vertex_critical(&sub.graph, k).unwrap());
    }

    #[test]
    fn choosability_is_monotone(g in graph(6), extra in proptest::collection::vec(0usize..2, 6), bump in proptest::collection::vec(0usize..2, 6)) {
        let f = ListSizeFunction { sizes: (0..g.n()).map(|v| g.degree(v).saturating_sub(1) + extra[v]).collect() };
        let f2 = ListSizeFunction { sizes: f.sizes.iter().zip(&bump).map(|(a, b)| a + b).collect() };
        if f_choosable(&g, &f).unwrap() {
            prop_assert!(f_choosable(&g, &f2).unwrap());
        }
    }

    #[test]
    fn list_colorings_respect_lists(g in graph(7), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists = ListAssignment::new(
            (0..g.n())
                .map(|v| rand::seq::index::sample(&mut rng, 6, (g.degree(v) + 1).min(6)).into_iter().collect())
                .collect(),
        );
        if let Some(c) = l_colorable(&g, &lists).unwrap() {
            prop_assert!(verify_coloring(&g, &c, true).unwrap());
            for v in 0..g.n() {
                prop_assert!(lists.lists[v].contains(&c.color(v).unwrap()));
            }
        }
    }

    #[test]
    fn engine_outcomes_are_verified_and_deterministic(g in graph(10), parts in proptest::collection::vec(1usize..=3, 1..=3), pivot in any::<prop::sample::Index>()) {
        let r = RVector::new(parts).unwrap();
        let v = pivot.index(g.n());
        let Some(w) = Witness::from_oracle(&g, v, r.total()).unwrap() else { return Ok(()) };
        let d = g.max_degree();
        for mode in [Mode::Theorem1, Mode::Theorem2] {
            let run = run_engine(&g, &r, &w, mode).unwrap();
            prop_assert_eq!(&run, &run_engine(&g, &r, &w, mode).unwrap());
            match &run.outcome {
                Outcome::Coloring(c) => {
                    prop_assert!(verify_coloring(&g, c, true).unwrap());
                    prop_assert!(c.colors_used() <= r.total());
                }
                Outcome::Clique(c) => {
                    prop_assert!(verify_clique(&g, c).unwrap());
                    if c.high_only {
                        prop_assert!(c.vertices.iter().all(|&x| g.degree(x) == d));
                    }
                }
                Outcome::AssumptionViolation(viol) => {
                    let again = replay(&viol.snapshot).unwrap();
                    prop_assert!(matches!(again.outcome, Outcome::AssumptionViolation(x) if x.claim == viol.claim));
                }
            }
        }
    }

    #[test]
    fn moves_keep_the_partition_valid(g in graph(10), parts in proptest::collection::vec(1usize..=3, 2..=3), pivot in any::<prop::sample::Index>()) {
        let r = RVector::new(parts).unwrap();
        let v = pivot.index(g.n());
        let Some(w) = Witness::from_oracle(&g, v, r.total()).unwrap() else { return Ok(()) };
        let Built::Partition(mut s) = build_partition(&g, &r, &w).unwrap() else { return Ok(()) };
        let mut stats = EngineStats::default();
        let mut moved_since_restart = 0;
        for _ in 0..10 * g.n() {
            match s.step(&mut stats).unwrap() {
                StepResult::Moved(ms) => {
                    moved_since_restart += ms.len();
                    prop_assert!(s.verify_state().is_valid(), "{:?}", s.verify_state());
                    let mut seen = vec![0; g.n()];
                    for part in s.clubhouses() {
                        for x in part {
                            seen[x] += 1;
                        }
                    }
                    prop_assert!(seen.iter().all(|&c| c == 1));
                    prop_assert!(moved_since_restart <= g.n());
                }
                StepResult::Restarted => moved_since_restart = 0,
                _ => break,
            }
        }
    }

    #[test]
    fn transversal_finder_agrees_with_enumeration(seed in any::<u64>(), lopsided in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_transversal_instance(&mut rng, lopsided);
        let found = find_independent_transversal(&t).unwrap();
        prop_assert_eq!(found.is_some(), transversal_exists_exhaustive(&t));
        if let Some(p) = found {
            prop_assert!(t.aux_graph.is_independent(&p));
            prop_assert!(p.iter().zip(&t.parts).all(|(v, part)| part.contains(v)));
        }
    }

    #[test]
    fn hitting_sets_meet_every_maximum_clique(seed in any::<u64>(), delta in 14usize..=17, plain in 0usize..=2, paired in 1usize..=1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = clique_groups(delta, plain, paired, 300, &mut rng);
        let h = hitting_set(&g).unwrap().expect("grouped cliques have a hitting set");
        prop_assert!(g.is_independent(&h));
        for c in maximum_cliques(&g).unwrap() {
            prop_assert!(c.iter().any(|v| h.contains(v)));
        }
    }

    #[test]
    fn peeling_drops_the_maximum_degree_by_one(seed in any::<u64>(), delta in 14usize..=17, plain in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = clique_groups(delta, plain, 0, 300, &mut rng);
        let d = g.max_degree();
        let s = peel_set(&g).unwrap();
        prop_assert!(g.is_independent(&s));
        prop_assert_eq!(g.without(&s).graph.max_degree(), d - 1);
    }

    #[test]
    fn pipeline_outputs_verify_and_round_trip(g in graph(12)) {
        let res = color_or_clique(&g).unwrap();
        let d = g.max_degree();
        match &res.outcome {
            Outcome::Coloring(c) => {
                prop_assert!(verify_coloring(&g, c, true).unwrap());
                prop_assert!(c.colors_used() < d.max(1));
            }
            Outcome::Clique(c) => {
                prop_assert!(verify_clique(&g, &CliqueCertificate::new(c.vertices.clone(), false)).unwrap());
                prop_assert!(c.size() >= res.bound);
            }
            Outcome::AssumptionViolation(_) => {}
        }
        let cert = Certificate::from_outcome(&g, &res.outcome, EngineConfig::default());
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert!(back.verify(&g).is_ok());
    }
}
