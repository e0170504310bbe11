//! Seeded corpus runs behind the acceptance test, the `suite` command and the bench.
//!
//! Every instance is generated from `(seed, index)` alone, so a run is reproducible and
//! the parallel and sequential modes produce identical reports.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    bk8, clique_groups, complete, cycle, disjoint_union, empty, fill_to_degree, hajos, join, lex_product_cycle_clique,
    moser_spindle, o5, planted_clique, random_colorable,
};
use crate::engine::{build_partition, replay, run_engine, Built, ClaimId, EngineRun, Mode, Outcome, RVector, Witness};
use crate::graph::{high_subgraph, verify_clique, verify_coloring, Graph};
use crate::list::small_graphs::isomorphism_classes;
use crate::list::{
    classify_join, color_mixed_join, f_choosable, f_choosable_naive, is_d1_choosable, ListAssignment,
    ListSizeFunction, MixedKind,
};
use crate::oracle::{chromatic_number_exact, critical_subgraph, find_coloring, is_vertex_critical, max_clique_unbounded};
use crate::par::{self, Parallelism};
use crate::reduction::{
    color_or_clique, find_independent_transversal, hitting_set, maximum_cliques, di_partition, transversal_exists_exhaustive,
    ReductionError, TransversalInstance,
};

pub const SUITES: [&str; 10] = [
    "fixtures",
    "classification",
    "smallpot",
    "mixed",
    "mozhan",
    "dichotomy",
    "activation",
    "transversal",
    "hitting",
    "pipeline",
];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    /// Outcome tallies, for the printed summary.
    pub tally: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases - self.failures.len()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    pub fn summary(&self) -> String {
        let tally: Vec<String> = self.tally.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{}: {} passed, {} failed in {:.2}s [{}]",
            self.name,
            self.passed(),
            self.failures.len(),
            self.elapsed.as_secs_f64(),
            tally.join(" ")
        )
    }

    /// Report data only, for comparing runs.
    pub fn same_results(&self, other: &SuiteReport) -> bool {
        self.name == other.name && self.cases == other.cases && self.failures == other.failures && self.tally == other.tally
    }
}

/// One instance: a tally tag on success, a message on failure.
type Case = Result<String, String>;

fn report(name: &str, start: Instant, cases: Vec<Case>) -> SuiteReport {
    let mut tally = BTreeMap::new();
    let mut failures = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        match c {
            Ok(tag) => *tally.entry(tag.clone()).or_default() += 1,
            Err(msg) => failures.push(format!("#{i}: {msg}")),
        }
    }
    SuiteReport {
        name: name.to_string(),
        cases: cases.len(),
        failures,
        elapsed: start.elapsed(),
        tally,
    }
}

fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index as u64)
}

fn check(ok: bool, tag: &str, msg: impl FnOnce() -> String) -> Case {
    if ok {
        Ok(tag.to_string())
    } else {
        Err(msg())
    }
}

/// Runs a suite by name. `dichotomy` and `activation` share one corpus run.
pub fn run(name: &str, seed: u64, count: Option<usize>, mode: Parallelism) -> Result<Vec<SuiteReport>, String> {
    Ok(match name {
        "fixtures" => vec![o5_fixture(), bk8_fixture()],
        "classification" => vec![classification(mode)],
        "smallpot" => vec![smallpot(seed, count.unwrap_or(500), mode)],
        "mixed" => vec![mixed(seed, count.unwrap_or(1000), mode)],
        "mozhan" => vec![mozhan(mode)],
        "dichotomy" | "activation" => {
            let (d, a) = dichotomy(seed, count.unwrap_or(200), mode);
            vec![d, a]
        }
        "transversal" => vec![transversal(seed, count.unwrap_or(500), mode)],
        "hitting" => vec![hitting(seed, count.unwrap_or(60), mode)],
        "pipeline" => vec![pipeline(seed, count.unwrap_or(50), mode)],
        _ => return Err(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", "))),
    })
}

fn chi(g: &Graph) -> Option<usize> {
    chromatic_number_exact(g).ok()
}

pub fn o5_fixture() -> SuiteReport {
    let start = Instant::now();
    let g = o5();
    let high = high_subgraph(&g).graph;
    let cases = vec![
        check(g.max_degree() == 5, "max_degree", || format!("Δ = {}", g.max_degree())),
        check(max_clique_unbounded(&high).len() == 1, "high_clique", || {
            format!("ω of the high subgraph is {}", max_clique_unbounded(&high).len())
        }),
        check(chi(&g) == Some(5), "chi", || format!("χ = {:?}", chi(&g))),
        check(is_vertex_critical(&g, 5).unwrap_or(false), "critical", || "not vertex-critical".into()),
        check(max_clique_unbounded(&g).len() == 4, "omega", || format!("ω = {}", max_clique_unbounded(&g).len())),
    ];
    report("o5", start, cases)
}

pub fn bk8_fixture() -> SuiteReport {
    let start = Instant::now();
    let g = bk8();
    let cases = vec![
        check(g.n() == 15, "order", || format!("n = {}", g.n())),
        check(g.is_regular() && g.max_degree() == 8, "regular", || format!("degrees {:?}", g.degree_sequence())),
        check(max_clique_unbounded(&g).len() == 6, "omega", || format!("ω = {}", max_clique_unbounded(&g).len())),
        check(chi(&g) == Some(8), "chi", || format!("χ = {:?}", chi(&g))),
    ];
    report("bk8", start, cases)
}

/// `is_d1_choosable(K_t ∨ B)` against the formula, over isomorphism classes of `B`.
pub fn classification(mode: Parallelism) -> SuiteReport {
    let start = Instant::now();
    let mut inputs: Vec<(usize, Graph)> = Vec::new();
    for (t, max_b) in [(4, 5), (5, 5), (6, 4)] {
        for n in 1..=max_b {
            inputs.extend(isomorphism_classes(n).expect("class order within bounds").into_iter().map(|b| (t, b)));
        }
    }
    inputs.push((6, empty(3)));
    let cases = par::map(&inputs, mode, |(t, b)| {
        let host = join(&complete(*t), b);
        let got = is_d1_choosable(&host).map_err(|e| e.to_string())?;
        let want = classify_join(*t, b).map_err(|e| e.to_string())?;
        check(got == want, if got { "choosable" } else { "not_choosable" }, || {
            format!("t = {t}, B edges {:?}: search says {got}, formula says {want}", b.edges().collect::<Vec<_>>())
        })
    });
    report("classification", start, cases)
}

/// Pot-bounded choosability against the unpruned oracle on graphs up to 7 vertices.
pub fn smallpot(seed: u64, count: usize, mode: Parallelism) -> SuiteReport {
    let start = Instant::now();
    let idx: Vec<usize> = (0..count).collect();
    let cases = par::map(&idx, mode, |&i| {
        let mut rng = rng_for(seed, i);
        let (g, f, variant) = loop {
            let n = rng.gen_range(1..=7);
            let p: f64 = rng.gen_range(0.1..0.7);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            let variant = rng.gen_range(0..3);
            let sizes: Vec<usize> = (0..n)
                .map(|v| match variant {
                    0 => g.degree(v).saturating_sub(1),
                    1 => g.degree(v),
                    _ => g.degree(v).saturating_sub(rng.gen_range(0..=1)),
                })
                .collect();
            if sizes.iter().sum::<usize>() <= crate::config::Limits::current().naive_total {
                break (g, ListSizeFunction { sizes }, ["d-1", "d", "mixed"][variant]);
            }
        };
        let fast = f_choosable(&g, &f).map_err(|e| e.to_string())?;
        let naive = f_choosable_naive(&g, &f).map_err(|e| e.to_string())?;
        check(fast == naive, &format!("{variant}:{fast}"), || {
            format!("f = {:?} on edges {:?}: pot search {fast}, naive {naive}", f.sizes, g.edges().collect::<Vec<_>>())
        })
    });
    report("smallpot", start, cases)
}

/// Random lists meeting the mixed-join size conditions, `count` per join.
pub fn mixed(seed: u64, count: usize, mode: Parallelism) -> SuiteReport {
    let start = Instant::now();
    let idx: Vec<usize> = (0..2 * count).collect();
    let cases = par::map(&idx, mode, |&i| {
        let kind = if i < count { MixedKind::K4E2 } else { MixedKind::K3E2 };
        let mut rng = rng_for(seed, i);
        let lists = mixed_lists(kind, &mut rng);
        let g = crate::list::mixed_join_host(kind);
        let c = color_mixed_join(kind, &lists).map_err(|e| format!("{kind:?} {}: {e}", lists.to_json()))?;
        let proper = verify_coloring(&g, &c, true).unwrap_or(false);
        let from_lists = (0..g.n()).all(|v| c.color(v).is_some_and(|x| lists.lists[v].contains(&x)));
        check(proper && from_lists, &format!("{kind:?}"), || {
            format!("{kind:?} {}: coloring {:?} rejected", lists.to_json(), c.colors)
        })
    });
    report("mixed", start, cases)
}

fn mixed_lists(kind: MixedKind, rng: &mut ChaCha8Rng) -> ListAssignment {
    let t = kind.clique_size();
    let universe = rng.gen_range(t + 1..=t + 4);
    // clique vertices have degree t + 1, the two independent ones degree t
    let mut sizes: Vec<usize> = (0..t + 2).map(|v| if v < t { t } else { t - 1 }).collect();
    for s in sizes.iter_mut() {
        if rng.gen_bool(0.25) {
            *s += 1;
        }
    }
    let w = rng.gen_range(0..t);
    sizes[w] = sizes[w].max(t + 1);
    if kind == MixedKind::K3E2 {
        let x = rng.gen_range(t..t + 2);
        sizes[x] = sizes[x].max(t);
    }
    ListAssignment::new(
        sizes
            .iter()
            .map(|&s| sample(rng, universe, s.min(universe)).into_iter().collect())
            .collect(),
    )
}

/// `x1` of minimum degree and its first neighbor, so the glued vertex stays low.
fn low_edge(g: &Graph) -> (usize, usize) {
    let x1 = (0..g.n()).min_by_key(|&v| g.degree(v)).expect("nonempty graph");
    (x1, g.neighbors(x1).iter().next().expect("x1 has a neighbor"))
}

fn moser_class() -> Vec<(String, Graph)> {
    let moser = moser_spindle();
    let k4 = complete(4);
    let hk = hajos(&k4, (0, 1), &k4, (0, 1)).expect("edges exist");
    let hm = hajos(&moser, low_edge(&moser), &k4, (0, 1)).expect("edges exist");
    let hmm = hajos(&moser, low_edge(&moser), &moser, low_edge(&moser)).expect("edges exist");
    vec![
        ("moser".into(), moser),
        ("hajos(k4,k4)".into(), hk),
        ("hajos(moser,k4)".into(), hm),
        ("hajos(moser,moser)".into(), hmm),
    ]
}

/// The graph the engine runs on, with its witnesses: `g` itself if some vertex has one,
/// otherwise a vertex-critical subgraph of chromatic number `Σr + 1`.
fn engine_inputs(g: &Graph, r: &RVector, pivots: &[usize]) -> Result<(Graph, Vec<Witness>), String> {
    let t = r.total();
    let find = |h: &Graph, vs: &mut dyn Iterator<Item = usize>| -> Result<Vec<Witness>, String> {
        let mut out = Vec::new();
        for v in vs {
            if let Some(w) = Witness::from_oracle(h, v, t).map_err(|e| e.to_string())? {
                out.push(w);
            }
        }
        Ok(out)
    };
    let ws = find(g, &mut pivots.iter().copied())?;
    if !ws.is_empty() {
        return Ok((g.clone(), ws));
    }
    let sub = critical_subgraph(g, t + 1).map_err(|e| e.to_string())?.graph;
    let ws = find(&sub, &mut (0..sub.n()))?;
    if ws.is_empty() {
        return Err(format!("no witness with {t} colors"));
    }
    Ok((sub, ws))
}

/// Partitions built from every witness of the fixture graphs satisfy properties (1)-(4).
pub fn mozhan(mode: Parallelism) -> SuiteReport {
    let start = Instant::now();
    let mut fixtures: Vec<(String, Graph, Vec<usize>)> = vec![
        ("k5".into(), complete(5), vec![2, 2]),
        ("c5+k2".into(), join(&cycle(5), &complete(2)), vec![2, 1, 1]),
        ("k14".into(), complete(14), vec![3, 3, 3, 3]),
    ];
    fixtures.extend(moser_class().into_iter().map(|(n, g)| (n, g, vec![2, 1])));
    let mut inputs = Vec::new();
    let mut cases: Vec<Case> = Vec::new();
    for (name, g, r) in fixtures {
        let r = RVector::new(r).expect("positive parts");
        let all: Vec<usize> = (0..g.n()).collect();
        match engine_inputs(&g, &r, &all) {
            Ok((h, ws)) => inputs.extend(ws.into_iter().map(|w| (name.clone(), h.clone(), r.clone(), w))),
            Err(e) => cases.push(Err(format!("{name}: {e}"))),
        }
    }
    cases.extend(par::map(&inputs, mode, |(name, g, r, w)| {
        match build_partition(g, r, w).map_err(|e| format!("{name} pivot {}: {e}", w.vertex))? {
            Built::Partition(s) => {
                let chk = s.verify_state();
                check(chk.is_valid(), name, || format!("{name} pivot {}: {chk:?}", w.vertex))
            }
            Built::Colored(c) => check(
                verify_coloring(g, &c, true).unwrap_or(false) && c.colors_used() <= r.total(),
                &format!("{name}:colored"),
                || format!("{name} pivot {}: bad coloring", w.vertex),
            ),
            Built::Violation(v) => Err(format!("{name} pivot {}: {:?} {}", w.vertex, v.claim, v.detail)),
        }
    }));
    report("mozhan", start, cases)
}

/// One engine input of the dichotomy corpus.
#[derive(Clone, Debug)]
pub struct EngineCase {
    pub name: String,
    pub graph: Graph,
    pub r: RVector,
    pub witness: Witness,
    /// `χ = Δ` and every vertex deletion lowers `χ`.
    pub critical: bool,
}

/// Fixtures run with parts summing to `Δ - 1`, except complete graphs, which need `Δ`.
fn fixture_cases() -> Vec<(String, Graph, RVector)> {
    let rv = |p: &[usize]| RVector::new(p.to_vec()).expect("positive parts");
    let mut out = vec![
        ("o5".to_string(), o5(), rv(&[2, 2])),
        ("bk8".into(), bk8(), rv(&[4, 3])),
        ("c5+k2".into(), join(&cycle(5), &complete(2)), rv(&[2, 2, 1])),
        ("k5".into(), complete(5), rv(&[2, 2])),
        ("k14".into(), complete(14), rv(&[3, 3, 3, 3])),
        ("lex:5:3".into(), lex_product_cycle_clique(5, 3).expect("valid sizes"), rv(&[4, 3])),
        ("lex:5:4".into(), lex_product_cycle_clique(5, 4).expect("valid sizes"), rv(&[4, 3, 3])),
        // χ = Δ - 1 with a partition outside the proven range: an adversarial input
        ("c5+c5".into(), join(&cycle(5), &cycle(5)), rv(&[2, 2, 1])),
    ];
    out.extend(moser_class().into_iter().map(|(n, g)| (n, g, rv(&[2, 1]))));
    out
}

fn certify_critical(g: &Graph) -> bool {
    let d = g.max_degree();
    d >= 1 && find_coloring(g, d - 1).is_none() && is_vertex_critical(g, d).unwrap_or(false)
}

/// Random instance `index` of the corpus, resampled until some vertex has a witness.
fn random_case(seed: u64, index: usize) -> EngineCase {
    let mut rng = rng_for(seed, index);
    loop {
        let delta = rng.gen_range(7..=16);
        let n = rng.gen_range(delta + 2..=26);
        let fam = rng.gen_range(0..5);
        let g = match fam {
            0 => planted_clique(n, delta - rng.gen_range(1..=3), delta, 10_000, &mut rng),
            1 => planted_clique(n, rng.gen_range(3..delta), delta, rng.gen_range(n..n * delta / 2), &mut rng),
            2 => random_colorable(n, delta - 1, delta, rng.gen_range(0.3..0.9), &mut rng),
            3 => planted_clique(n, delta, delta, rng.gen_range(0..n * delta), &mut rng),
            _ => {
                let m = rng.gen_range(3..=4);
                let pad = planted_clique(rng.gen_range(4..10), 0, 3 * m - 1, 100, &mut rng);
                let mut g = disjoint_union(&lex_product_cycle_clique(5, m).expect("valid sizes"), &pad);
                fill_to_degree(&mut g, 3 * m - 1, rng.gen_range(0..20), &mut rng);
                g
            }
        };
        let d = g.max_degree();
        if d < 7 {
            continue;
        }
        let r = RVector::mod3(d).expect("Δ >= 7");
        let mut pivots: Vec<usize> = (0..g.n()).collect();
        pivots.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        if fam == 3 {
            pivots.retain(|&v| v == 0);
        }
        pivots.truncate(3);
        let Some(witness) = pivots
            .iter()
            .find_map(|&v| Witness::from_oracle(&g, v, d - 1).ok().flatten())
        else {
            continue;
        };
        return EngineCase {
            name: format!("random#{index}/fam{fam}"),
            critical: certify_critical(&g),
            graph: g,
            r,
            witness,
        };
    }
}

/// The fixtures followed by random instances, `count` graphs in all.
pub fn dichotomy_corpus(seed: u64, count: usize, mode: Parallelism) -> Vec<EngineCase> {
    let mut cases: Vec<EngineCase> = Vec::new();
    for (name, g, r) in fixture_cases() {
        let pivot: Vec<usize> = (0..g.n()).collect();
        let (h, ws) = engine_inputs(&g, &r, &pivot).expect("fixtures have witnesses");
        let critical = certify_critical(&h);
        cases.push(EngineCase {
            name,
            graph: h,
            r,
            witness: ws.into_iter().next().expect("nonempty"),
            critical,
        });
    }
    cases.truncate(count);
    let extra: Vec<usize> = (cases.len()..count).collect();
    cases.extend(par::map(&extra, mode, |&i| random_case(seed, i)));
    cases
}

/// Checks one engine run. The bound is `Δ - max r` on the graph the engine ran on.
pub fn judge_run(case: &EngineCase, run: &EngineRun) -> Case {
    let g = &case.graph;
    let d = g.max_degree();
    match &run.outcome {
        Outcome::Coloring(c) => check(
            verify_coloring(g, c, true).unwrap_or(false) && c.colors_used() < d.max(1),
            "coloring",
            || format!("coloring fails verification or uses {} colors at Δ = {d}", c.colors_used()),
        ),
        Outcome::Clique(c) => {
            let bound = if c.high_only { d.saturating_sub(5) } else { d.saturating_sub(case.r.max_part()) };
            check(verify_clique(g, c).unwrap_or(false) && c.size() >= bound, "clique", || {
                format!("clique {:?} fails verification or is below {bound}", c.vertices)
            })
        }
        Outcome::AssumptionViolation(v) => {
            if case.critical {
                return Err(format!("{:?} on a vertex-critical input: {}", v.claim, v.detail));
            }
            let again = replay(&v.snapshot).map_err(|e| format!("snapshot does not replay: {e}"))?;
            match again.outcome {
                Outcome::AssumptionViolation(w) if w.claim == v.claim => Ok(format!("violation:{:?}", v.claim)),
                other => Err(format!("snapshot of {:?} replays to {}", v.claim, other.kind())),
            }
        }
    }
}

fn judge_activation(run: &EngineRun) -> Case {
    let fourth = matches!(&run.outcome, Outcome::AssumptionViolation(v) if v.claim == ClaimId::Activation);
    let converted = matches!(run.outcome, Outcome::Coloring(_));
    check(!fourth && (run.stats.max_activation <= 3 || converted), "ok", || {
        format!("a club was active {} times", run.stats.max_activation)
    })
}

/// Engine runs in both modes over the corpus: outcomes, then the activation bound.
pub fn dichotomy(seed: u64, count: usize, mode: Parallelism) -> (SuiteReport, SuiteReport) {
    let start = Instant::now();
    let corpus = dichotomy_corpus(seed, count, mode);
    let jobs: Vec<(usize, Mode)> = (0..corpus.len())
        .flat_map(|i| [(i, Mode::Theorem1), (i, Mode::Theorem2)])
        .collect();
    let runs = par::map(&jobs, mode, |&(i, m)| {
        let c = &corpus[i];
        let label = format!("{} {m:?}", c.name);
        match run_engine(&c.graph, &c.r, &c.witness, m) {
            Ok(run) => (
                judge_run(c, &run).map_err(|e| format!("{label}: {e}")),
                judge_activation(&run).map_err(|e| format!("{label}: {e}")),
            ),
            Err(e) => (Err(format!("{label}: {e}")), Err(format!("{label}: {e}"))),
        }
    });
    let (outcomes, activations): (Vec<Case>, Vec<Case>) = runs.into_iter().unzip();
    let mut d = report("dichotomy", start, outcomes);
    let critical = corpus.iter().filter(|c| c.critical).count();
    d.tally.insert("graphs".into(), corpus.len());
    d.tally.insert("critical_graphs".into(), critical);
    (d, report("activation", start, activations))
}

/// Random instance with parts of size at most 8 and at most 5 parts. With `lopsided`, each
/// vertex of `K_i` gets at most `min(s, |K_i| - s)` neighbors.
pub fn random_transversal_instance(rng: &mut ChaCha8Rng, lopsided: bool) -> TransversalInstance {
    let k = rng.gen_range(1..=5);
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=8)).collect();
    let min = *sizes.iter().min().expect("k >= 1");
    let s = rng.gen_range(1..=min);
    let mut parts = Vec::new();
    let mut owner = Vec::new();
    for (i, &sz) in sizes.iter().enumerate() {
        parts.push((owner.len()..owner.len() + sz).collect::<Vec<_>>());
        owner.extend(std::iter::repeat_n(i, sz));
    }
    let n = owner.len();
    let cap = |v: usize| if lopsided { s.min(sizes[owner[v]] - s) } else { usize::MAX };
    let mut g = Graph::new(n);
    let attempts = if lopsided { 3 * n } else { rng.gen_range(0..=3 * n) };
    for _ in 0..attempts {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if owner[u] != owner[v] && !g.has_edge(u, v) && g.degree(u) < cap(u) && g.degree(v) < cap(v) {
            g.add_edge(u, v);
        }
    }
    TransversalInstance::new(g, parts, s).expect("parts are disjoint and independent")
}

fn is_transversal(t: &TransversalInstance, pick: &[usize]) -> bool {
    pick.len() == t.parts.len() && pick.iter().zip(&t.parts).all(|(v, p)| p.contains(v)) && t.aux_graph.is_independent(pick)
}

/// Each case is a lopsided instance, which must be solved, and an unconstrained one,
/// whose answer must match exhaustive enumeration.
pub fn transversal(seed: u64, count: usize, mode: Parallelism) -> SuiteReport {
    let start = Instant::now();
    let idx: Vec<usize> = (0..count).collect();
    let cases = par::map(&idx, mode, |&i| {
        let mut rng = rng_for(seed, i);
        let t = random_transversal_instance(&mut rng, true);
        if !t.lopsided() {
            return Err("generator broke the degree hypothesis".into());
        }
        match find_independent_transversal(&t).map_err(|e| e.to_string())? {
            Some(p) if is_transversal(&t, &p) => {}
            Some(p) => return Err(format!("{p:?} is not an independent transversal")),
            None => return Err("no transversal on a lopsided instance".into()),
        }
        if !transversal_exists_exhaustive(&t) {
            return Err("exhaustive search finds no transversal".into());
        }
        let free = random_transversal_instance(&mut rng, false);
        let found = match find_independent_transversal(&free) {
            Ok(Some(p)) if is_transversal(&free, &p) => true,
            Ok(Some(p)) => return Err(format!("{p:?} is not an independent transversal")),
            Ok(None) => false,
            Err(e) => return Err(e.to_string()),
        };
        let exists = transversal_exists_exhaustive(&free);
        check(found == exists, if exists { "free:exists" } else { "free:none" }, || {
            format!("finder says {found}, enumeration says {exists}")
        })
    });
    report("transversal", start, cases)
}

/// Grouped-clique fixtures with `Δ` from 14 to 18, then the triple-intersection error.
pub fn hitting(seed: u64, count: usize, mode: Parallelism) -> SuiteReport {
    let start = Instant::now();
    let idx: Vec<usize> = (0..count).collect();
    let mut cases = par::map(&idx, mode, |&i| {
        let mut rng = rng_for(seed, i);
        let delta = rng.gen_range(14..=18);
        // groups have at most Δ - 3 vertices; keep the graph within the clique oracle's range
        let fit = (crate::config::Limits::current().clique / (delta - 3)).max(1);
        let total = rng.gen_range(1..=fit);
        let paired = if i % 2 == 0 && total > 1 { rng.gen_range(1..total) } else { rng.gen_range(0..=total) };
        let plain = total - paired;
        let g = clique_groups(delta, plain, paired, rng.gen_range(0..=400), &mut rng);
        let cliques = maximum_cliques(&g).map_err(|e| e.to_string())?;
        let groups = di_partition(&g, &cliques).map_err(|e| e.to_string())?;
        let shapes = (
            groups.groups.iter().any(|grp| grp.x.is_none()),
            groups.groups.iter().any(|grp| grp.x.is_some()),
        );
        let h = hitting_set(&g).map_err(|e| e.to_string())?.ok_or("no hitting set")?;
        let meets = cliques.iter().all(|c| c.iter().any(|v| h.contains(v)));
        let tag = match shapes {
            (true, true) => "both_shapes",
            (true, false) => "single_cliques",
            _ => "paired_cliques",
        };
        check(g.is_independent(&h) && meets, tag, || {
            format!("{h:?} is not an independent set meeting all {} maximum cliques", cliques.len())
        })
    });
    let triple = join(&complete(4), &empty(3));
    cases.push(match hitting_set(&triple) {
        Err(ReductionError::Structure { .. }) => Ok("structure_error".into()),
        other => Err(format!("triple intersection gave {other:?}")),
    });
    report("hitting", start, cases)
}

/// `lex:5:5`, `K_17`, then `count` random colorable graphs with `Δ >= 13`.
pub fn pipeline(seed: u64, count: usize, mode: Parallelism) -> SuiteReport {
    let start = Instant::now();
    let idx: Vec<usize> = (0..count + 2).collect();
    let cases = par::map(&idx, mode, |&i| {
        let (g, expect) = match i {
            0 => (lex_product_cycle_clique(5, 5).expect("valid sizes"), Some(13)),
            1 => (complete(17), None),
            _ => {
                let mut rng = rng_for(seed, i);
                loop {
                    let n = rng.gen_range(30..=70);
                    let g = random_colorable(n, rng.gen_range(4..=12), rng.gen_range(13..=20), rng.gen_range(0.4..0.9), &mut rng);
                    if g.max_degree() >= 13 {
                        break (g, None);
                    }
                }
            }
        };
        let d = g.max_degree();
        let res = color_or_clique(&g).map_err(|e| e.to_string())?;
        match (&res.outcome, i) {
            (Outcome::Coloring(c), 0) => check(
                verify_coloring(&g, c, true).unwrap_or(false) && Some(c.colors_used()) == expect,
                "lex:5:5",
                || format!("lex:5:5 colored with {} colors", c.colors_used()),
            ),
            (Outcome::Clique(c), 1) => check(verify_clique(&g, c).unwrap_or(false) && c.size() == 17, "k17", || {
                format!("K17 gave a clique of size {}", c.size())
            }),
            (Outcome::Coloring(c), i) if i >= 2 => check(
                verify_coloring(&g, c, true).unwrap_or(false) && c.colors_used() < d,
                &format!("{:?}", res.route),
                || format!("coloring with {} colors at Δ = {d}", c.colors_used()),
            ),
            (other, _) => Err(format!("case {i} (Δ = {d}) returned {}", other.kind())),
        }
    });
    report("pipeline", start, cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_on_small_runs() {
        let a = smallpot(3, 20, Parallelism::Sequential);
        let b = smallpot(3, 20, Parallelism::Parallel);
        assert!(a.same_results(&b));
        assert!(a.ok(), "{:?}", a.failures);
        let t = transversal(3, 20, Parallelism::Parallel);
        assert!(t.ok(), "{:?}", t.failures);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run("nope", 0, None, Parallelism::Sequential).is_err());
    }

    #[test]
    fn lopsided_generator_meets_the_hypothesis() {
        let mut rng = rng_for(11, 0);
        for _ in 0..200 {
            let t = random_transversal_instance(&mut rng, true);
            assert!(t.lopsided());
            assert!(t.parts.len() <= 5 && t.parts.iter().all(|p| p.len() <= 8));
        }
    }
}
