use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::engine::{run_engine, Mode, Outcome, RVector, Witness};
use crate::graph::{verify_clique, verify_coloring, CliqueCertificate, Coloring, Graph};
use crate::oracle::{critical_subgraph, dsatur_greedy, find_coloring, find_coloring_budget, greedy_clique, max_clique_exact, Search};

use super::cliques::{maximal_independent_extension, maximum_cliques};
use super::hitting::hitting_set;
use super::ReductionError;

/// Node budget for the exact coloring attempt among the fast paths.
const FAST_BUDGET: u64 = 200_000;

/// Above this maximum degree the working graph is peeled by one independent set at a time.
const PEEL_ABOVE: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub fast_paths: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { fast_paths: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Greedy,
    BudgetedSearch,
    CliqueSearch,
    ExactColoring,
    Brooks,
    Peeling,
    Engine,
    SmallDegree,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineResult {
    pub outcome: Outcome,
    /// Declared clique bound for this input's maximum degree.
    pub bound: usize,
    pub route: Route,
    /// Independent sets removed before the final step.
    pub peeled: usize,
}

/// `Δ - 3` from `Δ = 13` on, `Δ - 4` below.
pub fn clique_bound(delta: usize) -> usize {
    if delta >= 13 {
        delta - 3
    } else {
        delta.saturating_sub(4)
    }
}

pub fn color_or_clique(g: &Graph) -> Result<PipelineResult, ReductionError> {
    color_or_clique_with(g, PipelineOptions::default())
}

pub fn color_or_clique_with(g: &Graph, opts: PipelineOptions) -> Result<PipelineResult, ReductionError> {
    let delta = g.max_degree();
    let bound = clique_bound(delta);
    let done = |outcome: Outcome, route: Route, peeled: usize| -> Result<PipelineResult, ReductionError> {
        check(g, &outcome, bound)?;
        Ok(PipelineResult {
            outcome,
            bound,
            route,
            peeled,
        })
    };
    if g.n() == 0 {
        return done(Outcome::Coloring(Coloring::from_complete(Vec::new(), 0)), Route::Greedy, 0);
    }
    if delta == 0 {
        return done(Outcome::Clique(CliqueCertificate::new(vec![0], false)), Route::CliqueSearch, 0);
    }

    let mut best_clique = greedy_clique(g);
    let mut greedy_colors = 0;
    if opts.fast_paths {
        let colors = dsatur_greedy(g);
        greedy_colors = colors.iter().max().map_or(0, |&c| c + 1);
        if greedy_colors < delta {
            return done(Outcome::Coloring(Coloring::from_complete(colors, delta - 1)), Route::Greedy, 0);
        }
        if let Search::Found(colors) = find_coloring_budget(g, delta - 1, FAST_BUDGET) {
            return done(Outcome::Coloring(Coloring::from_complete(colors, delta - 1)), Route::BudgetedSearch, 0);
        }
        if best_clique.len() + 3 < delta && g.n() <= Limits::current().clique {
            best_clique = max_clique_exact(g)?.vertices;
        }
        if best_clique.len() + 3 >= delta {
            return done(Outcome::Clique(CliqueCertificate::new(best_clique, false)), Route::CliqueSearch, 0);
        }
    }

    let limit = Limits::current().chromatic;
    if g.n() > limit {
        return Err(ReductionError::Refused(format!(
            "{} vertices exceed the exact bound {limit}; DSATUR used {greedy_colors} colors (Δ - 1 = {}), best clique found has {} vertices (bound {bound})",
            g.n(),
            delta - 1,
            best_clique.len()
        )));
    }
    if let Some(colors) = find_coloring(g, delta - 1) {
        return done(Outcome::Coloring(Coloring::from_complete(colors, delta - 1)), Route::ExactColoring, 0);
    }

    // Not (Δ-1)-colorable: work inside a Δ-critical subgraph, peeling independent sets that
    // lower the maximum degree and the chromatic number together.
    let mut w = critical_subgraph(g, delta)?;
    let mut levels: Vec<Vec<usize>> = Vec::new();
    loop {
        let c = delta - levels.len();
        let d = w.graph.max_degree();
        let lift = |clique: Vec<usize>| lift_clique(g, w.map_to_parent(&clique), &levels, bound);
        if d < c {
            let q = max_clique_exact(&w.graph)?.vertices;
            if q.len() <= d {
                return Err(ReductionError::Invariant(format!(
                    "χ ≥ {c} > Δ = {d} but the largest clique has {} vertices",
                    q.len()
                )));
            }
            return done(Outcome::Clique(lift(q)?), Route::Brooks, levels.len());
        }
        if d > PEEL_ABOVE {
            let cliques = maximum_cliques(&w.graph)?;
            let omega = cliques.first().map_or(0, Vec::len);
            if omega + 3 >= d {
                return done(Outcome::Clique(lift(cliques[0].clone())?), Route::Peeling, levels.len());
            }
            let i = peel_set(&w.graph)?;
            levels.push(w.map_to_parent(&i));
            let rest = w.graph.without(&i);
            w = w.compose(&rest);
            continue;
        }
        if d < 7 {
            let q = max_clique_exact(&w.graph)?.vertices;
            return done(Outcome::Clique(lift(q)?), Route::SmallDegree, levels.len());
        }

        let inner = critical_subgraph(&w.graph, c).map_err(|e| {
            ReductionError::Invariant(format!("working graph lost chromatic number {c}: {e}"))
        })?;
        let h = w.compose(&inner);
        if h.graph.max_degree() < c {
            let q = max_clique_exact(&h.graph)?.vertices;
            let q = lift_clique(g, h.map_to_parent(&q), &levels, bound)?;
            return done(Outcome::Clique(q), Route::Brooks, levels.len());
        }
        let hd = h.graph.max_degree();
        let v = (0..h.graph.n()).find(|&v| h.graph.degree(v) == hd).expect("nonempty");
        let witness = Witness::from_oracle(&h.graph, v, c - 1)?
            .ok_or_else(|| ReductionError::Invariant(format!("critical graph minus {v} is not {}-colorable", c - 1)))?;
        let run = run_engine(&h.graph, &RVector::mod3(hd)?, &witness, Mode::Theorem1)?;
        return match run.outcome {
            Outcome::Coloring(_) => Err(ReductionError::Invariant(format!(
                "engine colored a graph with fewer than its {c} colors"
            ))),
            Outcome::Clique(q) => {
                let q = lift_clique(g, h.map_to_parent(&q.vertices), &levels, bound)?;
                done(Outcome::Clique(q), Route::Engine, levels.len())
            }
            violation @ Outcome::AssumptionViolation(_) => Ok(PipelineResult {
                outcome: violation,
                bound,
                route: Route::Engine,
                peeled: levels.len(),
            }),
        };
    }
}

/// The independent set removed in one peeling round: a hitting set of the maximum
/// cliques when `ω = Δ - 4`, any independent set otherwise, extended to a maximal one.
pub fn peel_set(g: &Graph) -> Result<Vec<usize>, ReductionError> {
    let omega = maximum_cliques(g)?.first().map_or(0, Vec::len);
    let seed = if omega + 4 == g.max_degree() {
        hitting_set(g)?.unwrap_or_default()
    } else {
        Vec::new()
    };
    Ok(maximal_independent_extension(g, &seed))
}

/// Adds back one vertex per peeled set where possible, newest set first, and falls back
/// to an exact maximum clique of `g` if the result is still below `bound`.
fn lift_clique(g: &Graph, mut clique: Vec<usize>, levels: &[Vec<usize>], bound: usize) -> Result<CliqueCertificate, ReductionError> {
    for set in levels.iter().rev() {
        if let Some(&v) = set.iter().find(|&&v| clique.iter().all(|&u| g.has_edge(u, v))) {
            clique.push(v);
        }
    }
    if clique.len() < bound {
        let exact = max_clique_exact(g)?.vertices;
        if exact.len() > clique.len() {
            clique = exact;
        }
    }
    if clique.len() < bound {
        return Err(ReductionError::BoundNotMet {
            size: clique.len(),
            bound,
        });
    }
    Ok(CliqueCertificate::new(clique, false))
}

fn check(g: &Graph, outcome: &Outcome, bound: usize) -> Result<(), ReductionError> {
    let ok = match outcome {
        Outcome::Coloring(c) => {
            verify_coloring(g, c, true).unwrap_or(false) && (g.n() == 0 || c.colors_used() < g.max_degree())
        }
        Outcome::Clique(q) => verify_clique(g, q).unwrap_or(false) && q.size() >= bound,
        Outcome::AssumptionViolation(_) => true,
    };
    if ok {
        Ok(())
    } else {
        Err(ReductionError::Invariant(format!("pipeline produced an unverified {}", outcome.kind())))
    }
}
