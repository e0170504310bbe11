//! Exact brute-force oracles: chromatic number, maximum clique, criticality.
//!
//! All searches use a fixed vertex order (descending degree, ties by index) so repeated
//! runs return identical witnesses.

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::config::Limits;
use crate::graph::{CliqueCertificate, Coloring, Graph, InducedSubgraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} oracle refuses graph on {n} vertices (desk-scale bound {limit})")]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("contract violation: {0}")]
    Contract(String),
}

fn check_size(what: &'static str, n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { what, n, limit })
    } else {
        Ok(())
    }
}

/// Result of a budgeted exact search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Impossible,
    BudgetExhausted,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Vertices sorted by descending degree, ties by ascending index.
pub fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// DSATUR greedy coloring; colors are `0..`.
pub fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut neighbor_colors: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        let c = (0..).find(|&c| !neighbor_colors[v].get(c).copied().unwrap_or(false)).unwrap();
        color[v] = c;
        for w in g.neighbors(v).iter() {
            let nc = &mut neighbor_colors[w];
            if nc.len() <= c {
                nc.resize(c + 1, false);
            }
            if !nc[c] {
                nc[c] = true;
                sat[w] += 1;
            }
        }
    }
    color
}

struct ColorSearch<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// `counts[v * k + c]`: colored neighbors of `v` holding color `c`.
    counts: Vec<u32>,
    sat: Vec<usize>,
    budget: u64,
    nodes: u64,
}

impl<'a> ColorSearch<'a> {
    fn new(g: &'a Graph, k: usize, lists: Option<&[Vec<bool>]>, budget: u64) -> Self {
        let n = g.n();
        let mut s = ColorSearch {
            g,
            k,
            color: vec![usize::MAX; n],
            counts: vec![0; n * k],
            sat: vec![0; n],
            budget,
            nodes: 0,
        };
        // Colors outside a vertex's list are modeled as permanently blocked.
        if let Some(lists) = lists {
            for v in 0..n {
                for c in 0..k {
                    if !lists[v].get(c).copied().unwrap_or(false) {
                        s.counts[v * k + c] += 1;
                        s.sat[v] += 1;
                    }
                }
            }
        }
        s
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        let k = self.k;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[w * k + c];
            if *slot == 0 {
                self.sat[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        let k = self.k;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[w * k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        let n = self.g.n();
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..n {
            if self.color[v] != usize::MAX {
                continue;
            }
            let key = (self.sat[v], self.g.degree(v));
            match best {
                Some((s, d, _)) if (s, d) >= key => {}
                _ => best = Some((key.0, key.1, v)),
            }
        }
        best.map(|b| b.2)
    }

    /// `symmetric`: all colors interchangeable, so only the next fresh color is tried.
    fn run(&mut self, used: usize, symmetric: bool) -> Search<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Search::BudgetExhausted;
        }
        let Some(v) = self.pick() else {
            return Search::Found(());
        };
        if self.sat[v] >= self.k {
            return Search::Impossible;
        }
        let limit = if symmetric { (used + 1).min(self.k) } else { self.k };
        for c in 0..limit {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            match self.run(used.max(c + 1), symmetric) {
                Search::Impossible => self.unassign(v, c),
                other => return other,
            }
        }
        Search::Impossible
    }
}

/// Exact `k`-coloring search with an optional node budget.
pub fn find_coloring_budget(g: &Graph, k: usize, budget: u64) -> Search<Vec<usize>> {
    if g.n() == 0 {
        return Search::Found(Vec::new());
    }
    if k == 0 {
        return Search::Impossible;
    }
    let mut s = ColorSearch::new(g, k, None, budget);
    match s.run(0, true) {
        Search::Found(()) => Search::Found(s.color),
        Search::Impossible => Search::Impossible,
        Search::BudgetExhausted => Search::BudgetExhausted,
    }
}

/// Exact `k`-coloring search; `None` iff `χ(g) > k`.
pub fn find_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    find_coloring_budget(g, k, u64::MAX).found()
}

/// Exact list-coloring search over colors `0..k`; `allowed[v][c]` marks permitted colors.
pub fn find_list_coloring_budget(g: &Graph, k: usize, allowed: &[Vec<bool>], budget: u64) -> Search<Vec<usize>> {
    if g.n() == 0 {
        return Search::Found(Vec::new());
    }
    let mut s = ColorSearch::new(g, k, Some(allowed), budget);
    match s.run(0, false) {
        Search::Found(()) => Search::Found(s.color),
        Search::Impossible => Search::Impossible,
        Search::BudgetExhausted => Search::BudgetExhausted,
    }
}

/// Branch-and-bound maximum clique with greedy-coloring bounds; no size check.
pub fn max_clique_unbounded(g: &Graph) -> Vec<usize> {
    let order = degree_order(g);
    let mut best = Vec::new();
    let mut current = Vec::new();
    let candidates = order;
    expand_clique(g, &mut current, candidates, &mut best);
    best.sort_unstable();
    best
}

fn expand_clique(g: &Graph, current: &mut Vec<usize>, candidates: Vec<usize>, best: &mut Vec<usize>) {
    // Greedy color the candidates; bounds[i] is the color count used by candidates[..=i].
    let (ordered, bounds) = color_sort(g, &candidates);
    for i in (0..ordered.len()).rev() {
        if current.len() + bounds[i] <= best.len() {
            return;
        }
        let v = ordered[i];
        current.push(v);
        let next: Vec<usize> = ordered[..i].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand_clique(g, current, next, best);
        }
        current.pop();
    }
}

fn color_sort(g: &Graph, candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in candidates {
        match classes.iter_mut().find(|cls| cls.iter().all(|&w| !g.has_edge(v, w))) {
            Some(cls) => cls.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut ordered = Vec::with_capacity(candidates.len());
    let mut bounds = Vec::with_capacity(candidates.len());
    for (i, cls) in classes.into_iter().enumerate() {
        for v in cls {
            ordered.push(v);
            bounds.push(i + 1);
        }
    }
    (ordered, bounds)
}

/// Exact maximum clique, refused above the desk-scale bound.
pub fn max_clique_exact(g: &Graph) -> Result<CliqueCertificate, OracleError> {
    max_clique_exact_with(g, Limits::current())
}

pub fn max_clique_exact_with(g: &Graph, limits: &Limits) -> Result<CliqueCertificate, OracleError> {
    check_size("maximum-clique", g.n(), limits.clique)?;
    let clique = max_clique_unbounded(g);
    debug_assert!(g.is_clique(&clique));
    Ok(CliqueCertificate::new(clique, false))
}

/// Greedy clique: for each start vertex, repeatedly add the candidate of largest degree.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for start in degree_order(g) {
        if g.degree(start) < best.len() {
            break;
        }
        let mut clique = vec![start];
        let mut cand: VertexSet = g.neighbors(start).clone();
        while let Some(v) = cand.iter().max_by_key(|&v| (g.degree_in(v, &cand), std::cmp::Reverse(v))) {
            clique.push(v);
            cand.intersect_with(g.neighbors(v));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

pub fn independence_number_unbounded(g: &Graph) -> usize {
    max_clique_unbounded(&g.complement()).len()
}

/// Exact `χ(g)`: lower bound `max(ω, ⌈n/α⌉)`, upper bound from DSATUR, then exact
/// colorability tests upward from the lower bound.
pub fn chromatic_number_exact(g: &Graph) -> Result<usize, OracleError> {
    chromatic_number_exact_with(g, Limits::current())
}

pub fn chromatic_number_exact_with(g: &Graph, limits: &Limits) -> Result<usize, OracleError> {
    check_size("chromatic-number", g.n(), limits.chromatic)?;
    Ok(chromatic_number_unbounded(g))
}

fn chromatic_number_unbounded(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let greedy = dsatur_greedy(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let omega = max_clique_unbounded(g).len();
    let alpha = independence_number_unbounded(g).max(1);
    let lower = omega.max(n.div_ceil(alpha));
    for k in lower..upper {
        if find_coloring(g, k).is_some() {
            return k;
        }
    }
    upper
}

/// Exact coloring with `χ(g)` colors.
pub fn optimal_coloring(g: &Graph) -> Result<Coloring, OracleError> {
    let k = chromatic_number_exact(g)?;
    let colors = find_coloring(g, k).expect("chromatic number is attainable");
    Ok(Coloring::from_complete(colors, k))
}

/// True iff `χ(g) = k` and `χ(g - v) < k` for every vertex `v`.
pub fn is_vertex_critical(g: &Graph, k: usize) -> Result<bool, OracleError> {
    check_size("chromatic-number", g.n(), Limits::current().chromatic)?;
    if k == 0 {
        return Ok(g.n() == 0);
    }
    if find_coloring(g, k - 1).is_some() || find_coloring(g, k).is_none() {
        return Ok(false);
    }
    Ok((0..g.n()).all(|v| find_coloring(&g.without(&[v]).graph, k - 1).is_some()))
}

/// A `k`-vertex-critical induced subgraph of `g`, found by deleting (in index order) every
/// vertex whose removal keeps `χ ≥ k`.
pub fn critical_subgraph(g: &Graph, k: usize) -> Result<InducedSubgraph, OracleError> {
    check_size("chromatic-number", g.n(), Limits::current().chromatic)?;
    critical_subgraph_unbounded(g, k)
}

pub(crate) fn critical_subgraph_unbounded(g: &Graph, k: usize) -> Result<InducedSubgraph, OracleError> {
    if k == 0 {
        return Err(OracleError::Contract("criticality needs k >= 1".into()));
    }
    if find_coloring(g, k - 1).is_some() {
        return Err(OracleError::Contract(format!(
            "graph is {}-colorable, so it has no {k}-critical subgraph",
            k - 1
        )));
    }
    let mut keep = g.all_vertices();
    for v in 0..g.n() {
        keep.remove(v);
        let sub = g.induced_set(&keep);
        if find_coloring(&sub.graph, k - 1).is_some() {
            keep.insert(v);
        }
    }
    Ok(g.induced_set(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::graph::verify_coloring;

    #[test]
    fn chromatic_small_families() {
        assert_eq!(chromatic_number_exact(&complete(5)).unwrap(), 5);
        assert_eq!(chromatic_number_exact(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number_exact(&cycle(6)).unwrap(), 2);
        assert_eq!(chromatic_number_exact(&empty(4)).unwrap(), 1);
        assert_eq!(chromatic_number_exact(&Graph::new(0)).unwrap(), 0);
        assert_eq!(chromatic_number_exact(&moser_spindle()).unwrap(), 4);
    }

    #[test]
    fn refusal_above_bound() {
        let limits = Limits {
            chromatic: 4,
            clique: 4,
            ..Limits::default()
        };
        assert!(matches!(
            chromatic_number_exact_with(&complete(5), &limits),
            Err(OracleError::TooLarge { n: 5, limit: 4, .. })
        ));
        assert!(max_clique_exact_with(&complete(5), &limits).is_err());
    }

    #[test]
    fn clique_small_families() {
        assert_eq!(max_clique_exact(&empty(7)).unwrap().size(), 1);
        assert_eq!(max_clique_exact(&cycle(5)).unwrap().size(), 2);
        assert_eq!(max_clique_exact(&o5()).unwrap().size(), 4);
        assert_eq!(max_clique_exact(&Graph::new(0)).unwrap().size(), 0);
    }

    #[test]
    fn list_coloring_respects_lists() {
        let g = complete(2);
        let allowed = vec![vec![true, false], vec![true, false]];
        assert_eq!(find_list_coloring_budget(&g, 2, &allowed, u64::MAX), Search::Impossible);
        let allowed = vec![vec![true, false], vec![true, true]];
        assert_eq!(find_list_coloring_budget(&g, 2, &allowed, u64::MAX), Search::Found(vec![0, 1]));
    }

    #[test]
    fn budget_is_reported() {
        let g = lex_product_cycle_clique(5, 4).unwrap();
        assert_eq!(find_coloring_budget(&g, 9, 5), Search::BudgetExhausted);
    }

    #[test]
    fn criticality_examples() {
        assert!(is_vertex_critical(&cycle(5), 3).unwrap());
        assert!(!is_vertex_critical(&cycle(6), 3).unwrap());
        assert!(is_vertex_critical(&complete(5), 5).unwrap());
        assert!(is_vertex_critical(&moser_spindle(), 4).unwrap());
    }

    #[test]
    fn critical_subgraph_drops_pendant() {
        let mut g = Graph::new(6);
        for (u, v) in cycle(5).edges() {
            g.add_edge(u, v);
        }
        g.add_edge(0, 5);
        let sub = critical_subgraph(&g, 3).unwrap();
        assert_eq!(sub.parent, vec![0, 1, 2, 3, 4]);
        assert_eq!(sub.graph, cycle(5));

        let k5 = critical_subgraph(&complete(5), 5).unwrap();
        assert_eq!(k5.graph, complete(5));
        assert!(critical_subgraph(&cycle(6), 3).is_err());
    }

    #[test]
    fn greedy_and_exact_colorings_are_proper() {
        for g in [bk8(), o5(), moser_spindle(), lex_product_cycle_clique(7, 2).unwrap()] {
            let c = dsatur_greedy(&g);
            let k = c.iter().max().unwrap() + 1;
            assert!(verify_coloring(&g, &Coloring::from_complete(c, k), true).unwrap());
            let opt = optimal_coloring(&g).unwrap();
            assert!(verify_coloring(&g, &opt, true).unwrap());
        }
    }

    #[test]
    fn greedy_clique_is_a_clique() {
        for g in [bk8(), o5(), complete(6)] {
            assert!(g.is_clique(&greedy_clique(&g)));
        }
        assert_eq!(greedy_clique(&complete(6)).len(), 6);
    }
}
