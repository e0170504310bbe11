use crate::bitset::VertexSet;
use crate::config::Limits;
use crate::graph::Graph;
use crate::oracle::{max_clique_unbounded, OracleError};

/// Every maximum clique, each sorted, in lexicographic order.
pub fn maximum_cliques(g: &Graph) -> Result<Vec<Vec<usize>>, OracleError> {
    let limit = Limits::current().clique;
    if g.n() > limit {
        return Err(OracleError::TooLarge {
            what: "maximum-clique",
            n: g.n(),
            limit,
        });
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let omega = max_clique_unbounded(g).len();
    let mut out = Vec::new();
    let mut r = Vec::new();
    enumerate(g, omega, &mut r, g.all_vertices(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

/// Cliques of size `omega` extending `r` inside `p`; `p` holds only vertices after the
/// last one added, so each clique is produced once.
fn enumerate(g: &Graph, omega: usize, r: &mut Vec<usize>, mut p: VertexSet, out: &mut Vec<Vec<usize>>) {
    if r.len() == omega {
        out.push(r.clone());
        return;
    }
    while let Some(v) = p.first() {
        if r.len() + p.len() < omega {
            return;
        }
        p.remove(v);
        r.push(v);
        enumerate(g, omega, r, p.intersection(g.neighbors(v)), out);
        r.pop();
    }
}

/// Extends the independent set `seed` by ascending index over non-neighbors.
pub fn maximal_independent_extension(g: &Graph, seed: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = seed.to_vec();
    let mut blocked = VertexSet::new(g.n());
    for &v in seed {
        blocked.insert(v);
        blocked.union_with(g.neighbors(v));
    }
    for v in 0..g.n() {
        if !blocked.contains(v) {
            set.push(v);
            blocked.insert(v);
            blocked.union_with(g.neighbors(v));
        }
    }
    set.sort_unstable();
    set
}
