//! Isomorphism classes of graphs on at most 5 vertices, by brute-force canonical forms.

use crate::graph::Graph;

pub const MAX_CLASS_ORDER: usize = 5;

/// Sorted degree sequence.
pub fn degree_signature(g: &Graph) -> Vec<usize> {
    let mut d = g.degree_sequence();
    d.sort_unstable();
    d
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest edge bitmask over all relabelings; bit `k` is the `k`-th pair `(u, v)`, `u < v`.
pub fn canonical_mask(g: &Graph) -> Result<u32, String> {
    let n = g.n();
    if n > MAX_CLASS_ORDER {
        return Err(format!("canonical forms are limited to {MAX_CLASS_ORDER} vertices, got {n}"));
    }
    let pairs = pair_index(n);
    let mask = pairs
        .iter()
        .enumerate()
        .fold(0u32, |m, (k, &(u, v))| if g.has_edge(u, v) { m | 1 << k } else { m });
    Ok(canonical_of(n, mask, &pairs, &permutations(n)))
}

fn canonical_of(n: usize, mask: u32, pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> u32 {
    let mut slot = vec![vec![0usize; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        slot[u][v] = k;
        slot[v][u] = k;
    }
    perms
        .iter()
        .map(|p| {
            pairs.iter().enumerate().fold(0u32, |m, (k, &(u, v))| {
                if mask >> k & 1 == 1 {
                    m | 1 << slot[p[u]][p[v]]
                } else {
                    m
                }
            })
        })
        .min()
        .unwrap_or(0)
}

/// One representative per isomorphism class of graphs on exactly `n` vertices,
/// ordered by canonical mask.
pub fn isomorphism_classes(n: usize) -> Result<Vec<Graph>, String> {
    if n > MAX_CLASS_ORDER {
        return Err(format!("class enumeration is limited to {MAX_CLASS_ORDER} vertices, got {n}"));
    }
    let pairs = pair_index(n);
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        seen.insert(canonical_of(n, mask, &pairs, &perms));
    }
    Ok(seen
        .into_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges)
        })
        .collect())
}
