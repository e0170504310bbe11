//! Clubgroups: maximal families of clique clubs that are pairwise complete.

use serde::{Deserialize, Serialize};

use crate::graph::{verify_clique, CliqueCertificate};

use super::process::{record, ClaimResult, EngineStats};
use super::state::{ClaimContext, ClubId, PartitionState};
use super::{ClaimId, EngineError, Outcome};

/// Caps the clique subsets tried per missing edge.
const JOIN_TRIES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clubgroup {
    pub clubs: Vec<ClubId>,
    pub spanned: Vec<usize>,
    /// Spans every clubhouse but one.
    pub big: bool,
}

pub fn clubgroups(s: &PartitionState) -> Vec<Clubgroup> {
    let cliques: Vec<ClubId> = s.live_clubs().filter(|c| s.is_clique_club(c.id)).map(|c| c.id).collect();
    let m = cliques.len();
    let adj: Vec<Vec<bool>> = (0..m)
        .map(|a| (0..m).map(|b| a != b && s.clubs_complete(cliques[a], cliques[b])).collect())
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..m).collect(), Vec::new(), &mut out);
    let k = s.r().k();
    let mut groups: Vec<Clubgroup> = out
        .into_iter()
        .map(|ids| {
            let clubs: Vec<ClubId> = ids.iter().map(|&i| cliques[i]).collect();
            let mut spanned: Vec<usize> = clubs.iter().map(|&c| s.club(c).part).collect();
            spanned.sort_unstable();
            spanned.dedup();
            Clubgroup {
                big: spanned.len() + 1 == k,
                clubs,
                spanned,
            }
        })
        .collect();
    groups.sort_by(|a, b| a.clubs.cmp(&b.clubs));
    groups
}

fn bron_kerbosch(adj: &[Vec<bool>], r: Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count());
    let mut p = p;
    let mut x = x;
    let cand: Vec<usize> = p.iter().copied().filter(|&v| pivot.is_none_or(|u| !adj[u][v])).collect();
    for v in cand {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// The terminal clique `a` misses the clubhouse of some clique club `B`. Tries to show
/// `a ∪ B` is a `K_Δ`: every missing edge is settled by a mixed-join recoloring, first
/// with four common neighbors in the clique, then with three.
pub(crate) fn claim4_new(
    s: &PartitionState,
    a: &[usize],
    group: &[ClubId],
    stats: &mut EngineStats,
) -> Result<Outcome, EngineError> {
    let g = s.graph();
    let delta = g.max_degree();
    let spanned: Vec<usize> = group.iter().map(|&c| s.club(c).part).collect();
    let mut candidates: Vec<(usize, ClubId)> = s
        .live_clubs()
        .filter(|c| !spanned.contains(&c.part) && s.is_clique_club(c.id) && c.members.len() + a.len() == delta)
        .map(|c| {
            let edges = c.members.iter().map(|&b| a.iter().filter(|&&x| g.has_edge(x, b)).count()).sum::<usize>();
            (edges, c.id)
        })
        .collect();
    candidates.sort_by_key(|&(e, id)| (std::cmp::Reverse(e), id));

    for (_, b) in candidates {
        let mut h: Vec<usize> = a.to_vec();
        h.extend_from_slice(&s.club(b).members);
        h.sort_unstable();
        let mut unresolved = false;
        for (i, &x) in h.iter().enumerate() {
            for &y in &h[i + 1..] {
                if g.has_edge(x, y) {
                    continue;
                }
                match settle_join(s, &h, x, y)? {
                    Some((claim, c)) => {
                        record(stats, claim);
                        return Ok(Outcome::Coloring(c));
                    }
                    None => unresolved = true,
                }
            }
        }
        if !unresolved {
            let cert = CliqueCertificate::new(h, false);
            if verify_clique(g, &cert).unwrap_or(false) {
                return Ok(Outcome::Clique(cert));
            }
        }
    }
    Ok(Outcome::AssumptionViolation(s.violation(
        ClaimId::C4New,
        format!("clique {a:?} of size {} could not be completed to K_{delta}", a.len()),
    )))
}

fn settle_join(
    s: &PartitionState,
    h: &[usize],
    x: usize,
    y: usize,
) -> Result<Option<(ClaimId, crate::graph::Coloring)>, EngineError> {
    let g = s.graph();
    let common: Vec<usize> = h
        .iter()
        .copied()
        .filter(|&v| v != x && v != y && g.has_edge(v, x) && g.has_edge(v, y))
        .collect();
    for (claim, q) in [(ClaimId::Join4, 4), (ClaimId::Join3, 3)] {
        let mut tried = 0;
        let mut found = None;
        for_each_clique(g, &common, q, &mut |clique| {
            tried += 1;
            let ctx = ClaimContext {
                pair: (x, y),
                clubs: Vec::new(),
                clique: clique.to_vec(),
            };
            match s.recolor_claim(claim, &ctx) {
                Ok(ClaimResult::Colored(c)) => found = Some(Ok((claim, c))),
                Err(e) => found = Some(Err(e)),
                _ => {}
            }
            found.is_some() || tried >= JOIN_TRIES
        });
        if let Some(r) = found {
            return r.map(Some);
        }
    }
    Ok(None)
}

fn for_each_clique(g: &crate::graph::Graph, pool: &[usize], q: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(
        g: &crate::graph::Graph,
        pool: &[usize],
        start: usize,
        q: usize,
        acc: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if acc.len() == q {
            return visit(acc);
        }
        for i in start..pool.len() {
            if acc.iter().all(|&u| g.has_edge(u, pool[i])) {
                acc.push(pool[i]);
                if rec(g, pool, i + 1, q, acc, visit) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    rec(g, pool, 0, q, &mut Vec::new(), visit);
}
