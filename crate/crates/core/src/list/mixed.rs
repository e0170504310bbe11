//! Colorings of `K_4 ∨ E_2` and `K_3 ∨ E_2` from lists that are one short of the degree
//! everywhere except at a few vertices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::constructions::{complete, empty, join};
use crate::graph::{verify_coloring, Coloring, Graph};

use super::{l_colorable, ListAssignment, ListError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MixedKind {
    K4E2,
    K3E2,
}

impl MixedKind {
    pub fn clique_size(self) -> usize {
        match self {
            MixedKind::K4E2 => 4,
            MixedKind::K3E2 => 3,
        }
    }
}

/// Clique on `0..t`, independent pair `t, t + 1`.
pub fn mixed_join_host(kind: MixedKind) -> Graph {
    join(&complete(kind.clique_size()), &empty(2))
}

pub fn color_mixed_join(kind: MixedKind, lists: &ListAssignment) -> Result<Coloring, ListError> {
    let g = mixed_join_host(kind);
    let t = kind.clique_size();
    if lists.len() != g.n() {
        return Err(ListError::LengthMismatch {
            got: lists.len(),
            n: g.n(),
        });
    }
    let size = |v: usize| lists.lists[v].len();
    if let Some(v) = (0..g.n()).find(|&v| size(v) + 1 < g.degree(v)) {
        return Err(ListError::Contract(format!(
            "list of vertex {v} has {} colors, degree is {}",
            size(v),
            g.degree(v)
        )));
    }
    let w = (0..t)
        .find(|&v| size(v) >= g.degree(v))
        .ok_or_else(|| ListError::Contract("no clique vertex has a list as large as its degree".into()))?;
    if kind == MixedKind::K3E2 && (t..t + 2).all(|v| size(v) < g.degree(v)) {
        return Err(ListError::Contract(
            "no independent vertex has a list as large as its degree".into(),
        ));
    }

    let coloring = match greedy_with_shared_color(&g, t, w, lists) {
        Some(c) => c,
        None => l_colorable(&g, lists)?
            .ok_or_else(|| ListError::Invariant(format!("{kind:?} lists admit no coloring")))?,
    };
    let proper = verify_coloring(&g, &coloring, true).map_err(|e| ListError::Invariant(e.to_string()))?;
    let respects = (0..g.n()).all(|v| coloring.color(v).is_some_and(|c| lists.lists[v].contains(&c)));
    if !proper || !respects {
        return Err(ListError::Invariant(format!("{kind:?} coloring failed verification")));
    }
    Ok(coloring)
}

/// Gives both independent vertices one common color, then colors the clique greedily,
/// finishing with `w`.
fn greedy_with_shared_color(g: &Graph, t: usize, w: usize, lists: &ListAssignment) -> Option<Coloring> {
    let (x, y) = (t, t + 1);
    let palette = lists.pot().last().map_or(0, |&c| c + 1);
    'shared: for &c in lists.lists[x].intersection(&lists.lists[y]) {
        let mut colors = vec![0usize; g.n()];
        colors[x] = c;
        colors[y] = c;
        let mut taken: BTreeSet<usize> = BTreeSet::from([c]);
        for v in (0..t).filter(|&v| v != w).chain([w]) {
            match lists.lists[v].iter().find(|col| !taken.contains(col)) {
                Some(&col) => {
                    colors[v] = col;
                    taken.insert(col);
                }
                None => continue 'shared,
            }
        }
        return Some(Coloring::from_complete(colors, palette));
    }
    None
}
