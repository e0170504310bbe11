//! List coloring: `L`-colorability, `f`-choosability, and the `K_t ∨ B` classification.

mod choosability;
mod mixed;
mod naive;
pub mod small_graphs;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Coloring, Graph};
use crate::oracle::{find_list_coloring_budget, Search};

pub use choosability::{classify_join, f_choosable, f_choosable_with_limit, is_d1_choosable};
pub use mixed::{color_mixed_join, mixed_join_host, MixedKind};
pub use naive::{f_choosable_naive, f_choosable_naive_with_limits};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ListError {
    #[error("{what} refuses graph on {n} vertices (bound {limit})")]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("list data covers {got} vertices but graph has {n}")]
    LengthMismatch { got: usize, n: usize },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
    #[error("malformed list assignment: {0}")]
    Format(String),
}

/// Per-vertex sets of permitted colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    pub lists: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ListAssignmentJson {
    lists: BTreeMap<String, Vec<usize>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<BTreeSet<usize>>) -> Self {
        ListAssignment { lists }
    }

    pub fn from_slices(lists: &[&[usize]]) -> Self {
        ListAssignment {
            lists: lists.iter().map(|l| l.iter().copied().collect()).collect(),
        }
    }

    pub fn uniform(n: usize, colors: &[usize]) -> Self {
        ListAssignment {
            lists: vec![colors.iter().copied().collect(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// `Pot(L)`: the union of all lists.
    pub fn pot(&self) -> BTreeSet<usize> {
        self.lists.iter().flatten().copied().collect()
    }

    pub fn to_json(&self) -> String {
        let json = ListAssignmentJson {
            lists: self
                .lists
                .iter()
                .enumerate()
                .map(|(v, l)| (v.to_string(), l.iter().copied().collect()))
                .collect(),
        };
        serde_json::to_string(&json).expect("list assignment serializes")
    }

    /// Parses `{"lists": {"0": [1, 2], ...}}`; keys must be exactly `0..n`.
    pub fn from_json(text: &str) -> Result<Self, ListError> {
        let json: ListAssignmentJson =
            serde_json::from_str(text).map_err(|e| ListError::Format(e.to_string()))?;
        let n = json.lists.len();
        let mut lists = vec![BTreeSet::new(); n];
        for (key, colors) in json.lists {
            let v: usize = key
                .parse()
                .map_err(|_| ListError::Format(format!("vertex key `{key}` is not an index")))?;
            if v >= n {
                return Err(ListError::Format(format!("vertex keys must be 0..{n}, found {v}")));
            }
            lists[v] = colors.into_iter().collect();
        }
        Ok(ListAssignment { lists })
    }
}

/// List size function `f: V(G) → {0, ..}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListSizeFunction {
    pub sizes: Vec<usize>,
}

impl ListSizeFunction {
    pub fn uniform(n: usize, k: usize) -> Self {
        ListSizeFunction { sizes: vec![k; n] }
    }

    /// `f(v) = max(d(v) - 1, 0)`.
    pub fn d1(g: &Graph) -> Self {
        ListSizeFunction {
            sizes: (0..g.n()).map(|v| g.degree(v).saturating_sub(1)).collect(),
        }
    }

    /// `f(v) = d(v)`.
    pub fn degree(g: &Graph) -> Self {
        ListSizeFunction {
            sizes: (0..g.n()).map(|v| g.degree(v)).collect(),
        }
    }
}

/// Finds an `L`-coloring of `g`, or `None` if none exists.
pub fn l_colorable(g: &Graph, lists: &ListAssignment) -> Result<Option<Coloring>, ListError> {
    if lists.len() != g.n() {
        return Err(ListError::LengthMismatch {
            got: lists.len(),
            n: g.n(),
        });
    }
    let pot: Vec<usize> = lists.pot().into_iter().collect();
    let index: BTreeMap<usize, usize> = pot.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let allowed: Vec<Vec<bool>> = lists
        .lists
        .iter()
        .map(|l| {
            let mut row = vec![false; pot.len()];
            for c in l {
                row[index[c]] = true;
            }
            row
        })
        .collect();
    let palette = pot.last().map_or(0, |&c| c + 1);
    Ok(match find_list_coloring_budget(g, pot.len(), &allowed, u64::MAX) {
        Search::Found(colors) => Some(Coloring::from_complete(
            colors.into_iter().map(|i| pot[i]).collect(),
            palette,
        )),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, empty, join};
    use crate::graph::verify_coloring;

    #[test]
    fn forced_conflict_on_k2() {
        let k2 = complete(2);
        assert_eq!(l_colorable(&k2, &ListAssignment::from_slices(&[&[7], &[7]])).unwrap(), None);
        let c = l_colorable(&k2, &ListAssignment::from_slices(&[&[7], &[9]])).unwrap().unwrap();
        assert_eq!(c.colors, vec![Some(7), Some(9)]);
        assert!(verify_coloring(&k2, &c, true).unwrap());
    }

    #[test]
    fn empty_list_blocks_coloring() {
        let g = empty(2);
        assert_eq!(l_colorable(&g, &ListAssignment::from_slices(&[&[1], &[]])).unwrap(), None);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(l_colorable(&complete(3), &ListAssignment::uniform(2, &[1])).is_err());
    }

    #[test]
    fn k4_e2_with_one_saving_clique_vertex() {
        // Clique vertices 0..4 have degree 5, the E2 side degree 4.
        let g = join(&complete(4), &empty(2));
        let lists = ListAssignment::from_slices(&[
            &[1, 2, 3, 4, 5],
            &[1, 2, 3, 4],
            &[1, 2, 3, 4],
            &[1, 2, 3, 4],
            &[1, 2, 3],
            &[1, 2, 3],
        ]);
        let c = l_colorable(&g, &lists).unwrap().expect("colorable");
        assert!(verify_coloring(&g, &c, true).unwrap());
        for (v, col) in c.colors.iter().enumerate() {
            assert!(lists.lists[v].contains(&col.unwrap()));
        }
    }

    #[test]
    fn json_round_trip_and_errors() {
        let l = ListAssignment::from_slices(&[&[1, 2], &[3]]);
        let text = l.to_json();
        assert_eq!(text, r#"{"lists":{"0":[1,2],"1":[3]}}"#);
        assert_eq!(ListAssignment::from_json(&text).unwrap(), l);
        assert!(ListAssignment::from_json(r#"{"lists":{"0":[1],"5":[2]}}"#).is_err());
        assert!(ListAssignment::from_json(r#"{"lists":{"a":[1]}}"#).is_err());
    }
}
