use crate::graph::Graph;

use super::ReductionError;

/// Disjoint parts in an auxiliary graph with no edges inside a part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalInstance {
    pub aux_graph: Graph,
    pub parts: Vec<Vec<usize>>,
    pub s: usize,
}

impl TransversalInstance {
    pub fn new(aux_graph: Graph, parts: Vec<Vec<usize>>, s: usize) -> Result<Self, ReductionError> {
        let n = aux_graph.n();
        let mut owner = vec![usize::MAX; n];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if v >= n {
                    return Err(ReductionError::Contract(format!("part {i} names vertex {v} of {n}")));
                }
                if owner[v] != usize::MAX {
                    return Err(ReductionError::Contract(format!("vertex {v} is in parts {} and {i}", owner[v])));
                }
                owner[v] = i;
            }
            if !aux_graph.is_independent(p) {
                return Err(ReductionError::Contract(format!("part {i} is not independent")));
            }
        }
        Ok(TransversalInstance { aux_graph, parts, s })
    }

    /// Every part is nonempty and every vertex `v` of `K_i` has `d(v) ≤ min(s, |K_i| - s)`.
    pub fn lopsided(&self) -> bool {
        self.parts.iter().all(|p| {
            !p.is_empty()
                && p.len() >= self.s
                && p.iter().all(|&v| self.aux_graph.degree(v) <= self.s.min(p.len() - self.s))
        })
    }
}

/// One vertex per part, pairwise nonadjacent, in part order. Parts are filled most
/// constrained first and candidates tried by ascending index.
pub fn find_independent_transversal(t: &TransversalInstance) -> Result<Option<Vec<usize>>, ReductionError> {
    let k = t.parts.len();
    let mut chosen: Vec<Option<usize>> = vec![None; k];
    let found = search(t, &mut chosen);
    if found {
        return Ok(Some(chosen.into_iter().map(|c| c.expect("every part chosen")).collect()));
    }
    if t.lopsided() {
        return Err(ReductionError::Invariant(format!(
            "no independent transversal although the degree hypothesis holds with s = {}",
            t.s
        )));
    }
    Ok(None)
}

fn search(t: &TransversalInstance, chosen: &mut [Option<usize>]) -> bool {
    let g = &t.aux_graph;
    let free = |v: usize, chosen: &[Option<usize>]| chosen.iter().flatten().all(|&u| !g.has_edge(u, v));
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (i, p) in t.parts.iter().enumerate() {
        if chosen[i].is_some() {
            continue;
        }
        let options: Vec<usize> = p.iter().copied().filter(|&v| free(v, chosen)).collect();
        if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
            best = Some((i, options));
        }
    }
    let Some((i, mut options)) = best else {
        return true;
    };
    options.sort_unstable();
    for v in options {
        chosen[i] = Some(v);
        if search(t, chosen) {
            return true;
        }
    }
    chosen[i] = None;
    false
}

/// Brute force over the whole product of the parts.
pub fn transversal_exists_exhaustive(t: &TransversalInstance) -> bool {
    fn rec(t: &TransversalInstance, i: usize, acc: &mut Vec<usize>) -> bool {
        if i == t.parts.len() {
            return t.aux_graph.is_independent(acc);
        }
        for &v in &t.parts[i] {
            acc.push(v);
            if rec(t, i + 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    rec(t, 0, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_takes_lowest_vertices() {
        let t = TransversalInstance::new(Graph::new(6), vec![vec![2, 0], vec![3, 4], vec![5, 1]], 1).unwrap();
        assert_eq!(find_independent_transversal(&t).unwrap(), Some(vec![0, 3, 1]));
    }

    #[test]
    fn crossed_pairs() {
        // a1 = 0, a2 = 1, b1 = 2, b2 = 3.
        let g = Graph::from_edges(4, &[(0, 2), (1, 3)]);
        let t = TransversalInstance::new(g, vec![vec![0, 1], vec![2, 3]], 1).unwrap();
        assert!(t.lopsided());
        assert_eq!(find_independent_transversal(&t).unwrap(), Some(vec![0, 3]));
        assert!(transversal_exists_exhaustive(&t));
    }

    #[test]
    fn blocked_instance_outside_the_hypothesis() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]);
        let t = TransversalInstance::new(g, vec![vec![0], vec![1, 2]], 1).unwrap();
        assert!(!t.lopsided());
        assert_eq!(find_independent_transversal(&t).unwrap(), None);
        assert!(!transversal_exists_exhaustive(&t));
    }

    #[test]
    fn malformed_parts_are_rejected() {
        let g = Graph::from_edges(3, &[(0, 1)]);
        assert!(TransversalInstance::new(g.clone(), vec![vec![0, 1]], 1).is_err());
        assert!(TransversalInstance::new(g.clone(), vec![vec![0], vec![0, 2]], 1).is_err());
        assert!(TransversalInstance::new(g, vec![vec![7]], 1).is_err());
    }
}
