use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::cliques::maximum_cliques;
use super::transversal::{find_independent_transversal, TransversalInstance};
use super::ReductionError;

/// A maximum clique `c`, possibly with an extra vertex `x` adjacent to all of `c` but one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiGroup {
    pub c: Vec<usize>,
    pub x: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiPartition {
    pub groups: Vec<DiGroup>,
}

/// Groups the maximum cliques: disjoint cliques stand alone, and two cliques sharing all
/// but one vertex become one clique plus the other's extra vertex.
pub fn di_partition(g: &Graph, cliques: &[Vec<usize>]) -> Result<DiPartition, ReductionError> {
    let Some(q) = cliques.first().map(Vec::len) else {
        return Ok(DiPartition::default());
    };
    let structure = |detail: String, cs: Vec<&Vec<usize>>| ReductionError::Structure {
        detail,
        cliques: cs.into_iter().cloned().collect(),
    };
    let m = cliques.len();
    for c in cliques {
        if c.len() != q || !g.is_clique(c) {
            return Err(ReductionError::Contract(format!("{c:?} is not a clique of size {q}")));
        }
    }
    let shared = |a: &[usize], b: &[usize]| a.iter().filter(|v| b.contains(v)).count();
    let mut partner: Vec<Option<usize>> = vec![None; m];
    for a in 0..m {
        let meets: Vec<usize> = (0..m).filter(|&b| b != a && shared(&cliques[a], &cliques[b]) > 0).collect();
        if meets.len() > 1 {
            let mut cs = vec![&cliques[a]];
            cs.extend(meets.iter().map(|&b| &cliques[b]));
            return Err(structure(format!("a maximum clique meets {} others", meets.len()), cs));
        }
        if let Some(&b) = meets.first() {
            let k = shared(&cliques[a], &cliques[b]);
            if k + 1 != q {
                return Err(structure(
                    format!("two maximum cliques share {k} vertices, expected {}", q - 1),
                    vec![&cliques[a], &cliques[b]],
                ));
            }
            partner[a] = Some(b);
        }
    }

    let mut groups = Vec::new();
    for a in 0..m {
        match partner[a] {
            None => groups.push(DiGroup {
                c: cliques[a].clone(),
                x: None,
            }),
            Some(b) if a < b => {
                let x = *cliques[b].iter().find(|v| !cliques[a].contains(v)).expect("cliques differ");
                groups.push(DiGroup {
                    c: cliques[a].clone(),
                    x: Some(x),
                });
            }
            Some(_) => {}
        }
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, grp) in groups.iter().enumerate() {
        for &v in grp.c.iter().chain(grp.x.iter()) {
            if owner[v] != usize::MAX {
                return Err(structure(
                    format!("vertex {v} lies in groups {} and {i}", owner[v]),
                    vec![&groups[owner[v]].c, &grp.c],
                ));
            }
            owner[v] = i;
        }
    }
    Ok(DiPartition { groups })
}

pub fn default_s(delta: usize) -> usize {
    (delta / 2).saturating_sub(2)
}

/// Parts `K_i = C_i`, or `C_i ∩ N(x_i)` when `x_i` is present, in an auxiliary graph that
/// keeps only the edges of `g` between different parts.
pub fn build_transversal_instance(g: &Graph, d: &DiPartition, s: usize) -> TransversalInstance {
    let parts: Vec<Vec<usize>> = d
        .groups
        .iter()
        .map(|grp| match grp.x {
            None => grp.c.clone(),
            Some(x) => grp.c.iter().copied().filter(|&v| g.has_edge(v, x)).collect(),
        })
        .collect();
    let mut owner = vec![usize::MAX; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    let mut aux = Graph::new(g.n());
    for (u, v) in g.edges() {
        if owner[u] != usize::MAX && owner[v] != usize::MAX && owner[u] != owner[v] {
            aux.add_edge(u, v);
        }
    }
    TransversalInstance { aux_graph: aux, parts, s }
}

/// An independent set meeting every maximum clique, from an independent transversal of
/// the clique groups. `None` when no transversal exists outside the degree hypothesis.
pub fn hitting_set(g: &Graph) -> Result<Option<Vec<usize>>, ReductionError> {
    let cliques = maximum_cliques(g)?;
    let d = di_partition(g, &cliques)?;
    let t = build_transversal_instance(g, &d, default_s(g.max_degree()));
    let Some(mut set) = find_independent_transversal(&t)? else {
        return Ok(None);
    };
    set.sort_unstable();
    if !g.is_independent(&set) || !cliques.iter().all(|c| c.iter().any(|v| set.contains(v))) {
        return Err(ReductionError::Invariant(format!("transversal {set:?} is not a hitting set")));
    }
    Ok(Some(set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{clique_groups, complete, disjoint_union, empty, join};
    use rand::SeedableRng;

    #[test]
    fn disjoint_cliques_are_plain_groups() {
        let g = disjoint_union(&complete(4), &complete(4));
        let d = di_partition(&g, &maximum_cliques(&g).unwrap()).unwrap();
        assert_eq!(d.groups.len(), 2);
        assert!(d.groups.iter().all(|grp| grp.x.is_none()));
        let t = build_transversal_instance(&g, &d, 1);
        assert_eq!(t.aux_graph.edge_count(), 0);
        let h = hitting_set(&g).unwrap().unwrap();
        assert_eq!(h.len(), 2);
        assert!(g.is_independent(&h));
    }

    #[test]
    fn clique_with_near_vertex_is_one_group() {
        // K6 on 0..6 plus x = 6 adjacent to 0..5, so {0..4, 6} is a second K6.
        let mut g = disjoint_union(&complete(6), &empty(1));
        for v in 0..5 {
            g.add_edge(v, 6);
        }
        let cliques = maximum_cliques(&g).unwrap();
        assert_eq!(cliques.len(), 2);
        let d = di_partition(&g, &cliques).unwrap();
        assert_eq!(d.groups, vec![DiGroup { c: vec![0, 1, 2, 3, 4, 5], x: Some(6) }]);
        let grp = &d.groups[0];
        let x = grp.x.unwrap();
        assert_eq!(grp.c.iter().filter(|&&v| g.has_edge(v, x)).count(), grp.c.len() - 1);
        let h = hitting_set(&g).unwrap().unwrap();
        assert_eq!(h.len(), 1);
        assert!(cliques.iter().all(|c| c.contains(&h[0])));
    }

    #[test]
    fn triple_intersection_is_a_structure_error() {
        let g = join(&complete(4), &empty(3));
        let cliques = maximum_cliques(&g).unwrap();
        assert_eq!(cliques.len(), 3);
        match di_partition(&g, &cliques) {
            Err(ReductionError::Structure { cliques: cs, .. }) => assert_eq!(cs.len(), 3),
            other => panic!("expected a structure error, got {other:?}"),
        }
        assert!(matches!(hitting_set(&g), Err(ReductionError::Structure { .. })));
    }

    #[test]
    fn wrong_overlap_is_a_structure_error() {
        // Two K5s sharing three vertices.
        let mut g = Graph::new(7);
        for c in [[0, 1, 2, 3, 4], [0, 1, 2, 5, 6]] {
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
        assert!(matches!(
            di_partition(&g, &maximum_cliques(&g).unwrap()),
            Err(ReductionError::Structure { .. })
        ));
    }

    #[test]
    fn delta_14_fixture_degree_bounds_and_hitting_set() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = clique_groups(14, 2, 1, 400, &mut rng);
        assert_eq!(g.max_degree(), 14);
        let cliques = maximum_cliques(&g).unwrap();
        assert!(cliques.iter().all(|c| c.len() == 10));
        let d = di_partition(&g, &cliques).unwrap();
        assert_eq!(d.groups.len(), 3);
        let t = build_transversal_instance(&g, &d, default_s(14));
        for (grp, part) in d.groups.iter().zip(&t.parts) {
            let cap = if grp.x.is_some() { 4 } else { 5 };
            assert_eq!(part.len(), if grp.x.is_some() { 9 } else { 10 });
            assert!(part.iter().all(|&v| t.aux_graph.degree(v) <= cap));
        }
        assert!(t.lopsided());
        let h = hitting_set(&g).unwrap().unwrap();
        assert!(g.is_independent(&h));
        assert!(cliques.iter().all(|c| c.iter().any(|v| h.contains(v))));
    }
}
