//! Simple undirected graphs on dense vertex indices `0..n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    DanglingVertex { vertex: usize, n: usize },
    #[error("coloring covers {got} vertices but graph has {n}")]
    LengthMismatch { got: usize, n: usize },
    #[error("invalid construction: {0}")]
    Construction(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `uv`; self-loops are ignored so the relation stays irreflexive.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `d_S(v)`: number of neighbors of `v` inside `set`.
    pub fn degree_in(&self, v: usize, set: &VertexSet) -> usize {
        self.adj[v].intersection_len(set)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_regular(&self) -> bool {
        self.n == 0 || self.min_degree() == self.max_degree()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// True iff every vertex of `a` is adjacent to every vertex of `b`.
    pub fn is_complete_to(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|&u| b.iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn induced(&self, vertices: &[usize]) -> InducedSubgraph {
        let mut map = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(map.len());
        for (i, &u) in map.iter().enumerate() {
            for v in self.adj[u].iter() {
                let j = index[v];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j);
                }
            }
        }
        InducedSubgraph { graph: g, parent: map }
    }

    pub fn induced_set(&self, set: &VertexSet) -> InducedSubgraph {
        self.induced(&set.to_vec())
    }

    pub fn without(&self, removed: &[usize]) -> InducedSubgraph {
        let mut keep = self.all_vertices();
        for &v in removed {
            keep.remove(v);
        }
        self.induced_set(&keep)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Connected components of `G[within]`, each sorted, ordered by smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.n);
        let mut comps = Vec::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.adj[u].intersection(within).iter() {
                    if seen.insert(w) {
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Component of `G[within]` containing `start`.
    pub fn component_of(&self, start: usize, within: &VertexSet) -> Vec<usize> {
        let mut seen = VertexSet::new(self.n);
        seen.insert(start);
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for w in self.adj[u].intersection(within).iter() {
                if seen.insert(w) {
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comp
    }

    /// Shortest path from `from` to `to` inside `G[within]`, endpoints included.
    pub fn shortest_path_within(&self, from: usize, to: usize, within: &VertexSet) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut x = to;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.adj[u].intersection(within).iter() {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn high_vertices(&self) -> Vec<usize> {
        let d = self.max_degree();
        (0..self.n).filter(|&v| self.degree(v) == d).collect()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// An induced subgraph together with the map from its indices back to the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub parent: Vec<usize>,
}

impl InducedSubgraph {
    pub fn identity(g: &Graph) -> Self {
        InducedSubgraph {
            graph: g.clone(),
            parent: (0..g.n()).collect(),
        }
    }

    pub fn to_parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn map_to_parent(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.parent[v]).collect()
    }

    /// Composes `self` (a subgraph of some graph `P`) with `inner` (a subgraph of `self.graph`).
    pub fn compose(&self, inner: &InducedSubgraph) -> InducedSubgraph {
        InducedSubgraph {
            graph: inner.graph.clone(),
            parent: inner.parent.iter().map(|&v| self.parent[v]).collect(),
        }
    }
}

/// `𝓗(G)`: the subgraph induced by the maximum-degree vertices.
pub fn high_subgraph(g: &Graph) -> InducedSubgraph {
    g.induced(&g.high_vertices())
}

/// Vertex colors; `None` marks an uncolored vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<Option<usize>>,
    pub palette_size: usize,
}

impl Coloring {
    pub fn from_complete(colors: Vec<usize>, palette_size: usize) -> Self {
        Coloring {
            colors: colors.into_iter().map(Some).collect(),
            palette_size,
        }
    }

    pub fn empty(n: usize, palette_size: usize) -> Self {
        Coloring {
            colors: vec![None; n],
            palette_size,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn color(&self, v: usize) -> Option<usize> {
        self.colors[v]
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.palette_size];
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                if *c < classes.len() {
                    classes[*c].push(v);
                }
            }
        }
        classes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCertificate {
    pub vertices: Vec<usize>,
    pub claimed_size: usize,
    pub high_only: bool,
}

impl CliqueCertificate {
    pub fn new(mut vertices: Vec<usize>, high_only: bool) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        CliqueCertificate {
            claimed_size: vertices.len(),
            vertices,
            high_only,
        }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Checks that `c` is a proper coloring within its palette.
///
/// Partial colorings are allowed; pass `require_complete` to reject them.
pub fn verify_coloring(g: &Graph, c: &Coloring, require_complete: bool) -> Result<bool, GraphError> {
    if c.colors.len() != g.n() {
        return Err(GraphError::LengthMismatch {
            got: c.colors.len(),
            n: g.n(),
        });
    }
    if require_complete && !c.is_complete() {
        return Ok(false);
    }
    if c.colors.iter().flatten().any(|&x| x >= c.palette_size) {
        return Ok(false);
    }
    Ok(g.edges().all(|(u, v)| match (c.colors[u], c.colors[v]) {
        (Some(a), Some(b)) => a != b,
        _ => true,
    }))
}

pub fn verify_clique(g: &Graph, c: &CliqueCertificate) -> Result<bool, GraphError> {
    if let Some(&v) = c.vertices.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::DanglingVertex { vertex: v, n: g.n() });
    }
    let mut vs = c.vertices.clone();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != c.vertices.len() || vs.len() != c.claimed_size {
        return Ok(false);
    }
    if !g.is_clique(&vs) {
        return Ok(false);
    }
    if c.high_only {
        let delta = g.max_degree();
        if vs.iter().any(|&v| g.degree(v) != delta) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, o5, path};

    #[test]
    fn verify_triangle_colorings() {
        let k3 = complete(3);
        assert!(verify_coloring(&k3, &Coloring::from_complete(vec![0, 1, 2], 3), true).unwrap());
        assert!(!verify_coloring(&k3, &Coloring::from_complete(vec![0, 0, 1], 3), true).unwrap());
        assert!(!verify_coloring(&k3, &Coloring::from_complete(vec![0, 1, 3], 3), true).unwrap());
        assert!(verify_coloring(&k3, &Coloring::from_complete(vec![0, 1], 3), true).is_err());
    }

    #[test]
    fn verify_o5_clique_and_dangling() {
        let g = o5();
        assert!(verify_clique(&g, &CliqueCertificate::new(vec![4, 5, 6, 7], false)).unwrap());
        assert!(!verify_clique(&g, &CliqueCertificate::new(vec![3, 4, 5, 6], false)).unwrap());
        let bad = CliqueCertificate::new(vec![0, 9], false);
        assert_eq!(
            verify_clique(&g, &bad),
            Err(GraphError::DanglingVertex { vertex: 9, n: 9 })
        );
    }

    #[test]
    fn high_subgraph_examples() {
        let h = high_subgraph(&o5());
        assert_eq!(h.graph.n(), 2);
        assert_eq!(h.graph.edge_count(), 0);
        assert_eq!(h.parent, vec![3, 8]);

        let c = cycle(7);
        assert_eq!(high_subgraph(&c).graph, c);

        let p = high_subgraph(&path(3));
        assert_eq!(p.graph.n(), 1);
        assert_eq!(p.parent, vec![1]);
    }

    #[test]
    fn components_and_paths() {
        let mut g = path(5);
        g.add_edge(0, 4);
        g.remove_edge(1, 2);
        let all = g.all_vertices();
        assert_eq!(g.components_within(&all), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(g.shortest_path_within(1, 2, &all), Some(vec![1, 0, 4, 3, 2]));
        let mut within = all.clone();
        within.remove(0);
        assert_eq!(g.components_within(&within), vec![vec![1], vec![2, 3, 4]]);
        assert_eq!(g.shortest_path_within(1, 2, &within), None);
    }
}
