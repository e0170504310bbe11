//! Constructing a partition from a vertex and a coloring of the rest of the graph.

use std::collections::HashSet;

use crate::bitset::VertexSet;
use crate::graph::{verify_coloring, Coloring, Graph};

use super::state::{color_component, PartitionState};
use super::{ClaimId, EngineError, Mode, RVector, Violation, Witness};

#[derive(Clone, Debug)]
pub enum Built {
    Partition(Box<PartitionState>),
    Colored(Coloring),
    Violation(Box<Violation>),
}

pub fn build_partition(g: &Graph, r: &RVector, witness: &Witness) -> Result<Built, EngineError> {
    build_with_mode(g, r, witness, Mode::Theorem1)
}

pub(crate) fn build_with_mode(g: &Graph, r: &RVector, witness: &Witness, mode: Mode) -> Result<Built, EngineError> {
    let t = r.total();
    witness.validate(g, t)?;
    let class_part = group_classes(g, witness, r);
    // local color of each class inside its part
    let mut local = vec![0usize; t];
    let mut fill = vec![0usize; r.k()];
    for c in 0..t {
        local[c] = fill[class_part[c]];
        fill[class_part[c]] += 1;
    }
    let n = g.n();
    let v = witness.vertex;
    let mut part = vec![0usize; n];
    let mut color = vec![None; n];
    for u in (0..n).filter(|&u| u != v) {
        part[u] = class_part[witness.coloring[u]];
        color[u] = Some(local[witness.coloring[u]]);
    }

    let degrees: Vec<usize> = (0..r.k())
        .map(|i| g.neighbors(v).iter().filter(|&w| w != v && part[w] == i).count())
        .collect();
    if let Some(i) = (0..r.k()).find(|&i| degrees[i] < r.parts[i]) {
        part[v] = i;
        let used: Vec<usize> = g.neighbors(v).iter().filter(|&w| part[w] == i).filter_map(|w| color[w]).collect();
        color[v] = (0..r.parts[i]).find(|c| !used.contains(c));
        return Ok(Built::Colored(global(g, r, &part, &color)));
    }
    let Some(j) = (0..r.k()).find(|&i| degrees[i] == r.parts[i]) else {
        part[v] = 0;
        let state = PartitionState::assemble(g.clone(), r.clone(), mode, witness.clone(), part, color, v);
        return Ok(violation(
            &state,
            ClaimId::Partition,
            format!("vertex {v} has more than r_i neighbors in every part: {degrees:?}"),
        ));
    };
    part[v] = j;
    Ok(repair(g, r, mode, witness, part, color, v, 0))
}

/// Splits the `t` color classes into parts of sizes `r_i`, minimizing edges inside parts
/// by pairwise class swaps. The witness vertex's edges are not counted.
fn group_classes(g: &Graph, witness: &Witness, r: &RVector) -> Vec<usize> {
    let t = r.total();
    let mut w = vec![vec![0usize; t]; t];
    for (a, b) in g.edges() {
        if a == witness.vertex || b == witness.vertex {
            continue;
        }
        let (ca, cb) = (witness.coloring[a], witness.coloring[b]);
        w[ca][cb] += 1;
        w[cb][ca] += 1;
    }
    let mut class_part: Vec<usize> = r
        .parts
        .iter()
        .enumerate()
        .flat_map(|(i, &ri)| std::iter::repeat_n(i, ri))
        .collect();
    let inside = |class_part: &[usize], a: usize, p: usize, skip: usize| -> usize {
        (0..t).filter(|&c| c != a && c != skip && class_part[c] == p).map(|c| w[a][c]).sum()
    };
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for a in 0..t {
            for b in a + 1..t {
                let (p, q) = (class_part[a], class_part[b]);
                if p == q {
                    continue;
                }
                let old = inside(&class_part, a, p, a) + inside(&class_part, b, q, b);
                let new = inside(&class_part, a, q, b) + inside(&class_part, b, p, a);
                let delta = new as i64 - old as i64;
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, a, b));
                }
            }
        }
        match best {
            Some((_, a, b)) => class_part.swap(a, b),
            None => return class_part,
        }
    }
}

fn global(g: &Graph, r: &RVector, part: &[usize], color: &[Option<usize>]) -> Coloring {
    let offsets = r.offsets();
    let colors: Vec<usize> = (0..g.n())
        .map(|v| offsets[part[v]] + color[v].expect("every vertex colored"))
        .collect();
    let c = Coloring::from_complete(colors, r.total());
    debug_assert!(verify_coloring(g, &c, true).unwrap_or(false));
    c
}

pub(crate) fn violation(state: &PartitionState, claim: ClaimId, detail: String) -> Built {
    Built::Violation(Box::new(Violation {
        claim,
        detail,
        snapshot: state.snapshot(),
    }))
}

fn within(part: &[usize], i: usize) -> VertexSet {
    VertexSet::from_iter_with_capacity(part.len(), (0..part.len()).filter(|&v| part[v] == i))
}

/// Repairs the component of the uncolored `pivot` until it is a `K_{r_j + 1}` satisfying
/// properties (3) and (4), or a coloring turns up.
///
/// A member `u` with more than `r_j` neighbors in the component, closest to the pivot, is
/// sent to a part where it has at most `r_k` neighbors and the path to it is recolored from
/// the pivot; this lowers the number of edges inside parts. Moves that keep that number
/// (odd cycles for `r_j = 2`, failures of property (3)) branch, and the branches are
/// searched depth-first without revisiting a partition.
#[allow(clippy::too_many_arguments)]
pub(crate) fn repair(
    g: &Graph,
    r: &RVector,
    mode: Mode,
    witness: &Witness,
    part: Vec<usize>,
    color: Vec<Option<usize>>,
    pivot: usize,
    restarts: usize,
) -> Built {
    let ctx = Ctx {
        g,
        r,
        mode,
        witness,
        restarts,
    };
    let mut steps_left = 8 * g.edge_count() + 64 * g.n() + 4096;
    let mut visited: HashSet<(Vec<usize>, usize)> = HashSet::new();
    visited.insert((part.clone(), pivot));
    let mut stack = vec![Node { part, color, pivot }];
    let mut last: Option<Node> = None;
    while let Some(mut node) = stack.pop() {
        loop {
            if steps_left == 0 {
                return violation(&ctx.state(&node), ClaimId::Repair, "repair did not terminate".into());
            }
            steps_left -= 1;
            match advance(&ctx, node) {
                Next::Done(b) => return b,
                Next::Continue(next) => node = next,
                Next::Branch(at, children) => {
                    for c in children.into_iter().rev() {
                        if visited.insert((c.part.clone(), c.pivot)) {
                            stack.push(c);
                        }
                    }
                    last = Some(at);
                    break;
                }
            }
        }
    }
    let at = last.expect("a branch was recorded");
    violation(
        &ctx.state(&at),
        ClaimId::Repair,
        "every partition reachable by neutral moves was explored without reaching a clique component".into(),
    )
}

struct Ctx<'a> {
    g: &'a Graph,
    r: &'a RVector,
    mode: Mode,
    witness: &'a Witness,
    restarts: usize,
}

impl Ctx<'_> {
    fn state(&self, node: &Node) -> PartitionState {
        let mut s = PartitionState::assemble(
            self.g.clone(),
            self.r.clone(),
            self.mode,
            self.witness.clone(),
            node.part.clone(),
            node.color.clone(),
            node.pivot,
        );
        s.restarts = self.restarts;
        s
    }
}

#[derive(Clone)]
struct Node {
    part: Vec<usize>,
    color: Vec<Option<usize>>,
    pivot: usize,
}

enum Next {
    Done(Built),
    Continue(Node),
    Branch(Node, Vec<Node>),
}

/// Sends `x` from the pivot's component to part `i`, recoloring what is left of the
/// component; `x` becomes the pivot.
fn neutral_child(ctx: &Ctx, node: &Node, comp: &[usize], x: usize, i: usize) -> Option<Node> {
    let g = ctx.g;
    let rj = ctx.r.parts[node.part[node.pivot]];
    let mut part = node.part.clone();
    let mut color = node.color.clone();
    part[x] = i;
    color[x] = None;
    let rest: Vec<usize> = comp.iter().copied().filter(|&y| y != x).collect();
    for &y in &rest {
        color[y] = None;
    }
    for sub in g.components_within(&VertexSet::from_iter_with_capacity(g.n(), rest.iter().copied())) {
        if !color_component(g, &sub, rj, &mut color) {
            return None;
        }
    }
    Some(Node { part, color, pivot: x })
}

fn advance(ctx: &Ctx, node: Node) -> Next {
    let (g, r) = (ctx.g, ctx.r);
    let Node {
        mut part,
        mut color,
        pivot,
    } = node;
    let n = g.n();
    let j = part[pivot];
    let rj = r.parts[j];
    let comp = g.component_of(pivot, &within(&part, j));
    let comp_set = VertexSet::from_iter_with_capacity(n, comp.iter().copied());

    if let Some(u) = closest_overfull(g, pivot, &comp_set, rj) {
        let path = g.shortest_path_within(pivot, u, &comp_set).expect("u is in the pivot's component");
        let dest = (0..r.k())
            .filter(|&k| k != j)
            .map(|k| (k, g.neighbors(u).iter().filter(|&w| part[w] == k).count()))
            .filter(|&(k, d)| d <= r.parts[k])
            .min_by_key(|&(k, d)| (d == r.parts[k], k));
        let Some((k, dk)) = dest else {
            let node = Node { part, color, pivot };
            return Next::Done(violation(
                &ctx.state(&node),
                ClaimId::Repair,
                format!("vertex {u} has more than r_i neighbors in every other part"),
            ));
        };
        for &x in &path {
            color[x] = None;
        }
        part[u] = k;
        for &x in &path[..path.len() - 1] {
            let used: Vec<usize> = g.neighbors(x).iter().filter(|&w| part[w] == j).filter_map(|w| color[w]).collect();
            color[x] = (0..rj).find(|c| !used.contains(c));
        }
        if path[..path.len() - 1].iter().any(|&x| color[x].is_none()) {
            let comp = g.component_of(pivot, &within(&part, j));
            if !color_component(g, &comp, rj, &mut color) {
                let node = Node { part, color, pivot: u };
                return Next::Done(violation(
                    &ctx.state(&node),
                    ClaimId::Repair,
                    format!("path from {pivot} to {u} could not be recolored"),
                ));
            }
        }
        if dk < r.parts[k] {
            let used: Vec<usize> = g.neighbors(u).iter().filter(|&w| part[w] == k).filter_map(|w| color[w]).collect();
            color[u] = (0..r.parts[k]).find(|c| !used.contains(c));
            return Next::Done(Built::Colored(global(g, r, &part, &color)));
        }
        return Next::Continue(Node { part, color, pivot: u });
    }

    let mut trial = color.clone();
    for &x in &comp {
        trial[x] = None;
    }
    if color_component(g, &comp, rj, &mut trial) {
        return Next::Done(Built::Colored(global(g, r, &part, &trial)));
    }
    let node = Node { part, color, pivot };

    if comp.len() == rj + 1 && g.is_clique(&comp) {
        let state = ctx.state(&node);
        for &x in &comp {
            for i in (0..r.k()).filter(|&i| i != j) {
                let d = state.degree_into(x, i);
                if d < r.parts[i] || state.property4_failure(x, i).is_some() {
                    let claim = if d < r.parts[i] { ClaimId::LowDegree } else { ClaimId::Property4 };
                    return Next::Done(match state.relocate(&[(x, i)]) {
                        Some(c) => Built::Colored(c),
                        None => violation(&state, claim, format!("moving {x} into part {i} gave no coloring")),
                    });
                }
            }
        }
        let moves: Vec<(usize, usize)> = comp
            .iter()
            .flat_map(|&x| (0..r.k()).filter(move |&i| i != j).map(move |i| (x, i)))
            .filter(|&(x, i)| state.degree_into(x, i) == r.parts[i] && state.target_club(x, i).is_none())
            .collect();
        if moves.is_empty() {
            return Next::Done(Built::Partition(Box::new(state)));
        }
        let children = moves.iter().filter_map(|&(x, i)| neutral_child(ctx, &node, &comp, x, i)).collect();
        return Next::Branch(node, children);
    }

    // Connected, not r_j-colorable, maximum degree r_j, not a clique: an odd cycle with
    // r_j = 2. Every member may leave for a part where it has at most r_i neighbors.
    let mut children = Vec::new();
    for &x in &comp {
        for i in (0..r.k()).filter(|&i| i != j) {
            let d = g.neighbors(x).iter().filter(|&w| node.part[w] == i).count();
            if d > r.parts[i] {
                continue;
            }
            let Some(mut child) = neutral_child(ctx, &node, &comp, x, i) else {
                continue;
            };
            if d < r.parts[i] {
                let used: Vec<usize> =
                    g.neighbors(x).iter().filter(|&w| child.part[w] == i).filter_map(|w| child.color[w]).collect();
                child.color[x] = (0..r.parts[i]).find(|c| !used.contains(c));
                return Next::Done(Built::Colored(global(g, r, &child.part, &child.color)));
            }
            children.push(child);
        }
    }
    Next::Branch(node, children)
}

/// The member with more than `r_j` neighbors in the component that is nearest the pivot,
/// ties broken by index.
fn closest_overfull(g: &Graph, pivot: usize, comp: &VertexSet, rj: usize) -> Option<usize> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[pivot] = 0;
    let mut frontier = vec![pivot];
    while !frontier.is_empty() {
        let mut hits: Vec<usize> = frontier.iter().copied().filter(|&x| g.degree_in(x, comp) > rj).collect();
        if !hits.is_empty() {
            hits.sort_unstable();
            return hits.first().copied();
        }
        let mut next = Vec::new();
        for &x in &frontier {
            for w in g.neighbors(x).intersection(comp).iter() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, o5};
    use crate::oracle::find_coloring;

    fn witness_for(g: &Graph, v: usize, t: usize) -> Witness {
        let sub = g.without(&[v]);
        let cs = find_coloring(&sub.graph, t).expect("G - v is t-colorable");
        let mut coloring = vec![0; g.n()];
        for (i, &p) in sub.parent.iter().enumerate() {
            coloring[p] = cs[i];
        }
        Witness { vertex: v, coloring }
    }

    #[test]
    fn k13_gives_active_k4_and_three_triangles() {
        let g = complete(13);
        let r = RVector::new(vec![3, 3, 3, 3]).unwrap();
        let Built::Partition(s) = build_partition(&g, &r, &witness_for(&g, 0, 12)).unwrap() else {
            panic!("expected a partition");
        };
        assert_eq!(s.active_club().members.len(), 4);
        let clubs: Vec<usize> = s.live_clubs().map(|c| c.members.len()).collect();
        assert_eq!(clubs.iter().filter(|&&l| l == 3).count(), 3);
        assert!(s.verify_state().is_valid());
        for a in s.live_clubs() {
            for b in s.live_clubs() {
                if a.id != b.id {
                    assert!(s.clubs_complete(a.id, b.id));
                }
            }
        }
    }

    #[test]
    fn low_degree_pivot_short_circuits() {
        // a 5-cycle with a pendant: G - 5 is 3-colorable and 5 has one neighbor
        let mut g = crate::constructions::cycle(5);
        let mut h = Graph::new(6);
        for (u, v) in g.edges() {
            h.add_edge(u, v);
        }
        h.add_edge(0, 5);
        g = h;
        let r = RVector::new(vec![2, 1]).unwrap();
        let w = witness_for(&g, 5, 3);
        match build_partition(&g, &r, &w).unwrap() {
            Built::Colored(c) => assert!(verify_coloring(&g, &c, true).unwrap() && c.palette_size == 3),
            other => panic!("expected coloring, got {other:?}"),
        }
    }

    #[test]
    fn o5_partition_is_valid() {
        let g = o5();
        let r = RVector::new(vec![2, 2]).unwrap();
        for v in 0..g.n() {
            match build_partition(&g, &r, &witness_for(&g, v, 4)).unwrap() {
                Built::Partition(s) => assert!(s.verify_state().is_valid(), "{:?}", s.verify_state()),
                other => panic!("O5 is 5-critical, got {other:?}"),
            }
        }
    }

    #[test]
    fn invalid_witness_is_a_contract_error() {
        let g = complete(4);
        let r = RVector::new(vec![1, 1]).unwrap();
        let w = Witness {
            vertex: 0,
            coloring: vec![0, 0, 1, 1],
        };
        assert!(matches!(build_partition(&g, &r, &w), Err(EngineError::Contract(_))));
    }
}
