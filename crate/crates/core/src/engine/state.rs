//! Partition state: clubhouses, clubs, per-part colorings and the relocation primitive.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::graph::{verify_coloring, Coloring, Graph};
use crate::oracle::{find_coloring_budget, Search};

use super::{Mode, RVector, Witness};

/// Node budget for each exact recoloring of a single component.
pub(crate) const EXACT_BUDGET: u64 = 200_000;

pub type ClubId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SendEvent {
    pub member: usize,
    pub to: ClubId,
}

/// A component of some `G[V_i]`, tracked across moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Club {
    pub id: ClubId,
    pub part: usize,
    pub members: Vec<usize>,
    pub send_history: Vec<SendEvent>,
    pub activation_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub member: usize,
    pub from: ClubId,
    pub to: ClubId,
    pub to_part: usize,
}

/// Vertices and clubs a claim's recoloring works on. `pair` is the non-adjacent pair
/// the argument names; `clique` is only used by the mixed-join claims.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimContext {
    pub pair: (usize, usize),
    pub clubs: Vec<ClubId>,
    pub clique: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateCheck {
    Valid,
    Violated { property: u8, detail: String },
}

impl StateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, StateCheck::Valid)
    }
}

/// Everything needed to inspect a state and rerun the engine that reached it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub r: Vec<usize>,
    pub mode: Mode,
    pub witness: Witness,
    pub clubhouses: Vec<Vec<usize>>,
    pub colors: Vec<Option<usize>>,
    pub active: Vec<usize>,
    pub clubs: Vec<Club>,
    pub moved: Vec<usize>,
    pub log: Vec<Move>,
    pub restarts: usize,
}

impl Snapshot {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges)
    }
}

#[derive(Clone, Debug)]
pub struct PartitionState {
    pub(crate) graph: Graph,
    pub(crate) r: RVector,
    pub(crate) mode: Mode,
    pub(crate) witness: Witness,
    pub(crate) part: Vec<usize>,
    /// Local colors `0..r_i` inside each part; `None` on the active club.
    pub(crate) color: Vec<Option<usize>>,
    pub(crate) clubs: Vec<Club>,
    pub(crate) club_of: Vec<ClubId>,
    pub(crate) active: ClubId,
    pub(crate) moved: Vec<bool>,
    pub(crate) log: Vec<Move>,
    pub(crate) restarts: usize,
}

impl PartitionState {
    /// Builds clubs from the components of every part. `active_member` lies in the
    /// component that becomes the active club.
    pub(crate) fn assemble(
        graph: Graph,
        r: RVector,
        mode: Mode,
        witness: Witness,
        part: Vec<usize>,
        mut color: Vec<Option<usize>>,
        active_member: usize,
    ) -> Self {
        let n = graph.n();
        let mut clubs = Vec::new();
        let mut club_of = vec![usize::MAX; n];
        for i in 0..r.k() {
            let within = VertexSet::from_iter_with_capacity(n, (0..n).filter(|&v| part[v] == i));
            for comp in graph.components_within(&within) {
                let id = clubs.len();
                for &v in &comp {
                    club_of[v] = id;
                }
                clubs.push(Club {
                    id,
                    part: i,
                    members: comp,
                    send_history: Vec::new(),
                    activation_count: 0,
                });
            }
        }
        let active = club_of[active_member];
        clubs[active].activation_count = 1;
        for &v in &clubs[active].members {
            color[v] = None;
        }
        PartitionState {
            graph,
            r,
            mode,
            witness,
            part,
            color,
            clubs,
            club_of,
            active,
            moved: vec![false; n],
            log: Vec::new(),
            restarts: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn r(&self) -> &RVector {
        &self.r
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part[v]
    }

    pub fn local_color(&self, v: usize) -> Option<usize> {
        self.color[v]
    }

    pub fn clubs(&self) -> &[Club] {
        &self.clubs
    }

    pub fn club(&self, id: ClubId) -> &Club {
        &self.clubs[id]
    }

    pub fn club_of(&self, v: usize) -> ClubId {
        self.club_of[v]
    }

    pub fn active(&self) -> ClubId {
        self.active
    }

    pub fn active_club(&self) -> &Club {
        &self.clubs[self.active]
    }

    pub fn is_moved(&self, v: usize) -> bool {
        self.moved[v]
    }

    pub fn log(&self) -> &[Move] {
        &self.log
    }

    pub fn clubhouses(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.r.k()];
        for (v, &p) in self.part.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }

    /// Nonempty clubs, by id.
    pub fn live_clubs(&self) -> impl Iterator<Item = &Club> {
        self.clubs.iter().filter(|c| !c.members.is_empty())
    }

    pub fn degree_into(&self, v: usize, part: usize) -> usize {
        self.graph
            .neighbors(v)
            .iter()
            .filter(|&w| self.part[w] == part)
            .count()
    }

    pub fn neighbors_in_part(&self, v: usize, part: usize) -> Vec<usize> {
        self.graph
            .neighbors(v)
            .iter()
            .filter(|&w| self.part[w] == part)
            .collect()
    }

    pub fn clubs_complete(&self, a: ClubId, b: ClubId) -> bool {
        self.graph.is_complete_to(&self.clubs[a].members, &self.clubs[b].members)
    }

    pub fn is_clique_club(&self, id: ClubId) -> bool {
        self.graph.is_clique(&self.clubs[id].members)
    }

    /// The club `N_{V_i}(v)` would join, when those neighbors form exactly one
    /// `K_{r_i}` club.
    pub fn target_club(&self, v: usize, part: usize) -> Option<ClubId> {
        let nb = self.neighbors_in_part(v, part);
        let &first = nb.first()?;
        let id = self.club_of[first];
        let club = &self.clubs[id];
        (nb.len() == self.r.parts[part] && club.members == nb && self.graph.is_clique(&nb)).then_some(id)
    }

    fn within_part(part: &[usize], i: usize) -> VertexSet {
        VertexSet::from_iter_with_capacity(part.len(), (0..part.len()).filter(|&v| part[v] == i))
    }

    /// Moves each listed vertex to its part and tries to recolor every component that
    /// received a vertex or still holds an uncolored one, keeping all other colors.
    pub fn relocate(&self, moves: &[(usize, usize)]) -> Option<Coloring> {
        let mut part = self.part.clone();
        let mut color = self.color.clone();
        for &(v, p) in moves {
            part[v] = p;
            color[v] = None;
        }
        let n = self.graph.n();
        let mut done = VertexSet::new(n);
        for v in 0..n {
            if color[v].is_some() || done.contains(v) {
                continue;
            }
            let within = Self::within_part(&part, part[v]);
            let comp = self.graph.component_of(v, &within);
            for &u in &comp {
                done.insert(u);
            }
            if !color_component(&self.graph, &comp, self.r.parts[part[v]], &mut color) {
                return None;
            }
        }
        let offsets = self.r.offsets();
        let colors: Vec<usize> = (0..n).map(|v| offsets[part[v]] + color[v].unwrap_or(0)).collect();
        let coloring = Coloring::from_complete(colors, self.r.total());
        verify_coloring(&self.graph, &coloring, true)
            .unwrap_or(false)
            .then_some(coloring)
    }

    /// Checks the four partition properties for the current active club.
    pub fn verify_state(&self) -> StateCheck {
        let violated = |property: u8, detail: String| StateCheck::Violated { property, detail };
        let j = self.clubs[self.active].part;
        let active = &self.clubs[self.active].members;
        let n = self.graph.n();

        for v in 0..n {
            let in_active = self.club_of[v] == self.active;
            match self.color[v] {
                None if !in_active => return violated(1, format!("vertex {v} is uncolored outside the active club")),
                Some(c) if c >= self.r.parts[self.part[v]] => {
                    return violated(1, format!("vertex {v} has local color {c} beyond r"))
                }
                _ => {}
            }
        }
        for (u, v) in self.graph.edges() {
            if self.part[u] == self.part[v] && self.color[u].is_some() && self.color[u] == self.color[v] {
                let p = if self.part[u] == j { 2 } else { 1 };
                return violated(p, format!("edge {u}-{v} is monochromatic inside part {}", self.part[u]));
            }
        }
        for i in (0..self.r.k()).filter(|&i| i != j) {
            let members: Vec<usize> = (0..n).filter(|&v| self.part[v] == i).collect();
            let sub = self.graph.induced(&members);
            if let Search::Found(_) = find_coloring_budget(&sub.graph, self.r.parts[i] - 1, EXACT_BUDGET) {
                return violated(1, format!("part {i} is {}-colorable", self.r.parts[i] - 1));
            }
        }

        let within_j = Self::within_part(&self.part, j);
        if active.len() != self.r.parts[j] + 1
            || !self.graph.is_clique(active)
            || self.graph.component_of(active[0], &within_j) != *active
        {
            return violated(2, format!("active club {active:?} is not a K_{} component", self.r.parts[j] + 1));
        }

        for &v in active {
            for i in (0..self.r.k()).filter(|&i| i != j) {
                let d = self.degree_into(v, i);
                let r_i = self.r.parts[i];
                if d == r_i && self.target_club(v, i).is_none() {
                    return violated(3, format!("moving {v} into part {i} leaves no K_{} component", r_i + 1));
                }
                if let Some(comp) = self.property4_failure(v, i) {
                    return violated(4, format!("{v} together with component {comp:?} of part {i} is {r_i}-colorable"));
                }
            }
        }
        StateCheck::Valid
    }

    /// A component `K` of part `i` that holds at least `d_{V_i}(v) + 1 - r_i` neighbors of
    /// `v` while `K + v` is still `r_i`-colorable.
    pub(crate) fn property4_failure(&self, v: usize, i: usize) -> Option<Vec<usize>> {
        let r_i = self.r.parts[i];
        let d = self.degree_into(v, i);
        let need = (d + 1).saturating_sub(r_i).max(1);
        let mut seen: Vec<ClubId> = Vec::new();
        for w in self.neighbors_in_part(v, i) {
            let id = self.club_of[w];
            if seen.contains(&id) {
                continue;
            }
            seen.push(id);
            let comp = &self.clubs[id].members;
            let hits = comp.iter().filter(|&&x| self.graph.has_edge(v, x)).count();
            if hits < need {
                continue;
            }
            let mut with_v = comp.clone();
            with_v.push(v);
            let sub = self.graph.induced(&with_v);
            if let Search::Found(_) = find_coloring_budget(&sub.graph, r_i, EXACT_BUDGET) {
                return Some(comp.clone());
            }
        }
        None
    }

    /// Moves `member` of the active club into `to`, which becomes active.
    pub(crate) fn apply_move(&mut self, member: usize, to: ClubId) {
        let from = self.active;
        let to_part = self.clubs[to].part;
        self.part[member] = to_part;
        self.clubs[from].members.retain(|&x| x != member);
        self.clubs[to].members.push(member);
        self.clubs[to].members.sort_unstable();
        self.club_of[member] = to;
        self.moved[member] = true;
        self.clubs[from].send_history.push(SendEvent { member, to });
        self.clubs[to].activation_count += 1;

        let rest = self.clubs[from].members.clone();
        if self.graph.is_clique(&rest) {
            for (c, &x) in rest.iter().enumerate() {
                self.color[x] = Some(c);
            }
        } else {
            color_component(&self.graph, &rest, self.r.parts[self.clubs[from].part], &mut self.color);
        }
        for &x in &self.clubs[to].members {
            self.color[x] = None;
        }
        self.active = to;
        self.log.push(Move {
            member,
            from,
            to,
            to_part,
        });
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            n: self.graph.n(),
            edges: self.graph.edges().collect(),
            r: self.r.parts.clone(),
            mode: self.mode,
            witness: self.witness.clone(),
            clubhouses: self.clubhouses(),
            colors: self.color.clone(),
            active: self.clubs[self.active].members.clone(),
            clubs: self.live_clubs().cloned().collect(),
            moved: (0..self.graph.n()).filter(|&v| self.moved[v]).collect(),
            log: self.log.clone(),
            restarts: self.restarts,
        }
    }
}

/// Colors the vertices of `comp` with `0..k`: first by extending the colors already
/// present, then by an exact search over the whole component.
pub(crate) fn color_component(g: &Graph, comp: &[usize], k: usize, color: &mut [Option<usize>]) -> bool {
    let mut trial: Vec<Option<usize>> = comp.iter().map(|&v| color[v]).collect();
    let pos = |v: usize| comp.binary_search(&v).ok();
    let mut extended = true;
    for i in 0..comp.len() {
        if trial[i].is_some() {
            continue;
        }
        let used: Vec<usize> = g.neighbors(comp[i]).iter().filter_map(|w| pos(w).and_then(|p| trial[p])).collect();
        match (0..k).find(|c| !used.contains(c)) {
            Some(c) => trial[i] = Some(c),
            None => {
                extended = false;
                break;
            }
        }
    }
    if extended {
        for (i, &v) in comp.iter().enumerate() {
            color[v] = trial[i];
        }
        return true;
    }
    let sub = g.induced(comp);
    match find_coloring_budget(&sub.graph, k, EXACT_BUDGET) {
        Search::Found(cs) => {
            for (i, &v) in sub.parent.iter().enumerate() {
                color[v] = Some(cs[i]);
            }
            true
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete;
    use crate::engine::{build_partition, Built};

    fn k5_state() -> PartitionState {
        let g = complete(5);
        let r = RVector::new(vec![2, 2]).unwrap();
        let w = Witness::from_oracle(&g, 0, 4).unwrap().unwrap();
        match build_partition(&g, &r, &w).unwrap() {
            Built::Partition(s) => *s,
            _ => panic!("K5 builds a partition"),
        }
    }

    fn property(s: &PartitionState) -> Option<u8> {
        match s.verify_state() {
            StateCheck::Valid => None,
            StateCheck::Violated { property, .. } => Some(property),
        }
    }

    #[test]
    fn k5_state_has_an_active_triangle_and_an_edge() {
        let s = k5_state();
        assert_eq!(property(&s), None);
        assert_eq!(s.active_club().members.len(), 3);
        let sizes: Vec<usize> = s.live_clubs().map(|c| c.members.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 5);
        assert!(sizes.contains(&2));
    }

    #[test]
    fn broken_active_clique_violates_property_2() {
        let mut s = k5_state();
        let a = s.active_club().members.clone();
        s.graph.remove_edge(a[0], a[1]);
        assert_eq!(property(&s), Some(2));
    }

    #[test]
    fn inactive_part_with_too_few_colors_violates_property_1() {
        let mut s = k5_state();
        let other = s.live_clubs().find(|c| c.id != s.active).unwrap().members.clone();
        s.graph.remove_edge(other[0], other[1]);
        assert_eq!(property(&s), Some(1));

        let mut s = k5_state();
        let a = s.active_club().members.clone();
        let to = s.part[other[0]];
        s.part[a[0]] = to;
        s.color[a[0]] = Some(0);
        assert_eq!(property(&s), Some(1));
    }

    #[test]
    fn moves_keep_vertices_partitioned() {
        let g = crate::constructions::o5();
        let r = RVector::new(vec![2, 2]).unwrap();
        let w = Witness::from_oracle(&g, 8, 4).unwrap().unwrap();
        let Built::Partition(mut s) = build_partition(&g, &r, &w).unwrap() else {
            panic!("O5 builds a partition");
        };
        let mut stats = crate::engine::EngineStats::default();
        while let Ok(crate::engine::StepResult::Moved(moves)) = s.step(&mut stats) {
            assert_eq!(moves.len(), 1);
            let mut seen: Vec<usize> = s.live_clubs().flat_map(|c| c.members.clone()).collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..g.n()).collect::<Vec<_>>());
            assert!(s.verify_state().is_valid());
            assert_eq!(s.log().iter().filter(|m| m.member == moves[0].member).count(), 1);
        }
        assert!(stats.moves > 0);
    }
}
