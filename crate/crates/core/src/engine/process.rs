//! The moving process: active clubs send unmoved members to other clubhouses until a
//! coloring appears or no legal move is left.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{verify_clique, verify_coloring, CliqueCertificate, Coloring, Graph};
use crate::list::{color_mixed_join, ListAssignment, MixedKind};
use crate::oracle::{find_coloring_budget, Search};

use super::build::{build_with_mode, repair, Built};
use super::clubgroups::claim4_new;
use super::state::{ClaimContext, ClubId, Move, PartitionState};
use super::{ClaimId, EngineError, Mode, Outcome, RVector, Snapshot, Violation, Witness};

/// Node budget for coloring `G - H` when a mixed-join extension is applied to `H`.
const EXTENSION_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub mode: Mode,
    pub max_steps: usize,
}

impl EngineOptions {
    pub fn new(mode: Mode) -> Self {
        EngineOptions { mode, max_steps: 100_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    pub moves: usize,
    pub steps: usize,
    pub restarts: usize,
    pub max_activation: usize,
    /// Claims that ended the run with a coloring, by name.
    pub recolorings: BTreeMap<String, usize>,
    /// Claims whose recoloring failed outside the strict regime and were passed over.
    pub unsettled: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineRun {
    pub outcome: Outcome,
    pub stats: EngineStats,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepResult {
    Moved(Vec<Move>),
    ColoringFound(Coloring),
    Restarted,
    Terminal,
    Violation(Box<Violation>),
}

/// A member to send and its destination club. With a `carrier`, the carrier first moves
/// from the active club into the member's club, which then sends the member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Choice {
    pub member: usize,
    pub to: ClubId,
    pub carrier: Option<usize>,
}

/// Not yet sent to, not high, carried, member, clubhouse: smaller is preferred.
type MoveRank = (bool, bool, bool, usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub enum ClaimResult {
    /// The pair is adjacent; nothing to recolor.
    Edge,
    Colored(Coloring),
    Failed,
}

pub fn run_engine(g: &Graph, r: &RVector, witness: &Witness, mode: Mode) -> Result<EngineRun, EngineError> {
    run_engine_with(g, r, witness, &EngineOptions::new(mode))
}

pub fn run_engine_with(g: &Graph, r: &RVector, witness: &Witness, opts: &EngineOptions) -> Result<EngineRun, EngineError> {
    let mut stats = EngineStats::default();
    let mut state = match build_with_mode(g, r, witness, opts.mode)? {
        Built::Colored(c) => {
            *stats.recolorings.entry("Build".into()).or_default() += 1;
            return Ok(EngineRun {
                outcome: Outcome::Coloring(c),
                stats,
            });
        }
        Built::Violation(v) => {
            return Ok(EngineRun {
                outcome: Outcome::AssumptionViolation(v),
                stats,
            })
        }
        Built::Partition(s) => *s,
    };
    stats.max_activation = 1;
    loop {
        if stats.steps >= opts.max_steps {
            let v = state.violation(ClaimId::Repair, format!("step cap {} reached", opts.max_steps));
            return Ok(EngineRun {
                outcome: Outcome::AssumptionViolation(v),
                stats,
            });
        }
        stats.steps += 1;
        match state.step(&mut stats)? {
            StepResult::Moved(_) | StepResult::Restarted => continue,
            StepResult::ColoringFound(c) => {
                return Ok(EngineRun {
                    outcome: Outcome::Coloring(c),
                    stats,
                })
            }
            StepResult::Violation(v) => {
                return Ok(EngineRun {
                    outcome: Outcome::AssumptionViolation(v),
                    stats,
                })
            }
            StepResult::Terminal => {
                let outcome = state.terminal(&mut stats)?;
                return Ok(EngineRun { outcome, stats });
            }
        }
    }
}

/// Reruns the engine on the inputs recorded in a snapshot.
pub fn replay(snapshot: &Snapshot) -> Result<EngineRun, EngineError> {
    let r = RVector::new(snapshot.r.clone())?;
    run_engine(&snapshot.graph(), &r, &snapshot.witness, snapshot.mode)
}

fn bump(stats: &mut EngineStats, claim: &str) {
    *stats.recolorings.entry(claim.to_string()).or_default() += 1;
}

impl PartitionState {
    pub(crate) fn violation(&self, claim: ClaimId, detail: String) -> Box<Violation> {
        Box::new(Violation {
            claim,
            detail,
            snapshot: self.snapshot(),
        })
    }

    /// Claim failures end the run only when every part has 3 or 4 slots and the parts
    /// add up to `Δ - 1`. Elsewhere they are recorded and the process carries on.
    pub fn is_strict(&self) -> bool {
        self.r.is_theorem_grade() && self.r.total() + 1 == self.graph.max_degree()
    }

    fn is_high(&self, v: usize) -> bool {
        self.graph.degree(v) == self.graph.max_degree()
    }

    /// The next move under the preference rules: destinations the active club already
    /// sent to come first, then (in theorem 2 mode) high members, then the lowest member
    /// index and the lowest clubhouse index.
    pub fn choose_move(&self) -> Option<Choice> {
        let a = &self.clubs[self.active];
        let j = a.part;
        let sent: Vec<ClubId> = a.send_history.iter().map(|e| e.to).collect();
        let high_rank = |v: usize| self.mode == Mode::Theorem2 && !self.is_high(v);
        let mut best: Option<(MoveRank, Choice)> = None;
        let mut offer = |key: MoveRank, choice: Choice| {
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, choice));
            }
        };

        for &u in a.members.iter().filter(|&&u| !self.moved[u]) {
            for i in (0..self.r.k()).filter(|&i| i != j) {
                if self.degree_into(u, i) != self.r.parts[i] {
                    continue;
                }
                let Some(t) = self.target_club(u, i) else { continue };
                if self.clubs_complete(self.active, t) {
                    continue;
                }
                offer(
                    (!sent.contains(&t), high_rank(u), false, u, i),
                    Choice {
                        member: u,
                        to: t,
                        carrier: None,
                    },
                );
            }
        }

        if self.mode == Mode::Theorem2 && self.is_clique_club(self.active) {
            let group: Vec<ClubId> = self
                .live_clubs()
                .filter(|c| c.id != self.active && self.is_clique_club(c.id) && self.clubs_complete(self.active, c.id))
                .map(|c| c.id)
                .collect();
            let mut spanned: Vec<usize> = group.iter().map(|&c| self.clubs[c].part).collect();
            spanned.push(j);
            for &s in &group {
                let sp = self.clubs[s].part;
                let Some(&w) = a
                    .members
                    .iter()
                    .find(|&&w| !self.moved[w] && self.degree_into(w, sp) == self.r.parts[sp])
                else {
                    continue;
                };
                let mut after: Vec<usize> = self.clubs[s].members.clone();
                after.push(w);
                for &v in self.clubs[s].members.iter().filter(|&&v| !self.moved[v]) {
                    for l in (0..self.r.k()).filter(|l| !spanned.contains(l)) {
                        if self.degree_into(v, l) != self.r.parts[l] {
                            continue;
                        }
                        let Some(t) = self.target_club(v, l) else { continue };
                        if self.graph.is_complete_to(&after, &self.clubs[t].members) {
                            continue;
                        }
                        offer(
                            (true, high_rank(v), true, v, l),
                            Choice {
                                member: v,
                                to: t,
                                carrier: Some(w),
                            },
                        );
                    }
                }
            }
        }
        best.map(|(_, c)| c)
    }

    /// One round: settle low degrees, properties (3) and (4) and claim 3 for the active
    /// club, then make the preferred move, watching claim 1 around it.
    pub fn step(&mut self, stats: &mut EngineStats) -> Result<StepResult, EngineError> {
        let a = self.clubs[self.active].clone();
        let j = a.part;
        stats.max_activation = stats.max_activation.max(a.activation_count);

        for &x in &a.members {
            for i in (0..self.r.k()).filter(|&i| i != j) {
                let d = self.degree_into(x, i);
                let claim = if d < self.r.parts[i] {
                    Some(("LowDegree", ClaimId::LowDegree))
                } else if self.property4_failure(x, i).is_some() {
                    Some(("Property4", ClaimId::Property4))
                } else {
                    None
                };
                if let Some((name, id)) = claim {
                    return Ok(match self.relocate(&[(x, i)]) {
                        Some(c) => {
                            bump(stats, name);
                            StepResult::ColoringFound(c)
                        }
                        None => StepResult::Violation(self.violation(id, format!("moving {x} into part {i} gave no coloring"))),
                    });
                }
            }
        }

        for &x in &a.members {
            for i in (0..self.r.k()).filter(|&i| i != j) {
                if self.degree_into(x, i) == self.r.parts[i] && self.target_club(x, i).is_none() {
                    return Ok(self.restart(x, i, stats));
                }
            }
        }

        if let Some(res) = self.check_claim3(stats)? {
            return Ok(res);
        }
        if a.activation_count >= 4 {
            return Ok(StepResult::Violation(self.violation(
                ClaimId::Activation,
                format!("club {} became active {} times", a.id, a.activation_count),
            )));
        }

        let Some(choice) = self.choose_move() else {
            return Ok(StepResult::Terminal);
        };
        let mut sends = Vec::new();
        if let Some(w) = choice.carrier {
            sends.push((w, self.club_of[choice.member]));
        }
        sends.push((choice.member, choice.to));
        let mut moves = Vec::new();
        for (member, to) in sends {
            if let Some(res) = self.claim1_before(member, stats)? {
                return Ok(res);
            }
            let was_complete: Vec<ClubId> = self
                .live_clubs()
                .filter(|x| x.part != self.clubs[to].part && self.clubs_complete(to, x.id))
                .map(|x| x.id)
                .collect();
            self.apply_move(member, to);
            moves.push(*self.log.last().expect("move logged"));
            stats.moves += 1;
            if let Some(res) = self.claim1_after(member, &was_complete, stats)? {
                return Ok(res);
            }
        }
        let act = self.clubs[self.active].activation_count;
        stats.max_activation = stats.max_activation.max(act);
        Ok(StepResult::Moved(moves))
    }

    /// Sends `x` to part `i` (a move that keeps the number of edges inside parts) and
    /// repairs from there, starting a fresh process.
    fn restart(&mut self, x: usize, i: usize, stats: &mut EngineStats) -> StepResult {
        let a = self.clubs[self.active].members.clone();
        let mut part = self.part.clone();
        let mut color = self.color.clone();
        for (c, &y) in a.iter().filter(|&&y| y != x).enumerate() {
            color[y] = Some(c);
        }
        part[x] = i;
        color[x] = None;
        stats.restarts += 1;
        match repair(&self.graph, &self.r, self.mode, &self.witness, part, color, x, self.restarts + 1) {
            Built::Colored(c) => {
                bump(stats, "Repair");
                StepResult::ColoringFound(c)
            }
            Built::Violation(v) => StepResult::Violation(v),
            Built::Partition(mut s) => {
                s.restarts = self.restarts + 1;
                let mut log = std::mem::take(&mut self.log);
                log.append(&mut s.log);
                s.log = log;
                *self = *s;
                StepResult::Restarted
            }
        }
    }

    /// Completeness between clubs never changes. Before `member` leaves the active club:
    /// a club `X` that the rest of the active club is complete to, but `member` is not.
    fn claim1_before(&self, member: usize, stats: &mut EngineStats) -> Result<Option<StepResult>, EngineError> {
        let a = &self.clubs[self.active];
        let rest: Vec<usize> = a.members.iter().copied().filter(|&y| y != member).collect();
        if rest.is_empty() {
            return Ok(None);
        }
        for x in self.live_clubs() {
            if x.part == a.part || self.clubs_complete(a.id, x.id) || !self.graph.is_complete_to(&rest, &x.members) {
                continue;
            }
            let y = *x.members.iter().find(|&&y| !self.graph.has_edge(member, y)).expect("not complete");
            let ctx = ClaimContext {
                pair: (member, y),
                clubs: vec![a.id, x.id],
                clique: Vec::new(),
            };
            return self.settle_or_waive(ClaimId::C1, &ctx, stats);
        }
        Ok(None)
    }

    /// After `member` joined the active club: a club that was complete to the club before
    /// it arrived and no longer is.
    fn claim1_after(&self, member: usize, was_complete: &[ClubId], stats: &mut EngineStats) -> Result<Option<StepResult>, EngineError> {
        let a = &self.clubs[self.active];
        for &x in was_complete {
            if self.clubs_complete(a.id, x) {
                continue;
            }
            let y = *self.clubs[x]
                .members
                .iter()
                .find(|&&y| !self.graph.has_edge(member, y))
                .expect("not complete");
            let ctx = ClaimContext {
                pair: (member, y),
                clubs: vec![a.id, x],
                clique: Vec::new(),
            };
            return self.settle_or_waive(ClaimId::C1, &ctx, stats);
        }
        Ok(None)
    }

    /// A club active again after sending two members to the same club.
    fn check_claim3(&self, stats: &mut EngineStats) -> Result<Option<StepResult>, EngineError> {
        let a = &self.clubs[self.active];
        let h = &a.send_history;
        // Earlier repeats were examined on earlier activations.
        let Some(q) = h.len().checked_sub(1) else {
            return Ok(None);
        };
        if let Some(p) = h[..q].iter().rposition(|f| f.to == h[q].to) {
            let e = &h[p];
            let claim = if q == p + 1 { ClaimId::C3i } else { ClaimId::C3ii };
            let s = &self.clubs[e.to];
            let mut any = false;
            for &x in &a.members {
                for &y in &s.members {
                    if self.graph.has_edge(x, y) {
                        continue;
                    }
                    any = true;
                    let ctx = ClaimContext {
                        pair: (x, y),
                        clubs: vec![a.id, s.id],
                        clique: Vec::new(),
                    };
                    if let ClaimResult::Colored(c) = self.recolor_claim(claim, &ctx)? {
                        bump(stats, &claim.to_string());
                        return Ok(Some(StepResult::ColoringFound(c)));
                    }
                }
            }
            if !self.is_strict() {
                waive(stats, claim);
                return Ok(None);
            }
            let detail = if any {
                format!("club {} sent two members to club {}; no exchange recolors", a.id, s.id)
            } else {
                format!("club {} sent two members to club {} and is now complete to it", a.id, s.id)
            };
            return Ok(Some(StepResult::Violation(self.violation(claim, detail))));
        }
        Ok(None)
    }

    fn settle_or_waive(&self, claim: ClaimId, ctx: &ClaimContext, stats: &mut EngineStats) -> Result<Option<StepResult>, EngineError> {
        match self.settle(claim, ctx, stats)? {
            StepResult::Violation(_) if !self.is_strict() => {
                waive(stats, claim);
                Ok(None)
            }
            res => Ok(Some(res)),
        }
    }

    fn settle(&self, claim: ClaimId, ctx: &ClaimContext, stats: &mut EngineStats) -> Result<StepResult, EngineError> {
        Ok(match self.recolor_claim(claim, ctx)? {
            ClaimResult::Colored(c) => {
                bump(stats, &claim.to_string());
                StepResult::ColoringFound(c)
            }
            _ => StepResult::Violation(self.violation(
                claim,
                format!("pair {:?} in clubs {:?}: no recoloring found", ctx.pair, ctx.clubs),
            )),
        })
    }

    /// Carries out the recoloring a claim prescribes for the non-adjacent `ctx.pair`,
    /// falling back to every single move and one-for-one exchange between the clubs.
    pub fn recolor_claim(&self, claim: ClaimId, ctx: &ClaimContext) -> Result<ClaimResult, EngineError> {
        let (x, y) = ctx.pair;
        let n = self.graph.n();
        if x >= n || y >= n || x == y {
            return Err(EngineError::Contract(format!("bad claim pair {:?}", ctx.pair)));
        }
        if self.graph.has_edge(x, y) {
            return Ok(ClaimResult::Edge);
        }
        let club = |k: usize| -> Result<&super::Club, EngineError> {
            let id = *ctx
                .clubs
                .get(k)
                .ok_or_else(|| EngineError::Contract(format!("{claim} needs {} clubs", k + 1)))?;
            self.clubs
                .get(id)
                .ok_or_else(|| EngineError::Contract(format!("club {id} does not exist")))
        };
        let member = |v: usize, c: &super::Club| -> Result<(), EngineError> {
            if c.members.contains(&v) {
                Ok(())
            } else {
                Err(EngineError::Contract(format!("vertex {v} is not in club {}", c.id)))
            }
        };

        let mut tries: Vec<Vec<(usize, usize)>> = Vec::new();
        let around: Vec<&super::Club> = match claim {
            ClaimId::C1 | ClaimId::C3i | ClaimId::C3ii => {
                let (ra, sa) = (club(0)?, club(1)?);
                member(x, ra)?;
                member(y, sa)?;
                let (j, i) = (ra.part, sa.part);
                tries.push(vec![(y, j)]);
                tries.push(vec![(x, i)]);
                for &w in ra.members.iter().filter(|&&w| w != x) {
                    tries.push(vec![(w, i), (y, j)]);
                }
                vec![ra, sa]
            }
            ClaimId::C2 => {
                let (ra, se, sf) = (club(0)?, club(1)?, club(2)?);
                member(x, se)?;
                member(y, sf)?;
                let (j, e, f) = (ra.part, se.part, sf.part);
                for &w1 in &ra.members {
                    tries.push(vec![(w1, f), (y, e)]);
                    tries.push(vec![(w1, e), (x, f)]);
                    for &w2 in ra.members.iter().filter(|&&w2| w2 != w1) {
                        tries.push(vec![(w1, e), (x, j), (w2, f), (y, j)]);
                    }
                }
                vec![ra, se, sf]
            }
            ClaimId::Join3 | ClaimId::Join4 => {
                let kind = if claim == ClaimId::Join4 { MixedKind::K4E2 } else { MixedKind::K3E2 };
                return self.extend_mixed_join(kind, x, y, &ctx.clique);
            }
            _ => return Err(EngineError::Contract(format!("{claim} has no recoloring"))),
        };

        for t in &tries {
            if let Some(c) = self.relocate(t) {
                return Ok(ClaimResult::Colored(c));
            }
        }
        for (ai, a) in around.iter().enumerate() {
            for &v in &a.members {
                for p in (0..self.r.k()).filter(|&p| p != a.part) {
                    if let Some(c) = self.relocate(&[(v, p)]) {
                        return Ok(ClaimResult::Colored(c));
                    }
                }
            }
            for b in &around[ai + 1..] {
                for &u in &a.members {
                    for &v in &b.members {
                        if let Some(c) = self.relocate(&[(u, b.part), (v, a.part)]) {
                            return Ok(ClaimResult::Colored(c));
                        }
                    }
                }
            }
        }
        Ok(ClaimResult::Failed)
    }

    /// `H = clique + {x, y}` is an induced `K_q ∨ E_2`. Colors `G - H` with `t` colors, hands
    /// the leftover lists on `H` to the mixed-join coloring and combines the two.
    fn extend_mixed_join(&self, kind: MixedKind, x: usize, y: usize, clique: &[usize]) -> Result<ClaimResult, EngineError> {
        let g = &self.graph;
        let q = kind.clique_size();
        if clique.len() != q
            || !g.is_clique(clique)
            || clique.contains(&x)
            || clique.contains(&y)
            || !g.is_complete_to(&[x, y], clique)
        {
            return Err(EngineError::Contract(format!(
                "{clique:?} with {x}, {y} is not an induced K{q} ∨ E2"
            )));
        }
        let mut h: Vec<usize> = clique.to_vec();
        h.push(x);
        h.push(y);
        let t = self.r.total();
        let rest = g.without(&h);
        let Search::Found(cs) = find_coloring_budget(&rest.graph, t, EXTENSION_BUDGET) else {
            return Ok(ClaimResult::Failed);
        };
        let mut colors = vec![usize::MAX; g.n()];
        for (i, &p) in rest.parent.iter().enumerate() {
            colors[p] = cs[i];
        }
        let lists = ListAssignment::new(
            h.iter()
                .map(|&v| {
                    let taken: Vec<usize> = g.neighbors(v).iter().map(|w| colors[w]).filter(|&c| c != usize::MAX).collect();
                    (0..t).filter(|c| !taken.contains(c)).collect()
                })
                .collect(),
        );
        let local = match color_mixed_join(kind, &lists) {
            Ok(c) => c,
            Err(crate::list::ListError::Contract(_)) => return Ok(ClaimResult::Failed),
            Err(e) => return Err(e.into()),
        };
        for (k, &v) in h.iter().enumerate() {
            colors[v] = local.color(k).expect("complete coloring");
        }
        let coloring = Coloring::from_complete(colors, t);
        Ok(if verify_coloring(g, &coloring, true).unwrap_or(false) {
            ClaimResult::Colored(coloring)
        } else {
            ClaimResult::Failed
        })
    }

    /// No legal move is left. An unmoved member of the active club is blocked in every
    /// other clubhouse, so the active club and the blocking clubs span a clique once each
    /// missing edge between blocking clubs has been settled.
    pub(crate) fn terminal(&self, stats: &mut EngineStats) -> Result<Outcome, EngineError> {
        let a = &self.clubs[self.active];
        let j = a.part;
        let mut best: Option<(usize, Vec<ClubId>)> = None;
        for &u in a.members.iter().filter(|&&u| !self.moved[u]) {
            let mut blocking = Vec::new();
            for i in (0..self.r.k()).filter(|&i| i != j) {
                if self.degree_into(u, i) > self.r.parts[i] {
                    continue;
                }
                match self.target_club(u, i) {
                    Some(s) if self.clubs_complete(a.id, s) => blocking.push(s),
                    _ => {
                        return Ok(Outcome::AssumptionViolation(self.violation(
                            ClaimId::C4,
                            format!("member {u} still has a move into part {i}"),
                        )))
                    }
                }
            }
            let size: usize = blocking.iter().map(|&s| self.clubs[s].members.len()).sum::<usize>() + a.members.len();
            if best.as_ref().is_none_or(|(b, _)| size > *b) {
                best = Some((size, blocking));
            }
        }
        let Some((_, mut blocking)) = best else {
            if !self.is_strict() && self.graph.is_clique(&a.members) {
                waive(stats, ClaimId::C4);
                return Ok(Outcome::Clique(CliqueCertificate::new(a.members.clone(), false)));
            }
            return Ok(Outcome::AssumptionViolation(
                self.violation(ClaimId::C4, format!("active club {} has no unmoved member", a.id)),
            ));
        };

        let mut waived = false;
        for (k, &se) in blocking.iter().enumerate() {
            for &sf in &blocking[k + 1..] {
                if self.clubs_complete(se, sf) {
                    continue;
                }
                let x = self.clubs[se].members.iter().copied();
                let (x, y) = x
                    .flat_map(|x| self.clubs[sf].members.iter().map(move |&y| (x, y)))
                    .find(|&(x, y)| !self.graph.has_edge(x, y))
                    .expect("clubs not complete");
                let ctx = ClaimContext {
                    pair: (x, y),
                    clubs: vec![a.id, se, sf],
                    clique: Vec::new(),
                };
                match self.settle(ClaimId::C2, &ctx, stats)? {
                    StepResult::ColoringFound(c) => return Ok(Outcome::Coloring(c)),
                    StepResult::Violation(v) if self.is_strict() => return Ok(Outcome::AssumptionViolation(v)),
                    _ => {
                        waive(stats, ClaimId::C2);
                        waived = true;
                    }
                }
            }
        }
        if waived {
            blocking = self.largest_complete_family(&blocking);
        }

        let mut clique: Vec<usize> = a.members.clone();
        for &s in &blocking {
            clique.extend_from_slice(&self.clubs[s].members);
        }
        let cert = CliqueCertificate::new(clique, false);
        if !verify_clique(&self.graph, &cert).unwrap_or(false) {
            return Ok(Outcome::AssumptionViolation(
                self.violation(ClaimId::C2, "assembled clique failed verification".into()),
            ));
        }
        if self.mode == Mode::Theorem1 {
            return Ok(Outcome::Clique(cert));
        }
        self.theorem2_finish(cert, blocking, stats)
    }

    fn theorem2_finish(&self, cert: CliqueCertificate, blocking: Vec<ClubId>, stats: &mut EngineStats) -> Result<Outcome, EngineError> {
        let delta = self.graph.max_degree();
        if cert.size() >= delta {
            return Ok(Outcome::Clique(cert));
        }
        let high: Vec<usize> = cert.vertices.iter().copied().filter(|&v| self.is_high(v)).collect();
        if !high.is_empty() && high.len() + 5 >= delta {
            return Ok(Outcome::Clique(CliqueCertificate::new(high, true)));
        }
        let mut group = blocking;
        group.push(self.active);
        match claim4_new(self, &cert.vertices, &group, stats)? {
            Outcome::AssumptionViolation(_) if !self.is_strict() => {
                waive(stats, ClaimId::C4New);
                Ok(Outcome::Clique(cert))
            }
            out => Ok(out),
        }
    }

    /// The largest subfamily of `clubs` whose members are pairwise complete.
    fn largest_complete_family(&self, clubs: &[ClubId]) -> Vec<ClubId> {
        let m = clubs.len();
        let mut best: Vec<ClubId> = Vec::new();
        let mut best_size = 0;
        for mask in 0u32..(1 << m) {
            let pick: Vec<ClubId> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| clubs[b]).collect();
            let ok = pick
                .iter()
                .enumerate()
                .all(|(k, &p)| pick[k + 1..].iter().all(|&q| self.clubs_complete(p, q)));
            let size: usize = pick.iter().map(|&c| self.clubs[c].members.len()).sum();
            if ok && size > best_size {
                best_size = size;
                best = pick;
            }
        }
        best
    }
}

pub(crate) fn record(stats: &mut EngineStats, claim: ClaimId) {
    bump(stats, &claim.to_string());
}

fn waive(stats: &mut EngineStats, claim: ClaimId) {
    *stats.unsettled.entry(claim.to_string()).or_default() += 1;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, empty, join};

    fn state(g: Graph, r: &[usize], part: &[usize], active_member: usize) -> PartitionState {
        let n = g.n();
        let r = RVector::new(r.to_vec()).unwrap();
        let mut s = PartitionState::assemble(
            g,
            r,
            Mode::Theorem1,
            Witness {
                vertex: active_member,
                coloring: vec![0; n],
            },
            part.to_vec(),
            vec![None; n],
            active_member,
        );
        for c in s.clubs.clone() {
            if c.id != s.active {
                assert!(super::super::state::color_component(&s.graph, &c.members, s.r.parts[c.part], &mut s.color));
            }
        }
        s
    }

    /// `K_7` minus the edge `3-5`, split as an active triangle and two pairs.
    fn c2_gadget() -> PartitionState {
        let mut g = complete(7);
        g.remove_edge(3, 5);
        state(g, &[2, 2, 2], &[0, 0, 0, 1, 1, 2, 2], 0)
    }

    #[test]
    fn claim2_recolors_a_missing_edge() {
        let s = c2_gadget();
        let ctx = ClaimContext {
            pair: (3, 5),
            clubs: vec![s.active, s.club_of(3), s.club_of(5)],
            clique: Vec::new(),
        };
        let ClaimResult::Colored(c) = s.recolor_claim(ClaimId::C2, &ctx).unwrap() else {
            panic!("expected a coloring");
        };
        assert!(verify_coloring(s.graph(), &c, true).unwrap());
        assert!(c.colors_used() <= 6);
    }

    #[test]
    fn claims_on_adjacent_pairs_record_the_edge() {
        let s = c2_gadget();
        let ctx = ClaimContext {
            pair: (3, 6),
            clubs: vec![s.active, s.club_of(3), s.club_of(6)],
            clique: Vec::new(),
        };
        assert_eq!(s.recolor_claim(ClaimId::C2, &ctx).unwrap(), ClaimResult::Edge);
        let ctx = ClaimContext {
            pair: (0, 3),
            clubs: vec![s.active, s.club_of(3)],
            clique: Vec::new(),
        };
        assert_eq!(s.recolor_claim(ClaimId::C1, &ctx).unwrap(), ClaimResult::Edge);
    }

    #[test]
    fn malformed_claim_contexts_are_contract_errors() {
        let s = c2_gadget();
        let bad = |pair, clubs: Vec<ClubId>| ClaimContext {
            pair,
            clubs,
            clique: Vec::new(),
        };
        let contract = |r: Result<ClaimResult, EngineError>| matches!(r, Err(EngineError::Contract(_)));
        assert!(contract(s.recolor_claim(ClaimId::C1, &bad((3, 3), vec![0, 1]))));
        assert!(contract(s.recolor_claim(ClaimId::C1, &bad((3, 99), vec![0, 1]))));
        assert!(contract(s.recolor_claim(ClaimId::C2, &bad((3, 5), vec![s.active]))));
        // 5 is not in the club of 3.
        assert!(contract(s.recolor_claim(ClaimId::C2, &bad((5, 3), vec![s.active, s.club_of(3), s.club_of(5)]))));
        assert!(contract(s.recolor_claim(ClaimId::C4, &bad((3, 5), vec![]))));
    }

    #[test]
    fn mixed_join_claims_extend_through_the_lists() {
        let g = join(&complete(4), &empty(2));
        let s = state(g, &[3, 2], &[0, 0, 0, 0, 1, 1], 0);
        for (claim, clique) in [(ClaimId::Join4, vec![0, 1, 2, 3]), (ClaimId::Join3, vec![0, 1, 2])] {
            let ctx = ClaimContext {
                pair: (4, 5),
                clubs: Vec::new(),
                clique,
            };
            let ClaimResult::Colored(c) = s.recolor_claim(claim, &ctx).unwrap() else {
                panic!("{claim} gave no coloring");
            };
            assert!(verify_coloring(s.graph(), &c, true).unwrap());
            assert!(c.colors_used() <= 5);
        }
        let ctx = ClaimContext {
            pair: (4, 5),
            clubs: Vec::new(),
            clique: vec![0, 1, 4],
        };
        assert!(matches!(s.recolor_claim(ClaimId::Join3, &ctx), Err(EngineError::Contract(_))));
    }

    #[test]
    fn strictness_needs_theorem_grade_and_delta_minus_one() {
        let built = |g: &Graph, r: &[usize]| {
            let r = RVector::new(r.to_vec()).unwrap();
            let w = Witness::from_oracle(g, 0, r.total()).unwrap().unwrap();
            match build_with_mode(g, &r, &w, Mode::Theorem1).unwrap() {
                Built::Partition(s) => s,
                _ => panic!("expected a partition"),
            }
        };
        assert!(built(&crate::constructions::bk8(), &[4, 3]).is_strict());
        assert!(!built(&complete(13), &[3, 3, 3, 3]).is_strict());
        assert!(!c2_gadget().is_strict());
    }
}
