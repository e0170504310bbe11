//! `f`-choosability by enumerating list assignments with `|Pot(L)| < |G|`.
//!
//! Assignments are generated up to color permutation: colors that belong to exactly the
//! same lists so far are interchangeable, so a new list only records how many colors it
//! takes from each such class. Two prunings cut the tree further. A prefix whose lists
//! admit a coloring leaving the rest degeneracy-colorable can never lead to a bad
//! assignment; and the list of the last vertex is decided in one pass from the colors
//! every coloring of the others is forced to use on its neighborhood.

use crate::config::Limits;
use crate::graph::Graph;
use crate::oracle::max_clique_unbounded;

use super::small_graphs::degree_signature;
use super::{ListError, ListSizeFunction};

/// Colorings of the prefix tried by the degeneracy pruning before giving up on a node.
const PRUNE_PROBES: usize = 48;

pub fn f_choosable(g: &Graph, f: &ListSizeFunction) -> Result<bool, ListError> {
    f_choosable_with_limit(g, f, Limits::current().choosability)
}

pub fn f_choosable_with_limit(g: &Graph, f: &ListSizeFunction, limit: usize) -> Result<bool, ListError> {
    if f.sizes.len() != g.n() {
        return Err(ListError::LengthMismatch {
            got: f.sizes.len(),
            n: g.n(),
        });
    }
    if g.n() > limit.min(32) {
        return Err(ListError::TooLarge {
            what: "f_choosable",
            n: g.n(),
            limit: limit.min(32),
        });
    }
    if f.sizes.contains(&0) {
        return Ok(false);
    }
    let n = g.n();
    let mut alive: Vec<bool> = vec![true; n];
    loop {
        let peel = (0..n).find(|&v| {
            alive[v] && f.sizes[v] > g.neighbors(v).iter().filter(|&u| alive[u]).count()
        });
        match peel {
            Some(v) => alive[v] = false,
            None => break,
        }
    }
    let mut rest = crate::bitset::VertexSet::new(n);
    for v in (0..n).filter(|&v| alive[v]) {
        rest.insert(v);
    }
    for comp in g.components_within(&rest) {
        let sub = g.induced(&comp);
        let sizes: Vec<usize> = comp.iter().map(|&v| f.sizes[v]).collect();
        if !Instance::new(&sub.graph, &sizes).choosable() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f(v) = max(d(v) - 1, 0)`.
pub fn is_d1_choosable(g: &Graph) -> Result<bool, ListError> {
    f_choosable(g, &ListSizeFunction::d1(g))
}

/// Predicted `d_1`-choosability of `K_t ∨ B`, by formula only.
pub fn classify_join(t: usize, b: &Graph) -> Result<bool, ListError> {
    if t < 4 {
        return Err(ListError::Contract(format!("classification needs t >= 4, got {t}")));
    }
    let omega = max_clique_unbounded(b).len();
    if omega + 1 >= b.n() {
        return Ok(false);
    }
    let is_e3 = b.n() == 3 && b.edge_count() == 0;
    let is_k13 = b.n() == 4 && degree_signature(b) == [1, 1, 1, 3];
    Ok(!match t {
        4 => is_e3 || is_k13,
        5 => is_e3,
        _ => false,
    })
}

/// A connected graph on at most 32 vertices with `1 <= f(v) <= d(v)`, relabeled so
/// that position order is the enumeration order.
struct Instance {
    m: usize,
    adj: Vec<u32>,
    f: Vec<usize>,
    colors: usize,
    /// First position of the trailing run of pairwise adjacent twins, if it has two or more.
    block: Option<usize>,
}

impl Instance {
    fn new(g: &Graph, sizes: &[usize]) -> Self {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (sizes[v], g.degree(v), v));
        let mut pos = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| g.neighbors(v).iter().fold(0u32, |a, u| a | 1 << pos[u]))
            .collect();
        let mut inst = Instance {
            m: g.n(),
            adj,
            f: order.iter().map(|&v| sizes[v]).collect(),
            colors: g.n().saturating_sub(1),
            block: None,
        };
        inst.block = inst.trailing_clique_block();
        inst
    }

    fn trailing_clique_block(&self) -> Option<usize> {
        let last = self.m.checked_sub(1)?;
        let mut s = last;
        while s > 0 {
            let (a, b) = (s - 1, last);
            let twins = self.f[a] == self.f[b]
                && self.adj[a] >> b & 1 == 1
                && self.adj[a] & !(1 << b) == self.adj[b] & !(1 << a);
            if !twins {
                break;
            }
            s -= 1;
        }
        (s < last).then_some(s)
    }

    fn choosable(&self) -> bool {
        if self.m <= 1 {
            return true;
        }
        let mut lists = vec![0u32; self.m];
        !self.bad_below(0, &mut lists)
    }

    /// True if some completion of `lists[..i]` is not colorable.
    fn bad_below(&self, i: usize, lists: &mut [u32]) -> bool {
        if i > 0 {
            match self.probe_prefix(i, lists) {
                Prefix::Uncolorable => return true,
                Prefix::Safe => return false,
                Prefix::Open => {}
            }
        }
        if Some(i) == self.block {
            return self.block_bad(i, lists);
        }
        if i == self.m - 1 {
            return self.last_vertex_bad(lists);
        }
        let classes = self.color_classes(i, lists);
        let mut found = false;
        self.each_list(&classes, 0, self.f[i], 0, &mut |list| {
            lists[i] = list;
            found = self.bad_below(i + 1, lists);
            found
        });
        lists[i] = 0;
        found
    }

    /// Colors grouped by which of the first `i` lists contain them.
    fn color_classes(&self, i: usize, lists: &[u32]) -> Vec<u32> {
        let mut classes: Vec<(u32, u32)> = Vec::new();
        for c in 0..self.colors {
            let sig = (0..i).fold(0u32, |s, v| if lists[v] >> c & 1 == 1 { s | 1 << v } else { s });
            match classes.iter_mut().find(|(s, _)| *s == sig) {
                Some((_, members)) => *members |= 1 << c,
                None => classes.push((sig, 1 << c)),
            }
        }
        classes.into_iter().map(|(_, m)| m).collect()
    }

    /// Calls `visit` on each list taking a prefix of every class; stops when it returns true.
    fn each_list(&self, classes: &[u32], j: usize, need: usize, acc: u32, visit: &mut dyn FnMut(u32) -> bool) -> bool {
        if need == 0 {
            return visit(acc);
        }
        if j == classes.len() {
            return false;
        }
        let tail: u32 = classes[j..].iter().map(|c| c.count_ones()).sum();
        if (tail as usize) < need {
            return false;
        }
        let size = classes[j].count_ones() as usize;
        let mut take = 0u32;
        let mut members = classes[j];
        for k in 0..=size.min(need) {
            if self.each_list(classes, j + 1, need - k, acc | take, visit) {
                return true;
            }
            if k < size.min(need) {
                let low = members & members.wrapping_neg();
                take |= low;
                members &= !low;
            }
        }
        false
    }

    fn probe_prefix(&self, i: usize, lists: &[u32]) -> Prefix {
        let prefix = (1u32 << i) - 1;
        let mut colors = vec![usize::MAX; self.m];
        let mut probes = 0usize;
        let mut any = false;
        let safe = self.probe_dfs(0, i, prefix, lists, &mut colors, &mut probes, &mut any);
        if safe {
            Prefix::Safe
        } else if any || probes >= PRUNE_PROBES {
            Prefix::Open
        } else {
            Prefix::Uncolorable
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn probe_dfs(
        &self,
        v: usize,
        i: usize,
        prefix: u32,
        lists: &[u32],
        colors: &mut [usize],
        probes: &mut usize,
        any: &mut bool,
    ) -> bool {
        if *probes >= PRUNE_PROBES {
            return false;
        }
        if v == i {
            *any = true;
            *probes += 1;
            return self.peelable(i, prefix, colors);
        }
        let mut used = 0u32;
        let mut nb = self.adj[v] & prefix & ((1u32 << v) - 1);
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            used |= 1 << colors[u];
            nb &= nb - 1;
        }
        let avail = lists[v] & !used;
        // Reuse colors already on the prefix first, so the rest sees fewer distinct colors.
        let seen = colors[..v].iter().fold(0u32, |a, &c| a | 1 << c);
        for part in [avail & seen, avail & !seen] {
            let mut opts = part;
            while opts != 0 {
                let c = opts.trailing_zeros() as usize;
                opts &= opts - 1;
                colors[v] = c;
                if self.probe_dfs(v + 1, i, prefix, lists, colors, probes, any) {
                    return true;
                }
            }
        }
        colors[v] = usize::MAX;
        false
    }

    /// Whether the vertices from position `i` on peel off when each keeps
    /// `f(u)` minus the number of distinct prefix colors in its neighborhood.
    fn peelable(&self, i: usize, prefix: u32, colors: &[usize]) -> bool {
        let mut slack = vec![0isize; self.m];
        for u in i..self.m {
            let mut seen = 0u32;
            let mut nb = self.adj[u] & prefix;
            while nb != 0 {
                seen |= 1 << colors[nb.trailing_zeros() as usize];
                nb &= nb - 1;
            }
            slack[u] = self.f[u] as isize - seen.count_ones() as isize;
        }
        let mut rest: u32 = if self.m == 32 { !prefix } else { ((1u32 << self.m) - 1) & !prefix };
        loop {
            if rest == 0 {
                return true;
            }
            let mut scan = rest;
            let mut removed = false;
            while scan != 0 {
                let u = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if slack[u] > (self.adj[u] & rest).count_ones() as isize {
                    rest &= !(1 << u);
                    removed = true;
                }
            }
            if !removed {
                return false;
            }
        }
    }

    /// The vertices from `s` on form a clique of twins sharing one outside neighborhood `N`,
    /// so a coloring of the prefix matters to them only through the color set it puts on `N`.
    /// A bad assignment for the block is a multiset of lists that fails Hall's condition
    /// against every such color set.
    fn block_bad(&self, s: usize, lists: &mut [u32]) -> bool {
        let prefix = (1u32 << s) - 1;
        let outside = self.adj[s] & prefix;
        let r = self.m - s;
        let k = self.f[s];
        let mut seen: Vec<u32> = Vec::new();
        let mut colors = vec![0usize; s];
        self.prefix_colorings(0, s, lists, &mut colors, &mut |cs| {
            let mut nb = outside;
            let mut set = 0u32;
            while nb != 0 {
                set |= 1 << cs[nb.trailing_zeros() as usize];
                nb &= nb - 1;
            }
            seen.push(set);
        });
        if seen.is_empty() {
            return true;
        }
        seen.sort_unstable_by_key(|s| (s.count_ones(), *s));
        seen.dedup();
        let mut minimal: Vec<u32> = Vec::new();
        for set in seen {
            if !minimal.iter().any(|&m| m & set == m) {
                minimal.push(set);
            }
        }
        // Fewer than `k - r + 1` blocked colors leave every block list long enough.
        if minimal.iter().any(|m| k >= r + m.count_ones() as usize) {
            return false;
        }
        let subsets: Vec<u32> = k_subsets(self.colors, k);
        let classes = self.color_classes(s, lists);
        let mut block_lists: Vec<u32> = Vec::with_capacity(r);
        let mut found = false;
        self.each_list(&classes, 0, k, 0, &mut |first| {
            block_lists.clear();
            block_lists.push(first);
            let alive: Vec<u32> = minimal
                .iter()
                .copied()
                .filter(|&m| has_sdr(&block_lists, m))
                .collect();
            found = alive.is_empty() || multiset_kills(&subsets, 0, r - 1, &mut block_lists, &alive);
            found
        });
        found
    }

    fn prefix_colorings(&self, v: usize, s: usize, lists: &[u32], colors: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if v == s {
            visit(colors);
            return;
        }
        let mut used = 0u32;
        let mut nb = self.adj[v] & ((1u32 << v) - 1);
        while nb != 0 {
            used |= 1 << colors[nb.trailing_zeros() as usize];
            nb &= nb - 1;
        }
        let mut opts = lists[v] & !used;
        while opts != 0 {
            colors[v] = opts.trailing_zeros() as usize;
            opts &= opts - 1;
            self.prefix_colorings(v + 1, s, lists, colors, visit);
        }
    }

    /// Lists for all but the last vertex are fixed; a bad final list exists iff the others
    /// are uncolorable or at least `f(last)` colors are forced onto its neighborhood.
    fn last_vertex_bad(&self, lists: &mut [u32]) -> bool {
        let last = self.m - 1;
        let others = (1u32 << last) - 1;
        let mut forced = 0usize;
        for c in 0..self.colors {
            let saved: Vec<u32> = lists.to_vec();
            let mut nb = self.adj[last] & others;
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                lists[u] &= !(1 << c);
                nb &= nb - 1;
            }
            let ok = colorable(&self.adj, lists, others);
            lists.copy_from_slice(&saved);
            if !ok {
                forced += 1;
                if forced >= self.f[last] {
                    return true;
                }
            }
        }
        false
    }
}

/// Extends `lists` by `left` more lists drawn from `subsets[from..]` in nondecreasing order;
/// true once some extension leaves no blocked set in `alive` with a system of distinct
/// representatives.
fn multiset_kills(subsets: &[u32], from: usize, left: usize, lists: &mut Vec<u32>, alive: &[u32]) -> bool {
    if left == 0 {
        return false;
    }
    for (idx, &sub) in subsets.iter().enumerate().skip(from) {
        lists.push(sub);
        let still: Vec<u32> = alive.iter().copied().filter(|&m| has_sdr(lists, m)).collect();
        let killed = still.is_empty() || multiset_kills(subsets, idx, left - 1, lists, &still);
        lists.pop();
        if killed {
            return true;
        }
    }
    false
}

/// Whether the lists, minus the colors in `blocked`, have distinct representatives.
fn has_sdr(lists: &[u32], blocked: u32) -> bool {
    let mut owner = [usize::MAX; 32];
    for i in 0..lists.len() {
        let mut visited = 0u32;
        if !augment(lists, blocked, i, &mut owner, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(lists: &[u32], blocked: u32, i: usize, owner: &mut [usize; 32], visited: &mut u32) -> bool {
    let mut opts = lists[i] & !blocked & !*visited;
    while opts != 0 {
        let c = opts.trailing_zeros() as usize;
        opts &= opts - 1;
        *visited |= 1 << c;
        if owner[c] == usize::MAX || augment(lists, blocked, owner[c], owner, visited) {
            owner[c] = i;
            return true;
        }
    }
    false
}

fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

enum Prefix {
    Uncolorable,
    Safe,
    Open,
}

/// Whether the vertices of `active` can be colored from their lists.
pub(crate) fn colorable(adj: &[u32], lists: &[u32], active: u32) -> bool {
    let mut avail: Vec<u32> = lists.to_vec();
    colorable_rec(adj, &mut avail, active)
}

fn colorable_rec(adj: &[u32], avail: &mut [u32], left: u32) -> bool {
    if left == 0 {
        return true;
    }
    let mut best = usize::MAX;
    let mut best_n = u32::MAX;
    let mut scan = left;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let k = avail[v].count_ones();
        if k < best_n {
            best_n = k;
            best = v;
            if k == 0 {
                return false;
            }
        }
    }
    let v = best;
    let left = left & !(1 << v);
    let nb = adj[v] & left;
    let mut opts = avail[v];
    while opts != 0 {
        let c = opts & opts.wrapping_neg();
        opts &= opts - 1;
        let mut touched = 0u32;
        let mut scan = nb;
        while scan != 0 {
            let u = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if avail[u] & c != 0 {
                avail[u] &= !c;
                touched |= 1 << u;
            }
        }
        let ok = colorable_rec(adj, avail, left);
        let mut scan = touched;
        while scan != 0 {
            let u = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            avail[u] |= c;
        }
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, empty, join, star};

    fn uniform(g: &Graph, k: usize) -> bool {
        f_choosable(g, &ListSizeFunction::uniform(g.n(), k)).unwrap()
    }

    #[test]
    fn cycles_and_triangles() {
        assert!(!uniform(&complete(3), 2));
        assert!(uniform(&complete(3), 3));
        assert!(!uniform(&cycle(5), 2));
        assert!(uniform(&cycle(5), 3));
        assert!(uniform(&cycle(4), 2));
        assert!(uniform(&cycle(6), 2));
    }

    #[test]
    fn k33_is_not_2_choosable() {
        let g = join(&empty(3), &empty(3));
        assert!(!uniform(&g, 2));
        assert!(uniform(&g, 3));
        // K_{2,4} is not 2-choosable either; K_{2,3} is.
        assert!(!uniform(&join(&empty(2), &empty(4)), 2));
        assert!(uniform(&join(&empty(2), &empty(3)), 2));
    }

    #[test]
    fn zero_sizes_and_isolated_vertices() {
        let g = empty(2);
        assert!(!f_choosable(&g, &ListSizeFunction { sizes: vec![1, 0] }).unwrap());
        assert!(f_choosable(&g, &ListSizeFunction { sizes: vec![1, 1] }).unwrap());
        assert!(!is_d1_choosable(&g).unwrap());
    }

    #[test]
    fn refusal_above_the_bound() {
        let g = complete(11);
        assert!(matches!(
            f_choosable(&g, &ListSizeFunction::uniform(11, 3)),
            Err(ListError::TooLarge { .. })
        ));
        assert!(f_choosable(&complete(3), &ListSizeFunction::uniform(2, 3)).is_err());
    }

    #[test]
    fn join_examples() {
        assert!(!is_d1_choosable(&join(&complete(4), &empty(3))).unwrap());
        assert!(is_d1_choosable(&join(&complete(6), &empty(3))).unwrap());
        let k2k1 = crate::constructions::disjoint_union(&complete(2), &complete(1));
        assert!(!is_d1_choosable(&join(&complete(4), &k2k1)).unwrap());
        assert!(!is_d1_choosable(&join(&complete(4), &star(3))).unwrap());
        assert!(!is_d1_choosable(&join(&complete(5), &empty(3))).unwrap());
    }

    #[test]
    fn classify_formula() {
        assert!(!classify_join(5, &empty(3)).unwrap());
        assert!(!classify_join(4, &star(3)).unwrap());
        assert!(classify_join(6, &empty(3)).unwrap());
        assert!(classify_join(5, &star(3)).unwrap());
        assert!(!classify_join(7, &complete(3)).unwrap());
        assert!(!classify_join(4, &empty(0)).unwrap());
        assert!(classify_join(3, &empty(3)).is_err());
    }

    #[test]
    fn colorable_mask_solver() {
        let adj = [0b110, 0b101, 0b011];
        assert!(!colorable(&adj, &[0b11, 0b11, 0b11], 0b111));
        assert!(colorable(&adj, &[0b11, 0b11, 0b100], 0b111));
        assert!(colorable(&adj, &[0b1, 0b1, 0], 0b001));
    }
}
