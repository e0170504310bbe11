//! Named graph families used as fixtures and CLI inputs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, GraphError};

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::new(n);
    if n >= 3 {
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
    } else if n == 2 {
        g.add_edge(0, 1);
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g
}

/// `K_{1,leaves}` with the center at index 0.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::new(leaves + 1);
    for i in 1..=leaves {
        g.add_edge(0, i);
    }
    g
}

/// `G + H`: vertices of `h` follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let offset = g.n();
    let mut out = Graph::new(g.n() + h.n());
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(u + offset, v + offset);
    }
    out
}

/// `G ∨ H`: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    for u in 0..g.n() {
        for v in 0..h.n() {
            out.add_edge(u, g.n() + v);
        }
    }
    out
}

/// `C_cycle_len[K_clique_size]`; vertex `(i, a)` has index `i * clique_size + a`.
pub fn lex_product_cycle_clique(cycle_len: usize, clique_size: usize) -> Result<Graph, GraphError> {
    if cycle_len < 5 || cycle_len.is_multiple_of(2) {
        return Err(GraphError::Construction(format!(
            "cycle length must be odd and at least 5, got {cycle_len}"
        )));
    }
    if clique_size == 0 {
        return Err(GraphError::Construction("clique size must be positive".into()));
    }
    let k = clique_size;
    let mut g = Graph::new(cycle_len * k);
    for i in 0..cycle_len {
        let j = (i + 1) % cycle_len;
        for a in 0..k {
            for b in 0..k {
                if a < b {
                    g.add_edge(i * k + a, i * k + b);
                }
                g.add_edge(i * k + a, j * k + b);
            }
        }
    }
    Ok(g)
}

/// Five triangles `D_1..D_5`, with `D_i` complete to `D_j` whenever `i - j ≡ ±1 (mod 5)`.
pub fn bk8() -> Graph {
    let mut g = Graph::new(15);
    for i in 0..5 {
        for a in 0..3 {
            for b in a + 1..3 {
                g.add_edge(3 * i + a, 3 * i + b);
            }
        }
    }
    for i in 0..5 {
        let j = (i + 1) % 5;
        for a in 0..3 {
            for b in 0..3 {
                g.add_edge(3 * i + a, 3 * j + b);
            }
        }
    }
    g
}

pub const O5_EDGES: [(usize, usize); 19] = [
    (1, 0),
    (2, 0),
    (3, 0),
    (2, 1),
    (3, 1),
    (2, 3),
    (5, 4),
    (6, 4),
    (6, 5),
    (6, 7),
    (7, 4),
    (7, 5),
    (4, 8),
    (6, 8),
    (5, 3),
    (7, 3),
    (0, 8),
    (1, 8),
    (2, 8),
];

/// The 9-vertex graph `O_5`: two `K_4`s, `{v0..v3}` and `{v4..v7}`, linked through the
/// degree-5 vertices `v3` and `v8`.
pub fn o5() -> Graph {
    Graph::from_edges(9, &O5_EDGES)
}

/// The Moser spindle: 7 vertices, 11 edges, 4-critical with maximum degree 4.
pub fn moser_spindle() -> Graph {
    Graph::from_edges(
        7,
        &[
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (0, 5),
            (4, 5),
            (4, 6),
            (5, 6),
            (3, 6),
        ],
    )
}

/// Hajós construction: glue `y1` onto `x1`, delete the edges `x1x2` and `y1y2`, and add
/// `x2y2`. Vertices of `h` other than `y1` follow those of `g` in order.
pub fn hajos(g: &Graph, (x1, x2): (usize, usize), h: &Graph, (y1, y2): (usize, usize)) -> Result<Graph, GraphError> {
    if !g.has_edge(x1, x2) || !h.has_edge(y1, y2) {
        return Err(GraphError::Construction("Hajós construction needs an edge on each side".into()));
    }
    let map = |v: usize| match v.cmp(&y1) {
        std::cmp::Ordering::Equal => x1,
        std::cmp::Ordering::Less => g.n() + v,
        std::cmp::Ordering::Greater => g.n() + v - 1,
    };
    let mut out = Graph::new(g.n() + h.n() - 1);
    for (u, v) in g.edges().filter(|&e| e != (x1.min(x2), x1.max(x2))) {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges().filter(|&e| e != (y1.min(y2), y1.max(y2))) {
        out.add_edge(map(u), map(v));
    }
    out.add_edge(x2, map(y2));
    Ok(out)
}

/// Adds random edges between vertices of degree below `delta` until `edges` have been
/// placed or no such pair is left.
pub fn fill_to_degree<R: Rng>(g: &mut Graph, delta: usize, edges: usize, rng: &mut R) {
    let n = g.n();
    let mut placed = 0;
    while placed < edges {
        let open: Vec<usize> = (0..n).filter(|&v| g.degree(v) < delta).collect();
        let pairs: Vec<(usize, usize)> = open
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| open[i + 1..].iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let Some(&(u, v)) = pairs.choose(rng) else { break };
        g.add_edge(u, v);
        placed += 1;
    }
}

/// `n` vertices in `k` color classes of near-equal size, with random edges between classes
/// and maximum degree at most `delta`. `k`-colorable by construction.
pub fn random_colorable<R: Rng>(n: usize, k: usize, delta: usize, density: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| k == 0 || u % k != v % k)
        .collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if g.degree(u) < delta && g.degree(v) < delta && rng.gen_bool(density) {
            g.add_edge(u, v);
        }
    }
    g
}

/// A clique on `0..clique` plus random edges up to maximum degree `delta`.
pub fn planted_clique<R: Rng>(n: usize, clique: usize, delta: usize, edges: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..clique.min(n) {
        for v in u + 1..clique.min(n) {
            g.add_edge(u, v);
        }
    }
    fill_to_degree(&mut g, delta, edges, rng);
    g
}

/// Vertex-disjoint groups of cliques of size `Δ - 4`: `plain` bare cliques, and `paired`
/// cliques with an extra vertex adjacent to all members but the last. Up to
/// `cross_edges` random edges between groups are added with maximum degree `Δ`. A vertex
/// has at most 5 neighbors outside its group, so a new clique of size `Δ - 4` would need
/// some outside vertex with `Δ - 9` neighbors in one group; cross neighbors per group are
/// capped at `Δ - 10`, so every maximum clique lies inside a group.
pub fn clique_groups<R: Rng>(delta: usize, plain: usize, paired: usize, cross_edges: usize, rng: &mut R) -> Graph {
    let q = delta.saturating_sub(4);
    let n = plain * q + paired * (q + 1);
    let mut g = Graph::new(n);
    let mut group = vec![0; n];
    let mut next = 0;
    for i in 0..plain + paired {
        let members: Vec<usize> = (next..next + q).collect();
        for (a, &u) in members.iter().enumerate() {
            group[u] = i;
            for &v in &members[a + 1..] {
                g.add_edge(u, v);
            }
        }
        next += q;
        if i >= plain {
            group[next] = i;
            for &u in &members[..q - 1] {
                g.add_edge(u, next);
            }
            next += 1;
        }
    }
    let cap = delta.saturating_sub(10);
    let mut placed = 0;
    for _ in 0..cross_edges * 20 {
        if placed == cross_edges {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if group[u] == group[v] || g.has_edge(u, v) || g.degree(u) >= delta || g.degree(v) >= delta {
            continue;
        }
        let into = |a: usize, b: usize| g.neighbors(a).iter().filter(|&w| group[w] == group[b]).count();
        if into(u, v) >= cap || into(v, u) >= cap {
            continue;
        }
        g.add_edge(u, v);
        placed += 1;
    }
    g
}

/// Resolves a construction name.
///
/// Atoms: `k<n>`, `c<n>`, `e<n>`, `p<n>`, `star<n>`, `o5`, `bk8`, `moser`.
/// Compound forms: `lex:<cycle>:<clique>`, `join:<x>:<y>`, and `x+y` for disjoint union,
/// where `x`, `y` are atoms or unions of atoms.
pub fn by_name(name: &str) -> Result<Graph, GraphError> {
    let name = name.trim().to_ascii_lowercase();
    if let Some(rest) = name.strip_prefix("lex:") {
        let (a, b) = rest
            .split_once(':')
            .ok_or_else(|| GraphError::Construction(format!("expected lex:<cycle>:<clique>, got `{name}`")))?;
        return lex_product_cycle_clique(parse_size(a, &name)?, parse_size(b, &name)?);
    }
    if let Some(rest) = name.strip_prefix("join:") {
        let (a, b) = rest
            .split_once(':')
            .ok_or_else(|| GraphError::Construction(format!("expected join:<g>:<h>, got `{name}`")))?;
        return Ok(join(&union_of_atoms(a)?, &union_of_atoms(b)?));
    }
    union_of_atoms(&name)
}

fn union_of_atoms(spec: &str) -> Result<Graph, GraphError> {
    let mut parts = spec.split('+');
    let mut g = atom(parts.next().unwrap_or(""))?;
    for p in parts {
        g = disjoint_union(&g, &atom(p)?);
    }
    Ok(g)
}

fn atom(name: &str) -> Result<Graph, GraphError> {
    match name {
        "o5" => return Ok(o5()),
        "bk8" => return Ok(bk8()),
        "moser" => return Ok(moser_spindle()),
        _ => {}
    }
    if let Some(n) = name.strip_prefix("star") {
        return Ok(star(parse_size(n, name)?));
    }
    let (kind, digits) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    let n = parse_size(digits, name)?;
    match kind {
        "k" => Ok(complete(n)),
        "e" => Ok(empty(n)),
        "p" => Ok(path(n)),
        "c" if n >= 3 => Ok(cycle(n)),
        "c" => Err(GraphError::Construction(format!("cycle needs at least 3 vertices: `{name}`"))),
        _ => Err(GraphError::Construction(format!("unknown construction `{name}`"))),
    }
}

fn parse_size(s: &str, whole: &str) -> Result<usize, GraphError> {
    s.parse()
        .map_err(|_| GraphError::Construction(format!("bad size `{s}` in `{whole}`")))
}
