//! Unpruned choosability oracle over a universe of `Σ f(v)` colors.
//!
//! Any assignment uses at most `Σ f(v)` distinct colors, so up to renaming it is one of
//! the assignments generated here, where each list takes some colors already in play
//! and fills up with the next unused ones.

use crate::config::Limits;
use crate::graph::Graph;

use super::{ListError, ListSizeFunction};

pub fn f_choosable_naive(g: &Graph, f: &ListSizeFunction) -> Result<bool, ListError> {
    f_choosable_naive_with_limits(g, f, Limits::current())
}

pub fn f_choosable_naive_with_limits(g: &Graph, f: &ListSizeFunction, limits: &Limits) -> Result<bool, ListError> {
    if f.sizes.len() != g.n() {
        return Err(ListError::LengthMismatch {
            got: f.sizes.len(),
            n: g.n(),
        });
    }
    if g.n() > limits.naive_vertices {
        return Err(ListError::TooLarge {
            what: "f_choosable_naive",
            n: g.n(),
            limit: limits.naive_vertices,
        });
    }
    let total: usize = f.sizes.iter().sum();
    if total > limits.naive_total {
        return Err(ListError::TooLarge {
            what: "f_choosable_naive (total list size)",
            n: total,
            limit: limits.naive_total,
        });
    }
    let mut lists: Vec<Vec<usize>> = Vec::with_capacity(g.n());
    Ok(!any_bad(g, &f.sizes, &mut lists, 0))
}

fn any_bad(g: &Graph, sizes: &[usize], lists: &mut Vec<Vec<usize>>, used: usize) -> bool {
    let i = lists.len();
    if !has_list_coloring(g, lists) {
        return true;
    }
    if i == g.n() {
        return false;
    }
    let k = sizes[i];
    for old in 0..=k.min(used) {
        let fresh: Vec<usize> = (used..used + k - old).collect();
        let mut found = false;
        for_each_subset(used, old, &mut |subset| {
            let mut list = subset.to_vec();
            list.extend_from_slice(&fresh);
            lists.push(list);
            found = any_bad(g, sizes, lists, used + k - old);
            lists.pop();
            found
        });
        if found {
            return true;
        }
    }
    false
}

fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == k {
            return visit(acc);
        }
        for c in start..n {
            acc.push(c);
            if rec(c + 1, n, k, acc, visit) {
                return true;
            }
            acc.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), visit);
}

/// Plain backtracking over the first `lists.len()` vertices in index order.
fn has_list_coloring(g: &Graph, lists: &[Vec<usize>]) -> bool {
    fn rec(g: &Graph, lists: &[Vec<usize>], colors: &mut Vec<usize>) -> bool {
        let v = colors.len();
        if v == lists.len() {
            return true;
        }
        for &c in &lists[v] {
            if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                colors.push(c);
                if rec(g, lists, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    rec(g, lists, &mut Vec::with_capacity(lists.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, empty, join};

    fn naive(g: &Graph, sizes: &[usize]) -> bool {
        f_choosable_naive(g, &ListSizeFunction { sizes: sizes.to_vec() }).unwrap()
    }

    #[test]
    fn trivial_cases() {
        assert!(!naive(&complete(2), &[1, 1]));
        assert!(naive(&complete(2), &[1, 2]));
        assert!(!naive(&complete(3), &[2, 2, 2]));
        assert!(naive(&complete(3), &[1, 2, 3]));
        assert!(!naive(&cycle(5), &[2; 5]));
        assert!(naive(&cycle(4), &[2; 4]));
        assert!(!naive(&empty(1), &[0]));
    }

    #[test]
    fn k_2_4_is_not_2_choosable() {
        assert!(!naive(&join(&empty(2), &empty(4)), &[2; 6]));
        assert!(naive(&join(&empty(2), &empty(3)), &[2; 5]));
    }

    #[test]
    fn refuses_large_inputs() {
        assert!(f_choosable_naive(&complete(8), &ListSizeFunction::uniform(8, 1)).is_err());
        assert!(f_choosable_naive(&complete(6), &ListSizeFunction::uniform(6, 3)).is_err());
    }
}
