//! Independent brute-force solvers used as ground truth.
//!
//! These deliberately share no search code with `lists::exact_list_color`:
//! the vertex order is static (precolored first, then by decreasing degree)
//! and domains are tracked as plain arrays of booleans.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::lists::{ColorSet, Coloring, ListAssignment};
use crate::precoloring::StarredPrecoloring;

pub const DEFAULT_LIMIT: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("instance has {n} vertices, over the oracle limit of {limit}")]
pub struct OracleRefusal {
    pub n: usize,
    pub limit: usize,
}

pub fn brute_force_extension(p: &StarredPrecoloring, limit: usize) -> Result<Option<Coloring>, OracleRefusal> {
    let n = p.n();
    if n > limit {
        return Err(OracleRefusal { n, limit });
    }
    let pre = p.precolored();
    let lists: Vec<[bool; 5]> = (0..n)
        .map(|v| {
            let mut d = [false, true, true, true, true];
            if let (true, Some(c)) = (pre.contains(v), p.f().get(v)) {
                d = [false; 5];
                d[c as usize] = true;
            }
            d
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (!pre.contains(v), std::cmp::Reverse(p.graph().degree(v)), v));
    Ok(search(p.graph(), &order, lists))
}

/// Brute-force list coloring of `g|domain`.
pub fn brute_force_list_color(g: &Graph, l: &ListAssignment, domain: &VertexSet) -> Option<Coloring> {
    let lists: Vec<[bool; 5]> = (0..g.n())
        .map(|v| {
            let mut d = [false; 5];
            if domain.contains(v) {
                for c in l.get(v).iter() {
                    d[c as usize] = true;
                }
            }
            d
        })
        .collect();
    let mut order = domain.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).intersection(domain).len()), v));
    let sub_lists = lists;
    // Vertices outside the domain never enter `order`, and edges to them are ignored.
    search_within(g, domain, &order, sub_lists)
}

fn search(g: &Graph, order: &[usize], lists: Vec<[bool; 5]>) -> Option<Coloring> {
    search_within(g, &g.vertices(), order, lists)
}

fn search_within(g: &Graph, domain: &VertexSet, order: &[usize], mut lists: Vec<[bool; 5]>) -> Option<Coloring> {
    let mut colors = vec![0u8; g.n()];
    if rec(g, domain, order, 0, &mut lists, &mut colors) {
        let mut c = Coloring::new(g.n());
        for &v in order {
            c.set(v, colors[v]);
        }
        Some(c)
    } else {
        None
    }
}

fn rec(g: &Graph, domain: &VertexSet, order: &[usize], i: usize, lists: &mut [[bool; 5]], colors: &mut [u8]) -> bool {
    let Some(&v) = order.get(i) else { return true };
    for c in 1..=4u8 {
        if !lists[v][c as usize] {
            continue;
        }
        colors[v] = c;
        let mut removed = Vec::new();
        let mut ok = true;
        for u in g.neighbors(v).iter() {
            if !domain.contains(u) || colors[u] != 0 {
                if colors[u] == c {
                    ok = false;
                }
                continue;
            }
            if lists[u][c as usize] {
                lists[u][c as usize] = false;
                removed.push(u);
                if !lists[u][1..].iter().any(|&b| b) {
                    ok = false;
                }
            }
        }
        if ok && rec(g, domain, order, i + 1, lists, colors) {
            return true;
        }
        for u in removed {
            lists[u][c as usize] = true;
        }
        colors[v] = 0;
    }
    false
}

/// Whether `(g|domain, l)` is colorable, via the oracle.
pub fn colorable(g: &Graph, l: &ListAssignment, domain: &VertexSet) -> bool {
    brute_force_list_color(g, l, domain).is_some()
}

/// Direct check of a list coloring, independent of `Coloring` helpers.
pub fn verify_list_coloring(g: &Graph, l: &ListAssignment, domain: &VertexSet, c: &Coloring) -> bool {
    for v in domain {
        let Some(col) = c.get(v) else { return false };
        if !l.get(v).contains(col) {
            return false;
        }
        for u in g.neighbors(v).iter() {
            if domain.contains(u) && c.get(u) == Some(col) {
                return false;
            }
        }
    }
    true
}

pub fn singleton_lists(n: usize, pre: &[(usize, u8)]) -> ListAssignment {
    let mut l = ListAssignment::uniform(n, ColorSet::ALL);
    for &(v, c) in pre {
        l.set(v, ColorSet::single(c));
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_uncolorable() {
        let edges: Vec<_> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(5, &edges).unwrap();
        assert!(!colorable(&g, &ListAssignment::uniform(5, ColorSet::ALL), &g.vertices()));
    }
}
