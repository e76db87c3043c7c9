#![allow(dead_code)]

use proptest::prelude::*;
use zue::{Channel, DirectedGraph};

/// Digraph on `n` vertices whose off-diagonal pairs are switched on by the
/// bits of `mask`, row by row.
pub fn graph_from_mask(n: usize, mask: u64) -> DirectedGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
    }
    DirectedGraph::from_edges(n, &edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = DirectedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1);
        let hi = if pairs == 0 { 1u64 } else { 1u64 << pairs };
        (Just(n), 0..hi).prop_map(|(n, m)| graph_from_mask(n, m))
    })
}

/// A row-stochastic channel with some exact zeros.
pub fn arb_channel(max_x: usize, max_y: usize) -> impl Strategy<Value = Channel> {
    (1..=max_x, 2..=max_y).prop_flat_map(|(x, y)| {
        proptest::collection::vec(proptest::collection::vec((0u32..4, 1u32..10), y), x).prop_map(
            move |rows| {
                let rows: Vec<Vec<f64>> = rows
                    .into_iter()
                    .map(|r| {
                        let mut w: Vec<f64> =
                            r.iter().map(|&(on, v)| if on == 0 { 0.0 } else { v as f64 }).collect();
                        if w.iter().all(|&v| v == 0.0) {
                            w[0] = 1.0;
                        }
                        let s: f64 = w.iter().sum();
                        w.iter().map(|v| v / s).collect()
                    })
                    .collect();
                Channel::from_rows(&rows, false).unwrap()
            },
        )
    })
}

/// Largest subset satisfying `ok`, and the lexicographically least one of
/// that size, by exhaustive search.
pub fn brute(n: usize, ok: impl Fn(&[usize]) -> bool) -> (usize, Vec<usize>) {
    let mut best: (usize, Vec<usize>) = (0, Vec::new());
    for s in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        if set.len() < best.0 || !ok(&set) {
            continue;
        }
        if set.len() > best.0 || set < best.1 {
            best = (set.len(), set);
        }
    }
    best
}

pub fn brute_alpha(g: &DirectedGraph) -> (usize, Vec<usize>) {
    brute(g.vertex_count(), |s| g.is_independent(s))
}

pub fn brute_rho(g: &DirectedGraph) -> (usize, Vec<usize>) {
    brute(g.vertex_count(), |s| g.induces_acyclic(s))
}

pub fn triangle() -> DirectedGraph {
    DirectedGraph::cycle(3).unwrap()
}
