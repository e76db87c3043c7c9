//! Constructive lower bounds on ρ and α: the random-order acyclic set behind
//! the Caro–Wei sum, and equal-weight classes in powers of acyclic graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{index_to_word, DirectedGraph};
use crate::error::{Error, Result};

/// `Σₓ 1/(1 + indeg(x))`, a lower bound on ρ(g).
pub fn caro_wei_sum(g: &DirectedGraph) -> f64 {
    (0..g.vertex_count())
        .map(|x| 1.0 / (1 + g.in_degree(x)) as f64)
        .sum()
}

/// Vertices all of whose in-neighbours precede them in `order`.
///
/// `order` lists the vertices from first to last. The result is sorted and
/// always induces an acyclic subgraph.
pub fn acyclic_set_from_order(g: &DirectedGraph, order: &[usize]) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(Error::invalid(format!(
            "order has {} entries for {n} vertices",
            order.len()
        )));
    }
    let mut rank = vec![usize::MAX; n];
    for (pos, &v) in order.iter().enumerate() {
        g.check_vertex(v)?;
        if rank[v] != usize::MAX {
            return Err(Error::invalid(format!("vertex {v} repeated in order")));
        }
        rank[v] = pos;
    }
    let set: Vec<usize> = (0..n)
        .filter(|&x| g.in_neighbors(x).all(|p| rank[p] < rank[x]))
        .collect();
    debug_assert!(g.induces_acyclic(&set));
    Ok(set)
}

/// Sizes of `acyclic_set_from_order` over `trials` uniformly random orders.
pub fn random_order_sizes(g: &DirectedGraph, trials: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    let mut rank = vec![0usize; order.len()];
    (0..trials)
        .map(|_| {
            order.shuffle(&mut rng);
            for (pos, &v) in order.iter().enumerate() {
                rank[v] = pos;
            }
            (0..order.len())
                .filter(|&x| g.in_neighbors(x).all(|p| rank[p] < rank[x]))
                .count()
        })
        .collect()
}

/// Largest equal-weight class of `V(g)ⁿ` for an acyclic `g`.
///
/// Vertices are labelled `1..=|V|` along the lexicographically least
/// topological order; the weight of a word is the sum of its labels. Every
/// class is independent in `gⁿ`; the largest (lowest weight among ties) has
/// at least `|V|ⁿ / (n|V| − n + 1)` members. Words are returned as indices
/// into `strong_power(g, n)`, ascending.
pub fn weight_partition_independent_set(g: &DirectedGraph, n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::invalid("blocklength must be at least 1"));
    }
    let order = g.topological_order().ok_or(Error::Cyclic)?;
    let k = g.vertex_count();
    if k == 0 {
        return Ok(Vec::new());
    }
    let total = k
        .checked_pow(n as u32)
        .filter(|&t| t <= crate::digraph::MAX_VERTICES)
        .ok_or(Error::SizeLimit {
            what: "power vertex count",
            actual: usize::MAX,
            limit: crate::digraph::MAX_VERTICES,
        })?;
    let mut label = vec![0usize; k];
    for (pos, &v) in order.iter().enumerate() {
        label[v] = pos + 1;
    }
    let weight = |idx: usize| -> usize { index_to_word(idx, k, n).iter().map(|&x| label[x]).sum() };
    let mut counts = vec![0usize; n * k + 1];
    for idx in 0..total {
        counts[weight(idx)] += 1;
    }
    let best = (n..=n * k)
        .max_by_key(|&w| (counts[w], usize::MAX - w))
        .expect("weight range is nonempty");
    Ok((0..total).filter(|&idx| weight(idx) == best).collect())
}
