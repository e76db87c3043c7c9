//! Exact solvers for α, ρ, ω and ω_tr, constructive bounds, and
//! finite-blocklength Sperner tables.
//!
//! All solvers return the lexicographically least optimal witness (smallest
//! sorted vertex list), so results do not depend on search order details.

mod acyclic;
mod clique;
mod construct;
mod independent;
mod mask;

use std::fmt::Write as _;

pub use construct::{
    acyclic_set_from_order, caro_wei_sum, random_order_sizes, weight_partition_independent_set,
};
pub use mask::MASK_LIMIT;

use crate::digraph::{index_to_word, DirectedGraph};
use crate::error::{Error, Result};
use crate::numfmt::sig12;
use acyclic::AcyclicSearch;
use clique::LexTransitive;
use independent::LexIndependent;
use mask::{dispatch, Mask, MaskGraph, WidthTask};

/// Default vertex limit for exact searches.
pub const DEFAULT_VERTEX_CAP: usize = 64;

/// Optimal value and the lexicographically least witness attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub size: usize,
    pub witness: Vec<usize>,
}

/// Exact combinatorial solver with a configurable vertex limit.
#[derive(Debug, Clone, Copy)]
pub struct Solver {
    pub vertex_cap: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

enum Problem {
    Independent,
    Acyclic,
    Symmetric,
    Transitive,
}

struct Task<'a> {
    g: &'a DirectedGraph,
    problem: Problem,
}

impl WidthTask for Task<'_> {
    type Output = Vec<usize>;

    fn run<const W: usize>(self) -> Vec<usize> {
        let g = self.g;
        let n = g.vertex_count();
        let mg = MaskGraph::<W>::new(g);
        match self.problem {
            Problem::Independent => {
                let conflict: Vec<Mask<W>> =
                    (0..n).map(|v| mg.out[v].or(mg.inn[v])).collect();
                LexIndependent::solve(&conflict).to_vec()
            }
            Problem::Symmetric => {
                let all = mg.all();
                let conflict: Vec<Mask<W>> = (0..n)
                    .map(|v| all.minus(mg.out[v].and(mg.inn[v])).without(v))
                    .collect();
                LexIndependent::solve(&conflict).to_vec()
            }
            Problem::Acyclic => AcyclicSearch::solve(&mg).to_vec(),
            Problem::Transitive => {
                let adjacent: Vec<Mask<W>> = (0..n).map(|v| mg.out[v].or(mg.inn[v])).collect();
                let one_way = MaskGraph {
                    n,
                    out: (0..n).map(|v| mg.out[v].minus(mg.inn[v])).collect(),
                    inn: (0..n).map(|v| mg.inn[v].minus(mg.out[v])).collect(),
                };
                LexTransitive::solve(&adjacent, &one_way).to_vec()
            }
        }
    }
}

impl Solver {
    pub fn with_cap(vertex_cap: usize) -> Self {
        Solver { vertex_cap }
    }

    fn run(&self, g: &DirectedGraph, problem: Problem) -> Result<Vec<usize>> {
        let n = g.vertex_count();
        if n > self.vertex_cap {
            return Err(Error::SizeLimit {
                what: "solver vertex count",
                actual: n,
                limit: self.vertex_cap,
            });
        }
        dispatch(n, Task { g, problem })
    }

    /// α(g) with witness: no edge in either direction inside the set.
    pub fn max_independent_set(&self, g: &DirectedGraph) -> Result<Solution> {
        let witness = self.run(g, Problem::Independent)?;
        assert!(g.is_independent(&witness), "independent-set witness failed validation");
        Ok(Solution {
            size: witness.len(),
            witness,
        })
    }

    /// ρ(g) with witness: the induced subgraph is acyclic.
    pub fn max_acyclic_induced(&self, g: &DirectedGraph) -> Result<Solution> {
        let witness = self.run(g, Problem::Acyclic)?;
        assert!(g.induces_acyclic(&witness), "acyclic-set witness failed validation");
        Ok(Solution {
            size: witness.len(),
            witness,
        })
    }

    /// ω(g): largest set whose members are pairwise joined in both directions.
    pub fn symmetric_clique(&self, g: &DirectedGraph) -> Result<Solution> {
        let witness = self.run(g, Problem::Symmetric)?;
        assert!(
            witness
                .iter()
                .all(|&u| witness.iter().all(|&v| u == v || g.has_edge(u, v))),
            "symmetric-clique witness failed validation"
        );
        Ok(Solution {
            size: witness.len(),
            witness,
        })
    }

    /// ω_tr(g): largest set with a total order whose forward pairs are edges.
    ///
    /// The witness is returned in such an order.
    pub fn transitive_clique(&self, g: &DirectedGraph) -> Result<Solution> {
        let set = self.run(g, Problem::Transitive)?;
        let witness = transitive_order(g, &set).expect("transitive-clique witness failed validation");
        Ok(Solution {
            size: witness.len(),
            witness,
        })
    }

    /// α and ρ of `gⁿ` for `n = 1..=n_max`.
    ///
    /// Stops early, setting `truncated`, once `|V|ⁿ` exceeds the vertex cap.
    pub fn sperner_report(&self, g: &DirectedGraph, n_max: usize) -> Result<SpernerEstimate> {
        let k = g.vertex_count();
        if k == 0 {
            return Err(Error::invalid("Sperner table needs at least one vertex"));
        }
        if n_max == 0 {
            return Err(Error::invalid("n_max must be at least 1"));
        }
        let mut rows = Vec::new();
        let mut truncated = false;
        for n in 1..=n_max {
            let size = (k as u128).pow(n as u32);
            if size > self.vertex_cap as u128 {
                truncated = true;
                break;
            }
            let power = g.strong_power(n)?;
            let alpha = self.max_independent_set(&power)?;
            let rho = self.max_acyclic_induced(&power)?;
            let words = |w: &[usize]| -> Vec<Vec<usize>> {
                w.iter().map(|&i| index_to_word(i, k, n)).collect()
            };
            rows.push(SpernerRow {
                n,
                alpha: alpha.size,
                rho: rho.size,
                alpha_rate: (alpha.size as f64).ln() / n as f64,
                rho_rate: (rho.size as f64).ln() / n as f64,
                witness_independent_set: words(&alpha.witness),
                witness_acyclic_set: words(&rho.witness),
            });
        }
        Ok(SpernerEstimate {
            vertex_count: k,
            rows,
            truncated,
        })
    }
}

/// Orders `set` so that every forward pair is an edge of `g`, if possible.
pub fn transitive_order(g: &DirectedGraph, set: &[usize]) -> Option<Vec<usize>> {
    // Pairs joined both ways may go in either order; a topological order of
    // the one-way edges is therefore valid whenever one exists.
    let k = set.len();
    let mut one_way = Vec::new();
    for (i, &u) in set.iter().enumerate() {
        for (j, &v) in set.iter().enumerate() {
            if i == j {
                continue;
            }
            match (g.has_edge(u, v), g.has_edge(v, u)) {
                (true, false) => one_way.push((i, j)),
                (false, false) => return None,
                _ => {}
            }
        }
    }
    let forced = DirectedGraph::from_edges(k, &one_way).ok()?;
    let order = forced.topological_order()?;
    Some(order.into_iter().map(|i| set[i]).collect())
}

pub fn max_independent_set(g: &DirectedGraph) -> Result<Solution> {
    Solver::default().max_independent_set(g)
}

pub fn max_acyclic_induced(g: &DirectedGraph) -> Result<Solution> {
    Solver::default().max_acyclic_induced(g)
}

pub fn symmetric_clique(g: &DirectedGraph) -> Result<Solution> {
    Solver::default().symmetric_clique(g)
}

pub fn transitive_clique(g: &DirectedGraph) -> Result<Solution> {
    Solver::default().transitive_clique(g)
}

pub fn sperner_report(g: &DirectedGraph, n_max: usize) -> Result<SpernerEstimate> {
    Solver::default().sperner_report(g, n_max)
}

/// One blocklength of a [`SpernerEstimate`]. Rates are in nats.
#[derive(Debug, Clone, PartialEq)]
pub struct SpernerRow {
    pub n: usize,
    pub alpha: usize,
    pub rho: usize,
    pub alpha_rate: f64,
    pub rho_rate: f64,
    pub witness_independent_set: Vec<Vec<usize>>,
    pub witness_acyclic_set: Vec<Vec<usize>>,
}

/// Per-blocklength α(Gⁿ), ρ(Gⁿ) and their rates.
///
/// Both rate columns lower-bound the Sperner capacity Σ(G); `ln |V|` is the
/// only upper bound reported.
#[derive(Debug, Clone, PartialEq)]
pub struct SpernerEstimate {
    pub vertex_count: usize,
    pub rows: Vec<SpernerRow>,
    /// Set when the table stopped before `n_max` because of the vertex cap.
    pub truncated: bool,
}

impl SpernerEstimate {
    /// Largest tabulated ρ-rate.
    pub fn best_lower(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.rho_rate)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest tabulated α-rate; the rate of a verified Sperner code.
    pub fn best_alpha_rate(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.alpha_rate)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn trivial_upper(&self) -> f64 {
        (self.vertex_count as f64).ln()
    }

    /// `α ≤ ρ` on every row and `ρ(n+m) ≥ ρ(n)ρ(m)` across the table.
    pub fn is_consistent(&self) -> bool {
        let rho = |n: usize| self.rows.iter().find(|r| r.n == n).map(|r| r.rho);
        let ordered = self.rows.iter().all(|r| r.alpha <= r.rho);
        let supermult = self.rows.iter().all(|a| {
            self.rows.iter().all(|b| match rho(a.n + b.n) {
                Some(r) => r >= a.rho * b.rho,
                None => true,
            })
        });
        ordered && supermult
    }

    /// CSV with header `n,alpha,rho,alpha_rate,rho_rate`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,alpha,rho,alpha_rate,rho_rate\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.n,
                r.alpha,
                r.rho,
                sig12(r.alpha_rate),
                sig12(r.rho_rate)
            );
        }
        s
    }
}
