//! Independent sets and acyclic sets seen as cliques of the complement.

use zue::gsolve::{max_acyclic_induced, max_independent_set, symmetric_clique, transitive_clique};
use zue::DirectedGraph;

fn main() -> zue::Result<()> {
    let g = DirectedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (1, 0)])?;
    let c = g.complement()?;
    println!("alpha(G) = {}, omega(G^c) = {}", max_independent_set(&g)?.size, symmetric_clique(&c)?.size);
    println!("rho(G) = {}, omega_tr(G^c) = {}", max_acyclic_induced(&g)?.size, transitive_clique(&c)?.size);

    let sq = g.strong_power(2)?;
    let weak = c.weak_power(2)?;
    println!("alpha(G^2) = {}, omega of weak square of G^c = {}", max_independent_set(&sq)?.size, symmetric_clique(&weak)?.size);
    Ok(())
}
