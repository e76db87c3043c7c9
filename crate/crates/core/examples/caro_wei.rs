//! The Caro-Wei sum against the random-order construction and the exact ρ.

use zue::gsolve::{caro_wei_sum, max_acyclic_induced, random_order_sizes};
use zue::DirectedGraph;

fn main() -> zue::Result<()> {
    let graphs = [
        ("triangle", DirectedGraph::cycle(3)?),
        ("triangle^2", DirectedGraph::cycle(3)?.strong_power(2)?),
        ("complete K5", DirectedGraph::complete(5)?),
        ("5-cycle", DirectedGraph::cycle(5)?),
    ];
    let trials = 100_000;
    println!("{:<12} {:>10} {:>12} {:>4}", "graph", "caro-wei", "mean |A|", "rho");
    for (name, g) in &graphs {
        let sizes = random_order_sizes(g, trials, 42);
        let mean = sizes.iter().sum::<usize>() as f64 / trials as f64;
        let rho = max_acyclic_induced(g)?.size;
        println!("{name:<12} {:>10.4} {mean:>12.4} {rho:>4}", caro_wei_sum(g));
    }
    Ok(())
}
