//! Independent sets in powers of an acyclic graph from equal-weight classes.
//!
//! For acyclic G every weight class of Gⁿ is independent, and the largest
//! one has at least |V|ⁿ / (n|V| − n + 1) words.

use zue::digraph::index_to_word;
use zue::gsolve::{max_acyclic_induced, weight_partition_independent_set};
use zue::DirectedGraph;

fn main() -> zue::Result<()> {
    let path = DirectedGraph::path(3)?;
    for n in 1..=3 {
        let class = weight_partition_independent_set(&path, n)?;
        let power = path.strong_power(n)?;
        let k = path.vertex_count() as f64;
        let guarantee = k.powi(n as i32) / (n as f64 * k - n as f64 + 1.0);
        println!(
            "n={n}: class size {} (guarantee {guarantee:.3}), independent: {}, rho = {}",
            class.len(),
            power.is_independent(&class),
            max_acyclic_induced(&power)?.size
        );
        if n == 2 {
            let words: Vec<_> = class.iter().map(|&i| index_to_word(i, 3, 2)).collect();
            println!("      words: {words:?}");
        }
    }
    Ok(())
}
