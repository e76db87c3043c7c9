//! Strong and weak products of the cyclic triangle, and the complement
//! identity that links them.
//!
//! ```text
//! cargo run --example graph_products
//! ```

use zue::digraph::graphs_equal;
use zue::DirectedGraph;

fn main() -> zue::Result<()> {
    let tri = DirectedGraph::cycle(3)?;
    let strong = tri.strong_product(&tri)?;
    let weak = tri.weak_product(&tri)?;
    println!("triangle:        {} vertices, {} edges", tri.vertex_count(), tri.edge_count());
    println!("strong square:   {} vertices, {} edges", strong.vertex_count(), strong.edge_count());
    println!("weak square:     {} vertices, {} edges", weak.vertex_count(), weak.edge_count());
    println!("strong cube:     {} edges", tri.strong_power(3)?.edge_count());

    let lhs = tri.strong_power(2)?.complement()?;
    let rhs = tri.complement()?.weak_power(2)?;
    println!("complement of strong square equals weak square of complement: {}", graphs_equal(&lhs, &rhs));

    print!("\nreversed triangle (the complement):\n{}", tri.complement()?.to_text());
    Ok(())
}
