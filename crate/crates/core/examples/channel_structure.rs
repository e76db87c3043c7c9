//! Structural tests on channels: channel graphs, output merging, bipartite
//! acyclicity and product factorizations.

use zue::{Channel, DirectedGraph};

fn main() -> zue::Result<()> {
    let tri = DirectedGraph::cycle(3)?;
    let w = Channel::canonical(&tri, 0.3)?;
    print!("canonical triangle channel at eps = 0.3:\n{}", w.to_text());
    println!("noise level: {}", w.epsilon()?);
    println!("channel graph is the triangle again: {}", zue::digraph::graphs_equal(&w.graph()?, &tri));

    let z = Channel::from_rows(&[vec![1.0, 0.0], vec![0.5, 0.5]], false)?;
    let fig = Channel::from_rows(
        &[vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5]],
        false,
    )?;
    for (name, ch) in [("Z-channel", &z), ("three-cycle channel", &fig), ("triangle eps=0.3", &w)] {
        let f = ch.factorize();
        println!(
            "{name:<20} acyclic: {:<5} factorizes: {:<5} zue-positive: {}",
            ch.bipartite_acyclic(),
            f.is_some(),
            ch.zue_positive()
        );
        if let Some(f) = f {
            println!("{:<20} A = {:?}, B = {:?}", "", f.a, f.b);
        }
    }

    // Outputs 1 and 2 are reached from the same inputs, so they merge.
    let redundant = Channel::from_rows(&[vec![0.5, 0.25, 0.25], vec![0.0, 0.5, 0.5]], false)?;
    let (merged, map) = redundant.merge_outputs();
    print!("\nmerged outputs {map:?}:\n{}", merged.to_text());
    Ok(())
}
