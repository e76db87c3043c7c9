//! Shannon capacity by Blahut-Arimoto, in nats and bits.

use zue::Channel;

fn main() -> zue::Result<()> {
    let bsc = |p: f64| Channel::from_rows(&[vec![1.0 - p, p], vec![p, 1.0 - p]], false);
    let channels = [
        ("BSC(0.11)", bsc(0.11)?),
        ("Z(0.5)", Channel::from_rows(&[vec![1.0, 0.0], vec![0.5, 0.5]], false)?),
        ("erasure(0.25)", Channel::from_rows(&[vec![0.75, 0.0, 0.25], vec![0.0, 0.75, 0.25]], false)?),
        ("triangle eps=0.1", Channel::canonical(&zue::DirectedGraph::cycle(3)?, 0.1)?),
    ];
    for (name, ch) in &channels {
        let c = ch.capacity()?;
        println!(
            "{name:<17} C = {:.9} nats = {:.9} bits  (bracket width {:.1e}, {} iterations, P = {:?})",
            c.nats,
            c.nats / std::f64::consts::LN_2,
            c.upper - c.nats,
            c.iterations,
            c.input.probs()
        );
    }
    Ok(())
}
