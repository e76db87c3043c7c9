//! Exact and simulated erasure probabilities of the z.u.e. decoder.

use zue::{Channel, Codebook, DirectedGraph};

fn main() -> zue::Result<()> {
    let code = Codebook::new(2, vec![vec![0, 1], vec![1, 0]])?;
    let dup = Codebook::new(2, vec![vec![0, 1], vec![0, 1]])?;
    for eps in [0.05, 0.1, 0.3] {
        let ch = Channel::canonical(&DirectedGraph::cycle(3)?, eps)?;
        let exact = code.erasure_probability(&ch, 0)?;
        let mc = code.erasure_probability_mc(&ch, 0, 1_000_000, 1)?;
        println!(
            "eps={eps:<5} sperner={} exact={exact:.6} mc={:.6}±{:.6} E[list]={:.6} duplicate code erasure={}",
            code.is_sperner(&ch)?,
            mc.value,
            mc.stderr,
            code.listsize_moment(&ch, 1.0, 0)?,
            dup.erasure_probability(&ch, 0)?
        );
    }
    Ok(())
}
