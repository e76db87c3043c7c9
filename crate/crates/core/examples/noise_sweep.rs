//! Upper and lower bounds on the canonical triangle channel as ε shrinks.
//!
//! The upper bound tends to the Sperner capacity ln 2; the lower bound is the
//! rate of the best Sperner code of length 2, scaled by (1 − ε)².

use zue::bounds::{best_sperner_code, sperner_code_lower, theorem1_upper};
use zue::{Channel, DirectedGraph};

fn main() -> zue::Result<()> {
    let tri = DirectedGraph::cycle(3)?;
    let csp = std::f64::consts::LN_2;
    let code = best_sperner_code(&Channel::canonical(&tri, 0.5)?, 2)?.expect("a code exists");
    println!("code: {:?} (rate {:.6} nats)", code.words(), code.rate());
    println!("eps,lower,upper,gap,capacity");
    for eps in [0.2, 0.1, 0.05, 0.01, 0.001] {
        let upper = theorem1_upper(csp, eps, 3, 3, false)?;
        let lower = sperner_code_lower(code.rate(), code.blocklength(), eps)?;
        let c = Channel::canonical(&tri, eps)?.capacity()?.nats;
        println!("{eps},{lower:.9},{upper:.9},{:.9},{c:.9}", upper - lower);
    }
    Ok(())
}
