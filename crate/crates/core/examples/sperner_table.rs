//! α and ρ of strong powers of the cyclic triangle.
//!
//! Both rates are lower bounds on the Sperner capacity, which is ln 2 for
//! this graph; ρ attains it already at n = 1.

use zue::gsolve::sperner_report;
use zue::DirectedGraph;

fn main() -> zue::Result<()> {
    let tri = DirectedGraph::cycle(3)?;
    let table = sperner_report(&tri, 3)?;
    print!("{}", table.to_csv());
    for row in &table.rows {
        println!("n={} independent set: {:?}", row.n, row.witness_independent_set);
    }
    println!("ln 2 = {:.12}, consistent: {}", std::f64::consts::LN_2, table.is_consistent());
    Ok(())
}
