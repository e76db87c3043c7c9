//! Every applicable bound on the z.u.e. capacity for a few channels.

use zue::bounds::{composite_report, Csp, ReportOptions};
use zue::{Channel, DirectedGraph};

fn main() -> zue::Result<()> {
    let z = Channel::from_rows(&[vec![1.0, 0.0], vec![0.5, 0.5]], false)?;
    println!("Z-channel:");
    print!("{}", composite_report(&z, &ReportOptions::default())?.to_table(1.0, "nats"));

    let tri = Channel::canonical(&DirectedGraph::cycle(3)?, 0.1)?;
    let opts = ReportOptions {
        csp: Some(Csp {
            value: std::f64::consts::LN_2,
            certified: true,
        }),
        ..ReportOptions::default()
    };
    let report = composite_report(&tri, &opts)?;
    println!("\ncanonical triangle channel, eps = 0.1, Sperner capacity ln 2:");
    print!("{}", report.to_table(1.0, "nats"));
    print!("\n{}", report.to_csv());
    Ok(())
}
