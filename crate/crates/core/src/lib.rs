//! Zero-undetected-error capacity toolkit.
//!
//! The crate computes upper and lower bounds on the zero-undetected-error
//! (z.u.e.) capacity of discrete memoryless channels, together with
//! finite-blocklength estimates of the Sperner capacity of directed graphs.
//!
//! * [`digraph`]: directed graphs with strong/weak products and complements.
//! * [`gsolve`]: exact independent-set, induced-acyclic-set and clique solvers,
//!   the Caro–Wei sum, and per-blocklength Sperner tables.
//! * [`channel`]: DMC model, structural tests and Shannon capacity.
//! * [`bounds`]: Forney, Hui and ε-noise upper bounds and the composite report.
//! * [`zuedec`]: z.u.e. decoding, list sizes and erasure probabilities.
//! * [`cli`]: the command-line front end used by the `zue` binary.
//!
//! All information quantities are in nats.

pub mod bounds;
pub mod channel;
pub mod cli;
pub mod digraph;
mod error;
pub mod gsolve;
mod numfmt;
pub mod zuedec;

pub use bounds::{BoundReport, ReportOptions};
pub use channel::{Channel, InputPmf};
pub use digraph::DirectedGraph;
pub use error::{Error, Result};
pub use gsolve::SpernerEstimate;
pub use zuedec::Codebook;

