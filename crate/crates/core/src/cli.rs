//! Command-line front end.
//!
//! Every command renders into a `String`; the binary only prints it. Values
//! are computed in nats and divided by `ln 2` on output under `--bits`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    best_sperner_code, composite_report, sperner_code_lower, theorem1_upper, Csp, ReportOptions,
    SHORTCUT_ACYCLIC, SHORTCUT_FACTOR, SHORTCUT_NOT_POSITIVE,
};
use crate::channel::Channel;
use crate::digraph::{index_to_word, DirectedGraph};
use crate::gsolve::{caro_wei_sum, Solution, Solver, DEFAULT_VERTEX_CAP};
use crate::numfmt::sig12;
use crate::zuedec::{Codebook, EXACT_CAP};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "zue", version, about = "Bounds on zero-undetected-error capacity and Sperner capacity")]
pub struct RunConfig {
    /// Report values in bits instead of nats.
    #[arg(long, global = true)]
    pub bits: bool,

    /// Output layout; tabular commands default to `table`, `sperner-report`
    /// and `sweep` to `csv`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Vertex limit for exact graph searches.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP)]
    pub vertex_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph algebra and Sperner-capacity estimates.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Bound report for a channel file.
    Analyze(AnalyzeArgs),
    /// Upper and lower bounds of canonical channels over a noise grid.
    Sweep(SweepArgs),
    /// Erasure behaviour of a codebook under z.u.e. decoding.
    Simulate(SimulateArgs),
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Strong (or weak) product of two graphs, or a power of one.
    Product {
        first: PathBuf,
        second: Option<PathBuf>,
        #[arg(long)]
        power: Option<usize>,
        #[arg(long)]
        weak: bool,
    },
    /// Complement graph.
    Complement { graph: PathBuf },
    /// Independence number with a witness.
    Alpha(SolveArgs),
    /// Largest induced acyclic subgraph with a witness.
    Rho(SolveArgs),
    /// Caro-Wei sum, a lower bound on rho.
    CaroWei(SolveArgs),
    /// alpha and rho of strong powers up to `--n-max`.
    SpernerReport {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub graph: PathBuf,
    /// Work on the n-th strong power.
    #[arg(long, default_value_t = 1)]
    pub power: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub channel: PathBuf,
    /// Certified upper bound on the Sperner capacity of the channel graph.
    #[arg(long)]
    pub csp: Option<f64>,
    /// Deepest blocklength for the multi-letter Forney bound.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Replace |Y| by min(|Y|, |X|+2^|X|-1) in the ε-noise bound.
    #[arg(long)]
    pub remark1: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub graph: PathBuf,
    /// Sperner capacity (upper bound) of the graph, in nats.
    #[arg(long)]
    pub csp: f64,
    /// Noise levels, comma separated; each in [0,1).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub eps: Vec<f64>,
    /// Deepest blocklength searched for a Sperner code.
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    #[arg(long)]
    pub remark1: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub channel: PathBuf,
    pub codebook: PathBuf,
    /// Exponent of the list-size moment.
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Message whose erasure probability is estimated.
    #[arg(long, default_value_t = 0)]
    pub message: usize,
}

struct Units {
    scale: f64,
    name: &'static str,
}

impl Units {
    fn of(cfg: &RunConfig) -> Self {
        if cfg.bits {
            Units {
                scale: std::f64::consts::LN_2,
                name: "bits",
            }
        } else {
            Units {
                scale: 1.0,
                name: "nats",
            }
        }
    }

    fn is_bits(&self) -> bool {
        self.name == "bits"
    }

    fn show(&self, v: f64) -> String {
        sig12(v / self.scale)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::InFile {
        path: path.display().to_string(),
        source: Box::new(e),
    })
}

fn load_graph(path: &Path) -> Result<DirectedGraph> {
    in_file(path, DirectedGraph::parse(&read(path)?))
}

fn load_channel(path: &Path) -> Result<Channel> {
    in_file(path, Channel::parse(&read(path)?))
}

fn load_codebook(path: &Path) -> Result<Codebook> {
    in_file(path, Codebook::parse(&read(path)?))
}

/// Runs one command and returns what it would print.
pub fn execute(cfg: &RunConfig) -> Result<String> {
    let units = Units::of(cfg);
    let solver = Solver::with_cap(cfg.vertex_cap);
    match &cfg.command {
        Command::Graph(g) => cmd_graph(g, cfg.format, &units, &solver),
        Command::Analyze(a) => cmd_analyze(a, cfg.format, &units),
        Command::Sweep(s) => cmd_sweep(s, &units),
        Command::Simulate(s) => cmd_simulate(s, &units),
    }
}

/// Writes the rendered report to `--output` or standard output.
pub fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Caps rayon's global pool at `ZUE_THREADS` when that is set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("ZUE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::invalid(format!("ZUE_THREADS = `{raw}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::invalid(e.to_string()))
}

fn power_of(g: &DirectedGraph, n: usize) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::invalid("--power must be at least 1"));
    }
    g.strong_power(n)
}

fn fmt_witness(sol: &Solution, k: usize, n: usize) -> String {
    let words: Vec<String> = sol
        .witness
        .iter()
        .map(|&v| {
            if n == 1 {
                v.to_string()
            } else {
                let w = index_to_word(v, k, n);
                let inner: Vec<String> = w.iter().map(|c| c.to_string()).collect();
                format!("({})", inner.join(","))
            }
        })
        .collect();
    format!("witness: {}\n", words.join(" "))
}

fn cmd_graph(cmd: &GraphCommand, format: Option<Format>, units: &Units, solver: &Solver) -> Result<String> {
    match cmd {
        GraphCommand::Product {
            first,
            second,
            power,
            weak,
        } => {
            let a = load_graph(first)?;
            let out = match (second, power) {
                (Some(p), None) => {
                    let b = load_graph(p)?;
                    if *weak {
                        a.weak_product(&b)?
                    } else {
                        a.strong_product(&b)?
                    }
                }
                (None, Some(n)) if *weak => a.weak_power(*n)?,
                (None, Some(n)) => a.strong_power(*n)?,
                (Some(_), Some(_)) => {
                    return Err(Error::invalid("give either a second graph or --power, not both"))
                }
                (None, None) => return Err(Error::invalid("give a second graph or --power")),
            };
            Ok(out.to_text())
        }
        GraphCommand::Complement { graph } => Ok(load_graph(graph)?.complement()?.to_text()),
        GraphCommand::Alpha(a) | GraphCommand::Rho(a) => {
            let g = load_graph(&a.graph)?;
            let gn = power_of(&g, a.power)?;
            let sol = match cmd {
                GraphCommand::Alpha(_) => solver.max_independent_set(&gn)?,
                _ => solver.max_acyclic_induced(&gn)?,
            };
            Ok(format!("{}\n{}", sol.size, fmt_witness(&sol, g.vertex_count(), a.power)))
        }
        GraphCommand::CaroWei(a) => {
            let g = power_of(&load_graph(&a.graph)?, a.power)?;
            Ok(format!("{}\n", sig12(caro_wei_sum(&g))))
        }
        GraphCommand::SpernerReport { graph, n_max } => {
            let g = load_graph(graph)?;
            let est = solver.sperner_report(&g, *n_max)?;
            let mut s = String::new();
            if format == Some(Format::Table) {
                let _ = writeln!(s, "{:>3} {:>6} {:>6} {:>16} {:>16}", "n", "alpha", "rho", "alpha_rate", "rho_rate");
                for r in &est.rows {
                    let _ = writeln!(
                        s,
                        "{:>3} {:>6} {:>6} {:>16} {:>16}",
                        r.n,
                        r.alpha,
                        r.rho,
                        units.show(r.alpha_rate),
                        units.show(r.rho_rate)
                    );
                }
                let _ = writeln!(s, "trivial upper bound: {} {}", units.show(est.trivial_upper()), units.name);
                if est.truncated {
                    let _ = writeln!(s, "stopped early: vertex cap {}", solver.vertex_cap);
                }
            } else {
                let suffix = if units.is_bits() { "_bits" } else { "" };
                let _ = writeln!(s, "n,alpha,rho,alpha_rate{suffix},rho_rate{suffix}");
                for r in &est.rows {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        r.n,
                        r.alpha,
                        r.rho,
                        units.show(r.alpha_rate),
                        units.show(r.rho_rate)
                    );
                }
            }
            Ok(s)
        }
    }
}

fn cmd_analyze(a: &AnalyzeArgs, format: Option<Format>, units: &Units) -> Result<String> {
    let ch = load_channel(&a.channel)?;
    if let Some(v) = a.csp {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::invalid(format!("--csp {v} must be a finite value ≥ 0")));
        }
    }
    if a.n == 0 {
        return Err(Error::invalid("--n must be at least 1"));
    }
    let opts = ReportOptions {
        csp: a.csp.map(|value| Csp {
            value,
            certified: true,
        }),
        forney_n: a.n,
        remark1: a.remark1,
        ..ReportOptions::default()
    };
    let report = composite_report(&ch, &opts)?;
    if format == Some(Format::Csv) {
        if !units.is_bits() {
            return Ok(report.to_csv());
        }
        let mut s = format!("bound_name,kind,value_{},certified,witness\n", units.name);
        for b in &report.bounds {
            let _ = writeln!(s, "{},{},{},{},{}", b.name, b.kind, units.show(b.value), b.certified, b.witness);
        }
        return Ok(s);
    }
    let mut s = String::new();
    for (name, value) in [
        (SHORTCUT_NOT_POSITIVE, 0.0),
        (SHORTCUT_ACYCLIC, report.capacity),
        (SHORTCUT_FACTOR, report.capacity),
    ] {
        if report.triggered(name) {
            let _ = writeln!(s, "shortcut: {name} = {} {}", units.show(value), units.name);
        }
    }
    // The table lists shortcuts itself; only the valued lines above are kept.
    for line in report.to_table(units.scale, units.name).lines() {
        if !line.starts_with("shortcut: ") {
            let _ = writeln!(s, "{line}");
        }
    }
    Ok(s)
}

fn cmd_sweep(a: &SweepArgs, units: &Units) -> Result<String> {
    let g = load_graph(&a.graph)?;
    if !(a.csp >= 0.0 && a.csp.is_finite()) {
        return Err(Error::invalid(format!("--csp {} must be a finite value ≥ 0", a.csp)));
    }
    if let Some(bad) = a.eps.iter().find(|e| !(0.0..1.0).contains(*e)) {
        return Err(Error::invalid(format!("grid value {bad} is outside [0,1)")));
    }
    let k = g.vertex_count();
    let mut s = format!("eps,lower_{u},upper_{u},gap\n", u = units.name);
    if a.eps.is_empty() {
        return Ok(s);
    }
    // The channel graph of W_ε(G) is G for every ε in (0,1), so one search
    // serves the whole grid.
    let code = best_sperner_code(&Channel::canonical(&g, 0.5)?, a.n_max)?;
    for &eps in &a.eps {
        let upper = theorem1_upper(a.csp, eps, k, k, a.remark1)?;
        let lower = match &code {
            Some(c) => sperner_code_lower(c.rate(), c.blocklength(), eps)?,
            None => 0.0,
        };
        let _ = writeln!(
            s,
            "{},{},{},{}",
            sig12(eps),
            units.show(lower),
            units.show(upper),
            units.show(upper - lower)
        );
    }
    Ok(s)
}

fn cmd_simulate(a: &SimulateArgs, units: &Units) -> Result<String> {
    let ch = load_channel(&a.channel)?;
    let cb = load_codebook(&a.codebook)?;
    if cb.words().iter().flatten().any(|&c| c >= ch.input_count()) {
        return Err(Error::invalid(format!(
            "codebook uses a letter outside the {} channel inputs",
            ch.input_count()
        )));
    }
    if a.message >= cb.len() {
        return Err(Error::invalid(format!("message {} out of range for {} codewords", a.message, cb.len())));
    }
    let mut s = String::new();
    let sperner = match ch.epsilon() {
        Ok(_) => cb.is_sperner(&ch)?.to_string(),
        Err(_) => "n/a (channel is not identified)".into(),
    };
    let _ = writeln!(s, "sperner: {sperner}");
    let _ = writeln!(s, "codewords: {} blocklength: {} rate: {} {}", cb.len(), cb.blocklength(), units.show(cb.rate()), units.name);
    match cb.erasure_probability(&ch, a.message) {
        Ok(p) => {
            let _ = writeln!(s, "erasure (exact, message {}): {}", a.message, sig12(p));
            let _ = writeln!(s, "erasure (exact, max): {}", sig12(cb.max_erasure_probability(&ch)?));
            let _ = writeln!(s, "erasure (exact, average): {}", sig12(cb.avg_erasure_probability(&ch)?));
        }
        Err(Error::SizeLimit { .. }) => {
            let _ = writeln!(s, "erasure (exact): skipped, more than {EXACT_CAP} outcomes");
        }
        Err(e) => return Err(e),
    }
    let mc = cb.erasure_probability_mc(&ch, a.message, a.trials, a.seed)?;
    let _ = writeln!(
        s,
        "erasure (monte carlo, {} trials, seed {}): {} ± {}",
        mc.trials,
        a.seed,
        sig12(mc.value),
        sig12(mc.stderr)
    );
    match cb.listsize_moment(&ch, a.rho, a.message) {
        Ok(m) => {
            let _ = writeln!(s, "list-size moment (rho = {}): {}", sig12(a.rho), sig12(m));
        }
        Err(Error::SizeLimit { .. }) => {
            let _ = writeln!(s, "list-size moment: skipped, more than {EXACT_CAP} outcomes");
        }
        Err(e) => return Err(e),
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<String> {
        let mut full = vec!["zue"];
        full.extend_from_slice(args);
        execute(&RunConfig::try_parse_from(full).expect("arguments parse"))
    }

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    #[test]
    fn graph_commands() {
        let d = tempfile::tempdir().unwrap();
        let tri = write(&d, "tri.g", "digraph 3\n0 1\n1 2\n2 0\n");
        let edge = write(&d, "edge.g", "digraph 2\n0 1\n");
        assert_eq!(run(&["graph", "rho", &edge]).unwrap().lines().next(), Some("2"));
        let alpha = run(&["graph", "alpha", "--power", "2", &tri]).unwrap();
        assert_eq!(alpha, "3\nwitness: (0,0) (1,2) (2,1)\n");
        let csv = run(&["graph", "sperner-report", &tri, "--n-max", "2"]).unwrap();
        assert_eq!(
            csv,
            "n,alpha,rho,alpha_rate,rho_rate\n1,1,2,0,0.69314718056\n2,3,4,0.549306144334,0.69314718056\n"
        );
        let comp = run(&["graph", "complement", &tri]).unwrap();
        assert_eq!(comp, DirectedGraph::from_edges(3, &[(1, 0), (2, 1), (0, 2)]).unwrap().to_text());
        assert_eq!(run(&["graph", "caro-wei", &tri]).unwrap(), "1.5\n");
    }

    #[test]
    fn errors_name_the_file_and_line() {
        let d = tempfile::tempdir().unwrap();
        let bad = write(&d, "bad.g", "digraph 3\n0 1\n1 9\n");
        let msg = run(&["graph", "rho", &bad]).unwrap_err().to_string();
        assert!(msg.contains("bad.g") && msg.contains("line 3"), "{msg}");
        let missing = run(&["graph", "rho", "/nonexistent.g"]).unwrap_err();
        assert!(matches!(missing, Error::Io { .. }));
    }

    #[test]
    fn analyze_reports_shortcuts_and_theorem1() {
        let d = tempfile::tempdir().unwrap();
        let z = write(&d, "z.ch", "channel 2 2 0\n1 0\n0.5 0.5\n");
        let out = run(&["analyze", &z]).unwrap();
        assert!(out.contains("shortcut: bipartite acyclic ⇒ Ceo = C = 0.223143551314 nats"), "{out}");
        let tri = write(&d, "tri.ch", "channel 3 3 1\n0.9 0.1 0\n0 0.9 0.1\n0.1 0 0.9\n");
        let out = run(&["analyze", &tri, "--csp", "0.693147"]).unwrap();
        let line = out.lines().find(|l| l.contains("theorem1_upper")).unwrap();
        assert!(line.contains("0.955511"), "{line}");
        assert!(run(&["analyze", &tri, "--csp=-1"]).is_err());
    }

    #[test]
    fn sweep_and_simulate() {
        let d = tempfile::tempdir().unwrap();
        let tri = write(&d, "tri.g", "digraph 3\n0 1\n1 2\n2 0\n");
        let empty = run(&["sweep", &tri, "--csp", "0.693147180560", "--eps"]).unwrap();
        assert_eq!(empty, "eps,lower_nats,upper_nats,gap\n");
        let csv = run(&["sweep", &tri, "--csp", "0.69314718056", "--eps", "0.2,0.1,0.05,0.01"]).unwrap();
        let gaps: Vec<f64> = csv
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{csv}");
        assert!(run(&["sweep", &tri, "--csp", "1", "--eps", "1.0"]).is_err());

        let ch = write(&d, "tri.ch", "channel 3 3 1\n0.9 0.1 0\n0 0.9 0.1\n0.1 0 0.9\n");
        let cb = write(&d, "code.cb", "codebook 2 2\n0 1\n1 0\n");
        let out = run(&["simulate", &ch, &cb, "--trials", "1000", "--seed", "7"]).unwrap();
        assert!(out.starts_with("sperner: true\n"), "{out}");
        assert!(out.contains("erasure (exact, message 0): 0.09\n"), "{out}");
        let dup = write(&d, "dup.cb", "codebook 2 2\n0 1\n0 1\n");
        let out = run(&["simulate", &ch, &dup, "--trials", "100"]).unwrap();
        assert!(out.starts_with("sperner: false\n") && out.contains("message 0): 1\n"), "{out}");
    }
}
