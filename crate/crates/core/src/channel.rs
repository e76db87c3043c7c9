//! Discrete memoryless channels.
//!
//! A [`Channel`] is a row-stochastic matrix `W(y|x)`. Support membership is
//! an exact test `W(y|x) > 0`: a literal `0` in the input is a structural
//! zero and no threshold is ever applied, since every z.u.e. quantity
//! depends on the support pattern only.
//!
//! An *identified* channel has `X ⊆ Y` with input `i` equal to output `i`;
//! this is what ε-noise channels and channel graphs need.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::digraph::{index_to_word, word_to_index, DirectedGraph};
use crate::error::{Error, Result};

/// Rows must sum to one within this tolerance.
pub const ROW_TOLERANCE: f64 = 1e-9;

/// Largest number of matrix entries a product channel may have.
pub const MAX_ENTRIES: usize = 1 << 24;

/// Stopping gap and iteration cap of the capacity iteration.
pub const CAPACITY_GAP: f64 = 1e-9;
pub const CAPACITY_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    inputs: usize,
    outputs: usize,
    /// Row-major `inputs × outputs`.
    w: Vec<f64>,
    identified: bool,
}

/// A probability mass function on the input alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct InputPmf(pub(crate) Vec<f64>);

impl InputPmf {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::invalid("empty PMF"));
        }
        if p.iter().any(|&v| !v.is_finite() || v < 0.0) {
            return Err(Error::invalid("PMF entries must be finite and nonnegative"));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::invalid(format!("PMF sums to {total}, not 1")));
        }
        Ok(InputPmf(p))
    }

    pub fn uniform(k: usize) -> Result<Self> {
        Self::uniform_on(k, &(0..k).collect::<Vec<_>>())
    }

    /// Uniform over `support`, zero elsewhere.
    pub fn uniform_on(k: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() || support.iter().any(|&x| x >= k) {
            return Err(Error::invalid("support must be a nonempty subset of 0..k"));
        }
        let mut p = vec![0.0; k];
        for &x in support {
            p[x] = 1.0;
        }
        let m = p.iter().filter(|&&v| v > 0.0).count() as f64;
        p.iter_mut().for_each(|v| *v /= m);
        Ok(InputPmf(p))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&x| self.0[x] > 0.0).collect()
    }

    /// Whether the PMF is uniform over its support.
    pub fn is_uniform_on_support(&self) -> bool {
        let s = self.support();
        let v = 1.0 / s.len() as f64;
        s.iter().all(|&x| (self.0[x] - v).abs() <= Self::TOLERANCE)
    }
}

/// Channel law written as `W(y|x) = A(x) B(y)` on the support.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// Result of the capacity iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Capacity {
    /// Lower end of the final bracket, in nats.
    pub nats: f64,
    /// Upper end of the final bracket.
    pub upper: f64,
    pub input: InputPmf,
    pub iterations: usize,
}

impl Channel {
    pub fn new(inputs: usize, outputs: usize, w: Vec<f64>, identified: bool) -> Result<Self> {
        let ch = Channel {
            inputs,
            outputs,
            w,
            identified,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn from_rows(rows: &[Vec<f64>], identified: bool) -> Result<Self> {
        let inputs = rows.len();
        let outputs = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != outputs) {
            return Err(Error::InvalidChannel("ragged rows".into()));
        }
        Channel::new(inputs, outputs, rows.concat(), identified)
    }

    /// The noiseless channel on `k` symbols.
    pub fn identity(k: usize) -> Result<Self> {
        let mut w = vec![0.0; k * k];
        for x in 0..k {
            w[x * k + x] = 1.0;
        }
        Channel::new(k, k, w, true)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidChannel(m));
        if self.inputs == 0 || self.outputs == 0 {
            return bad("alphabets must be nonempty".into());
        }
        if self.w.len() != self.inputs * self.outputs {
            return bad(format!(
                "matrix has {} entries, expected {}×{}",
                self.w.len(),
                self.inputs,
                self.outputs
            ));
        }
        if self.identified && self.inputs > self.outputs {
            return bad("identified channel needs |X| ≤ |Y|".into());
        }
        for x in 0..self.inputs {
            let row = self.row(x);
            if let Some(v) = row.iter().find(|v| !v.is_finite() || **v < 0.0 || **v > 1.0) {
                return bad(format!("row {x} has entry {v} outside [0,1]"));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > ROW_TOLERANCE {
                return bad(format!("row {x} sums to {total}, not 1"));
            }
        }
        Ok(())
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn output_count(&self) -> usize {
        self.outputs
    }

    pub fn is_identified(&self) -> bool {
        self.identified
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.w[x * self.outputs + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.w[x * self.outputs..(x + 1) * self.outputs]
    }

    pub fn in_support(&self, x: usize, y: usize) -> bool {
        self.prob(x, y) > 0.0
    }

    /// Inputs that can produce `y`.
    pub fn column_support(&self, y: usize) -> Vec<usize> {
        (0..self.inputs).filter(|&x| self.in_support(x, y)).collect()
    }

    /// `(PW)(y)`.
    pub fn output_distribution(&self, p: &InputPmf) -> Result<Vec<f64>> {
        self.check_pmf(p)?;
        let mut q = vec![0.0; self.outputs];
        for (x, &px) in p.probs().iter().enumerate() {
            if px > 0.0 {
                for (qy, &w) in q.iter_mut().zip(self.row(x)) {
                    *qy += px * w;
                }
            }
        }
        Ok(q)
    }

    /// `I(P, W)` in nats.
    pub fn mutual_information(&self, p: &InputPmf) -> Result<f64> {
        let q = self.output_distribution(p)?;
        Ok(self
            .divergences(&q)
            .iter()
            .zip(p.probs())
            .filter(|(_, &px)| px > 0.0)
            .map(|(d, px)| px * d)
            .sum())
    }

    pub(crate) fn check_pmf(&self, p: &InputPmf) -> Result<()> {
        if p.len() != self.inputs {
            return Err(Error::invalid(format!(
                "PMF has {} entries for a channel with {} inputs",
                p.len(),
                self.inputs
            )));
        }
        Ok(())
    }

    /// `D(W(·|x) ‖ q)` for every input.
    fn divergences(&self, q: &[f64]) -> Vec<f64> {
        (0..self.inputs)
            .map(|x| {
                self.row(x)
                    .iter()
                    .zip(q)
                    .filter(|(&w, _)| w > 0.0)
                    .map(|(&w, &qy)| w * (w / qy).ln())
                    .sum()
            })
            .collect()
    }

    /// Least ε with `W(x|x) ≥ 1 − ε` for every input.
    pub fn epsilon(&self) -> Result<f64> {
        self.require_noise()?;
        Ok((0..self.inputs)
            .map(|x| 1.0 - self.prob(x, x))
            .fold(0.0, f64::max))
    }

    fn require_noise(&self) -> Result<()> {
        if !self.identified {
            return Err(Error::InvalidChannel("channel is not identified".into()));
        }
        if let Some(x) = (0..self.inputs).find(|&x| !self.in_support(x, x)) {
            return Err(Error::InvalidChannel(format!(
                "W({x}|{x}) = 0, not an ε-noise channel"
            )));
        }
        Ok(())
    }

    /// `G(W)`: an edge `x → y` for distinct inputs with `W(y|x) > 0`.
    pub fn graph(&self) -> Result<DirectedGraph> {
        self.require_noise()?;
        let mut edges = Vec::new();
        for x in 0..self.inputs {
            for y in 0..self.inputs {
                if x != y && self.in_support(x, y) {
                    edges.push((x, y));
                }
            }
        }
        DirectedGraph::from_edges(self.inputs, &edges)
    }

    /// `Wⁿ` on input and output words, most significant letter first.
    ///
    /// For identified channels the outputs are reordered so that the words
    /// over `X` come first, keeping input word `i` equal to output `i`.
    pub fn power(&self, n: usize) -> Result<Channel> {
        if n == 0 {
            return Err(Error::invalid("channel power needs n ≥ 1"));
        }
        let too_big = || Error::SizeLimit {
            what: "product channel entries",
            actual: usize::MAX,
            limit: MAX_ENTRIES,
        };
        let xs = checked_pow(self.inputs, n).ok_or_else(too_big)?;
        let ys = checked_pow(self.outputs, n).ok_or_else(too_big)?;
        let entries = xs.checked_mul(ys).ok_or_else(too_big)?;
        if entries > MAX_ENTRIES {
            return Err(Error::SizeLimit {
                what: "product channel entries",
                actual: entries,
                limit: MAX_ENTRIES,
            });
        }
        let order = if self.identified {
            self.identified_output_order(n, xs, ys)
        } else {
            (0..ys).collect()
        };
        let mut w = vec![0.0; entries];
        for xi in 0..xs {
            let xw = index_to_word(xi, self.inputs, n);
            for (col, &yi) in order.iter().enumerate() {
                let yw = index_to_word(yi, self.outputs, n);
                w[xi * ys + col] = xw.iter().zip(&yw).map(|(&x, &y)| self.prob(x, y)).product();
            }
        }
        Channel::new(xs, ys, w, self.identified)
    }

    /// Output word indices: words over `X` (ranked in base |X|) first, then
    /// the rest in their natural order.
    fn identified_output_order(&self, n: usize, xs: usize, ys: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..xs)
            .map(|i| word_to_index(&index_to_word(i, self.inputs, n), self.outputs))
            .collect();
        order.extend((0..ys).filter(|&y| {
            index_to_word(y, self.outputs, n).iter().any(|&c| c >= self.inputs)
        }));
        order
    }

    /// `W_ε(G)`: stay with probability `1 − ε`, otherwise move to a uniform
    /// out-neighbour. Sinks are noiseless.
    pub fn canonical(g: &DirectedGraph, eps: f64) -> Result<Channel> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::invalid(format!("ε = {eps} must lie in (0,1)")));
        }
        let k = g.vertex_count();
        let mut w = vec![0.0; k * k];
        for x in 0..k {
            let out: Vec<usize> = g.out_neighbors(x).collect();
            if out.is_empty() {
                w[x * k + x] = 1.0;
            } else {
                w[x * k + x] = 1.0 - eps;
                for &y in &out {
                    w[x * k + y] = eps / out.len() as f64;
                }
            }
        }
        Channel::new(k, k, w, true)
    }

    /// Merge outputs with identical support columns and drop outputs no input
    /// can produce.
    ///
    /// For identified channels only outputs outside `X` are touched. The map
    /// sends each old output to its new index, `None` for dropped ones.
    pub fn merge_outputs(&self) -> (Channel, Vec<Option<usize>>) {
        let fixed = if self.identified { self.inputs } else { 0 };
        let mut map = vec![None; self.outputs];
        let mut supports: Vec<(Vec<usize>, usize)> = Vec::new();
        let mut next = fixed;
        for (y, slot) in map.iter_mut().enumerate() {
            if y < fixed {
                *slot = Some(y);
                continue;
            }
            let s = self.column_support(y);
            if s.is_empty() {
                continue;
            }
            *slot = Some(match supports.iter().find(|(t, _)| *t == s) {
                Some(&(_, i)) => i,
                None => {
                    supports.push((s, next));
                    next += 1;
                    next - 1
                }
            });
        }
        let mut w = vec![0.0; self.inputs * next];
        for x in 0..self.inputs {
            for (y, slot) in map.iter().enumerate() {
                if let Some(t) = slot {
                    w[x * next + t] += self.prob(x, y);
                }
            }
        }
        let merged = Channel {
            inputs: self.inputs,
            outputs: next,
            w,
            identified: self.identified,
        };
        (merged, map)
    }

    /// Whether the undirected bipartite support graph between inputs and
    /// outputs is a forest.
    pub fn bipartite_acyclic(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.inputs + self.outputs).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for x in 0..self.inputs {
            for y in 0..self.outputs {
                if self.in_support(x, y) {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, self.inputs + y));
                    if a == b {
                        return false;
                    }
                    parent[a] = b;
                }
            }
        }
        true
    }

    /// Positive `A`, `B` with `A(x)B(y) = W(y|x)` on the support, if any.
    ///
    /// Values are propagated in log space over each connected component of
    /// the bipartite support graph from its least input `x₀`, normalised by
    /// `A(x₀) = W(y₀|x₀)` with `y₀` the first output of `x₀`.
    pub fn factorize(&self) -> Option<Factorization> {
        let (nx, ny) = (self.inputs, self.outputs);
        let mut la: Vec<Option<f64>> = vec![None; nx];
        let mut lb: Vec<Option<f64>> = vec![None; ny];
        for x0 in 0..nx {
            if la[x0].is_some() {
                continue;
            }
            let y0 = (0..ny).find(|&y| self.in_support(x0, y))?;
            la[x0] = Some(self.prob(x0, y0).ln());
            // stack of vertices, inputs as `x`, outputs as `nx + y`
            let mut stack = vec![x0];
            while let Some(v) = stack.pop() {
                if v < nx {
                    let a = la[v]?;
                    for y in (0..ny).filter(|&y| self.in_support(v, y)) {
                        if lb[y].is_none() {
                            lb[y] = Some(self.prob(v, y).ln() - a);
                            stack.push(nx + y);
                        }
                    }
                } else {
                    let y = v - nx;
                    let b = lb[y]?;
                    for x in (0..nx).filter(|&x| self.in_support(x, y)) {
                        if la[x].is_none() {
                            la[x] = Some(self.prob(x, y).ln() - b);
                            stack.push(x);
                        }
                    }
                }
            }
        }
        let a: Vec<f64> = la.into_iter().map(|v| v.map_or(1.0, f64::exp)).collect();
        let b: Vec<f64> = lb.into_iter().map(|v| v.map_or(1.0, f64::exp)).collect();
        for x in 0..nx {
            for y in 0..ny {
                if self.in_support(x, y) && (a[x] * b[y] - self.prob(x, y)).abs() >= 1e-9 {
                    return None;
                }
            }
        }
        Some(Factorization { a, b })
    }

    /// Shannon capacity by the Blahut–Arimoto iteration.
    ///
    /// Stops when `max_x D(W(·|x)‖PW) − I(P,W)` falls below
    /// [`CAPACITY_GAP`]; the two ends bracket the capacity.
    pub fn capacity(&self) -> Result<Capacity> {
        let mut p = vec![1.0 / self.inputs as f64; self.inputs];
        let mut gap = f64::INFINITY;
        for it in 1..=CAPACITY_MAX_ITER {
            let pmf = InputPmf(p.clone());
            let q = self.output_distribution(&pmf)?;
            let d = self.divergences(&q);
            let lower: f64 = d.iter().zip(&p).map(|(d, px)| px * d).sum();
            let upper = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            gap = upper - lower;
            if gap < CAPACITY_GAP {
                return Ok(Capacity {
                    nats: lower.max(0.0),
                    upper: upper.max(0.0),
                    input: pmf,
                    iterations: it,
                });
            }
            // shift by the largest divergence before exponentiating
            let mut z = 0.0;
            for (px, dx) in p.iter_mut().zip(&d) {
                *px *= (dx - upper).exp();
                z += *px;
            }
            p.iter_mut().for_each(|px| *px /= z);
        }
        Err(Error::NoConvergence {
            what: "capacity iteration",
            iterations: CAPACITY_MAX_ITER,
            residual: gap,
        })
    }

    /// Whether some output rules out some input, i.e. some column of the
    /// support is neither empty nor full.
    pub fn zue_positive(&self) -> bool {
        (0..self.outputs).any(|y| {
            let c = self.column_support(y).len();
            c > 0 && c < self.inputs
        })
    }

    /// z.u.e. capacity with feedback: `C` when positive, else 0.
    pub fn feedback_zue(&self) -> Result<f64> {
        if self.zue_positive() {
            Ok(self.capacity()?.nats)
        } else {
            Ok(0.0)
        }
    }

    pub fn parse(text: &str) -> Result<Channel> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `channel <|X|> <|Y|> <0|1>` header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let ["channel", nx, ny, id] = toks[..] else {
            return Err(Error::parse(hline, "header must be `channel <|X|> <|Y|> <0|1>`"));
        };
        let nx: usize = nx.parse().map_err(|_| Error::parse(hline, "bad input count"))?;
        let ny: usize = ny.parse().map_err(|_| Error::parse(hline, "bad output count"))?;
        let identified = match id {
            "0" => false,
            "1" => true,
            _ => return Err(Error::parse(hline, "identified flag must be 0 or 1")),
        };
        if nx.checked_mul(ny).is_none_or(|e| e > MAX_ENTRIES) {
            return Err(Error::parse(hline, "channel too large"));
        }
        let mut w = Vec::with_capacity(nx * ny);
        let mut rows = 0;
        for (line, l) in lines {
            if rows == nx {
                return Err(Error::parse(line, "more rows than inputs"));
            }
            let row: Vec<f64> = l
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| Error::parse(line, format!("bad number `{t}`"))))
                .collect::<Result<_>>()?;
            if row.len() != ny {
                return Err(Error::parse(line, format!("expected {ny} entries, found {}", row.len())));
            }
            w.extend(row);
            rows += 1;
        }
        if rows != nx {
            return Err(Error::parse(hline, format!("expected {nx} rows, found {rows}")));
        }
        Channel::new(nx, ny, w, identified)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "channel {} {} {}\n",
            self.inputs,
            self.outputs,
            u8::from(self.identified)
        );
        for x in 0..self.inputs {
            let row: Vec<String> = self.row(x).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

impl FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Channel::parse(s)
    }
}

fn checked_pow(base: usize, n: usize) -> Option<usize> {
    (0..n).try_fold(1usize, |acc, _| acc.checked_mul(base))
}
