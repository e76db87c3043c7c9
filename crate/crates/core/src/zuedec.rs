//! Zero-undetected-error decoding.
//!
//! On receiving `y` the decoder keeps every message whose codeword can
//! produce `y`. It decodes when exactly one survives and erases otherwise,
//! so it never errs. `M(y)` is the size of that list.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::Channel;
use crate::error::{Error, Result};

/// Most received words an exact sum may enumerate.
pub const EXACT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    n: usize,
    words: Vec<Vec<usize>>,
}

/// Monte-Carlo erasure estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl Codebook {
    pub fn new(n: usize, words: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("blocklength must be at least 1"));
        }
        if words.is_empty() {
            return Err(Error::invalid("codebook has no words"));
        }
        if let Some(w) = words.iter().find(|w| w.len() != n) {
            return Err(Error::invalid(format!(
                "word of length {} in a codebook of blocklength {n}",
                w.len()
            )));
        }
        Ok(Codebook { n, words })
    }

    pub fn blocklength(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// `ln(M)/n` nats per letter.
    pub fn rate(&self) -> f64 {
        (self.len() as f64).ln() / self.n as f64
    }

    pub fn has_duplicates(&self) -> bool {
        let mut w = self.words.clone();
        w.sort();
        w.windows(2).any(|p| p[0] == p[1])
    }

    fn check_inputs(&self, ch: &Channel) -> Result<()> {
        for w in &self.words {
            if let Some(&s) = w.iter().find(|&&s| s >= ch.input_count()) {
                return Err(Error::invalid(format!(
                    "symbol {s} out of range for {} inputs",
                    ch.input_count()
                )));
            }
        }
        Ok(())
    }

    fn check_output(&self, ch: &Channel, y: &[usize]) -> Result<()> {
        if y.len() != self.n {
            return Err(Error::invalid(format!(
                "received word of length {} for blocklength {}",
                y.len(),
                self.n
            )));
        }
        if let Some(&s) = y.iter().find(|&&s| s >= ch.output_count()) {
            return Err(Error::invalid(format!("output symbol {s} out of range")));
        }
        Ok(())
    }

    /// No codeword can be turned into another: `Wⁿ(x_m | x_m') = 0` for
    /// `m ≠ m'`.
    pub fn is_sperner(&self, ch: &Channel) -> Result<bool> {
        ch.epsilon()?;
        self.check_inputs(ch)?;
        for (i, a) in self.words.iter().enumerate() {
            for (j, b) in self.words.iter().enumerate() {
                if i != j && reaches(ch, b, a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `M(y)`: messages that can produce `y`.
    pub fn list_size(&self, ch: &Channel, y: &[usize]) -> Result<usize> {
        self.check_inputs(ch)?;
        self.check_output(ch, y)?;
        Ok(self.list_unchecked(ch, y))
    }

    fn list_unchecked(&self, ch: &Channel, y: &[usize]) -> usize {
        self.words.iter().filter(|x| reaches(ch, x, y)).count()
    }

    /// Received words `x_m` can produce, with their probabilities.
    fn outcomes(&self, ch: &Channel, m: usize) -> Result<Vec<(Vec<usize>, f64)>> {
        self.check_inputs(ch)?;
        let x = self
            .words
            .get(m)
            .ok_or_else(|| Error::invalid(format!("message {m} out of range")))?;
        let supports: Vec<Vec<usize>> = x
            .iter()
            .map(|&s| (0..ch.output_count()).filter(|&y| ch.in_support(s, y)).collect())
            .collect();
        let count = supports.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len()));
        match count {
            Some(c) if c <= EXACT_CAP => {}
            _ => {
                return Err(Error::SizeLimit {
                    what: "received words to enumerate (use Monte-Carlo)",
                    actual: count.unwrap_or(usize::MAX),
                    limit: EXACT_CAP,
                })
            }
        }
        let mut out = vec![(Vec::with_capacity(self.n), 1.0)];
        for (j, s) in supports.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|(y, p)| {
                    s.iter().map(move |&o| {
                        let mut y = y.clone();
                        y.push(o);
                        (y, p * ch.prob(x[j], o))
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// `Σ_{y: M(y) > 1} Wⁿ(y | x_m)`.
    ///
    /// Returns exactly 1 when no received word decodes, rather than a rounded
    /// sum of the row.
    pub fn erasure_probability(&self, ch: &Channel, m: usize) -> Result<f64> {
        let mut erased = 0.0;
        let mut decoded = false;
        for (y, p) in self.outcomes(ch, m)? {
            if self.list_unchecked(ch, &y) > 1 {
                erased += p;
            } else {
                decoded = true;
            }
        }
        Ok(if decoded { erased } else { 1.0 })
    }

    pub fn max_erasure_probability(&self, ch: &Channel) -> Result<f64> {
        (0..self.len()).try_fold(0.0f64, |acc, m| Ok(acc.max(self.erasure_probability(ch, m)?)))
    }

    pub fn avg_erasure_probability(&self, ch: &Channel) -> Result<f64> {
        let total = (0..self.len()).try_fold(0.0, |acc, m| Ok::<_, Error>(acc + self.erasure_probability(ch, m)?))?;
        Ok(total / self.len() as f64)
    }

    /// Monte-Carlo estimate of the erasure probability of message `m`.
    ///
    /// Trial `i` draws from its own ChaCha8 stream `i` under `seed`, so the
    /// result does not depend on how trials are split across threads.
    pub fn erasure_probability_mc(&self, ch: &Channel, m: usize, trials: u64, seed: u64) -> Result<Estimate> {
        self.check_inputs(ch)?;
        if trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        let x = self
            .words
            .get(m)
            .ok_or_else(|| Error::invalid(format!("message {m} out of range")))?;
        let cdfs: Vec<Vec<f64>> = (0..ch.input_count())
            .map(|s| {
                ch.row(s)
                    .iter()
                    .scan(0.0, |acc, &p| {
                        *acc += p;
                        Some(*acc)
                    })
                    .collect()
            })
            .collect();
        let erased: u64 = (0..trials)
            .into_par_iter()
            .map_init(
                || vec![0usize; self.n],
                |y, i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    for (slot, &s) in y.iter_mut().zip(x) {
                        *slot = sample(&cdfs[s], ch.row(s), rng.gen::<f64>());
                    }
                    u64::from(self.list_unchecked(ch, y) > 1)
                },
            )
            .sum();
        let p = erased as f64 / trials as f64;
        Ok(Estimate {
            value: p,
            stderr: (p * (1.0 - p) / trials as f64).sqrt(),
            trials,
        })
    }

    /// `Σ_y Wⁿ(y | x_m) M(y)^ρ`.
    pub fn listsize_moment(&self, ch: &Channel, rho: f64, m: usize) -> Result<f64> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::invalid(format!("ρ = {rho} must be positive")));
        }
        Ok(self
            .outcomes(ch, m)?
            .iter()
            .map(|(y, p)| p * (self.list_unchecked(ch, y) as f64).powf(rho))
            .sum())
    }

    /// Message average of [`Codebook::listsize_moment`].
    pub fn avg_listsize_moment(&self, ch: &Channel, rho: f64) -> Result<f64> {
        let total = (0..self.len()).try_fold(0.0, |acc, m| Ok::<_, Error>(acc + self.listsize_moment(ch, rho, m)?))?;
        Ok(total / self.len() as f64)
    }

    pub fn parse(text: &str) -> Result<Codebook> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `codebook <M> <n>` header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let ["codebook", m, n] = toks[..] else {
            return Err(Error::parse(hline, "header must be `codebook <M> <n>`"));
        };
        let m: usize = m.parse().map_err(|_| Error::parse(hline, "bad word count"))?;
        let n: usize = n.parse().map_err(|_| Error::parse(hline, "bad blocklength"))?;
        let mut words = Vec::with_capacity(m.min(1 << 20));
        for (line, l) in lines {
            if words.len() == m {
                return Err(Error::parse(line, "more words than declared"));
            }
            let w: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad symbol `{t}`"))))
                .collect::<Result<_>>()?;
            if w.len() != n {
                return Err(Error::parse(line, format!("expected {n} symbols, found {}", w.len())));
            }
            words.push(w);
        }
        if words.len() != m {
            return Err(Error::parse(hline, format!("expected {m} words, found {}", words.len())));
        }
        Codebook::new(n, words).map_err(|e| Error::parse(hline, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("codebook {} {}\n", self.len(), self.n);
        for w in &self.words {
            let t: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "{}", t.join(" "));
        }
        s
    }
}

impl FromStr for Codebook {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Codebook::parse(s)
    }
}

/// `Wⁿ(y|x) > 0`.
fn reaches(ch: &Channel, x: &[usize], y: &[usize]) -> bool {
    x.iter().zip(y).all(|(&a, &b)| ch.in_support(a, b))
}

/// Inverse-CDF draw that never lands on a zero-probability output.
fn sample(cdf: &[f64], row: &[f64], u: f64) -> usize {
    let i = cdf.partition_point(|&c| c <= u);
    if i < row.len() && row[i] > 0.0 {
        return i;
    }
    // rounding at the top end: take the last output with mass
    (0..row.len()).rev().find(|&y| row[y] > 0.0).unwrap_or(0)
}
