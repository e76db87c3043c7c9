//! Bounds on the zero-undetected-error capacity `Ceo`.
//!
//! Lower bounds: Forney's random-coding bound (single-letter and over
//! uniform-support PMFs on `Xⁿ`), Hui's bound, and the Sperner-code bound
//! `(1−ε)ⁿ·rate`. Upper bounds: the Shannon capacity, and for ε-noise
//! channels `ln(e^Csp + ε|X|(|Y|−1))`, which is only as good as the `Csp`
//! fed into it. [`composite_report`] collects whatever applies.
//!
//! Every lower bound here is the objective evaluated at an explicit input
//! distribution (or code), so it is valid whether or not the outer
//! maximisation found the global optimum.

use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{Channel, InputPmf};
use crate::digraph::index_to_word;
use crate::error::{Error, Result};
use crate::gsolve::Solver;
use crate::numfmt::sig12;
use crate::zuedec::Codebook;

/// Largest input alphabet (of the product channel) for support enumeration.
pub const ENUM_CAP: usize = 12;

/// Marginal residual at which the inner Hui iteration stops.
pub const HUI_TOLERANCE: f64 = 1e-10;
/// Scaling sweeps before the inner solver switches to Newton steps.
pub const HUI_SWEEPS: usize = 2_000;
pub const HUI_NEWTON_ITER: usize = 200;

/// Outer search of the single-letter Forney bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForneyMode {
    /// Exact maximum over PMFs uniform on their support.
    UniformEnum,
    /// The above plus multistart local search over the whole simplex.
    SimplexSearch,
}

/// Outer search of the Hui bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuiOuter {
    /// Simplex grid (step 0.01 for binary inputs) refined by local search.
    Grid,
    /// Local search from several deterministic and seeded random starts.
    Multistart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForneyBound {
    /// Nats per letter.
    pub value: f64,
    /// Maximiser on `Xⁿ` (single-letter: on `X`).
    pub input: InputPmf,
    /// Whether `value` is the exact maximum over the searched class.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HuiBound {
    pub value: f64,
    pub input: InputPmf,
    /// Minimising test channel with `V ≪ W` and `PV = PW`.
    pub test_channel: Channel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JensenCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `Σ_y (PW)(y) ln 1/P(X(y))`.
pub fn forney_objective(ch: &Channel, p: &InputPmf) -> Result<f64> {
    let q = ch.output_distribution(p)?;
    let probs = p.probs();
    let support = p.support();
    Ok((0..ch.output_count())
        .filter(|&y| q[y] > 0.0)
        .map(|y| {
            // P(X(y)) = 1 exactly when X(y) covers supp(P)
            if support.iter().all(|&x| ch.in_support(x, y)) {
                return 0.0;
            }
            let mass: f64 = ch.column_support(y).iter().map(|&x| probs[x]).sum();
            q[y] * (1.0 / mass).ln()
        })
        .sum::<f64>()
        .max(0.0))
}

/// Forney's single-letter bound `max_P Σ_y (PW)(y) ln 1/P(X(y))`.
pub fn forney_single_letter(ch: &Channel, mode: ForneyMode) -> Result<ForneyBound> {
    let mut best = forney_uniform_enum(ch, 1)?;
    if mode == ForneyMode::SimplexSearch {
        let k = ch.input_count();
        let f = |p: &[f64]| forney_objective(ch, &InputPmf(p.to_vec())).unwrap_or(0.0);
        let mut starts = vec![best.input.probs().to_vec(), vec![1.0 / k as f64; k]];
        starts.extend(random_starts(k, 8, 0x5EED));
        for s in starts {
            let (v, p) = climb(&f, s);
            if v > best.value {
                best = ForneyBound {
                    value: v,
                    input: InputPmf::new(p)?,
                    exact: false,
                };
            }
        }
        best.exact = false;
    }
    Ok(best)
}

/// Forney's bound on `Wⁿ` maximised over PMFs uniform on their support, in
/// nats per letter. The witness is the maximising support (word indices).
pub fn forney_multiletter_uniform(ch: &Channel, n: usize) -> Result<(ForneyBound, Vec<usize>)> {
    let b = forney_uniform_enum(ch, n)?;
    let support = b.input.support();
    Ok((b, support))
}

fn forney_uniform_enum(ch: &Channel, n: usize) -> Result<ForneyBound> {
    let k = checked_pow(ch.input_count(), n).unwrap_or(usize::MAX);
    if k > ENUM_CAP {
        return Err(Error::SizeLimit {
            what: "inputs for support enumeration",
            actual: k,
            limit: ENUM_CAP,
        });
    }
    let wn = if n == 1 { ch.clone() } else { ch.power(n)? };
    // collapse outputs to (support mask, per-input mass)
    let (merged, _) = Channel::new(k, wn.output_count(), wn_rows(&wn), false)?.merge_outputs();
    let classes: Vec<(u32, Vec<f64>)> = (0..merged.output_count())
        .map(|y| {
            let mask = merged.column_support(y).iter().fold(0u32, |m, &x| m | 1 << x);
            (mask, (0..k).map(|x| merged.prob(x, y)).collect())
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, 0u32);
    for s in 1u32..(1 << k) {
        let size = s.count_ones() as f64;
        let mut total = 0.0;
        for (mask, mass) in &classes {
            let hit = (s & mask).count_ones();
            if hit == 0 {
                continue;
            }
            let q: f64 = (0..k).filter(|&x| s >> x & 1 == 1).map(|x| mass[x]).sum();
            total += q * (size / hit as f64).ln();
        }
        let v = total / size;
        // ties go to the lexicographically least support
        if v > best.0 || (v == best.0 && lex_less(s, best.1)) {
            best = (v, s);
        }
    }
    let support: Vec<usize> = (0..k).filter(|&x| best.1 >> x & 1 == 1).collect();
    Ok(ForneyBound {
        value: best.0.max(0.0) / n as f64,
        input: InputPmf::uniform_on(k, &support)?,
        exact: true,
    })
}

fn wn_rows(ch: &Channel) -> Vec<f64> {
    (0..ch.input_count()).flat_map(|x| ch.row(x).to_vec()).collect()
}

/// Whether the sorted element list of `a` precedes that of `b`.
fn lex_less(a: u32, b: u32) -> bool {
    let (mut a, mut b) = (a, b);
    while a != 0 && b != 0 {
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x < y;
        }
        a &= a - 1;
        b &= b - 1;
    }
    a == 0 && b != 0
}

/// Inner Hui problem: `min I(P,V)` over `V ≪ W` with `PV = PW`.
///
/// With `Q = PW` the objective is `D(J ‖ P⊗Q)` over joints `J` with
/// marginals `P`, `Q` and support inside `supp(W)`, an I-projection solved by
/// iterative proportional fitting from `P⊗Q` restricted to the support.
/// Returns the value and `V`; rows outside `supp(P)` copy `W`.
pub fn hui_inner(ch: &Channel, p: &InputPmf) -> Result<(f64, Channel)> {
    let q = ch.output_distribution(p)?;
    let probs = p.probs();
    let (nx, ny) = (ch.input_count(), ch.output_count());
    let rows: Vec<usize> = p.support();
    let mut j = vec![0.0; nx * ny];
    for &x in &rows {
        for y in 0..ny {
            if ch.in_support(x, y) {
                j[x * ny + y] = probs[x] * q[y];
            }
        }
    }
    let mut residual = ipf(&mut j, &rows, probs, &q, ny, HUI_SWEEPS);
    if residual >= HUI_TOLERANCE {
        // Small row masses make the scaling sweeps crawl; Newton on the dual
        // scaling variables does not care.
        residual = newton_scaling(ch, &mut j, &rows, probs, &q);
    }
    if residual >= HUI_TOLERANCE {
        return Err(Error::NoConvergence {
            what: "Hui inner projection",
            iterations: HUI_SWEEPS + HUI_NEWTON_ITER,
            residual,
        });
    }
    let mut value = 0.0;
    let mut v = Vec::with_capacity(nx * ny);
    for x in 0..nx {
        if probs[x] > 0.0 {
            let r = &j[x * ny..(x + 1) * ny];
            let s: f64 = r.iter().sum();
            for y in 0..ny {
                if r[y] > 0.0 {
                    value += r[y] * (r[y] / (probs[x] * q[y])).ln();
                }
                v.push(r[y] / s);
            }
        } else {
            v.extend_from_slice(ch.row(x));
        }
    }
    // V = W is feasible, so the minimum never exceeds I(P,W)
    let value = value.clamp(0.0, ch.mutual_information(p)?.max(0.0));
    Ok((value, Channel::new(nx, ny, v, ch.is_identified())?))
}

/// Alternate row and column scaling of `j`; returns the row residual.
fn ipf(j: &mut [f64], rows: &[usize], probs: &[f64], q: &[f64], ny: usize, sweeps: usize) -> f64 {
    let mut residual = f64::INFINITY;
    for _ in 0..sweeps {
        for &x in rows {
            let r = &mut j[x * ny..(x + 1) * ny];
            let s: f64 = r.iter().sum();
            r.iter_mut().for_each(|v| *v *= probs[x] / s);
        }
        let mut col = vec![0.0; ny];
        for &x in rows {
            for (c, v) in col.iter_mut().zip(&j[x * ny..(x + 1) * ny]) {
                *c += v;
            }
        }
        for &x in rows {
            for y in 0..ny {
                if col[y] > 0.0 {
                    j[x * ny + y] *= q[y] / col[y];
                }
            }
        }
        residual = rows
            .iter()
            .map(|&x| (j[x * ny..(x + 1) * ny].iter().sum::<f64>() - probs[x]).abs())
            .sum();
        if residual < HUI_TOLERANCE {
            break;
        }
    }
    residual
}

/// Damped Newton ascent on the dual of the I-projection.
///
/// The projection has the form `J = P(x)Q(y)·exp(a_x + b_y)` on the support;
/// the dual `Σ P a + Σ Q b − Σ J` is concave and attains its maximum because
/// `P(x)W(y|x)` is a strictly positive feasible point. Overwrites `j` and
/// returns the total marginal residual.
fn newton_scaling(ch: &Channel, j: &mut [f64], rows: &[usize], probs: &[f64], q: &[f64]) -> f64 {
    let ny = ch.output_count();
    let cols: Vec<usize> = (0..ny).filter(|&y| q[y] > 0.0).collect();
    let (r, c) = (rows.len(), cols.len());
    let cells: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (0..c).map(move |k| (i, k)))
        .filter(|&(i, k)| ch.in_support(rows[i], cols[k]))
        .collect();
    let base: Vec<f64> = cells.iter().map(|&(i, k)| probs[rows[i]] * q[cols[k]]).collect();
    let target: Vec<f64> = rows.iter().map(|&x| probs[x]).chain(cols.iter().map(|&y| q[y])).collect();
    let joint = |t: &[f64]| -> Vec<f64> {
        cells
            .iter()
            .zip(&base)
            .map(|(&(i, k), b)| b * (t[i] + t[r + k]).exp())
            .collect()
    };
    let dual = |t: &[f64], jv: &[f64]| -> f64 {
        t.iter().zip(&target).map(|(a, m)| a * m).sum::<f64>() - jv.iter().sum::<f64>()
    };
    let marginals = |jv: &[f64]| -> Vec<f64> {
        let mut m = vec![0.0; r + c];
        for (&(i, k), v) in cells.iter().zip(jv) {
            m[i] += v;
            m[r + k] += v;
        }
        m
    };
    let gap = |m: &[f64]| -> f64 { target.iter().zip(m).map(|(a, b)| (a - b).abs()).sum() };
    let mut t = vec![0.0; r + c];
    let mut jv = joint(&t);
    for _ in 0..HUI_NEWTON_ITER {
        let m = marginals(&jv);
        let g: Vec<f64> = target.iter().zip(&m).map(|(a, b)| a - b).collect();
        let residual = gap(&m);
        if residual < HUI_TOLERANCE / 4.0 {
            break;
        }
        // H = [[diag(rows), J], [Jᵀ, diag(cols)]], solved after symmetric
        // diagonal scaling; the ridge removes the per-component gauge.
        let d = r + c;
        let scale: Vec<f64> = m.iter().map(|v| v.max(f64::MIN_POSITIVE).sqrt()).collect();
        let mut h = vec![0.0; d * d];
        for i in 0..d {
            h[i * d + i] = 1.0 + 1e-12;
        }
        for (&(i, k), v) in cells.iter().zip(&jv) {
            let e = v / (scale[i] * scale[r + k]);
            h[i * d + r + k] = e;
            h[(r + k) * d + i] = e;
        }
        let rhs: Vec<f64> = g.iter().zip(&scale).map(|(g, s)| g / s).collect();
        let Some(step) = solve_dense(h, rhs, d) else {
            break;
        };
        let step: Vec<f64> = step.iter().zip(&scale).map(|(x, s)| x / s).collect();
        let before = dual(&t, &jv);
        let mut len = 1.0;
        loop {
            let cand: Vec<f64> = t.iter().zip(&step).map(|(a, s)| a + len * s).collect();
            let cj = joint(&cand);
            // near the optimum the dual moves below rounding, so a smaller
            // residual also counts as progress
            let res = gap(&marginals(&cj));
            if dual(&cand, &cj) >= before || res < residual || len < 1e-12 {
                t = cand;
                jv = cj;
                break;
            }
            len /= 2.0;
        }
    }
    j.iter_mut().for_each(|v| *v = 0.0);
    for (&(i, k), v) in cells.iter().zip(&jv) {
        j[rows[i] * ny + cols[k]] = *v;
    }
    // report the same row residual as the sweeps
    rows.iter()
        .map(|&x| (j[x * ny..(x + 1) * ny].iter().sum::<f64>() - probs[x]).abs())
        .sum()
}

/// Gaussian elimination with partial pivoting on a dense `d × d` system.
fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>, d: usize) -> Option<Vec<f64>> {
    for col in 0..d {
        let piv = (col..d).max_by(|&i, &k| a[i * d + col].abs().total_cmp(&a[k * d + col].abs()))?;
        if a[piv * d + col].abs() < 1e-300 {
            return None;
        }
        if piv != col {
            for k in 0..d {
                a.swap(piv * d + k, col * d + k);
            }
            b.swap(piv, col);
        }
        for i in col + 1..d {
            let f = a[i * d + col] / a[col * d + col];
            if f != 0.0 {
                for k in col..d {
                    a[i * d + k] -= f * a[col * d + k];
                }
                b[i] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; d];
    for i in (0..d).rev() {
        let s: f64 = (i + 1..d).map(|k| a[i * d + k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i * d + i];
    }
    Some(x)
}

/// Hui's bound `max_P min_{V≪W, PV=PW} I(P,V)`.
pub fn hui_bound(ch: &Channel, outer: HuiOuter) -> Result<HuiBound> {
    let k = ch.input_count();
    let eval = |p: &[f64]| -> Result<f64> { Ok(hui_inner(ch, &InputPmf(p.to_vec()))?.0) };
    let mut starts: Vec<Vec<f64>> = Vec::new();
    match outer {
        HuiOuter::Grid => {
            let m = grid_resolution(k);
            let mut best = (f64::NEG_INFINITY, Vec::new());
            for p in simplex_grid(k, m) {
                let v = eval(&p)?;
                // least index grid point wins ties
                if v > best.0 {
                    best = (v, p);
                }
            }
            starts.push(best.1);
        }
        HuiOuter::Multistart => {
            starts.push(vec![1.0 / k as f64; k]);
            starts.push(ch.capacity()?.input.probs().to_vec());
            starts.extend(random_starts(k, 6, 0x4855_4931));
        }
    }
    let failure = std::cell::RefCell::new(None);
    let f = |p: &[f64]| match eval(p) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NEG_INFINITY
        }
    };
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for s in starts {
        let (v, p) = climb(&f, s);
        if v > best.0 {
            best = (v, p);
        }
    }
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let input = InputPmf(best.1);
    let (value, test_channel) = hui_inner(ch, &input)?;
    Ok(HuiBound {
        value,
        input,
        test_channel,
    })
}

/// Grid denominator: 100 for binary inputs, coarser as the simplex grows.
fn grid_resolution(k: usize) -> usize {
    let mut m = 100;
    while m > 1 && binomial(m + k - 1, k - 1) > 5000 {
        m -= 1;
    }
    m
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All points of the simplex with coordinates in `{0, 1/m, …, 1}`.
fn simplex_grid(k: usize, m: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<f64>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.iter().map(|&c| c as f64 / m as f64).collect());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, m, out);
        }
    }
    rec(0, m, &mut cur, m, &mut out);
    out
}

fn random_starts(k: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            // flat Dirichlet via normalised exponentials
            let e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let s: f64 = e.iter().sum();
            e.into_iter().map(|v| v / s).collect()
        })
        .collect()
}

/// Pattern search on the simplex: move mass `h` between coordinate pairs,
/// halving `h` when no move improves.
fn climb(f: &dyn Fn(&[f64]) -> f64, start: Vec<f64>) -> (f64, Vec<f64>) {
    let k = start.len();
    let mut p = start;
    let mut best = f(&p);
    let mut h: f64 = 0.05;
    while h > 1e-9 {
        let mut moved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j || p[i] <= 0.0 {
                    continue;
                }
                let step = h.min(p[i]);
                let mut t = p.clone();
                t[i] -= step;
                t[j] += step;
                let v = f(&t);
                if v > best {
                    best = v;
                    p = t;
                    moved = true;
                }
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    (best, p)
}

/// `y_eff = min(|Y|, |X| + 2^|X| − 1)`: the output count after merging
/// outputs outside `X` by support.
pub fn effective_outputs(x_count: usize, y_count: usize) -> usize {
    let cap = 1usize
        .checked_shl(x_count as u32)
        .and_then(|p| p.checked_add(x_count - 1))
        .unwrap_or(usize::MAX);
    y_count.min(cap)
}

/// `ln(e^csp + ε|X|(|Y|−1))`, an upper bound on `Ceo` for ε-noise channels
/// when `csp` upper-bounds their Sperner capacity.
pub fn theorem1_upper(
    csp: f64,
    eps: f64,
    x_count: usize,
    y_count: usize,
    use_remark1: bool,
) -> Result<f64> {
    check_eps(eps)?;
    if !(csp >= 0.0 && csp.is_finite()) {
        return Err(Error::invalid(format!("csp = {csp} must be a finite value ≥ 0")));
    }
    if x_count == 0 || y_count < x_count {
        return Err(Error::invalid("need 1 ≤ |X| ≤ |Y|"));
    }
    let y = if use_remark1 {
        effective_outputs(x_count, y_count)
    } else {
        y_count
    };
    Ok((csp.exp() + eps * x_count as f64 * (y - 1) as f64).ln())
}

/// `(1−ε)ⁿ·rate` for a verified Sperner code of blocklength `n`.
pub fn sperner_code_lower(code_rate: f64, n: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if n == 0 || code_rate < 0.0 {
        return Err(Error::invalid("need n ≥ 1 and a nonnegative rate"));
    }
    Ok((1.0 - eps).powi(n as i32) * code_rate)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::invalid(format!("ε = {eps} must lie in [0,1)")));
    }
    Ok(())
}

/// Compares `Σ_y (PWⁿ)(y)/P(Xⁿ(y))` with `(e^csp + ε|X|(|Y|−1))ⁿ`.
///
/// `p` lives on `Xⁿ` (words ranked most significant letter first) and must
/// be uniform on its support.
pub fn jensen_chain_check(ch: &Channel, p: &InputPmf, n: usize, csp: f64) -> Result<JensenCheck> {
    let eps = ch.epsilon()?;
    if !p.is_uniform_on_support() {
        return Err(Error::invalid("PMF must be uniform on its support"));
    }
    let wn = ch.power(n)?;
    wn.check_pmf(p)?;
    let q = wn.output_distribution(p)?;
    let probs = p.probs();
    let lhs: f64 = (0..wn.output_count())
        .filter(|&y| q[y] > 0.0)
        .map(|y| q[y] / wn.column_support(y).iter().map(|&x| probs[x]).sum::<f64>())
        .sum();
    let base = csp.exp() + eps * ch.input_count() as f64 * (ch.output_count() - 1) as f64;
    let rhs = base.powi(n as i32);
    Ok(JensenCheck {
        lhs,
        rhs,
        ok: lhs <= rhs + 1e-9,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    /// Uncertified bounds are shown but never enter the interval.
    pub certified: bool,
    /// Witness or validity condition, free text without commas.
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Shortcut {
    pub name: &'static str,
    pub triggered: bool,
}

/// A Sperner capacity value fed into the ε-noise upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Csp {
    pub value: f64,
    /// `true` when the caller vouches that `value ≥ Csp`; finite-blocklength
    /// estimates are lower bounds on `Csp` and are never certified.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub csp: Option<Csp>,
    /// Deepest blocklength for the multi-letter Forney bound.
    pub forney_n: usize,
    /// Deepest blocklength for the Sperner-code search.
    pub code_n: usize,
    pub remark1: bool,
    pub hui: HuiOuter,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            csp: None,
            forney_n: 2,
            code_n: 2,
            remark1: false,
            hui: HuiOuter::Grid,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bounds: Vec<Bound>,
    pub shortcuts: Vec<Shortcut>,
    pub capacity: f64,
    pub best_lower: f64,
    pub best_upper: f64,
}

impl BoundReport {
    pub fn lower_bounds(&self) -> impl Iterator<Item = &Bound> {
        self.bounds.iter().filter(|b| b.kind == BoundKind::Lower)
    }

    pub fn upper_bounds(&self) -> impl Iterator<Item = &Bound> {
        self.bounds.iter().filter(|b| b.kind == BoundKind::Upper)
    }

    pub fn triggered(&self, name: &str) -> bool {
        self.shortcuts.iter().any(|s| s.name == name && s.triggered)
    }

    /// `Ceo` when a shortcut pins it down.
    pub fn exact(&self) -> Option<f64> {
        (self.best_lower == self.best_upper).then_some(self.best_lower)
    }

    pub fn is_consistent(&self) -> bool {
        self.best_lower <= self.best_upper + 1e-6
    }

    /// `bound_name,kind,value_nats,certified,witness`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("bound_name,kind,value_nats,certified,witness\n");
        for b in &self.bounds {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                b.name,
                b.kind,
                sig12(b.value),
                b.certified,
                b.witness
            );
        }
        s
    }

    /// Human-readable table; `scale` divides every value (use `ln 2` for
    /// bits) and `unit` labels them.
    pub fn to_table(&self, scale: f64, unit: &str) -> String {
        let mut s = String::new();
        for sc in self.shortcuts.iter().filter(|s| s.triggered) {
            let _ = writeln!(s, "shortcut: {}", sc.name);
        }
        let width = self.bounds.iter().map(|b| b.name.len()).max().unwrap_or(0);
        for b in &self.bounds {
            let _ = writeln!(
                s,
                "{:<5} {:<width$}  {:>16} {}{}  {}",
                b.kind,
                b.name,
                sig12(b.value / scale),
                unit,
                if b.certified { "" } else { " (not certified)" },
                b.witness,
            );
        }
        let _ = writeln!(
            s,
            "Ceo in [{}, {}] {}",
            sig12(self.best_lower / scale),
            sig12(self.best_upper / scale),
            unit
        );
        s
    }
}

pub const SHORTCUT_ACYCLIC: &str = "bipartite acyclic ⇒ Ceo = C";
pub const SHORTCUT_FACTOR: &str = "factorizes ⇒ Ceo = C";
pub const SHORTCUT_NOT_POSITIVE: &str = "no output rules out an input ⇒ Ceo = 0";

/// Every applicable bound on `Ceo(W)`.
pub fn composite_report(ch: &Channel, opts: &ReportOptions) -> Result<BoundReport> {
    let cap = ch.capacity()?;
    let c = cap.nats;
    let mut bounds = vec![Bound {
        name: "shannon_capacity".into(),
        kind: BoundKind::Upper,
        value: c,
        certified: true,
        witness: format!("P={}", fmt_pmf(&cap.input)),
    }];

    let f1 = forney_single_letter(ch, ForneyMode::SimplexSearch)?;
    bounds.push(lower("forney_single_letter", f1.value, format!("P={}", fmt_pmf(&f1.input))));
    for n in 2..=opts.forney_n {
        if checked_pow(ch.input_count(), n).is_none_or(|k| k > ENUM_CAP) {
            break;
        }
        let (b, support) = forney_multiletter_uniform(ch, n)?;
        bounds.push(lower(
            &format!("forney_uniform_n{n}"),
            b.value,
            format!("uniform on {}", fmt_words(&support, ch.input_count(), n)),
        ));
    }
    let hui = hui_bound(ch, opts.hui)?;
    bounds.push(lower("hui", hui.value, format!("P={}", fmt_pmf(&hui.input))));

    let noise = ch.epsilon().ok();
    if let Some(eps) = noise {
        if let Some(code) = best_sperner_code(ch, opts.code_n)? {
            let rate = code.rate();
            let n = code.blocklength();
            bounds.push(lower(
                "sperner_code",
                sperner_code_lower(rate, n, eps)?,
                format!("n={n} M={} code {}", code.len(), fmt_code(&code)),
            ));
        }
        let csp = match opts.csp {
            Some(csp) => Some(csp),
            None => estimate_csp(ch)?,
        };
        if let Some(csp) = csp {
            let y = ch.output_count();
            let upper = theorem1_upper(csp.value, eps, ch.input_count(), y, opts.remark1)?;
            bounds.push(Bound {
                name: "theorem1_upper".into(),
                kind: BoundKind::Upper,
                value: upper,
                certified: csp.certified,
                witness: format!(
                    "eps={} csp={} {}",
                    sig12(eps),
                    sig12(csp.value),
                    if csp.certified {
                        "certified"
                    } else {
                        "finite-n estimate (heuristic)"
                    }
                ),
            });
        }
    }

    let shortcuts = vec![
        Shortcut {
            name: SHORTCUT_ACYCLIC,
            triggered: ch.bipartite_acyclic(),
        },
        Shortcut {
            name: SHORTCUT_FACTOR,
            triggered: ch.factorize().is_some(),
        },
        Shortcut {
            name: SHORTCUT_NOT_POSITIVE,
            triggered: !ch.zue_positive(),
        },
    ];
    let best_upper_raw = bounds
        .iter()
        .filter(|b| b.kind == BoundKind::Upper && b.certified)
        .map(|b| b.value)
        .fold(f64::INFINITY, f64::min);
    let best_lower_raw = bounds
        .iter()
        .filter(|b| b.kind == BoundKind::Lower && b.certified)
        .map(|b| b.value)
        .fold(0.0, f64::max);
    let (best_lower, best_upper) = if shortcuts[2].triggered {
        (0.0, 0.0)
    } else if shortcuts[0].triggered || shortcuts[1].triggered {
        (c, c)
    } else {
        (best_lower_raw, best_upper_raw)
    };
    Ok(BoundReport {
        bounds,
        shortcuts,
        capacity: c,
        best_lower,
        best_upper,
    })
}

fn lower(name: &str, value: f64, witness: String) -> Bound {
    Bound {
        name: name.into(),
        kind: BoundKind::Lower,
        value,
        certified: true,
        witness,
    }
}

/// Best Sperner code from `α(G(W)ⁿ)` over `n ≤ n_max` within the solver cap,
/// verified against the channel.
pub fn best_sperner_code(ch: &Channel, n_max: usize) -> Result<Option<Codebook>> {
    let g = ch.graph()?;
    let solver = Solver::default();
    let mut best: Option<Codebook> = None;
    for n in 1..=n_max {
        let gn = g.strong_power(n)?;
        if gn.vertex_count() > solver.vertex_cap {
            break;
        }
        let sol = solver.max_independent_set(&gn)?;
        let words = sol
            .witness
            .iter()
            .map(|&v| index_to_word(v, g.vertex_count(), n))
            .collect();
        let code = Codebook::new(n, words)?;
        assert!(code.is_sperner(ch)?, "independent set failed the Sperner check");
        if best.as_ref().is_none_or(|b| code.rate() > b.rate() + 1e-15) {
            best = Some(code);
        }
    }
    Ok(best)
}

/// Largest finite-blocklength ρ-rate of `G(W)` within the solver cap, an
/// uncertified stand-in for `Csp`.
fn estimate_csp(ch: &Channel) -> Result<Option<Csp>> {
    let g = ch.graph()?;
    let solver = Solver::default();
    let mut n_max = 1;
    while g.vertex_count().checked_pow(n_max as u32 + 1).is_some_and(|v| v <= 16) {
        n_max += 1;
    }
    let table = solver.sperner_report(&g, n_max)?;
    Ok(Some(Csp {
        value: table.best_lower(),
        certified: false,
    }))
}

fn fmt_pmf(p: &InputPmf) -> String {
    let v: Vec<String> = p.probs().iter().map(|&x| crate::numfmt::sig(x, 6)).collect();
    format!("({})", v.join(" "))
}

fn fmt_words(support: &[usize], base: usize, n: usize) -> String {
    let w: Vec<String> = support
        .iter()
        .map(|&i| {
            index_to_word(i, base, n)
                .iter()
                .map(|c| c.to_string())
                .collect::<String>()
        })
        .collect();
    format!("{{{}}}", w.join(" "))
}

fn fmt_code(code: &Codebook) -> String {
    let w: Vec<String> = code
        .words()
        .iter()
        .map(|w| w.iter().map(|c| c.to_string()).collect::<String>())
        .collect();
    format!("{{{}}}", w.join(" "))
}

fn checked_pow(base: usize, n: usize) -> Option<usize> {
    (0..n).try_fold(1usize, |acc, _| acc.checked_mul(base))
}
