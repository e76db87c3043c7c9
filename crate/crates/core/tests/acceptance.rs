//! Acceptance checks, one line per criterion.
//!
//! Run with `cargo test --test acceptance`. Exits nonzero if any criterion
//! fails; every criterion runs regardless.

use std::f64::consts::{E, LN_2};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zue::bounds::{
    best_sperner_code, composite_report, effective_outputs, forney_multiletter_uniform,
    forney_objective, forney_single_letter, hui_bound, jensen_chain_check, sperner_code_lower,
    theorem1_upper, ForneyMode, HuiOuter, ReportOptions, SHORTCUT_ACYCLIC,
};
use zue::digraph::graphs_equal;
use zue::gsolve::{
    caro_wei_sum, max_acyclic_induced, max_independent_set, random_order_sizes, symmetric_clique,
    transitive_clique, weight_partition_independent_set,
};
use zue::{Channel, Codebook, DirectedGraph, InputPmf};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn time_limit(start: Instant, limit: Duration) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {:.1?}, limit {:.0?}", t, limit))
}

/// Digraph on `n` vertices with off-diagonal pairs taken from `mask`.
fn graph_from_mask(n: usize, mask: u64) -> DirectedGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
    }
    DirectedGraph::from_edges(n, &edges).unwrap()
}

fn all_graphs(max_n: usize) -> impl Iterator<Item = DirectedGraph> {
    (1..=max_n).flat_map(|n| (0..1u64 << (n * (n - 1))).map(move |m| graph_from_mask(n, m)))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> DirectedGraph {
    let m = rng.gen_range(0..1u64 << (n * (n - 1)));
    graph_from_mask(n, m)
}

fn brute_alpha(g: &DirectedGraph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| g.is_independent(s))
        .map(|s| s.len())
        .max()
        .unwrap()
}

fn z(delta: f64) -> Channel {
    Channel::from_rows(&[vec![1.0, 0.0], vec![delta, 1.0 - delta]], false).unwrap()
}

fn triangle() -> DirectedGraph {
    DirectedGraph::cycle(3).unwrap()
}

fn c1_triangle_table() -> Check {
    let start = Instant::now();
    let t = triangle();
    let alpha = |n| max_independent_set(&t.strong_power(n).unwrap()).unwrap().size;
    let rho = |n| max_acyclic_induced(&t.strong_power(n).unwrap()).unwrap().size;
    let (a1, r1, a2, r2, r3) = (alpha(1), rho(1), alpha(2), rho(2), rho(3));
    let oracle = brute_alpha(&t.strong_power(2).unwrap());
    ensure(a1 == 1 && r1 == 2, format!("alpha={a1} rho={r1}"))?;
    ensure(a2 == 3 && oracle == 3, format!("alpha(G^2)={a2}, exhaustive {oracle}"))?;
    ensure(r2 == 4, format!("rho(G^2)={r2}"))?;
    let rates = [(r1 as f64).ln(), (r2 as f64).ln() / 2.0, (r3 as f64).ln() / 3.0];
    ensure(rates.iter().all(|&r| r <= LN_2 + 1e-12), format!("rho rates {rates:?}"))?;
    time_limit(start, Duration::from_secs(10))?;
    Ok(format!("alpha 1,3 rho 2,4,{r3}; max rho rate {:.12}", rates.iter().cloned().fold(0.0, f64::max)))
}

fn c2_caro_wei() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for g in all_graphs(4) {
        let rho = max_acyclic_induced(&g).unwrap().size as f64;
        let cw = caro_wei_sum(&g);
        ensure(cw <= rho + 1e-12, format!("violation: {cw} > {rho} on {:?}", g.edges().collect::<Vec<_>>()))?;
        checked += 1;
    }
    time_limit(start, Duration::from_secs(60))?;
    Ok(format!("{checked} digraphs on 1..4 vertices, 0 violations"))
}

fn c3_acyclic_powers() -> Check {
    let mut acyclic = 0;
    for g in all_graphs(4).filter(|g| g.is_acyclic()) {
        let k = g.vertex_count();
        for n in 1..=3 {
            let gn = g.strong_power(n).unwrap();
            let rho = max_acyclic_induced(&gn).unwrap().size;
            ensure(rho == k.pow(n as u32), format!("rho = {rho} != {}^{n}", k))?;
            let class = weight_partition_independent_set(&g, n).unwrap();
            let bound = (k as f64).powi(n as i32) / (n * k - n + 1) as f64;
            ensure(class.len() as f64 >= bound, format!("weight class {} < {bound}", class.len()))?;
            ensure(gn.is_independent(&class), "weight class not independent")?;
        }
        acyclic += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut slowest = Duration::ZERO;
    for i in 0..100 {
        let g = random_graph(&mut rng, 4);
        let t = Instant::now();
        let rho: Vec<usize> = (1..=3)
            .map(|n| max_acyclic_induced(&g.strong_power(n).unwrap()).unwrap().size)
            .collect();
        slowest = slowest.max(t.elapsed());
        ensure(rho[1] >= rho[0] * rho[0], format!("graph {i}: rho(G^2)={} < rho(G)^2", rho[1]))?;
        ensure(rho[2] >= rho[0] * rho[1], format!("graph {i}: rho(G^3)={} < rho(G)rho(G^2)", rho[2]))?;
    }
    Ok(format!("{acyclic} acyclic digraphs exact for n<=3; 100 random graphs supermultiplicative (slowest {slowest:.1?})"))
}

fn c4_random_orders() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let trials = 100_000;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let g = random_graph(&mut rng, 6);
        let sizes = random_order_sizes(&g, trials, 1000 + i);
        let mean = sizes.iter().sum::<usize>() as f64 / trials as f64;
        let var = sizes.iter().map(|&s| (s as f64 - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        let se = (var / trials as f64).sqrt();
        let cw = caro_wei_sum(&g);
        let z = if se > 0.0 { (mean - cw).abs() / se } else { 0.0 };
        ensure(se > 0.0 || mean == cw, format!("graph {i}: degenerate sample {mean} vs {cw}"))?;
        ensure(z <= 3.0, format!("graph {i}: mean {mean} vs {cw}, {z:.2} standard errors"))?;
        worst = worst.max(z);
    }
    Ok(format!("20 graphs, worst deviation {worst:.2} standard errors"))
}

fn c5_complement_duality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..50 {
        let n = rng.gen_range(1..=4);
        let g = random_graph(&mut rng, n);
        let c = g.complement().unwrap();
        for p in 1..=2 {
            let strong = g.strong_power(p).unwrap();
            let weak = c.weak_power(p).unwrap();
            ensure(graphs_equal(&strong.complement().unwrap(), &weak), format!("graph {i}: complement identity, n={p}"))?;
            let a = max_independent_set(&strong).unwrap().size;
            let w = symmetric_clique(&weak).unwrap().size;
            ensure(a == w, format!("graph {i}, n={p}: alpha {a} != omega {w}"))?;
        }
    }
    let mut count = 0;
    for g in all_graphs(4) {
        let r = max_acyclic_induced(&g).unwrap().size;
        let w = transitive_clique(&g.complement().unwrap()).unwrap().size;
        ensure(r == w, format!("rho {r} != omega_tr {w}"))?;
        count += 1;
    }
    Ok(format!("50 random graphs n<=2; rho = omega_tr(complement) on all {count}"))
}

fn c6_z_channel() -> Check {
    let start = Instant::now();
    let delta = 0.5;
    let ch = z(delta);
    let f = forney_single_letter(&ch, ForneyMode::SimplexSearch).map_err(|e| e.to_string())?;
    let grid = (0..=10_000)
        .map(|i| {
            let p = i as f64 / 10_000.0;
            forney_objective(&ch, &InputPmf::new(vec![p, 1.0 - p]).unwrap()).unwrap()
        })
        .fold(0.0, f64::max);
    let closed = (1.0 - delta) / E;
    ensure((f.value - grid).abs() < 1e-6, format!("forney {} vs grid {grid}", f.value))?;
    ensure((f.value - closed).abs() < 1e-6, format!("forney {} vs (1-d)/e {closed}", f.value))?;
    let c = ch.capacity().map_err(|e| e.to_string())?.nats;
    let h = hui_bound(&ch, HuiOuter::Grid).map_err(|e| e.to_string())?.value;
    ensure((h - c).abs() < 1e-4, format!("hui {h} vs C {c}"))?;
    let r = composite_report(&ch, &ReportOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.triggered(SHORTCUT_ACYCLIC), "acyclic shortcut not triggered")?;
    time_limit(start, Duration::from_secs(5))?;
    Ok(format!("forney {:.9} (grid {grid:.9}); hui - C = {:.1e}", f.value, h - c))
}

fn c7_three_cycle() -> Check {
    let ch = Channel::from_rows(&[vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5]], false).unwrap();
    let f = ch.factorize().ok_or("no factorization")?;
    ensure(f.a.iter().chain(&f.b).all(|&v| v > 0.0), "nonpositive factor")?;
    let mut err: f64 = 0.0;
    for x in 0..3 {
        for y in 0..3 {
            if ch.in_support(x, y) {
                err = err.max((f.a[x] * f.b[y] - ch.prob(x, y)).abs());
            }
        }
    }
    ensure(err < 1e-9, format!("factorization error {err}"))?;
    let c = ch.capacity().map_err(|e| e.to_string())?.nats;
    ensure((c - 1.5f64.ln()).abs() < 1e-7, format!("C = {c}"))?;
    let r = composite_report(&ch, &ReportOptions::default()).map_err(|e| e.to_string())?;
    let exact = r.exact().ok_or("report does not pin Ceo")?;
    ensure((exact - 1.5f64.ln()).abs() < 1e-7, format!("Ceo = {exact}"))?;
    Ok(format!("max factor error {err:.1e}; C = Ceo = {exact:.12}"))
}

fn c8_theorem1() -> Check {
    let v = theorem1_upper(LN_2, 0.1, 3, 3, false).map_err(|e| e.to_string())?;
    ensure((v - 2.6f64.ln()).abs() < 1e-12, format!("{v} != ln 2.6"))?;
    for csp in [0.0, 0.3, LN_2, 1.7] {
        let e0 = theorem1_upper(csp, 0.0, 3, 5, false).unwrap();
        ensure((e0 - csp).abs() < 1e-15, format!("eps=0 gives {e0}, csp {csp}"))?;
    }
    let y = effective_outputs(2, 10);
    ensure(y == 5, format!("y_eff = {y}"))?;
    let with = theorem1_upper(LN_2, 0.1, 2, 10, true).unwrap();
    ensure((with - (2.0 + 0.1 * 2.0 * 4.0f64).ln()).abs() < 1e-12, format!("substituted bound {with}"))?;
    Ok(format!("ln 2.6 error {:.1e}; y_eff(2,10) = {y}", (v - 2.6f64.ln()).abs()))
}

fn c9_jensen() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for eps in [0.1, 0.3] {
        let ch = Channel::canonical(&triangle(), eps).unwrap();
        for s in 1u32..1 << 9 {
            let support: Vec<usize> = (0..9).filter(|&i| s >> i & 1 == 1).collect();
            let p = InputPmf::uniform_on(9, &support).unwrap();
            let j = jensen_chain_check(&ch, &p, 2, LN_2).map_err(|e| e.to_string())?;
            ensure(j.ok, format!("eps={eps}, support {support:?}: {} > {}", j.lhs, j.rhs))?;
            worst = worst.max(j.lhs / j.rhs);
        }
    }
    time_limit(start, Duration::from_secs(30))?;
    Ok(format!("2 x 511 supports; largest lhs/rhs {worst:.6}"))
}

fn c10_convergence() -> Check {
    let tri = triangle();
    let code = best_sperner_code(&Channel::canonical(&tri, 0.5).unwrap(), 2)
        .map_err(|e| e.to_string())?
        .ok_or("no Sperner code")?;
    let grid = [0.2, 0.1, 0.05, 0.01, 0.001];
    let gaps: Vec<f64> = grid
        .iter()
        .map(|&eps| {
            theorem1_upper(LN_2, eps, 3, 3, false).unwrap()
                - sperner_code_lower(code.rate(), code.blocklength(), eps).unwrap()
        })
        .collect();
    let shown: Vec<String> = gaps.iter().map(|g| format!("{g:.4}")).collect();
    ensure(gaps.windows(2).all(|w| w[1] < w[0]), format!("gaps not decreasing: {shown:?}"))?;
    let last = *gaps.last().unwrap();
    ensure(
        last < 0.02,
        format!(
            "gaps {shown:?} decrease, but the gap at eps=0.001 is {last:.4} >= 0.02; \
             the n=2 code has rate ln(3)/2 = {:.4} against ln 2",
            code.rate()
        ),
    )?;
    Ok(format!("gaps {shown:?}"))
}

fn c11_decoder() -> Check {
    let cb = Codebook::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
    let mut worst_z: f64 = 0.0;
    for eps in [0.05, 0.1, 0.3] {
        let ch = Channel::canonical(&triangle(), eps).unwrap();
        ensure(cb.is_sperner(&ch).unwrap(), format!("not Sperner at eps={eps}"))?;
        let exact = cb.max_erasure_probability(&ch).unwrap();
        let bound = 1.0 - (1.0 - eps) * (1.0 - eps);
        ensure(exact <= bound + 1e-15, format!("eps={eps}: erasure {exact} > {bound}"))?;
        let e0 = cb.erasure_probability(&ch, 0).unwrap();
        for seed in [1, 2, 3] {
            let mc = cb.erasure_probability_mc(&ch, 0, 1_000_000, seed).unwrap();
            let z = (mc.value - e0).abs() / mc.stderr;
            ensure(z <= 4.0, format!("eps={eps} seed={seed}: {} vs {e0}, {z:.2} standard errors", mc.value))?;
            worst_z = worst_z.max(z);
        }
    }
    let dup = Codebook::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
    let ch = Channel::canonical(&triangle(), 0.1).unwrap();
    let e = dup.erasure_probability(&ch, 0).unwrap();
    ensure(e == 1.0, format!("duplicate codeword erasure {e}"))?;
    Ok(format!("3 noise levels x 3 seeds, worst {worst_z:.2} standard errors; duplicate erasure exactly 1"))
}

fn random_binary_channel(rng: &mut ChaCha8Rng) -> Channel {
    let ny = rng.gen_range(2..=4);
    let rows: Vec<Vec<f64>> = (0..2)
        .map(|_| {
            let mut r: Vec<f64> = (0..ny)
                .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.05..1.0) })
                .collect();
            if r.iter().all(|&v| v == 0.0) {
                r[rng.gen_range(0..ny)] = 1.0;
            }
            let s: f64 = r.iter().sum();
            r.iter().map(|v| v / s).collect()
        })
        .collect();
    Channel::from_rows(&rows, false).unwrap()
}

fn c12_superadditivity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut least: f64 = f64::INFINITY;
    for i in 0..20 {
        let ch = random_binary_channel(&mut rng);
        let f1 = forney_multiletter_uniform(&ch, 1).map_err(|e| e.to_string())?.0.value;
        let f2 = forney_multiletter_uniform(&ch, 2).map_err(|e| e.to_string())?.0.value;
        let margin = 2.0 * f2 - 2.0 * f1;
        ensure(margin >= -1e-12, format!("channel {i}: 2 F2 = {} < 2 F1 = {}", 2.0 * f2, 2.0 * f1))?;
        least = least.min(margin);
    }
    let delta = 0.5;
    let f = forney_multiletter_uniform(&z(delta), 1).unwrap().0.value;
    let expect = (1.0 - delta) * LN_2 / 2.0;
    ensure((f - expect).abs() < 1e-9, format!("Z-channel n=1: {f} vs {expect}"))?;
    Ok(format!("20 channels, least margin {least:.3e}; Z-channel n=1 error {:.1e}", (f - expect).abs()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("triangle Sperner table", c1_triangle_table),
        ("Caro-Wei sum never exceeds rho", c2_caro_wei),
        ("acyclic powers and supermultiplicativity", c3_acyclic_powers),
        ("random-order sets match Caro-Wei", c4_random_orders),
        ("complement dualities", c5_complement_duality),
        ("Z-channel bounds", c6_z_channel),
        ("factorizable three-cycle channel", c7_three_cycle),
        ("epsilon-noise upper bound arithmetic", c8_theorem1),
        ("Jensen chain on all uniform supports", c9_jensen),
        ("noise sweep gap closes", c10_convergence),
        ("z.u.e. decoder", c11_decoder),
        ("multi-letter Forney superadditivity", c12_superadditivity),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
