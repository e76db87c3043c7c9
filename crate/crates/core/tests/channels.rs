mod common;

use common::{arb_channel, arb_graph, triangle};
use proptest::prelude::*;
use zue::digraph::{graphs_equal, index_to_word};
use zue::{Channel, InputPmf};

const LN2: f64 = std::f64::consts::LN_2;

fn z(delta: f64) -> Channel {
    Channel::from_rows(&[vec![1.0, 0.0], vec![delta, 1.0 - delta]], false).unwrap()
}

fn three_cycle() -> Channel {
    Channel::from_rows(&[vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5]], false).unwrap()
}

/// max over a fine grid of I(P, W) for a binary-input channel.
fn binary_capacity_grid(ch: &Channel, steps: usize) -> f64 {
    (0..=steps)
        .map(|i| {
            let p = i as f64 / steps as f64;
            ch.mutual_information(&InputPmf::new(vec![p, 1.0 - p]).unwrap()).unwrap()
        })
        .fold(0.0, f64::max)
}

#[test]
fn known_capacities() {
    assert!((z(0.5).capacity().unwrap().nats - 1.25f64.ln()).abs() < 1e-8);
    assert!((three_cycle().capacity().unwrap().nats - 1.5f64.ln()).abs() < 1e-7);
    let bec = Channel::from_rows(&[vec![0.7, 0.0, 0.3], vec![0.0, 0.7, 0.3]], false).unwrap();
    assert!((bec.capacity().unwrap().nats - 0.7 * LN2).abs() < 1e-9);
    assert!((Channel::identity(4).unwrap().capacity().unwrap().nats - 4f64.ln()).abs() < 1e-12);
}

#[test]
fn canonical_triangle_rows() {
    let w = Channel::canonical(&triangle(), 0.3).unwrap();
    let rows = [[0.7, 0.3, 0.0], [0.0, 0.7, 0.3], [0.3, 0.0, 0.7]];
    for (x, r) in rows.iter().enumerate() {
        for (y, &p) in r.iter().enumerate() {
            assert!((w.prob(x, y) - p).abs() < 1e-15);
        }
    }
    assert!((w.epsilon().unwrap() - 0.3).abs() < 1e-15);
}

#[test]
fn structural_flags() {
    assert!(z(0.5).bipartite_acyclic());
    assert!(!three_cycle().bipartite_acyclic());
    let f = three_cycle().factorize().expect("three-cycle channel factorizes");
    for x in 0..3 {
        assert!(f.a[x] > 0.0 && f.b[x] > 0.0);
    }
    assert!(Channel::canonical(&triangle(), 0.1).unwrap().factorize().is_none());
    let bsc = Channel::from_rows(&[vec![0.9, 0.1], vec![0.1, 0.9]], false).unwrap();
    assert!(!bsc.zue_positive());
    assert_eq!(bsc.feedback_zue().unwrap(), 0.0);
}

#[test]
fn parse_errors_carry_lines() {
    let err = Channel::parse("channel 2 2 0\n1 0\n0.5 x\n").unwrap_err();
    assert!(matches!(err, zue::Error::Parse { line: 3, .. }), "{err}");
    assert!(Channel::parse("channel 2 2 0\n1 0\n0.5 0.4\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_rows_and_support(ch in arb_channel(3, 3), n in 1usize..=2) {
        let wn = ch.power(n).unwrap();
        let (x, y) = (ch.input_count(), ch.output_count());
        for i in 0..wn.input_count() {
            let s: f64 = wn.row(i).iter().sum();
            prop_assert!((s - 1.0).abs() < 1e-9);
            let xi = index_to_word(i, x, n);
            for j in 0..wn.output_count() {
                let yj = index_to_word(j, y, n);
                let expect = xi.iter().zip(&yj).all(|(&a, &b)| ch.in_support(a, b));
                prop_assert_eq!(wn.in_support(i, j), expect);
            }
        }
    }

    #[test]
    fn canonical_round_trip(g in arb_graph(5), e in prop::sample::select(vec![0.1, 0.5, 0.9])) {
        let w = Channel::canonical(&g, e).unwrap();
        prop_assert!(graphs_equal(&w.graph().unwrap(), &g));
        let w2 = w.power(2).unwrap();
        prop_assert!(graphs_equal(&w2.graph().unwrap(), &g.strong_power(2).unwrap()));
    }

    #[test]
    fn merging_is_idempotent(ch in arb_channel(4, 6)) {
        let (m, _) = ch.merge_outputs();
        prop_assert_eq!(&m.merge_outputs().0, &m);
        prop_assert_eq!(m.zue_positive(), ch.zue_positive());
        // merging is post-processing, so capacity can only drop
        prop_assert!(m.capacity().unwrap().nats <= ch.capacity().unwrap().upper + 1e-9);
    }

    #[test]
    fn merging_keeps_noise_structure(g in arb_graph(4), extra in 1usize..3) {
        // Append duplicated non-input outputs to a canonical channel.
        let w = Channel::canonical(&g, 0.4).unwrap();
        let k = g.vertex_count();
        let rows: Vec<Vec<f64>> = (0..k)
            .map(|x| {
                let mut r: Vec<f64> = w.row(x).iter().map(|p| p / 2.0).collect();
                let tail = if x % 2 == 0 { 0.5 / extra as f64 } else { 0.0 };
                r.extend(std::iter::repeat_n(tail, extra));
                if x % 2 == 1 {
                    r.iter_mut().for_each(|p| *p *= 2.0);
                }
                r
            })
            .collect();
        let ch = Channel::from_rows(&rows, true).unwrap();
        let (m, _) = ch.merge_outputs();
        prop_assert_eq!(m.epsilon().unwrap(), ch.epsilon().unwrap());
        prop_assert!(graphs_equal(&m.graph().unwrap(), &ch.graph().unwrap()));
        prop_assert!(m.output_count() <= k + 1);
    }

    #[test]
    fn factorizations_reproduce_the_channel(ch in arb_channel(4, 4)) {
        if let Some(f) = ch.factorize() {
            for x in 0..ch.input_count() {
                for y in 0..ch.output_count() {
                    if ch.in_support(x, y) {
                        prop_assert!((f.a[x] * f.b[y] - ch.prob(x, y)).abs() < 1e-9);
                    }
                }
            }
        }
        if ch.bipartite_acyclic() {
            prop_assert!(ch.factorize().is_some());
        }
    }

    #[test]
    fn capacity_brackets_and_matches_grid(ch in arb_channel(2, 4)) {
        prop_assume!(ch.input_count() == 2);
        let c = ch.capacity().unwrap();
        prop_assert!(c.nats <= c.upper && c.upper - c.nats < 1e-9);
        prop_assert!((ch.mutual_information(&c.input).unwrap() - c.nats).abs() < 1e-12);
        let grid = binary_capacity_grid(&ch, 10_000);
        prop_assert!(grid <= c.upper + 1e-12);
        prop_assert!(c.nats - grid < 1e-6);
    }

    #[test]
    fn capacity_is_below_log_sizes(ch in arb_channel(4, 5)) {
        let c = ch.capacity().unwrap().nats;
        let cap = (ch.input_count().min(ch.output_count()) as f64).ln();
        prop_assert!(c >= -1e-15 && c <= cap + 1e-9);
    }

    #[test]
    fn text_round_trip(ch in arb_channel(3, 4)) {
        let back = Channel::parse(&ch.to_text()).unwrap();
        for x in 0..ch.input_count() {
            for y in 0..ch.output_count() {
                prop_assert_eq!(back.in_support(x, y), ch.in_support(x, y));
                prop_assert!((back.prob(x, y) - ch.prob(x, y)).abs() < 1e-12);
            }
        }
    }
}
