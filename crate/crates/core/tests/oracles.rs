use num_bigint::BigUint;
use proptest::prelude::*;
use sawlab::graph::{Family, Graph};
use sawlab::nbrw::estimate_survival;
use sawlab::saw::{enumerate_census, evaluate, EvalOptions, DEFAULT_NODE_BUDGET};

/// Counts self-avoiding walks from `root` by brute recursion with a plain
/// `Vec<bool>`, independent of the library's search.
fn brute_census(g: &Graph, root: usize) -> Vec<u64> {
    fn go(g: &Graph, v: usize, depth: usize, seen: &mut Vec<bool>, counts: &mut Vec<u64>) {
        counts[depth] += 1;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                go(g, w, depth + 1, seen, counts);
                seen[w] = false;
            }
        }
    }
    let mut counts = vec![0; g.n()];
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    go(g, root, 0, &mut seen, &mut counts);
    counts
}

fn random_graph() -> impl Strategy<Value = (Graph, usize)> {
    (3usize..10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (Just(n), proptest::collection::vec(any::<bool>(), m), 0..n).prop_map(move |(n, keep, root)| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
            (Graph::new(n, &edges, 0).unwrap(), root)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn census_matches_brute_force((g, root) in random_graph()) {
        let census = enumerate_census(&g, root, g.n() - 1, DEFAULT_NODE_BUDGET).unwrap();
        let want: Vec<BigUint> = brute_census(&g, root).into_iter().map(BigUint::from).collect();
        prop_assert_eq!(census.counts, want);
    }

    #[test]
    fn length_matches_direct_sum((g, root) in random_graph(), x in 0.01f64..3.0) {
        let census = enumerate_census(&g, root, g.n() - 1, DEFAULT_NODE_BUDGET).unwrap();
        let counts = brute_census(&g, root);
        let z: f64 = counts.iter().enumerate().map(|(k, c)| *c as f64 * x.powi(k as i32)).sum();
        let first: f64 = counts.iter().enumerate().map(|(k, c)| k as f64 * *c as f64 * x.powi(k as i32)).sum();
        let e = evaluate(&census, x, EvalOptions::default()).unwrap();
        prop_assert!((e.log_z - z.ln()).abs() <= 1e-12 * z.ln().abs().max(1.0));
        prop_assert!((e.length - first / z).abs() <= 1e-10 * (first / z).max(1.0));
    }
}

#[test]
fn census_agrees_across_worker_counts() {
    let g = Family::RandomRegular { n: 24, d: 3, seed: 9 }.generate().unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| enumerate_census(&g, 0, 14, DEFAULT_NODE_BUDGET).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn samples_agree_across_worker_counts() {
    let g = Family::RandomRegular { n: 300, d: 3, seed: 2 }.generate().unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| estimate_survival(&g, 0, 20_000, 17, g.n()).unwrap())
    };
    let (a, b) = (run(1), run(3));
    assert_eq!(a.histogram, b.histogram);
    assert_ne!(a.histogram, estimate_survival(&g, 0, 20_000, 18, g.n()).unwrap().histogram);
}
