mod common;

use common::*;
use corrclust::gcsq::{cluster, ClusterConfig};
use corrclust::graph::{Bipartition, Partition, SignedGraph};
use corrclust::ingest::{pearson_matrix, FeatureMatrix, PearsonOptions};
use corrclust::metrics::{gini, modularity, nmi};
use corrclust::qubo::{
    build_bipartition_qubo, solve_exact, solve_sa, QuboProblem, SaConfig, SolverRegistry,
};
use proptest::prelude::*;

/// Symmetric weight matrix with `n` in `lo..=hi`, weights in `[-1, 1]`.
fn weights(lo: usize, hi: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..=1.0, n * (n - 1) / 2).prop_map(move |upper| {
            let mut w = vec![vec![0.0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = it.next().unwrap();
                    w[i][j] = v;
                    w[j][i] = v;
                }
            }
            w
        })
    })
}

fn exact_cfg() -> ClusterConfig {
    ClusterConfig::with_backend(&SolverRegistry::default(), "exact")
        .unwrap()
        .record_trace(true)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qubo_energy_is_cut_weight(w in weights(1, 10), code in any::<u64>()) {
        let n = w.len();
        let x = mask(code, n);
        let q = build_bipartition_qubo(&graph(&w));
        let e = q.evaluate(&x).unwrap();
        prop_assert!((e - naive_cut(&w, &x)).abs() <= 1e-12);
        prop_assert!(q.is_complement_symmetric());
        let flipped: Vec<bool> = x.iter().map(|b| !b).collect();
        prop_assert!((e - q.evaluate(&flipped).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn qubo_json_is_lossless(w in weights(1, 12)) {
        let q = build_bipartition_qubo(&graph(&w));
        let text = serde_json::to_string(&q.to_json()).unwrap();
        let back = QuboProblem::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn exact_matches_enumeration(w in weights(1, 11)) {
        let q = build_bipartition_qubo(&graph(&w));
        let got = solve_exact(&q, 24).unwrap();
        let oracle = brute_min(w.len(), |x| naive_cut(&w, x));
        prop_assert!((got.objective - oracle).abs() <= 1e-9);
        prop_assert!(!got.assignment[0], "first variable is pinned to side 0");
    }

    #[test]
    fn sa_improves_with_restarts(w in weights(2, 16), seed in any::<u64>()) {
        let q = build_bipartition_qubo(&graph(&w));
        let mut cfg = SaConfig::defaults_for(&q, seed);
        cfg.sweeps = 20;
        cfg.restarts = 2;
        let few = solve_sa(&q, &cfg).unwrap();
        cfg.restarts = 6;
        let many = solve_sa(&q, &cfg).unwrap();
        prop_assert!(many.objective <= few.objective);
        prop_assert!((many.objective - q.evaluate(&many.assignment).unwrap()).abs() <= 1e-9);
        prop_assert_eq!(&few, &solve_sa(&q, &{ cfg.restarts = 2; cfg }).unwrap());
    }

    #[test]
    fn agreement_decomposes_over_a_cut(w in weights(2, 12), code in any::<u64>()) {
        let g = graph(&w);
        let n = g.n();
        let x = mask(code, n);
        let labels: Vec<usize> = x.iter().map(|&b| usize::from(b)).collect();
        let whole = g.intra_agreement(&Partition::single_cluster(n)).unwrap();
        let split = g.intra_agreement(&partition(&labels)).unwrap();
        let cut = g.cut_weight(&Bipartition::new(x)).unwrap();
        prop_assert!((whole - (split + cut)).abs() <= 1e-12);
    }

    #[test]
    fn subgraphs_compose(w in weights(3, 12), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        let g = graph(&w);
        let n = g.n();
        let mut outer: Vec<usize> = picks.iter().map(|i| i.index(n)).collect();
        outer.sort_unstable();
        outer.dedup();
        let mut inner: Vec<usize> = (0..outer.len()).rev().step_by(2).collect();
        inner.reverse();
        let direct: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        let nested = g.subgraph(&outer).unwrap().subgraph(&inner).unwrap();
        let flat = g.subgraph(&direct).unwrap();
        prop_assert_eq!(nested.node_ids(), flat.node_ids());
        prop_assert_eq!(nested.node_ids(), &direct[..]);
        for i in 0..flat.n() {
            prop_assert_eq!(nested.row(i), flat.row(i));
        }
    }

    #[test]
    fn clustering_is_invariant_under_relabeling(w in weights(2, 8), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let n = w.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng(perm_seed));
        // Node `i` of the permuted graph is node `perm[i]` of the original.
        let pw: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| w[perm[i]][perm[j]]).collect())
            .collect();
        let a = cluster(&graph(&w), &exact_cfg()).unwrap();
        let b = cluster(&graph(&pw), &exact_cfg()).unwrap();
        let mut back = vec![0; n];
        for i in 0..n {
            back[perm[i]] = b.partition.labels()[i];
        }
        prop_assert_eq!(&a.partition, &Partition::new(back));
        prop_assert!((a.agreement - b.agreement).abs() <= 1e-9);
    }

    #[test]
    fn nmi_matches_oracle_and_is_symmetric(
        a in prop::collection::vec(0usize..4, 2..40),
        shift in 0usize..5,
    ) {
        let b: Vec<usize> = a.iter().enumerate().map(|(i, v)| (v + i * shift) % 3).collect();
        let (pa, pb) = (partition(&a), partition(&b));
        let ab = nmi(&pa, &pb).unwrap();
        let ba = nmi(&pb, &pa).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((ab - ba).abs() <= 1e-12);
        let oracle = naive_nmi(pa.labels(), pb.labels());
        prop_assert!((ab - oracle).abs() <= 1e-12, "nmi {} oracle {}", ab, oracle);
        prop_assert_eq!(nmi(&pa, &pa).unwrap(), 1.0);
    }

    #[test]
    fn modularity_ignores_label_names(w in weights(2, 10), labels in prop::collection::vec(0usize..4, 10)) {
        let g = graph(&w);
        let l = &labels[..g.n()];
        let renamed: Vec<usize> = l.iter().map(|v| 7 - v).collect();
        match (modularity(&g, &partition(l)), modularity(&g, &partition(&renamed))) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(a.is_err() && b.is_err()),
        }
    }

    #[test]
    fn gini_is_scale_and_order_invariant(sizes in prop::collection::vec(1usize..50, 1..12), c in 1usize..6) {
        let g = gini(&sizes).unwrap();
        prop_assert!((0.0..1.0).contains(&g));
        let scaled: Vec<usize> = sizes.iter().map(|s| s * c).collect();
        prop_assert!((gini(&scaled).unwrap() - g).abs() <= 1e-12);
        let mut rev = sizes.clone();
        rev.reverse();
        prop_assert!((gini(&rev).unwrap() - g).abs() <= 1e-12);
    }

    #[test]
    fn pearson_is_affine_invariant(
        rows in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 3), 4..30),
        scale in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0],
        offset in -100.0f64..100.0,
    ) {
        let base = FeatureMatrix::from_rows(&rows, None).unwrap();
        let Ok(g) = pearson_matrix(&base, PearsonOptions::default()) else {
            return Ok(());
        };
        let oracle = naive_pearson(&rows);
        let moved: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| vec![r[0] * scale + offset, r[1], r[2]])
            .collect();
        let h = pearson_matrix(&FeatureMatrix::from_rows(&moved, None).unwrap(), PearsonOptions::default())
            .unwrap();
        for a in 0..3 {
            for b in 0..3 {
                prop_assert!((g.weight(a, b) - oracle[a][b]).abs() <= 1e-10);
                let sign = if (a == 0) != (b == 0) { scale.signum() } else { 1.0 };
                prop_assert!((h.weight(a, b) - sign * g.weight(a, b)).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn accepted_splits_raise_agreement(w in weights(2, 10)) {
        let g = graph(&w);
        let n = g.n();
        let c = cluster(&g, &exact_cfg()).unwrap();
        let whole = g.intra_agreement(&Partition::single_cluster(n)).unwrap();
        let mut running = whole;
        for r in &c.trace.0 {
            prop_assert_eq!(r.accepted, r.cut < -1e-9);
            if r.accepted {
                running -= r.cut;
            }
        }
        prop_assert!(c.agreement >= whole - 1e-12);
        prop_assert!((running - c.agreement).abs() <= 1e-9);
        let splits = c.trace.accepted_splits();
        prop_assert!(splits < n);
        prop_assert_eq!(c.partition.k(), splits + 1);
        prop_assert_eq!(c.solves, c.trace.0.len());
    }

    #[test]
    fn seeded_runs_repeat(w in weights(2, 30), seed in any::<u64>()) {
        let cfg = ClusterConfig::with_backend(&SolverRegistry::default(), "sa")
            .unwrap()
            .seed(seed);
        let a = cluster(&graph(&w), &cfg).unwrap();
        let b = cluster(&graph(&w), &cfg).unwrap();
        prop_assert_eq!(a.partition, b.partition);
        prop_assert_eq!(a.agreement.to_bits(), b.agreement.to_bits());
    }
}

#[test]
fn graph_rejects_bad_input() {
    assert!(SignedGraph::from_dense(&[[0.0, 1.0]]).is_err());
    assert!(SignedGraph::from_dense(&[[0.0, f64::NAN], [0.0, 0.0]]).is_err());
    assert!(SignedGraph::from_dense::<[f64; 0]>(&[]).is_err());
}
