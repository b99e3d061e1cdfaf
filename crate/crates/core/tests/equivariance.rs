use netspectra::analysis::{analyze, AnalysisOptions, Provenance};
use netspectra::centrality::{
    betweenness_centrality, closeness_centrality, degree_centrality, eigenvector_centrality, PowerIterationOptions,
};
use netspectra::Graph;
use proptest::prelude::*;

fn graph_and_perm() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (2usize..12)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, mask, perm)| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<_> = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
            (Graph::from_edges(n, &edges).unwrap(), perm)
        })
}

fn assert_permuted(before: &[f64], after: &[f64], perm: &[usize], tol: f64) -> Result<(), TestCaseError> {
    for (i, &p) in perm.iter().enumerate() {
        prop_assert!((before[i] - after[p]).abs() <= tol, "node {i}: {} vs {}", before[i], after[p]);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn centralities_follow_relabeling((g, perm) in graph_and_perm()) {
        let h = g.permuted(&perm).unwrap();
        assert_permuted(&degree_centrality(&g).scores, &degree_centrality(&h).scores, &perm, 0.0)?;
        assert_permuted(&closeness_centrality(&g).scores, &closeness_centrality(&h).scores, &perm, 0.0)?;
        assert_permuted(&betweenness_centrality(&g).scores, &betweenness_centrality(&h).scores, &perm, 1e-9)?;
        if g.is_connected() {
            let opts = PowerIterationOptions { tol: 1e-12, max_iter: 100_000 };
            let a = eigenvector_centrality(&g, opts).unwrap().scores;
            let b = eigenvector_centrality(&h, opts).unwrap().scores;
            assert_permuted(&a, &b, &perm, 1e-8)?;
        }
    }

    #[test]
    fn composite_ranking_follows_relabeling((g, perm) in graph_and_perm()) {
        let h = g.permuted(&perm).unwrap();
        let opts = AnalysisOptions::default();
        let rank_of = |g: &Graph| {
            let r = analyze(g, &opts, Provenance::new(0, None, None, &opts)).unwrap();
            let mut by_node = vec![0.0; g.node_count()];
            for e in &r.integrated.composite {
                by_node[e.node] = e.composite_rank;
            }
            by_node
        };
        assert_permuted(&rank_of(&g), &rank_of(&h), &perm, 1e-9)?;
    }

    #[test]
    fn spectra_are_relabeling_invariant((g, perm) in graph_and_perm()) {
        use netspectra::spectral::{spectrum, MatrixKind};
        let h = g.permuted(&perm).unwrap();
        for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian] {
            let a = spectrum(&g, kind).unwrap().eigenvalues;
            let b = spectrum(&h, kind).unwrap().eigenvalues;
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn vertex_transitive_graphs_have_flat_scores() {
    for n in 3..=12usize {
        let complete: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let cycle: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        for edges in [complete, cycle] {
            let g = Graph::from_edges(n, &edges).unwrap();
            let opts = PowerIterationOptions { tol: 1e-12, max_iter: 100_000 };
            for scores in [
                degree_centrality(&g).scores,
                closeness_centrality(&g).scores,
                betweenness_centrality(&g).scores,
                eigenvector_centrality(&g, opts).unwrap().scores,
            ] {
                assert!(scores.iter().all(|s| (s - scores[0]).abs() <= 1e-9), "{scores:?}");
            }
        }
    }
}
