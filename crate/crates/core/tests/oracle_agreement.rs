mod common;

use common::*;
use netspectra::centrality::{betweenness_centrality, closeness_centrality, eigenvector_centrality, PowerIterationOptions};
use netspectra::diffusion::{diffusion_step, DiffusionMode};
use netspectra::spectral::symmetric_eigenvalues;
use netspectra::DenseMatrix;
use netspectra_testkit::{
    dense_principal_eigenvector, dense_symmetric_eigenvalues, oracle_betweenness, oracle_eigen_charpoly,
    oracle_floyd_warshall, oracle_matvec, oracle_principal_direction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EIGEN_OPTS: PowerIterationOptions = PowerIterationOptions {
    tol: 1e-12,
    max_iter: 100_000,
};

fn small_corpus() -> impl Iterator<Item = netspectra::Graph> {
    (0..200u64).map(|i| er(4 + (i % 7) as usize, [0.2, 0.5, 0.8][(i % 3) as usize], i))
}

#[test]
fn brandes_matches_path_enumeration() {
    for g in small_corpus() {
        let fast = betweenness_centrality(&g).scores;
        let slow = oracle_betweenness(g.node_count(), &g.edge_list()).unwrap();
        assert!(max_abs_diff(&fast, &slow) <= 1e-9, "{:?}", g.edge_list());
    }
}

#[test]
fn bfs_matches_floyd_warshall() {
    let exhaustive = (1..=5).flat_map(all_graphs);
    for g in exhaustive.chain(small_corpus()) {
        let fw = oracle_floyd_warshall(g.node_count(), &g.edge_list()).unwrap();
        for (s, row) in fw.iter().enumerate() {
            assert_eq!(&g.bfs_distances(s), row, "{:?}", g.edge_list());
        }
    }
}

#[test]
fn closeness_is_reciprocal_distance_sum() {
    for g in small_corpus() {
        let fw = oracle_floyd_warshall(g.node_count(), &g.edge_list()).unwrap();
        let scores = closeness_centrality(&g).scores;
        for (i, row) in fw.iter().enumerate() {
            let total: usize = row.iter().flatten().sum();
            let expected = if total == 0 { 0.0 } else { 1.0 / total as f64 };
            assert_eq!(scores[i], expected);
        }
    }
}

#[test]
fn eigensolver_matches_charpoly_on_every_small_graph() {
    for g in (1..=4).flat_map(all_graphs) {
        for rows in [adjacency_rows(&g), laplacian_rows(&g)] {
            let got = symmetric_eigenvalues(&DenseMatrix::from_rows(&rows).unwrap()).unwrap();
            let want = oracle_eigen_charpoly(&rows).unwrap();
            assert!(max_abs_diff(&got, &want) <= 1e-8, "{rows:?}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn eigensolver_matches_charpoly_on_random_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let n = rng.random_range(1..=4);
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                // dyadic entries keep the exact charpoly small
                let x = rng.random_range(-64..=64) as f64 / 16.0;
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let got = symmetric_eigenvalues(&DenseMatrix::from_rows(&rows).unwrap()).unwrap();
        let want = oracle_eigen_charpoly(&rows).unwrap();
        assert!(max_abs_diff(&got, &want) <= 1e-8, "{rows:?}: {got:?} vs {want:?}");
    }
}

#[test]
fn eigensolver_matches_dense_reference() {
    for g in mixed_corpus(40, 30) {
        for rows in [adjacency_rows(&g), laplacian_rows(&g)] {
            let got = symmetric_eigenvalues(&DenseMatrix::from_rows(&rows).unwrap()).unwrap();
            let want = dense_symmetric_eigenvalues(&rows).unwrap();
            assert!(max_abs_diff(&got, &want) <= 1e-8);
        }
    }
}

#[test]
fn eigenvector_centrality_matches_adjugate_direction() {
    let mut checked = 0;
    for g in (2..=4).flat_map(all_graphs).filter(|g| g.is_connected()) {
        let scores = eigenvector_centrality(&g, EIGEN_OPTS).unwrap().scores;
        let (_, v) = oracle_principal_direction(&adjacency_rows(&g)).unwrap();
        assert!(max_abs_diff(&scores, &v) <= 1e-6, "{:?}: {scores:?} vs {v:?}", g.edge_list());
        checked += 1;
    }
    // 1 + 4 + 38 labelled connected graphs on 2, 3, 4 nodes
    assert_eq!(checked, 43);
}

#[test]
fn eigenvector_centrality_matches_dense_solve() {
    for seed in 0..100 {
        let g = connected_er(5 + (seed % 6) as usize, 0.5, seed);
        let scores = eigenvector_centrality(&g, EIGEN_OPTS).unwrap().scores;
        let (_, v) = dense_principal_eigenvector(&adjacency_rows(&g)).unwrap();
        assert!(max_abs_diff(&scores, &v) <= 1e-6);
        assert!(rayleigh_residual(&g, &scores) <= 1e-8);
    }
}

#[test]
fn raw_step_is_bit_exact_matvec() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in mixed_corpus(50, 30).into_iter().chain(small_corpus().take(50)) {
        let rows = adjacency_rows(&g);
        let x: Vec<f64> = (0..g.node_count()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let fast = diffusion_step(&g, &x, DiffusionMode::RawAdjacency).unwrap();
        let slow = oracle_matvec(&rows, &x).unwrap();
        assert_eq!(fast, slow);
    }
}
