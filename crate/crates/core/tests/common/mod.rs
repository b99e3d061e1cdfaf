#![allow(dead_code)]

use netspectra::generators::{generate_ba, generate_er, generate_ws};
use netspectra::Graph;
use netspectra_testkit::{dense_adjacency, dense_laplacian};

pub fn er(n: usize, p: f64, seed: u64) -> Graph {
    generate_er(n, p, seed).unwrap()
}

/// First connected ER(n, p) instance at or after `seed`.
pub fn connected_er(n: usize, p: f64, seed: u64) -> Graph {
    (0..)
        .map(|i| er(n, p, seed.wrapping_mul(1_000).wrapping_add(i)))
        .find(Graph::is_connected)
        .unwrap()
}

/// ER, BA and WS instances in rotation: `count` graphs on `n` nodes.
pub fn mixed_corpus(n: usize, count: usize) -> Vec<Graph> {
    (0..count as u64)
        .map(|i| match i % 3 {
            0 => er(n, [0.02, 0.06, 0.15][(i / 3 % 3) as usize], i),
            1 => generate_ba(n, 1 + (i / 3 % 4) as usize, i).unwrap(),
            _ => generate_ws(n, 2 + 2 * (i / 3 % 3) as usize, [0.0, 0.1, 0.5][(i / 3 % 3) as usize], i).unwrap(),
        })
        .collect()
}

/// Every labelled simple graph on `n` nodes (n <= 5).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 5);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn adjacency_rows(g: &Graph) -> Vec<Vec<f64>> {
    dense_adjacency(g.node_count(), &g.edge_list())
}

pub fn laplacian_rows(g: &Graph) -> Vec<Vec<f64>> {
    dense_laplacian(g.node_count(), &g.edge_list())
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.node_count();
    let mut colour = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let c = colour[u].unwrap();
            for &v in g.neighbors(u) {
                match colour[v] {
                    None => {
                        colour[v] = Some(!c);
                        stack.push(v);
                    }
                    Some(cv) if cv == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// `||A v - (vᵀ A v) v||₂` for a unit vector `v`.
pub fn rayleigh_residual(g: &Graph, v: &[f64]) -> f64 {
    let av: Vec<f64> = (0..g.node_count())
        .map(|i| g.neighbors(i).iter().map(|&j| v[j]).sum())
        .collect();
    let lambda: f64 = v.iter().zip(&av).map(|(x, y)| x * y).sum();
    av.iter()
        .zip(v)
        .map(|(a, x)| (a - lambda * x).powi(2))
        .sum::<f64>()
        .sqrt()
}
