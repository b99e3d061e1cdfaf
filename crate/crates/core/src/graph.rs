//! Simple undirected graphs and the matrices derived from them.
//!
//! A [`Graph`] is immutable once built. Nodes are dense zero-based indices and
//! every neighbor list is sorted ascending, which fixes the summation order of
//! every matrix-vector product in the crate.

use std::collections::{BTreeSet, VecDeque};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Dense zero-based node index.
pub type NodeId = usize;

/// Undirected simple graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes. Duplicate pairs (in either orientation)
    /// collapse into one edge; self-loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoopRejected(u));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Self::from_neighbor_sets(sets))
    }

    pub(crate) fn from_neighbor_sets(sets: Vec<BTreeSet<NodeId>>) -> Self {
        let adjacency: Vec<Vec<NodeId>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            edge_count,
        }
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbors of `node`, ascending.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(NodeId, NodeId)> {
        self.edges().collect()
    }

    /// `2|E| / (n(n-1))`, zero for fewer than two nodes.
    pub fn density(&self) -> f64 {
        let n = self.node_count();
        if n < 2 {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / (n as f64 * (n as f64 - 1.0))
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let n = self.node_count();
        let mut m = DenseMatrix::zeros(n);
        for (u, v) in self.edges() {
            m.set(u, v, 1.0);
            m.set(v, u, 1.0);
        }
        m
    }

    pub fn degree_matrix(&self) -> DegreeMatrix {
        DegreeMatrix {
            diagonal: self.degrees(),
        }
    }

    /// `L = D - A`.
    pub fn laplacian_matrix(&self) -> DenseMatrix {
        let n = self.node_count();
        let mut m = DenseMatrix::zeros(n);
        for u in 0..n {
            m.set(u, u, self.degree(u) as f64);
            for &v in self.neighbors(u) {
                m.set(u, v, -1.0);
            }
        }
        m
    }

    /// Hop distances from `source`; `None` marks nodes in other components.
    ///
    /// Panics if `source` is out of range.
    pub fn bfs_distances(&self, source: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.node_count();
        let mut hops = Vec::with_capacity(n * n);
        for s in 0..n {
            hops.extend(self.bfs_distances(s));
        }
        DistanceMatrix { n, hops }
    }

    /// Component label per node. Labels are assigned in order of each
    /// component's smallest node, starting from 0.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Induced subgraph on every node except `removed`; nodes above it shift
    /// down by one.
    pub fn without_node(&self, removed: NodeId) -> Graph {
        let relabel = |v: NodeId| if v > removed { v - 1 } else { v };
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != removed)
            .map(|(_, nbrs)| nbrs.iter().filter(|&&v| v != removed).map(|&v| relabel(v)).collect())
            .collect();
        let edge_count = self.edge_count - self.degree(removed);
        Graph {
            adjacency,
            edge_count,
        }
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[NodeId]) -> Result<Graph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::DimensionError {
                expected: n,
                actual: perm.len(),
            });
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(n, &edges)
    }

    /// SHA-256 over the canonical edge-list rendering (node count plus sorted edges).
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("nodes {}\n", self.node_count()));
        for (u, v) in self.edges() {
            hasher.update(format!("{u} {v}\n"));
        }
        hex::encode(hasher.finalize())
    }
}

/// Diagonal of `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMatrix {
    pub diagonal: Vec<usize>,
}

impl DegreeMatrix {
    pub fn trace(&self) -> usize {
        self.diagonal.iter().sum()
    }
}

/// All-pairs hop distances, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    hops: Vec<Option<usize>>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> Option<usize> {
        self.hops[i * self.n + j]
    }

    pub fn row(&self, i: NodeId) -> &[Option<usize>] {
        &self.hops[i * self.n..(i + 1) * self.n]
    }
}

/// Square row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionError {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn build_triangle() {
        let g = k3();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edge_list(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn rejects_self_loop_and_out_of_range() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoopRejected(0)));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::InvalidEdge { u: 0, v: 2, n: 2 })
        ));
    }

    #[test]
    fn adjacency_views() {
        let a = k3().adjacency_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.get(i, j), if i == j { 0.0 } else { 1.0 });
            }
        }
        assert_eq!(Graph::empty(2).adjacency_matrix(), DenseMatrix::zeros(2));
        assert_eq!(star(3).adjacency_matrix().row(0), &[0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn laplacian_views() {
        let p2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(p2.laplacian_matrix().to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let l = k3().laplacian_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 2.0 } else { -1.0 });
            }
        }
        let with_isolate = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(with_isolate.laplacian_matrix().row(2), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn bfs_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.bfs_distances(0), vec![Some(0), Some(1), Some(2)]);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.bfs_distances(0), vec![Some(0), Some(1), None, None]);
        assert_eq!(Graph::empty(1).bfs_distances(0), vec![Some(0)]);
    }

    #[test]
    fn component_examples() {
        assert_eq!(k3().component_count(), 1);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.connected_components(), vec![0, 0, 1, 1]);
        assert_eq!(Graph::empty(3).component_count(), 3);
        assert_eq!(Graph::empty(0).component_count(), 0);
    }

    #[test]
    fn degree_matrix_trace() {
        let g = star(4);
        assert_eq!(g.degree_matrix().trace(), 2 * g.edge_count());
    }

    #[test]
    fn remove_node_relabels() {
        let g = star(3).without_node(0);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 0);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().without_node(0);
        assert_eq!(p3.edge_list(), vec![(0, 1)]);
    }

    #[test]
    fn hash_depends_on_structure_only() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(2, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        assert_ne!(a.content_hash(), k3().content_hash());
    }
}
