use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::spectral::algebraic_connectivity;

/// Effect of deleting one node (and its edges) on connectivity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VulnerabilityScore {
    pub node: NodeId,
    pub lambda2_after: f64,
    /// `λ₂(g) − λ₂(g − node)`.
    pub delta_lambda2: f64,
    pub components_before: usize,
    pub components_after: usize,
    /// `components_after − components_before`; −1 when an isolated node is removed.
    pub components_created: i64,
}

/// Recomputes `λ₂` and the component count with each node removed in turn.
/// Nodes are processed in parallel; output is ordered by node id.
pub fn node_removal_vulnerability(g: &Graph) -> Result<Vec<VulnerabilityScore>> {
    let base_lambda2 = algebraic_connectivity(g)?;
    let components_before = g.component_count();
    (0..g.node_count())
        .into_par_iter()
        .map(|node| {
            let h = g.without_node(node);
            let lambda2_after = algebraic_connectivity(&h)?;
            let components_after = h.component_count();
            Ok(VulnerabilityScore {
                node,
                lambda2_after,
                delta_lambda2: base_lambda2 - lambda2_after,
                components_before,
                components_after,
                components_created: components_after as i64 - components_before as i64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn star_center_shatters() {
        let v = node_removal_vulnerability(&graph(4, &[(0, 1), (0, 2), (0, 3)])).unwrap();
        assert_eq!(v[0].components_before, 1);
        assert_eq!(v[0].components_after, 3);
        assert_eq!(v[0].components_created, 2);
        assert!((v[0].delta_lambda2 - 1.0).abs() < 1e-12);
        // removing a leaf leaves P3 with λ₂ = 1
        assert!(v[1].delta_lambda2.abs() < 1e-12);
        assert_eq!(v[1].components_created, 0);
    }

    #[test]
    fn triangle_and_cycle() {
        for s in node_removal_vulnerability(&graph(3, &[(0, 1), (1, 2), (0, 2)])).unwrap() {
            assert!((s.delta_lambda2 - 1.0).abs() < 1e-12);
            assert_eq!(s.components_after, 1);
        }
        for s in node_removal_vulnerability(&graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap() {
            assert_eq!(s.components_created, 0);
            assert!((s.lambda2_after - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn isolated_node_removal_reduces_components() {
        let v = node_removal_vulnerability(&graph(3, &[(0, 1)])).unwrap();
        assert_eq!(v[2].components_created, -1);
    }
}
