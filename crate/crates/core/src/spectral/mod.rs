//! Adjacency and Laplacian spectra.
//!
//! Two notions of "spectral gap" are reported side by side:
//!
//! - `paper_gap`: largest Laplacian eigenvalue minus the smallest non-zero one;
//! - `algebraic_connectivity`: the second-smallest Laplacian eigenvalue `λ₂`,
//!   which is positive exactly when the graph is connected.
//!
//! An eigenvalue counts as zero when `|λ| <= 1e-9 * max(1, λ_max)`.

mod eigen;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use eigen::symmetric_eigenvalues;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Relative zero threshold applied to `max(1, λ_max)`.
pub const ZERO_TOL_FACTOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Laplacian => "Laplacian",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub kind: MatrixKind,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub zero_tol: f64,
    pub zero_multiplicity: usize,
    /// Second-smallest eigenvalue, zeros included.
    pub lambda2: Option<f64>,
    /// Least eigenvalue above `zero_tol`.
    pub smallest_nonzero: Option<f64>,
    pub lambda_max: Option<f64>,
}

impl SpectrumResult {
    fn from_eigenvalues(kind: MatrixKind, eigenvalues: Vec<f64>) -> Self {
        let lambda_max = eigenvalues.last().copied();
        let zero_tol = ZERO_TOL_FACTOR * lambda_max.unwrap_or(0.0).max(1.0);
        let zero_multiplicity = eigenvalues.iter().filter(|x| x.abs() <= zero_tol).count();
        SpectrumResult {
            kind,
            lambda2: eigenvalues.get(1).copied(),
            smallest_nonzero: eigenvalues.iter().copied().find(|&x| x > zero_tol),
            lambda_max,
            zero_tol,
            zero_multiplicity,
            eigenvalues,
        }
    }

    /// `(min, max)` of the spectrum; `None` for the empty graph.
    pub fn range(&self) -> Option<(f64, f64)> {
        Some((*self.eigenvalues.first()?, *self.eigenvalues.last()?))
    }

    /// `λ_max − smallest non-zero`, when a non-zero eigenvalue exists.
    pub fn paper_gap(&self) -> Option<f64> {
        Some(self.lambda_max? - self.smallest_nonzero?)
    }

    /// One-line summary in the style "Eigenvalues of the Laplacian matrix
    /// ranged from approximately 0.00 to 7.54".
    pub fn range_sentence(&self) -> String {
        match self.range() {
            Some((lo, hi)) => format!(
                "Eigenvalues of the {} matrix ranged from approximately {:.2} to {:.2}",
                self.kind,
                tidy(lo),
                tidy(hi)
            ),
            None => format!("The {} matrix of an empty graph has no eigenvalues", self.kind),
        }
    }
}

// keeps "-0.00" out of printed ranges
fn tidy(x: f64) -> f64 {
    if x.abs() < 0.005 {
        0.0
    } else {
        x
    }
}

pub fn spectrum(g: &Graph, kind: MatrixKind) -> Result<SpectrumResult> {
    let m = match kind {
        MatrixKind::Adjacency => g.adjacency_matrix(),
        MatrixKind::Laplacian => g.laplacian_matrix(),
    };
    Ok(SpectrumResult::from_eigenvalues(kind, symmetric_eigenvalues(&m)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralGapReport {
    /// `λ_max(L) − smallest_nonzero(L)`.
    pub paper_gap: f64,
    /// `λ₂(L)`.
    pub algebraic_connectivity: f64,
    pub zero_tol: f64,
}

impl SpectralGapReport {
    pub fn from_laplacian(spec: &SpectrumResult) -> Result<Self> {
        debug_assert_eq!(spec.kind, MatrixKind::Laplacian);
        let paper_gap = spec.paper_gap().ok_or_else(|| {
            Error::DegenerateSpectrum("every Laplacian eigenvalue is zero (edgeless graph)".into())
        })?;
        Ok(SpectralGapReport {
            paper_gap,
            algebraic_connectivity: spec.lambda2.unwrap_or(0.0),
            zero_tol: spec.zero_tol,
        })
    }

    pub fn is_connected(&self) -> bool {
        self.algebraic_connectivity > self.zero_tol
    }
}

pub fn spectral_gap(g: &Graph) -> Result<SpectralGapReport> {
    if g.edge_count() == 0 {
        return Err(Error::DegenerateSpectrum(
            "spectral gap needs at least one edge".into(),
        ));
    }
    SpectralGapReport::from_laplacian(&spectrum(g, MatrixKind::Laplacian)?)
}

/// `λ₂(L)`, taken as 0 for graphs with fewer than two nodes.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    Ok(spectrum(g, MatrixKind::Laplacian)?.lambda2.unwrap_or(0.0))
}

/// Serialized form of one spectrum together with its gap quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBlock {
    pub kind: MatrixKind,
    pub eigenvalues: Vec<f64>,
    pub zero_multiplicity: usize,
    pub lambda2: Option<f64>,
    pub smallest_nonzero: Option<f64>,
    pub lambda_max: Option<f64>,
    pub paper_gap: Option<f64>,
    /// Only defined for the Laplacian.
    pub algebraic_connectivity: Option<f64>,
    pub range_summary: String,
}

impl From<&SpectrumResult> for SpectrumBlock {
    fn from(s: &SpectrumResult) -> Self {
        SpectrumBlock {
            kind: s.kind,
            eigenvalues: s.eigenvalues.clone(),
            zero_multiplicity: s.zero_multiplicity,
            lambda2: s.lambda2,
            smallest_nonzero: s.smallest_nonzero,
            lambda_max: s.lambda_max,
            paper_gap: s.paper_gap(),
            algebraic_connectivity: match s.kind {
                MatrixKind::Laplacian => Some(s.lambda2.unwrap_or(0.0)),
                MatrixKind::Adjacency => None,
            },
            range_summary: s.range_sentence(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn k3() -> Graph {
        graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    fn c4() -> Graph {
        graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn two_k2() -> Graph {
        graph(4, &[(0, 1), (2, 3)])
    }

    fn close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= 1e-12, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn closed_form_examples() {
        close(&spectrum(&k3(), MatrixKind::Laplacian).unwrap().eigenvalues, &[0.0, 3.0, 3.0]);
        close(&spectrum(&c4(), MatrixKind::Laplacian).unwrap().eigenvalues, &[0.0, 2.0, 2.0, 4.0]);
        close(&spectrum(&c4(), MatrixKind::Adjacency).unwrap().eigenvalues, &[-2.0, 0.0, 0.0, 2.0]);
        close(&spectrum(&graph(2, &[(0, 1)]), MatrixKind::Adjacency).unwrap().eigenvalues, &[-1.0, 1.0]);
    }

    #[test]
    fn disconnected_multiplicity() {
        let s = spectrum(&two_k2(), MatrixKind::Laplacian).unwrap();
        close(&s.eigenvalues, &[0.0, 0.0, 2.0, 2.0]);
        assert_eq!(s.zero_multiplicity, 2);
        assert_eq!(spectrum(&k3(), MatrixKind::Laplacian).unwrap().zero_multiplicity, 1);
    }

    #[test]
    fn gap_examples() {
        let g = spectral_gap(&k3()).unwrap();
        assert!(g.paper_gap.abs() < 1e-12 && (g.algebraic_connectivity - 3.0).abs() < 1e-12);
        let g = spectral_gap(&c4()).unwrap();
        assert!((g.paper_gap - 2.0).abs() < 1e-12 && (g.algebraic_connectivity - 2.0).abs() < 1e-12);
        assert!(g.is_connected());
        let g = spectral_gap(&two_k2()).unwrap();
        assert!(g.paper_gap.abs() < 1e-12 && g.algebraic_connectivity.abs() < 1e-12);
        assert!(!g.is_connected());
        assert!(matches!(spectral_gap(&Graph::empty(3)), Err(Error::DegenerateSpectrum(_))));
    }

    #[test]
    fn ranges() {
        let l = spectrum(&k3(), MatrixKind::Laplacian).unwrap();
        let (lo, hi) = l.range().unwrap();
        assert!(lo.abs() < 1e-12 && (hi - 3.0).abs() < 1e-12);
        let a = spectrum(&k3(), MatrixKind::Adjacency).unwrap();
        let (lo, hi) = a.range().unwrap();
        assert!((lo + 1.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
        assert_eq!(
            a.range_sentence(),
            "Eigenvalues of the adjacency matrix ranged from approximately -1.00 to 2.00"
        );
        assert_eq!(
            l.range_sentence(),
            "Eigenvalues of the Laplacian matrix ranged from approximately 0.00 to 3.00"
        );
    }

    #[test]
    fn block_fields() {
        let l = spectrum(&c4(), MatrixKind::Laplacian).unwrap();
        let b = SpectrumBlock::from(&l);
        assert!((b.paper_gap.unwrap() - 2.0).abs() < 1e-12);
        assert!((b.algebraic_connectivity.unwrap() - 2.0).abs() < 1e-12);
        let a = SpectrumBlock::from(&spectrum(&c4(), MatrixKind::Adjacency).unwrap());
        assert_eq!(a.algebraic_connectivity, None);
    }

    #[test]
    fn single_node() {
        let s = spectrum(&Graph::empty(1), MatrixKind::Laplacian).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0]);
        assert_eq!(s.lambda2, None);
        assert_eq!(algebraic_connectivity(&Graph::empty(1)).unwrap(), 0.0);
    }
}
