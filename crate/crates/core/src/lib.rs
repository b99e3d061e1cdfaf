//! Integrated network analysis: centrality measures, adjacency and Laplacian
//! spectra, and linear diffusion over seeded synthetic graphs, combined into
//! critical-node and vulnerability reports.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: immutable simple undirected graphs, matrix views, BFS, components
//! - [`io`]: the plain-text edge-list format
//! - [`generators`]: Erdős–Rényi, Barabási–Albert and Watts–Strogatz generators
//! - [`centrality`]: degree, closeness, betweenness (Brandes) and eigenvector centrality
//! - [`spectral`]: dense symmetric eigensolver, spectra and spectral gaps
//! - [`diffusion`]: the `x(t+1) = A x(t)` iteration and reach curves
//! - [`analysis`]: integrated report, rank aggregation, node-removal vulnerability

pub mod analysis;
pub mod centrality;
pub mod diffusion;
mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod io;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{DenseMatrix, Graph, NodeId};
