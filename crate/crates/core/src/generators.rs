//! Seeded random graph generators.
//!
//! Every generator draws from a single [`ChaCha8Rng`] seeded with
//! `seed_from_u64(seed)`, and the order of draws is fixed, so a
//! `(model, parameters, seed)` triple always produces the same edge set:
//!
//! - Erdős–Rényi: one uniform `f64` per unordered pair `(i, j)`, `i < j`, in
//!   lexicographic order.
//! - Barabási–Albert: for each new node in turn, `m` roulette-wheel draws
//!   without replacement over the existing nodes.
//! - Watts–Strogatz: one uniform `f64` per lattice edge `(i, i + j mod n)`,
//!   outer loop `j = 1..=k/2`, inner loop `i = 0..n`; a rewired edge then
//!   draws uniform target nodes until one is acceptable.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// The random stream shared by all generators.
pub type GraphRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random graph model with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum Model {
    /// Erdős–Rényi `G(n, p)`.
    Er { n: usize, p: f64 },
    /// Barabási–Albert preferential attachment, `m` edges per new node.
    Ba { n: usize, m: usize },
    /// Watts–Strogatz ring lattice of even degree `k`, rewired with probability `beta`.
    Ws { n: usize, k: usize, beta: f64 },
}

impl Model {
    pub fn node_count(&self) -> usize {
        match *self {
            Model::Er { n, .. } | Model::Ba { n, .. } | Model::Ws { n, .. } => n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Er { .. } => "er",
            Model::Ba { .. } => "ba",
            Model::Ws { .. } => "ws",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Model::Er { n, p } => {
                if n < 1 {
                    return Err(Error::InvalidParameter("ER requires n >= 1".into()));
                }
                check_probability("p", p)
            }
            Model::Ba { n, m } => {
                if m < 1 || m >= n {
                    return Err(Error::InvalidParameter(format!(
                        "BA requires 1 <= m < n (got m={m}, n={n})"
                    )));
                }
                Ok(())
            }
            Model::Ws { n, k, beta } => {
                if k < 2 || k % 2 != 0 || k >= n {
                    return Err(Error::InvalidParameter(format!(
                        "WS requires even k with 2 <= k < n (got k={k}, n={n})"
                    )));
                }
                check_probability("beta", beta)
            }
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Model::Er { n, p } => write!(f, "ER(n={n}, p={p})"),
            Model::Ba { n, m } => write!(f, "BA(n={n}, m={m})"),
            Model::Ws { n, k, beta } => write!(f, "WS(n={n}, k={k}, beta={beta})"),
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in [0, 1] (got {p})")))
    }
}

/// A model plus the seed that pins one instance of it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub model: Model,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        GeneratorSpec { model, seed }
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            Model::Er { n, p } => generate_er(n, p, self.seed),
            Model::Ba { n, m } => generate_ba(n, m, self.seed),
            Model::Ws { n, k, beta } => generate_ws(n, k, beta, self.seed),
        }
    }

    /// `key=value` pairs describing model, parameters and seed.
    pub fn describe(&self) -> String {
        let params = match self.model {
            Model::Er { n, p } => format!("n={n} p={p}"),
            Model::Ba { n, m } => format!("n={n} m={m}"),
            Model::Ws { n, k, beta } => format!("n={n} k={k} beta={beta}"),
        };
        format!("model={} {params} seed={}", self.model.name(), self.seed)
    }
}

pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    Model::Er { n, p }.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Preferential attachment grown from a path on the first `m` nodes.
///
/// Node `t >= m` links to `m` distinct earlier nodes, each draw weighted by the
/// current degree (degree-zero nodes weigh 1). The result has
/// `(m - 1) + (n - m) * m` edges.
pub fn generate_ba(n: usize, m: usize, seed: u64) -> Result<Graph> {
    Model::Ba { n, m }.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut neighbors: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); n];
    let mut degree = vec![0usize; n];
    for v in 1..m {
        neighbors[v - 1].insert(v);
        neighbors[v].insert(v - 1);
        degree[v - 1] += 1;
        degree[v] += 1;
    }

    let mut weights = Vec::with_capacity(n);
    let mut targets = Vec::with_capacity(m);
    for t in m..n {
        weights.clear();
        weights.extend(degree[..t].iter().map(|&d| d.max(1) as f64));
        let mut total: f64 = weights.iter().sum();
        targets.clear();
        for _ in 0..m {
            let target = spin_wheel(&weights, total, rng.random::<f64>());
            total -= weights[target];
            weights[target] = 0.0;
            targets.push(target);
        }
        for &u in &targets {
            neighbors[t].insert(u);
            neighbors[u].insert(t);
            degree[t] += 1;
            degree[u] += 1;
        }
    }
    Ok(Graph::from_neighbor_sets(neighbors))
}

/// Index selected by a uniform draw `u` in `[0, 1)` over non-negative weights.
/// Zero-weight entries are never chosen.
fn spin_wheel(weights: &[f64], total: f64, u: f64) -> usize {
    let threshold = u * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last_positive = i;
        if threshold < acc {
            return i;
        }
    }
    // rounding can leave threshold == acc at the very end
    last_positive
}

/// Small-world graph: ring lattice with `k/2` neighbors per side, each
/// clockwise edge rewired with probability `beta`. The edge count stays
/// `n * k / 2`; nodes already adjacent to everyone skip their rewires.
pub fn generate_ws(n: usize, k: usize, beta: f64, seed: u64) -> Result<Graph> {
    Model::Ws { n, k, beta }.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut neighbors: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); n];
    for j in 1..=k / 2 {
        for i in 0..n {
            let v = (i + j) % n;
            neighbors[i].insert(v);
            neighbors[v].insert(i);
        }
    }

    for j in 1..=k / 2 {
        for i in 0..n {
            let v = (i + j) % n;
            if rng.random::<f64>() >= beta {
                continue;
            }
            if neighbors[i].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != i && !neighbors[i].contains(&w) {
                    break w;
                }
            };
            let removed = neighbors[i].remove(&v) && neighbors[v].remove(&i);
            debug_assert!(removed, "lattice edge ({i}, {v}) visited twice");
            neighbors[i].insert(w);
            neighbors[w].insert(i);
        }
    }
    Ok(Graph::from_neighbor_sets(neighbors))
}
