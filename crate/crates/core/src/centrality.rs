//! Degree, closeness, betweenness and eigenvector centrality.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
    Eigenvector,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Degree,
        Measure::Closeness,
        Measure::Betweenness,
        Measure::Eigenvector,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::Eigenvector => "eigenvector",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Raw,
    Normalized,
}

/// One score per node for a single measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityScores {
    pub measure: Measure,
    pub normalization: Normalization,
    pub scores: Vec<f64>,
}

impl CentralityScores {
    fn raw(measure: Measure, scores: Vec<f64>) -> Self {
        CentralityScores {
            measure,
            normalization: Normalization::Raw,
            scores,
        }
    }

    /// Node with the highest score; ties go to the smaller id.
    pub fn top(&self) -> Option<NodeId> {
        let mut best: Option<NodeId> = None;
        for (i, &s) in self.scores.iter().enumerate() {
            if best.is_none_or(|b| s > self.scores[b]) {
                best = Some(i);
            }
        }
        best
    }
}

/// `C_D(i) = sum_j A_ij`.
pub fn degree_centrality(g: &Graph) -> CentralityScores {
    CentralityScores::raw(Measure::Degree, g.degrees().into_iter().map(|d| d as f64).collect())
}

/// Degree divided by `n - 1` (unchanged for `n <= 1`).
pub fn degree_centrality_normalized(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let mut out = degree_centrality(g);
    if n > 1 {
        out.scores.iter_mut().for_each(|s| *s /= (n - 1) as f64);
    }
    out.normalization = Normalization::Normalized;
    out
}

/// `1 / sum_j d_ij` over the nodes reachable from `i`; 0 for nodes that reach
/// nobody.
pub fn closeness_centrality(g: &Graph) -> CentralityScores {
    let scores = (0..g.node_count())
        .map(|i| {
            let (total, _) = reachable_distance_sum(g, i);
            if total == 0 {
                0.0
            } else {
                1.0 / total as f64
            }
        })
        .collect();
    CentralityScores::raw(Measure::Closeness, scores)
}

/// Component-scaled closeness: `raw * (r - 1) * (r - 1) / (n - 1)` with `r`
/// the size of the node's reachable set (itself included).
pub fn closeness_centrality_normalized(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let scores = (0..n)
        .map(|i| {
            let (total, reach) = reachable_distance_sum(g, i);
            if total == 0 || n < 2 {
                return 0.0;
            }
            let r1 = (reach - 1) as f64;
            (1.0 / total as f64) * r1 * r1 / (n - 1) as f64
        })
        .collect();
    CentralityScores {
        measure: Measure::Closeness,
        normalization: Normalization::Normalized,
        scores,
    }
}

fn reachable_distance_sum(g: &Graph, source: NodeId) -> (usize, usize) {
    g.bfs_distances(source)
        .into_iter()
        .flatten()
        .fold((0, 0), |(sum, count), d| (sum + d, count + 1))
}

/// Betweenness by Brandes' dependency accumulation. Each unordered pair
/// `{s, t}` contributes `sigma_st(i) / sigma_st` to every interior node `i`.
pub fn betweenness_centrality(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let mut betweenness = vec![0.0; n];

    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut delta = vec![0.0f64; n];

    for s in 0..n {
        stack.clear();
        preds.iter_mut().for_each(Vec::clear);
        sigma.fill(0.0);
        dist.fill(None);
        delta.fill(0.0);

        sigma[s] = 1.0;
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            let dv = dist[v].expect("queued nodes have a distance");
            for &w in g.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
                if dist[w] == Some(dv + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }

        while let Some(w) = stack.pop() {
            let coeff = (1.0 + delta[w]) / sigma[w];
            for &v in &preds[w] {
                delta[v] += sigma[v] * coeff;
            }
            if w != s {
                betweenness[w] += delta[w];
            }
        }
    }

    // every unordered pair was counted once from each endpoint
    betweenness.iter_mut().for_each(|b| *b /= 2.0);
    CentralityScores::raw(Measure::Betweenness, betweenness)
}

/// Betweenness divided by the `(n - 1)(n - 2) / 2` pairs that exclude a node.
pub fn betweenness_centrality_normalized(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let mut out = betweenness_centrality(g);
    if n > 2 {
        let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
        out.scores.iter_mut().for_each(|s| *s /= pairs);
    }
    out.normalization = Normalization::Normalized;
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIterationOptions {
    /// Bound on `||A v - lambda v||_2`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PowerIterationOptions {
    fn default() -> Self {
        PowerIterationOptions {
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

/// Principal eigenvector of `A` by power iteration on `A + I`.
///
/// The shift keeps bipartite graphs from oscillating without changing the
/// eigenvectors. Output is non-negative with unit Euclidean norm, and
/// iteration stops once the Rayleigh residual of `A` drops to `opts.tol`.
pub fn eigenvector_centrality(g: &Graph, opts: PowerIterationOptions) -> Result<CentralityScores> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Err(Error::DegenerateSpectrum(
            "eigenvector centrality needs at least one edge".into(),
        ));
    }

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut av = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..=opts.max_iter {
        adjacency_product(g, &v, &mut av);
        let lambda: f64 = v.iter().zip(&av).map(|(x, y)| x * y).sum();
        residual = av
            .iter()
            .zip(&v)
            .map(|(y, x)| (y - lambda * x).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= opts.tol {
            let scores = v.into_iter().map(|x| x.max(0.0)).collect();
            return Ok(CentralityScores::raw(Measure::Eigenvector, scores));
        }
        // v <- (A + I) v / ||(A + I) v||
        for (x, y) in v.iter_mut().zip(&av) {
            *x += y;
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual,
    })
}

fn adjacency_product(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = g.neighbors(i).iter().map(|&j| x[j]).sum();
    }
}

/// All four measures (raw). A failing measure does not abort the others.
#[derive(Debug, Clone)]
pub struct CentralityBundle {
    pub degree: CentralityScores,
    pub closeness: CentralityScores,
    pub betweenness: CentralityScores,
    pub eigenvector: Result<CentralityScores>,
}

impl CentralityBundle {
    pub fn get(&self, measure: Measure) -> Result<&CentralityScores> {
        match measure {
            Measure::Degree => Ok(&self.degree),
            Measure::Closeness => Ok(&self.closeness),
            Measure::Betweenness => Ok(&self.betweenness),
            Measure::Eigenvector => self.eigenvector.as_ref().map_err(Clone::clone),
        }
    }
}

pub fn all_centralities(g: &Graph, eigen: PowerIterationOptions) -> CentralityBundle {
    CentralityBundle {
        degree: degree_centrality(g),
        closeness: closeness_centrality(g),
        betweenness: betweenness_centrality(g),
        eigenvector: eigenvector_centrality(g, eigen),
    }
}
