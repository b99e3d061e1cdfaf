//! The integrated report: centralities, spectra and diffusion on one graph,
//! combined into a composite critical-node ranking, rank correlations between
//! the individual signals, and node-removal vulnerability.

mod experiment;
mod export;
mod metrics;
mod vulnerability;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use experiment::{
    topology_comparison_experiment, ComparisonRow, ComparisonTable, MetricSummary, SeedMetrics,
};
pub use export::{
    centrality_csv, composite_csv, dot_export, reach_curve_csv, spectrum_json, vulnerability_csv,
};
pub use metrics::{
    average_path_length, average_ranks, clustering_coefficient, descending_ranks, local_clustering,
    reach_times_as_values, spearman_correlation, TIE_TOL,
};
pub use vulnerability::{node_removal_vulnerability, VulnerabilityScore};

use crate::centrality::{
    all_centralities, betweenness_centrality_normalized, closeness_centrality_normalized,
    degree_centrality_normalized, CentralityBundle, CentralityScores, Measure,
    PowerIterationOptions,
};
use crate::diffusion::{simulate_diffusion, DiffusionMode, DiffusionOptions, DiffusionSource};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::{Graph, NodeId};
use crate::spectral::{spectrum, MatrixKind, SpectralGapReport, SpectrumBlock};

pub const SCHEMA_VERSION: u32 = 1;

/// A report section that is either computed or explains why it is not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Section<T> {
    Ok(T),
    Degenerate(String),
}

impl<T> Section<T> {
    pub fn ok(&self) -> Option<&T> {
        match self {
            Section::Ok(v) => Some(v),
            Section::Degenerate(_) => None,
        }
    }

    /// Degenerate inputs become a marked section; any other error propagates.
    fn from_result(r: Result<T>) -> Result<Self> {
        match r {
            Ok(v) => Ok(Section::Ok(v)),
            Err(e @ (Error::DegenerateSpectrum(_) | Error::NoReachablePairs)) => {
                Ok(Section::Degenerate(e.to_string()))
            }
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub diffusion_source: NodeId,
    pub diffusion: DiffusionOptions,
    pub eigen: PowerIterationOptions,
    /// Above this node count the per-source diffusion signal is skipped
    /// unless `force_diffusion_signal` is set.
    pub diffusion_signal_max_n: usize,
    pub force_diffusion_signal: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            diffusion_source: 0,
            diffusion: DiffusionOptions::default(),
            eigen: PowerIterationOptions {
                tol: 1e-10,
                max_iter: 100_000,
            },
            diffusion_signal_max_n: 500,
            force_diffusion_signal: false,
        }
    }
}

/// Where a graph came from and the settings used to analyze it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub diffusion_source: NodeId,
    pub diffusion_mode: DiffusionMode,
    pub diffusion_steps: Option<usize>,
    pub reach_eps: f64,
}

impl Provenance {
    pub fn new(seed: u64, generator: Option<GeneratorSpec>, input: Option<String>, opts: &AnalysisOptions) -> Self {
        Provenance {
            seed,
            generator,
            input,
            diffusion_source: opts.diffusion_source,
            diffusion_mode: opts.diffusion.mode,
            diffusion_steps: opts.diffusion.steps,
            reach_eps: opts.diffusion.reach_eps,
        }
    }

    /// Single-line `key=value` rendering for comment headers.
    pub fn comment_line(&self) -> String {
        let mut parts = Vec::new();
        match (&self.generator, &self.input) {
            (Some(spec), _) => parts.push(spec.describe()),
            (None, Some(path)) => {
                parts.push(format!("input={path}"));
                parts.push(format!("seed={}", self.seed));
            }
            (None, None) => parts.push(format!("seed={}", self.seed)),
        }
        let mode = match self.diffusion_mode {
            DiffusionMode::RawAdjacency => "raw_adjacency",
            DiffusionMode::RowStochastic => "row_stochastic",
        };
        parts.push(format!("diffusion_source={}", self.diffusion_source));
        parts.push(format!("diffusion_mode={mode}"));
        parts.push(format!(
            "diffusion_steps={}",
            self.diffusion_steps.map_or("auto".to_string(), |s| s.to_string())
        ));
        parts.push(format!("reach_eps={:e}", self.reach_eps));
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub density: f64,
    pub max_degree: usize,
    pub average_clustering: f64,
    pub average_path_length: Section<f64>,
    pub graph_hash: String,
}

pub fn graph_summary(g: &Graph) -> Result<GraphSummary> {
    Ok(GraphSummary {
        nodes: g.node_count(),
        edges: g.edge_count(),
        components: g.component_count(),
        density: g.density(),
        max_degree: g.max_degree(),
        average_clustering: clustering_coefficient(g),
        average_path_length: Section::from_result(average_path_length(g))?,
        graph_hash: g.content_hash(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityTables {
    pub degree: CentralityScores,
    pub closeness: CentralityScores,
    pub betweenness: CentralityScores,
    pub eigenvector: Section<CentralityScores>,
    pub normalized: NormalizedScores,
    /// Nodes best-first per measure, ties by ascending id.
    pub rankings: Vec<MeasureRanking>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedScores {
    pub degree: Vec<f64>,
    pub closeness: Vec<f64>,
    pub betweenness: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureRanking {
    pub measure: Measure,
    pub order: Vec<NodeId>,
}

/// Node ids sorted best-first by `values`; near-equal values (see
/// [`TIE_TOL`]) keep ascending id order.
pub fn ranking_order(values: &[f64]) -> Vec<NodeId> {
    let ranks = descending_ranks(values);
    let mut order: Vec<NodeId> = (0..values.len()).collect();
    order.sort_by(|&a, &b| ranks[a].total_cmp(&ranks[b]).then(a.cmp(&b)));
    order
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummaries {
    pub adjacency: SpectrumBlock,
    pub laplacian: SpectrumBlock,
    pub gap: Section<SpectralGapReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffusionSummary {
    pub source: NodeId,
    pub mode: DiffusionMode,
    pub steps: usize,
    pub reach_curve: Vec<f64>,
    pub first_reach_times: Vec<Option<usize>>,
    pub steps_to_full_reach: Option<usize>,
}

/// One per-node signal feeding the composite ranking. Every signal is oriented
/// so that a larger value means a more critical node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signal {
    Degree,
    Closeness,
    Betweenness,
    Eigenvector,
    DeltaLambda2,
    /// Negated mean first-reach time when the node seeds the diffusion.
    DiffusionSpeed,
}

impl Signal {
    pub fn name(self) -> &'static str {
        match self {
            Signal::Degree => "degree",
            Signal::Closeness => "closeness",
            Signal::Betweenness => "betweenness",
            Signal::Eigenvector => "eigenvector",
            Signal::DeltaLambda2 => "delta_lambda2",
            Signal::DiffusionSpeed => "diffusion_speed",
        }
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignalValues {
    pub signal: Signal,
    pub values: Vec<f64>,
}

/// Collects the available signals in a fixed order. Eigenvector centrality
/// and the diffusion signal are skipped when absent.
pub fn ranking_signals(
    centralities: &CentralityBundle,
    vulnerability: &[VulnerabilityScore],
    mean_reach_times: Option<&[f64]>,
) -> Vec<SignalValues> {
    let mut out = vec![
        SignalValues {
            signal: Signal::Degree,
            values: centralities.degree.scores.clone(),
        },
        SignalValues {
            signal: Signal::Closeness,
            values: centralities.closeness.scores.clone(),
        },
        SignalValues {
            signal: Signal::Betweenness,
            values: centralities.betweenness.scores.clone(),
        },
    ];
    if let Ok(eig) = &centralities.eigenvector {
        out.push(SignalValues {
            signal: Signal::Eigenvector,
            values: eig.scores.clone(),
        });
    }
    if !vulnerability.is_empty() {
        out.push(SignalValues {
            signal: Signal::DeltaLambda2,
            values: vulnerability.iter().map(|v| v.delta_lambda2).collect(),
        });
    }
    if let Some(times) = mean_reach_times {
        out.push(SignalValues {
            signal: Signal::DiffusionSpeed,
            values: times.iter().map(|t| -t).collect(),
        });
    }
    out
}

/// For each node used as the diffusion source, the mean first-reach time of
/// every other node (unreached nodes count as `n` steps).
pub fn mean_first_reach_times(g: &Graph, opts: DiffusionOptions) -> Result<Vec<f64>> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map(|source| {
            if n < 2 {
                return Ok(0.0);
            }
            let trace = simulate_diffusion(g, DiffusionSource::Node(source), opts)?;
            let total: usize = trace
                .first_reach_times()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != source)
                .map(|(_, t)| t.unwrap_or(n))
                .sum();
            Ok(total as f64 / (n - 1) as f64)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeEntry {
    pub node: NodeId,
    /// Mean of the per-signal ranks (1 = most critical).
    pub composite_rank: f64,
    /// Aligned with the signal list of the ranking.
    pub ranks: Vec<f64>,
}

/// Averages each node's rank across `signals` and sorts nodes by that mean,
/// ties by ascending id.
pub fn composite_ranking(signals: &[SignalValues]) -> Vec<CompositeEntry> {
    let n = signals.first().map_or(0, |s| s.values.len());
    let per_signal: Vec<Vec<f64>> = signals.iter().map(|s| descending_ranks(&s.values)).collect();
    let mut entries: Vec<CompositeEntry> = (0..n)
        .map(|node| {
            let ranks: Vec<f64> = per_signal.iter().map(|r| r[node]).collect();
            let composite_rank = if ranks.is_empty() {
                0.0
            } else {
                ranks.iter().sum::<f64>() / ranks.len() as f64
            };
            CompositeEntry {
                node,
                composite_rank,
                ranks,
            }
        })
        .collect();
    entries.sort_by(|a, b| a.composite_rank.total_cmp(&b.composite_rank).then(a.node.cmp(&b.node)));
    entries
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<Signal>,
    /// Spearman coefficients; `None` where a signal is constant.
    pub values: Vec<Vec<Option<f64>>>,
}

pub fn correlation_matrix(signals: &[SignalValues]) -> CorrelationMatrix {
    let values = signals
        .iter()
        .map(|a| {
            signals
                .iter()
                .map(|b| spearman_correlation(&a.values, &b.values).ok())
                .collect()
        })
        .collect();
    CorrelationMatrix {
        labels: signals.iter().map(|s| s.signal).collect(),
        values,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegratedAnalysis {
    pub signals: Vec<Signal>,
    pub composite: Vec<CompositeEntry>,
    pub critical_nodes: Vec<NodeId>,
    pub correlation: CorrelationMatrix,
    pub vulnerability: Vec<VulnerabilityScore>,
    pub mean_first_reach_times: Option<Vec<f64>>,
}

/// Number of top composite nodes listed as critical.
pub const CRITICAL_NODE_COUNT: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub graph_summary: GraphSummary,
    pub centrality: CentralityTables,
    pub spectra: SpectrumSummaries,
    pub diffusion: DiffusionSummary,
    pub integrated: IntegratedAnalysis,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        crate::format::to_json_string(self).expect("report serializes")
    }
}

/// Runs the full pipeline on one graph.
pub fn analyze(g: &Graph, opts: &AnalysisOptions, provenance: Provenance) -> Result<AnalysisReport> {
    let n = g.node_count();
    let graph_summary = graph_summary(g)?;

    let bundle = all_centralities(g, opts.eigen);
    let eigenvector = Section::from_result(bundle.eigenvector.clone())?;
    let mut rankings = vec![
        MeasureRanking {
            measure: Measure::Degree,
            order: ranking_order(&bundle.degree.scores),
        },
        MeasureRanking {
            measure: Measure::Closeness,
            order: ranking_order(&bundle.closeness.scores),
        },
        MeasureRanking {
            measure: Measure::Betweenness,
            order: ranking_order(&bundle.betweenness.scores),
        },
    ];
    if let Section::Ok(eig) = &eigenvector {
        rankings.push(MeasureRanking {
            measure: Measure::Eigenvector,
            order: ranking_order(&eig.scores),
        });
    }
    let centrality = CentralityTables {
        degree: bundle.degree.clone(),
        closeness: bundle.closeness.clone(),
        betweenness: bundle.betweenness.clone(),
        eigenvector,
        normalized: NormalizedScores {
            degree: degree_centrality_normalized(g).scores,
            closeness: closeness_centrality_normalized(g).scores,
            betweenness: betweenness_centrality_normalized(g).scores,
        },
        rankings,
    };

    let adjacency = spectrum(g, MatrixKind::Adjacency)?;
    let laplacian = spectrum(g, MatrixKind::Laplacian)?;
    let gap = if g.edge_count() == 0 {
        Section::Degenerate("spectral gap needs at least one edge".into())
    } else {
        Section::from_result(SpectralGapReport::from_laplacian(&laplacian))?
    };
    let spectra = SpectrumSummaries {
        adjacency: SpectrumBlock::from(&adjacency),
        laplacian: SpectrumBlock::from(&laplacian),
        gap,
    };

    let trace = simulate_diffusion(g, DiffusionSource::Node(opts.diffusion_source), opts.diffusion)?;
    let diffusion = DiffusionSummary {
        source: opts.diffusion_source,
        mode: opts.diffusion.mode,
        steps: trace.states.len() - 1,
        steps_to_full_reach: trace.steps_to_reach(1.0),
        reach_curve: trace.reach_curve.clone(),
        first_reach_times: trace.first_reach_times().to_vec(),
    };

    let vulnerability = if n >= 2 { node_removal_vulnerability(g)? } else { Vec::new() };
    let mean_reach = if n <= opts.diffusion_signal_max_n || opts.force_diffusion_signal {
        let per_source = DiffusionOptions {
            steps: None,
            ..opts.diffusion
        };
        Some(mean_first_reach_times(g, per_source)?)
    } else {
        None
    };
    let signals = ranking_signals(&bundle, &vulnerability, mean_reach.as_deref());
    let composite = composite_ranking(&signals);
    let integrated = IntegratedAnalysis {
        signals: signals.iter().map(|s| s.signal).collect(),
        critical_nodes: composite.iter().take(CRITICAL_NODE_COUNT).map(|e| e.node).collect(),
        composite,
        correlation: correlation_matrix(&signals),
        vulnerability,
        mean_first_reach_times: mean_reach,
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        provenance,
        graph_summary,
        centrality,
        spectra,
        diffusion,
        integrated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate_er;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        graph(n, &edges)
    }

    fn run(g: &Graph) -> AnalysisReport {
        let opts = AnalysisOptions::default();
        analyze(g, &opts, Provenance::new(0, None, None, &opts)).unwrap()
    }

    #[test]
    fn star_center_is_most_critical() {
        let r = run(&graph(4, &[(0, 1), (0, 2), (0, 3)]));
        assert_eq!(r.integrated.composite[0].node, 0);
        assert_eq!(r.integrated.composite[0].composite_rank, 1.0);
        assert_eq!(r.integrated.signals.len(), 6);
        assert_eq!(r.integrated.critical_nodes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn complete_graph_is_all_ties() {
        let r = run(&complete(5));
        let first = r.integrated.composite[0].composite_rank;
        assert!(r.integrated.composite.iter().all(|e| e.composite_rank == first));
        let order: Vec<_> = r.integrated.composite.iter().map(|e| e.node).collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
        for ranking in &r.centrality.rankings {
            assert_eq!(ranking.order, vec![0, 1, 2, 3, 4]);
        }
        // constant signals have no defined correlation
        assert!(r.integrated.correlation.values[0][0].is_none());
    }

    #[test]
    fn edgeless_graph_yields_partial_report() {
        let r = run(&Graph::empty(3));
        assert!(matches!(r.spectra.gap, Section::Degenerate(_)));
        assert!(matches!(r.centrality.eigenvector, Section::Degenerate(_)));
        assert!(matches!(r.graph_summary.average_path_length, Section::Degenerate(_)));
        assert_eq!(r.spectra.laplacian.eigenvalues, vec![0.0; 3]);
        assert_eq!(r.diffusion.reach_curve[0], 1.0 / 3.0);
        let json = r.to_json();
        assert!(json.contains("\"status\": \"degenerate\""), "{json}");
    }

    #[test]
    fn rankings_are_permutations_and_correlations_bounded() {
        for seed in 0..10 {
            let g = generate_er(12, 0.3, seed).unwrap();
            let r = run(&g);
            for ranking in &r.centrality.rankings {
                let mut sorted = ranking.order.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..12).collect::<Vec<_>>());
            }
            for row in &r.integrated.correlation.values {
                for c in row.iter().flatten() {
                    assert!((-1.0..=1.0).contains(c));
                }
            }
            assert_eq!(r.integrated.vulnerability.len(), 12);
        }
    }

    #[test]
    fn diffusion_signal_can_be_gated() {
        let g = generate_er(12, 0.3, 1).unwrap();
        let opts = AnalysisOptions {
            diffusion_signal_max_n: 10,
            ..Default::default()
        };
        let r = analyze(&g, &opts, Provenance::new(0, None, None, &opts)).unwrap();
        assert!(!r.integrated.signals.contains(&Signal::DiffusionSpeed));
        assert!(r.integrated.mean_first_reach_times.is_none());
    }

    #[test]
    fn invalid_source_is_an_error() {
        let opts = AnalysisOptions {
            diffusion_source: 9,
            ..Default::default()
        };
        let g = complete(3);
        assert!(matches!(
            analyze(&g, &opts, Provenance::new(0, None, None, &opts)),
            Err(Error::InvalidNode { node: 9, n: 3 })
        ));
    }

    #[test]
    fn mean_reach_times_on_path() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let m = mean_first_reach_times(&p3, DiffusionOptions::default()).unwrap();
        assert_eq!(m, vec![1.5, 1.0, 1.5]);
    }

    #[test]
    fn provenance_line_lists_seed() {
        let opts = AnalysisOptions::default();
        let spec = GeneratorSpec::new(crate::generators::Model::Er { n: 5, p: 1.0 }, 7);
        let line = Provenance::new(7, Some(spec), None, &opts).comment_line();
        assert!(line.starts_with("model=er n=5 p=1 seed=7"), "{line}");
        assert!(line.contains("diffusion_source=0"));
    }
}
