//! Multi-seed comparison of generator families.

use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{average_path_length, clustering_coefficient};
use crate::diffusion::{simulate_diffusion, DiffusionOptions, DiffusionSource};
use crate::error::{Error, Result};
use crate::format::format_significant;
use crate::generators::GeneratorSpec;
use crate::spectral::{spectrum, MatrixKind};

/// Fraction used for the diffusion-speed column.
pub const REACH_TARGET: f64 = 0.9;

/// Measurements on one generated instance. Quantities that are undefined for
/// the instance (no edges, no reachable pairs, 90% never reached) are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedMetrics {
    pub seed: u64,
    pub edges: usize,
    pub paper_gap: Option<f64>,
    pub algebraic_connectivity: f64,
    pub clustering: f64,
    pub average_path_length: Option<f64>,
    pub max_degree: usize,
    pub steps_to_90_reach: Option<usize>,
}

impl SeedMetrics {
    pub fn measure(spec: &GeneratorSpec) -> Result<Self> {
        let g = spec.generate()?;
        let laplacian = spectrum(&g, MatrixKind::Laplacian)?;
        let steps_to_90_reach = if g.node_count() == 0 {
            None
        } else {
            simulate_diffusion(&g, DiffusionSource::Node(0), DiffusionOptions::default())?
                .steps_to_reach(REACH_TARGET)
        };
        Ok(SeedMetrics {
            seed: spec.seed,
            edges: g.edge_count(),
            paper_gap: if g.edge_count() == 0 { None } else { laplacian.paper_gap() },
            algebraic_connectivity: laplacian.lambda2.unwrap_or(0.0),
            clustering: clustering_coefficient(&g),
            average_path_length: average_path_length(&g).ok(),
            max_degree: g.max_degree(),
            steps_to_90_reach,
        })
    }
}

/// Mean and sample standard deviation over the seeds where a value exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub mean: Option<f64>,
    pub stdev: Option<f64>,
    pub count: usize,
}

impl MetricSummary {
    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        let v: Vec<f64> = values.into_iter().collect();
        let count = v.len();
        if count == 0 {
            return MetricSummary {
                mean: None,
                stdev: None,
                count,
            };
        }
        let mean = v.iter().sum::<f64>() / count as f64;
        let stdev = if count < 2 {
            0.0
        } else {
            (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        };
        MetricSummary {
            mean: Some(mean),
            stdev: Some(stdev),
            count,
        }
    }

    fn render(&self) -> String {
        match (self.mean, self.stdev) {
            (Some(m), Some(s)) => format!("{} ± {}", format_significant(m, 4), format_significant(s, 3)),
            _ => "n/a".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub label: String,
    pub spec: GeneratorSpec,
    pub seeds: usize,
    pub paper_gap: MetricSummary,
    pub algebraic_connectivity: MetricSummary,
    pub clustering: MetricSummary,
    pub average_path_length: MetricSummary,
    pub max_degree: MetricSummary,
    pub steps_to_90_reach: MetricSummary,
    pub per_seed: Vec<SeedMetrics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

const COLUMNS: [&str; 6] = [
    "paper_gap",
    "algebraic_connectivity",
    "clustering",
    "average_path_length",
    "max_degree",
    "steps_to_90_reach",
];

impl ComparisonRow {
    fn summaries(&self) -> [&MetricSummary; 6] {
        [
            &self.paper_gap,
            &self.algebraic_connectivity,
            &self.clustering,
            &self.average_path_length,
            &self.max_degree,
            &self.steps_to_90_reach,
        ]
    }
}

impl ComparisonTable {
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| model | seeds |");
        for c in COLUMNS {
            let _ = write!(out, " {c} |");
        }
        out.push_str("\n|---|---|");
        out.push_str(&"---|".repeat(COLUMNS.len()));
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "| {} | {} |", row.label, row.seeds);
            for s in row.summaries() {
                let _ = write!(out, " {} |", s.render());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str("model,seeds");
        for c in COLUMNS {
            let _ = write!(out, ",{c}_mean,{c}_stdev,{c}_count");
        }
        out.push('\n');
        let cell = |x: Option<f64>| x.map_or(String::new(), |v| format_significant(v, 12));
        for row in &self.rows {
            let _ = write!(out, "\"{}\",{}", row.label, row.seeds);
            for s in row.summaries() {
                let _ = write!(out, ",{},{},{}", cell(s.mean), cell(s.stdev), s.count);
            }
            out.push('\n');
        }
        out
    }
}

/// Generates `seeds` instances of every spec (seed `spec.seed + i`) and
/// summarises gap, connectivity, clustering, path length, hub size and
/// diffusion speed per spec. Instances run in parallel; rows and per-seed
/// lists keep input order.
pub fn topology_comparison_experiment(specs: &[GeneratorSpec], seeds: usize) -> Result<ComparisonTable> {
    if specs.is_empty() {
        return Err(Error::InvalidParameter("comparison needs at least one generator spec".into()));
    }
    if seeds == 0 {
        return Err(Error::InvalidParameter("comparison needs at least one seed".into()));
    }
    for spec in specs {
        spec.model.validate()?;
    }

    let rows = specs
        .iter()
        .map(|spec| {
            let per_seed: Vec<SeedMetrics> = (0..seeds)
                .into_par_iter()
                .map(|i| {
                    let instance = GeneratorSpec::new(spec.model, spec.seed.wrapping_add(i as u64));
                    SeedMetrics::measure(&instance)
                })
                .collect::<Result<_>>()?;
            Ok(ComparisonRow {
                label: spec.model.to_string(),
                spec: *spec,
                seeds,
                paper_gap: MetricSummary::from_values(per_seed.iter().filter_map(|m| m.paper_gap)),
                algebraic_connectivity: MetricSummary::from_values(
                    per_seed.iter().map(|m| m.algebraic_connectivity),
                ),
                clustering: MetricSummary::from_values(per_seed.iter().map(|m| m.clustering)),
                average_path_length: MetricSummary::from_values(
                    per_seed.iter().filter_map(|m| m.average_path_length),
                ),
                max_degree: MetricSummary::from_values(per_seed.iter().map(|m| m.max_degree as f64)),
                steps_to_90_reach: MetricSummary::from_values(
                    per_seed.iter().filter_map(|m| m.steps_to_90_reach.map(|s| s as f64)),
                ),
                per_seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Model;

    #[test]
    fn single_spec_single_seed() {
        let t = topology_comparison_experiment(&[GeneratorSpec::new(Model::Er { n: 20, p: 0.3 }, 5)], 1).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].clustering.stdev, Some(0.0));
        assert_eq!(t.rows[0].per_seed[0].seed, 5);
        assert_eq!(t.to_markdown().lines().count(), 3);
    }

    #[test]
    fn ws_clusters_more_than_er() {
        let specs = [
            GeneratorSpec::new(Model::Er { n: 100, p: 0.04 }, 0),
            GeneratorSpec::new(Model::Ws { n: 100, k: 4, beta: 0.1 }, 0),
        ];
        let t = topology_comparison_experiment(&specs, 20).unwrap();
        assert!(t.rows[1].clustering.mean.unwrap() > t.rows[0].clustering.mean.unwrap());
    }

    #[test]
    fn ba_hubs_beat_er() {
        let specs = [
            GeneratorSpec::new(Model::Er { n: 100, p: 0.04 }, 0),
            GeneratorSpec::new(Model::Ba { n: 100, m: 2 }, 0),
        ];
        let t = topology_comparison_experiment(&specs, 20).unwrap();
        assert!(t.rows[1].max_degree.mean.unwrap() > t.rows[0].max_degree.mean.unwrap());
        let csv = t.to_csv(&[]);
        assert!(csv.starts_with("model,seeds,paper_gap_mean,"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn errors_propagate() {
        assert!(topology_comparison_experiment(&[], 3).is_err());
        let bad = GeneratorSpec::new(Model::Ba { n: 3, m: 5 }, 0);
        assert!(matches!(topology_comparison_experiment(&[bad], 3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn summary_edge_cases() {
        let s = MetricSummary::from_values([1.0, 3.0]);
        assert_eq!(s.mean, Some(2.0));
        assert!((s.stdev.unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(MetricSummary::from_values(std::iter::empty()).mean, None);
    }
}
