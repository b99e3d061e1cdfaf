//! CSV, JSON and DOT renderings of an [`AnalysisReport`].
//!
//! Text outputs start with `#` (or `//` for DOT) provenance comment lines,
//! followed by the header row.

use std::fmt::Write;

use serde_json::json;

use super::{AnalysisReport, Section};
use crate::format::format_significant;

const CSV_DIGITS: usize = 12;

fn num(x: f64) -> String {
    format_significant(x, CSV_DIGITS)
}

fn comment_block(out: &mut String, prefix: &str, comments: &[String]) {
    for c in comments {
        let _ = writeln!(out, "{prefix} {c}");
    }
}

/// `node,degree,closeness,betweenness,eigenvector`, raw scores. The
/// eigenvector column is empty when that measure is degenerate.
pub fn centrality_csv(report: &AnalysisReport, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, "#", comments);
    out.push_str("node,degree,closeness,betweenness,eigenvector\n");
    let c = &report.centrality;
    let eig = c.eigenvector.ok().map(|e| &e.scores);
    for i in 0..c.degree.scores.len() {
        let _ = writeln!(
            out,
            "{i},{},{},{},{}",
            num(c.degree.scores[i]),
            num(c.closeness.scores[i]),
            num(c.betweenness.scores[i]),
            eig.map_or(String::new(), |e| num(e[i])),
        );
    }
    out
}

/// `t,reached_fraction`, one row per simulated step.
pub fn reach_curve_csv(curve: &[f64], comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, "#", comments);
    out.push_str("t,reached_fraction\n");
    for (t, r) in curve.iter().enumerate() {
        let _ = writeln!(out, "{t},{}", num(*r));
    }
    out
}

pub fn vulnerability_csv(report: &AnalysisReport, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, "#", comments);
    out.push_str("node,lambda2_after,delta_lambda2,components_before,components_after,components_created\n");
    for v in &report.integrated.vulnerability {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            v.node,
            num(v.lambda2_after),
            num(v.delta_lambda2),
            v.components_before,
            v.components_after,
            v.components_created
        );
    }
    out
}

/// `position,node,composite_rank,<one rank column per signal>`.
pub fn composite_csv(report: &AnalysisReport, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, "#", comments);
    out.push_str("position,node,composite_rank");
    for s in &report.integrated.signals {
        let _ = write!(out, ",{}_rank", s.name());
    }
    out.push('\n');
    for (pos, e) in report.integrated.composite.iter().enumerate() {
        let _ = write!(out, "{},{},{}", pos + 1, e.node, num(e.composite_rank));
        for r in &e.ranks {
            let _ = write!(out, ",{}", num(*r));
        }
        out.push('\n');
    }
    out
}

/// Both spectrum blocks plus the gap report and provenance.
pub fn spectrum_json(report: &AnalysisReport) -> String {
    let gap = match &report.spectra.gap {
        Section::Ok(g) => json!({ "status": "ok", "value": g }),
        Section::Degenerate(why) => json!({ "status": "degenerate", "value": why }),
    };
    let doc = json!({
        "schema_version": report.schema_version,
        "provenance": report.provenance,
        "adjacency": report.spectra.adjacency,
        "laplacian": report.spectra.laplacian,
        "gap": gap,
    });
    crate::format::to_json_string(&doc).expect("spectrum serializes")
}

/// Undirected DOT graph. Node attributes carry normalized centralities and the
/// composite position; `width` grows as the composite rank improves.
pub fn dot_export(report: &AnalysisReport, edges: &[(usize, usize)], comments: &[String]) -> String {
    let n = report.graph_summary.nodes;
    let mut position = vec![0usize; n];
    for (pos, e) in report.integrated.composite.iter().enumerate() {
        position[e.node] = pos + 1;
    }
    let eig_max = report
        .centrality
        .eigenvector
        .ok()
        .map(|e| e.scores.iter().cloned().fold(0.0, f64::max))
        .filter(|m| *m > 0.0);

    let mut out = String::new();
    comment_block(&mut out, "//", comments);
    out.push_str("graph network {\n");
    out.push_str("  node [shape=circle, fixedsize=true];\n");
    let norm = &report.centrality.normalized;
    for i in 0..n {
        // width in [0.3, 1.3], rank 1 widest
        let width = if n > 1 {
            0.3 + (n - position[i]) as f64 / (n - 1) as f64
        } else {
            1.3
        };
        let eig = match (report.centrality.eigenvector.ok(), eig_max) {
            (Some(e), Some(m)) => num(e.scores[i] / m),
            _ => "0".to_string(),
        };
        let _ = writeln!(
            out,
            "  {i} [label=\"{i}\", width={}, composite_position={}, degree={}, closeness={}, betweenness={}, eigenvector={}];",
            format_significant(width, 4),
            position[i],
            num(norm.degree[i]),
            num(norm.closeness[i]),
            num(norm.betweenness[i]),
            eig,
        );
    }
    for &(u, v) in edges {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
