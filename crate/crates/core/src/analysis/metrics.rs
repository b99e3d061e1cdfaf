use crate::error::{Error, Result};
use crate::graph::Graph;

/// Relative tolerance under which two scores count as tied when ranking.
pub const TIE_TOL: f64 = 1e-9;

/// Mean local clustering coefficient. Nodes of degree < 2 contribute 0.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    local_clustering(g).iter().sum::<f64>() / n as f64
}

pub fn local_clustering(g: &Graph) -> Vec<f64> {
    (0..g.node_count())
        .map(|i| {
            let nbrs = g.neighbors(i);
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            let mut triangles = 0usize;
            for (a, &u) in nbrs.iter().enumerate() {
                for &v in &nbrs[a + 1..] {
                    if g.has_edge(u, v) {
                        triangles += 1;
                    }
                }
            }
            2.0 * triangles as f64 / (d * (d - 1)) as f64
        })
        .collect()
}

/// Mean hop distance over ordered pairs `i != j` with `j` reachable from `i`.
pub fn average_path_length(g: &Graph) -> Result<f64> {
    let mut total = 0usize;
    let mut pairs = 0usize;
    for s in 0..g.node_count() {
        for d in g.bfs_distances(s).into_iter().flatten().filter(|&d| d > 0) {
            total += d;
            pairs += 1;
        }
    }
    if pairs == 0 {
        return Err(Error::NoReachablePairs);
    }
    Ok(total as f64 / pairs as f64)
}

/// 1-based average ranks, ascending (smallest value gets rank 1). Values
/// within [`TIE_TOL`] of their sorted neighbor share a rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && tied(values[order[end - 1]], values[order[end]]) {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = avg;
        }
        start = end;
    }
    ranks
}

/// Average ranks with the largest value ranked first.
pub fn descending_ranks(values: &[f64]) -> Vec<f64> {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    average_ranks(&negated)
}

fn tied(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    (a - b).abs() <= TIE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionError {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::UndefinedCorrelation("need at least two observations".into()));
    }
    pearson(&average_ranks(a), &average_ranks(b))
}

/// First-reach times as ranking inputs: unreached nodes become `+inf`, so they
/// share the worst rank.
pub fn reach_times_as_values(times: &[Option<usize>]) -> Vec<f64> {
    times.iter().map(|t| t.map_or(f64::INFINITY, |t| t as f64)).collect()
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("a ranking has zero variance".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}
