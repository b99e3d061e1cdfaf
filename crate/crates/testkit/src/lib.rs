//! Reference oracles for the netspectra test suite.
//!
//! Everything here is deliberately naive (path enumeration, Floyd–Warshall,
//! characteristic polynomials) and works on plain edge lists and row-major
//! matrices, so it shares no code with the library it checks. Each oracle
//! refuses inputs above its budget.

mod charpoly;
mod poly;

use std::collections::VecDeque;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use thiserror::Error;

pub use charpoly::{characteristic_polynomial, oracle_eigen_charpoly, oracle_principal_direction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{oracle} accepts n <= {max}, got {n}")]
    BudgetExceeded { oracle: &'static str, max: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionError { expected: usize, actual: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

pub type OracleResult<T> = Result<T, OracleError>;

/// Largest inputs each oracle accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub path_enumeration: usize,
    pub floyd_warshall: usize,
    pub charpoly: usize,
    pub matvec: usize,
    pub dense_eigen: usize,
}

pub const BUDGET: OracleBudget = OracleBudget {
    path_enumeration: 10,
    floyd_warshall: 64,
    charpoly: 4,
    matvec: 50,
    dense_eigen: 64,
};

fn check_budget(oracle: &'static str, max: usize, n: usize) -> OracleResult<()> {
    if n > max {
        Err(OracleError::BudgetExceeded { oracle, max, n })
    } else {
        Ok(())
    }
}

fn adjacency_sets(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u != v {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    adj
}

/// All-pairs hop distances by the triple loop; `None` marks unreachable pairs.
pub fn oracle_floyd_warshall(n: usize, edges: &[(usize, usize)]) -> OracleResult<Vec<Vec<Option<usize>>>> {
    check_budget("floyd_warshall", BUDGET.floyd_warshall, n)?;
    let adj = adjacency_sets(n, edges);
    let mut d: Vec<Vec<Option<usize>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(0)
                    } else if adj[i][j] {
                        Some(1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    Ok(d)
}

/// Betweenness by listing every shortest path of every unordered pair and
/// crediting each interior node `count / sigma_st` in exact rationals.
pub fn oracle_betweenness(n: usize, edges: &[(usize, usize)]) -> OracleResult<Vec<f64>> {
    check_budget("betweenness", BUDGET.path_enumeration, n)?;
    let adj = adjacency_sets(n, edges);
    let dist = oracle_floyd_warshall(n, edges)?;
    let mut credit = vec![BigRational::zero(); n];

    for s in 0..n {
        for t in s + 1..n {
            let Some(target) = dist[s][t] else { continue };
            let mut paths = Vec::new();
            let mut current = vec![s];
            expand_paths(&adj, &dist, t, target, &mut current, &mut paths);
            let sigma = paths.len();
            let mut through = vec![0usize; n];
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                if through[v] > 0 {
                    credit[v] += BigRational::new(BigInt::from(through[v]), BigInt::from(sigma));
                }
            }
        }
    }
    Ok(credit.iter().map(|c| c.to_f64().expect("finite")).collect())
}

fn expand_paths(
    adj: &[Vec<bool>],
    dist: &[Vec<Option<usize>>],
    t: usize,
    target: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *current.last().expect("path starts at s");
    if v == t {
        out.push(current.clone());
        return;
    }
    let step = current.len();
    for w in 0..adj.len() {
        // w must sit at depth `step` and still be exactly target - step from t
        if adj[v][w] && dist[current[0]][w] == Some(step) && dist[w][t] == Some(target - step) {
            current.push(w);
            expand_paths(adj, dist, t, target, current, out);
            current.pop();
        }
    }
}

/// `A x` with each row summed in ascending column order.
pub fn oracle_matvec(a: &[Vec<f64>], x: &[f64]) -> OracleResult<Vec<f64>> {
    check_budget("matvec", BUDGET.matvec, a.len())?;
    if x.len() != a.len() {
        return Err(OracleError::DimensionError {
            expected: a.len(),
            actual: x.len(),
        });
    }
    let mut out = Vec::with_capacity(a.len());
    for row in a {
        if row.len() != x.len() {
            return Err(OracleError::DimensionError {
                expected: x.len(),
                actual: row.len(),
            });
        }
        let mut acc = 0.0;
        for (aij, xj) in row.iter().zip(x) {
            acc += aij * xj;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Dense adjacency matrix of an edge list.
pub fn dense_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
    adjacency_sets(n, edges)
        .into_iter()
        .map(|row| row.into_iter().map(|b| if b { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Dense Laplacian of an edge list.
pub fn dense_laplacian(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let mut l = dense_adjacency(n, edges);
    for (i, row) in l.iter_mut().enumerate() {
        let degree: f64 = row.iter().sum();
        row.iter_mut().for_each(|x| *x = -*x);
        row[i] = degree;
    }
    l
}

fn to_nalgebra(a: &[Vec<f64>]) -> OracleResult<nalgebra::DMatrix<f64>> {
    let n = a.len();
    check_budget("dense_eigen", BUDGET.dense_eigen, n)?;
    for row in a {
        if row.len() != n {
            return Err(OracleError::DimensionError {
                expected: n,
                actual: row.len(),
            });
        }
    }
    Ok(nalgebra::DMatrix::from_fn(n, n, |i, j| a[i][j]))
}

/// Eigenvalues by nalgebra's symmetric eigendecomposition, ascending.
pub fn dense_symmetric_eigenvalues(a: &[Vec<f64>]) -> OracleResult<Vec<f64>> {
    let m = to_nalgebra(a)?;
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Unit eigenvector of the largest eigenvalue from a dense decomposition,
/// signed so its entries sum to a non-negative value.
pub fn dense_principal_eigenvector(a: &[Vec<f64>]) -> OracleResult<(f64, Vec<f64>)> {
    let m = to_nalgebra(a)?;
    let eig = nalgebra::SymmetricEigen::new(m);
    let (idx, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty matrix");
    let mut v: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok((lambda, v))
}

/// Cut vertices by Tarjan's depth-first lowpoint search, ascending.
pub fn articulation_points_dfs(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let adj = adjacency_sets(n, edges);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;

    fn visit(
        v: usize,
        parent: Option<usize>,
        adj: &[Vec<bool>],
        disc: &mut [usize],
        low: &mut [usize],
        is_cut: &mut [bool],
        timer: &mut usize,
    ) {
        disc[v] = *timer;
        low[v] = *timer;
        *timer += 1;
        let mut children = 0;
        for w in 0..adj.len() {
            if !adj[v][w] || Some(w) == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                children += 1;
                visit(w, Some(v), adj, disc, low, is_cut, timer);
                low[v] = low[v].min(low[w]);
                if parent.is_some() && low[w] >= disc[v] {
                    is_cut[v] = true;
                }
            } else {
                low[v] = low[v].min(disc[w]);
            }
        }
        if parent.is_none() && children > 1 {
            is_cut[v] = true;
        }
    }

    for v in 0..n {
        if disc[v] == usize::MAX {
            visit(v, None, &adj, &mut disc, &mut low, &mut is_cut, &mut timer);
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Whether every node reaches every other, by breadth-first search.
pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let adj = adjacency_sets(n, edges);
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if adj[v][w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
