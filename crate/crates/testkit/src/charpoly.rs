//! Eigenvalues of tiny symmetric matrices from their characteristic polynomial.
//!
//! The polynomial is built exactly (Faddeev–LeVerrier over the rationals) and
//! split into square-free factors, so repeated eigenvalues are found exactly
//! by multiplicity. Each factor (degree <= 4, simple roots) is then solved by
//! the closed-form quadratic, trigonometric cubic or Ferrari quartic formula
//! and polished with Newton steps.

use std::f64::consts::PI;

use num::{BigRational, FromPrimitive, One, Zero};

use crate::poly::Poly;
use crate::{check_budget, OracleError, OracleResult, BUDGET};

/// Discriminant magnitudes below this (relative) are treated as zero.
const DEGENERATE_TOL: f64 = 1e-12;

fn exact_matrix(a: &[Vec<f64>]) -> OracleResult<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(OracleError::DimensionError {
                expected: n,
                actual: row.len(),
            });
        }
        for j in 0..i {
            if (row[j] - a[j][i]).abs() > 1e-12 {
                return Err(OracleError::NotSymmetric);
            }
        }
        out.push(
            row.iter()
                .map(|&x| BigRational::from_f64(x).expect("finite entry"))
                .collect(),
        );
    }
    Ok(out)
}

/// `det(xI - A)` with coefficients low to high.
pub fn characteristic_polynomial(a: &[Vec<f64>]) -> OracleResult<Vec<f64>> {
    check_budget("charpoly", BUDGET.charpoly, a.len())?;
    Ok(exact_charpoly(&exact_matrix(a)?).to_f64())
}

fn exact_charpoly(a: &[Vec<BigRational>]) -> Poly {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let trace: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigRational::from_integer(k.into());
    }
    Poly::new(coeffs)
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// All eigenvalues of a symmetric matrix with `n <= 4`, ascending.
pub fn oracle_eigen_charpoly(a: &[Vec<f64>]) -> OracleResult<Vec<f64>> {
    check_budget("charpoly", BUDGET.charpoly, a.len())?;
    let p = exact_charpoly(&exact_matrix(a)?);
    let mut roots = Vec::with_capacity(a.len());
    for (factor, multiplicity) in p.square_free_factors() {
        let coeffs = factor.monic().to_f64();
        for r in solve_closed_form(&coeffs) {
            let r = newton_polish(&coeffs, r);
            roots.extend(std::iter::repeat_n(r, multiplicity));
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Unit eigenvector of the largest eigenvalue (`n <= 4`), taken from the
/// adjugate of `A - λI`, signed so its entries sum to a non-negative value.
/// Meaningful when the largest eigenvalue is simple.
pub fn oracle_principal_direction(a: &[Vec<f64>]) -> OracleResult<(f64, Vec<f64>)> {
    let values = oracle_eigen_charpoly(a)?;
    let n = a.len();
    let lambda = *values.last().expect("non-empty matrix");
    if n == 1 {
        return Ok((lambda, vec![1.0]));
    }
    let shifted: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a[i][j] - if i == j { lambda } else { 0.0 }).collect())
        .collect();
    // column j of adj(B) is the vector of cofactors C_{j,i}
    let mut best = vec![0.0; n];
    let mut best_norm = -1.0;
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| cofactor(&shifted, j, i)).collect();
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > best_norm {
            best_norm = norm;
            best = col;
        }
    }
    best.iter_mut().for_each(|x| *x /= best_norm);
    if best.iter().sum::<f64>() < 0.0 {
        best.iter_mut().for_each(|x| *x = -*x);
    }
    Ok((lambda, best))
}

fn cofactor(m: &[Vec<f64>], row: usize, col: usize) -> f64 {
    let minor: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, &x)| x).collect())
        .collect();
    let sign = if (row + col) % 2 == 0 { 1.0 } else { -1.0 };
    sign * det(&minor)
}

fn det(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..m.len()).map(|j| m[0][j] * cofactor(m, 0, j)).sum(),
    }
}

/// Real roots of a monic polynomial (coefficients low to high) of degree 1..=4
/// that is known to have only real, simple roots.
fn solve_closed_form(c: &[f64]) -> Vec<f64> {
    match c.len() - 1 {
        0 => Vec::new(),
        1 => vec![-c[0]],
        2 => quadratic(c[1], c[0]),
        3 => cubic(c[2], c[1], c[0]),
        4 => quartic(c[3], c[2], c[1], c[0]),
        d => unreachable!("degree {d} exceeds the charpoly budget"),
    }
}

/// Roots of `x^2 + b x + c`.
fn quadratic(b: f64, c: f64) -> Vec<f64> {
    let mut disc = b * b - 4.0 * c;
    if disc < 0.0 && disc.abs() <= DEGENERATE_TOL * (b * b + c.abs()).max(1.0) {
        disc = 0.0;
    }
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    // avoid cancellation: q = -(b + sign(b) s) / 2
    let q = -0.5 * (b + if b >= 0.0 { s } else { -s });
    if q == 0.0 {
        return vec![0.0, 0.0];
    }
    vec![q, c / q]
}

/// Roots of `x^3 + a x^2 + b x + c` via the trigonometric form.
fn cubic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let scale = 1.0f64.max(a.abs()).max(b.abs()).max(c.abs());
    if p.abs() <= DEGENERATE_TOL * scale {
        // near-triple root
        return vec![(-q).cbrt() - shift; 3];
    }
    if p > 0.0 {
        // one real root (not expected for symmetric input)
        let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        return vec![(-q / 2.0 + disc).cbrt() + (-q / 2.0 - disc).cbrt() - shift];
    }
    let r = 2.0 * (-p / 3.0).sqrt();
    let arg = ((3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
    let phi = arg.acos() / 3.0;
    (0..3)
        .map(|k| r * (phi - 2.0 * PI * k as f64 / 3.0).cos() - shift)
        .collect()
}

/// Roots of `x^4 + a x^3 + b x^2 + c x + d` by Ferrari's resolvent cubic.
fn quartic(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    let scale = 1.0f64.max(a.abs()).max(b.abs()).max(c.abs()).max(d.abs());

    let ys: Vec<f64> = if q.abs() <= DEGENERATE_TOL * scale {
        // biquadratic in z = y^2
        quadratic(p, r)
            .into_iter()
            .flat_map(|z| {
                let z = if z < 0.0 && z.abs() <= DEGENERATE_TOL * scale { 0.0 } else { z };
                let s = z.max(0.0).sqrt();
                [s, -s]
            })
            .collect()
    } else {
        // 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0, take the largest root (> 0)
        let m = cubic(p, (p * p - 4.0 * r) / 4.0, -q * q / 8.0)
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        let s = (2.0 * m).sqrt();
        let mut ys = quadratic(-s, p / 2.0 + m + q / (2.0 * s));
        ys.extend(quadratic(s, p / 2.0 + m - q / (2.0 * s)));
        ys
    };
    ys.into_iter().map(|y| y - shift).collect()
}

fn eval(c: &[f64], x: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for &coef in c.iter().rev() {
        slope = slope * x + value;
        value = value * x + coef;
    }
    (value, slope)
}

fn newton_polish(c: &[f64], mut x: f64) -> f64 {
    for _ in 0..8 {
        let (f, df) = eval(c, x);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if eval(c, next).0.abs() >= f.abs() {
            break;
        }
        x = next;
    }
    x
}
