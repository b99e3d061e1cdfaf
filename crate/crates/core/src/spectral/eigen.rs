//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by the implicitly shifted QL iteration.

use crate::error::{Error, Result};
use crate::graph::DenseMatrix;

/// Relative tolerance for the symmetry check.
const SYMMETRY_TOL: f64 = 1e-12;

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS: usize = 60;

/// All eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    let n = m.size();
    check_symmetric(m)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = m.to_rows();
    let (mut diag, mut off) = tridiagonalize(&mut a);
    implicit_ql(&mut diag, &mut off)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

fn check_symmetric(m: &DenseMatrix) -> Result<()> {
    let n = m.size();
    let bound = SYMMETRY_TOL * m.max_abs().max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            let gap = (m.get(i, j) - m.get(j, i)).abs();
            if gap > bound || gap.is_nan() {
                return Err(Error::NotSymmetric { i, j, gap });
            }
        }
    }
    Ok(())
}

/// Householder reduction of the lower triangle of `a`. Returns the diagonal
/// and the subdiagonal, with `off[i]` coupling rows `i` and `i + 1` and
/// `off[n - 1] = 0`.
fn tridiagonalize(a: &mut [Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i][..=l].iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;

                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i][j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i][i];
    }
    // shift so off[i] couples i and i + 1
    let mut off = vec![0.0; n];
    off[..n - 1].copy_from_slice(&e[1..]);
    (d, off)
}

/// Eigenvalues of the symmetric tridiagonal matrix `(d, e)` in place (unsorted).
fn implicit_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    iterations: sweeps,
                    residual: e[l].abs(),
                });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated_early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
