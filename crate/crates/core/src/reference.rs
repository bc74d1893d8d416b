//! Standalone primal simplex for `max {cx : Ax <= b, x >= 0}` with `b >= 0`.
//!
//! Used as the correctness oracle for the decomposition solvers and as the LP
//! engine behind the Benders master and the restricted primal. It shares no
//! code with the Dantzig-Wolfe master kernel.

use crate::error::{Error, Result};
use crate::matrix::{dot, DenseMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

const TOL: f64 = 1e-9;

/// Solves the LP from the slack basis with Bland's rule (smallest-index
/// entering variable, smallest-index basic variable on ratio ties).
pub fn solve_lp_reference(a: &DenseMatrix, b: &[f64], c: &[f64]) -> Result<LpSolution> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m || c.len() != n {
        return Err(Error::Dimension(format!(
            "A is {}x{}, b has {}, c has {}",
            m,
            n,
            b.len(),
            c.len()
        )));
    }
    if let Some((index, &value)) = b.iter().enumerate().find(|(_, v)| **v < 0.0) {
        return Err(Error::InfeasibleStart { index, value });
    }
    if c.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("LP data"));
    }

    let width = n + m;
    let mut tab = DenseMatrix::zeros(m, width);
    for i in 0..m {
        tab.row_mut(i)[..n].copy_from_slice(a.row(i));
        tab[(i, n + i)] = 1.0;
    }
    let mut rhs = b.to_vec();
    let mut profit: Vec<f64> = c
        .iter()
        .copied()
        .chain(std::iter::repeat_n(0.0, m))
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Bland's rule terminates; the cap only guards against numerical trouble.
    let max_pivots = 50 * (width + 1) * (m + 1) + 1000;
    for _ in 0..max_pivots {
        let Some(enter) = profit.iter().position(|&d| d > TOL) else {
            let mut x = vec![0.0; n];
            for (i, &j) in basis.iter().enumerate() {
                if j < n {
                    x[j] = rhs[i].max(0.0);
                }
            }
            let value = dot(c, &x);
            return Ok(LpSolution { x, value });
        };

        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let y = tab[(i, enter)];
            if y <= TOL {
                continue;
            }
            let ratio = rhs[i] / y;
            leave = match leave {
                None => Some((i, ratio)),
                Some((r, best)) => {
                    if ratio < best - TOL || ((ratio - best).abs() <= TOL && basis[i] < basis[r]) {
                        Some((i, ratio))
                    } else {
                        Some((r, best))
                    }
                }
            };
        }
        let Some((r, _)) = leave else {
            return Err(Error::Unbounded);
        };

        let p = tab[(r, enter)];
        tab.row_mut(r).iter_mut().for_each(|v| *v /= p);
        rhs[r] /= p;
        let pivot_row = tab.row(r).to_vec();
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = tab[(i, enter)];
            if f == 0.0 {
                continue;
            }
            for (v, pr) in tab.row_mut(i).iter_mut().zip(&pivot_row) {
                *v -= f * pr;
            }
            rhs[i] -= f * rhs[r];
            if rhs[i].abs() < 1e-13 {
                rhs[i] = 0.0;
            }
        }
        let f = profit[enter];
        for (d, pr) in profit.iter_mut().zip(&pivot_row) {
            *d -= f * pr;
        }
        profit[enter] = 0.0;
        basis[r] = enter;
    }
    Err(Error::Internal(
        "reference simplex exceeded its pivot cap".into(),
    ))
}
