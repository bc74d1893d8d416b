//! Dense revised-simplex kernel for the Dantzig-Wolfe master.
//!
//! The master has `m + 1` rows: one per constraint of `Ax <= b` (with a slack
//! each) and the convexity row `sum(lambda) = 1`. The tableau keeps the basis
//! inverse `B^-1`, the current right-hand side `B^-1 [b; 1]`, and row zero
//! `(w, alpha) = c_B B^-1`.
//!
//! Internally the master is a minimization whose column costs are `-c.X`, so
//! the duals `w` come out nonpositive on a packing polytope. The reduced cost
//! of a column `(AX; 1)` is then `z - c_hat = w.AX + alpha + c.X`, which is the
//! maximization-form pricing `(c + wA)X + alpha`. Pivoting eliminates the
//! reduced-cost entry from row zero, i.e. row zero is decreased by the reduced
//! cost times the normalized pivot row, while the (maximization) objective
//! increases by the reduced cost times the step length.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{dot, DenseMatrix};

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub feasibility: f64,
    pub pivot: f64,
    pub optimality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            feasibility: 1e-9,
            pivot: 1e-9,
            optimality: 1e-9,
        }
    }
}

/// What occupies a basis position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// Slack of constraint row `i` (0-based).
    Slack(usize),
    /// Weight of the `k`-th generated point; `Point(0)` is the zero point.
    Point(usize),
    Artificial,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Slack(i) => write!(f, "s{}", i + 1),
            BasisLabel::Point(k) => write!(f, "λ{}", k),
            BasisLabel::Artificial => write!(f, "a"),
        }
    }
}

/// Revised-simplex tableau of the master problem.
#[derive(Debug, Clone, PartialEq)]
pub struct MasterState {
    basis_inverse: DenseMatrix,
    rhs: Vec<f64>,
    dual_row: Vec<f64>,
    objective: f64,
    basis_labels: Vec<BasisLabel>,
    pivots: usize,
}

impl MasterState {
    /// Starting tableau: slacks basic at `s = b`, plus the zero point at weight one.
    pub fn initial(b: &[f64]) -> Result<Self> {
        if let Some((index, &value)) = b.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::InfeasibleStart { index, value });
        }
        let m = b.len();
        let mut rhs = b.to_vec();
        rhs.push(1.0);
        let mut basis_labels: Vec<_> = (0..m).map(BasisLabel::Slack).collect();
        basis_labels.push(BasisLabel::Point(0));
        Ok(MasterState {
            basis_inverse: DenseMatrix::identity(m + 1),
            rhs,
            dual_row: vec![0.0; m + 1],
            objective: 0.0,
            basis_labels,
            pivots: 0,
        })
    }

    /// Assembles a state from raw parts, e.g. to resume a printed tableau.
    pub fn from_parts(
        basis_inverse: DenseMatrix,
        rhs: Vec<f64>,
        dual_row: Vec<f64>,
        objective: f64,
        basis_labels: Vec<BasisLabel>,
    ) -> Result<Self> {
        let size = rhs.len();
        if basis_inverse.rows() != size
            || basis_inverse.cols() != size
            || dual_row.len() != size
            || basis_labels.len() != size
            || size == 0
        {
            return Err(Error::Dimension("inconsistent master tableau parts".into()));
        }
        Ok(MasterState {
            basis_inverse,
            rhs,
            dual_row,
            objective,
            basis_labels,
            pivots: 0,
        })
    }

    /// Number of constraint rows (excluding the convexity row).
    pub fn m(&self) -> usize {
        self.rhs.len() - 1
    }

    pub fn basis_inverse(&self) -> &DenseMatrix {
        &self.basis_inverse
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    /// Row zero `(w, alpha)`.
    pub fn dual_row(&self) -> &[f64] {
        &self.dual_row
    }

    pub fn w(&self) -> &[f64] {
        &self.dual_row[..self.m()]
    }

    pub fn alpha(&self) -> f64 {
        self.dual_row[self.m()]
    }

    /// Master objective in maximization form.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Row-zero right-hand side `c_B b_bar` as printed in the tableau (minimization form).
    pub fn tableau_value(&self) -> f64 {
        -self.objective
    }

    pub fn basis_labels(&self) -> &[BasisLabel] {
        &self.basis_labels
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// `y = B^-1 [Ax; 1]`.
    pub fn entering_column(&self, ax: &[f64]) -> Vec<f64> {
        assert_eq!(ax.len(), self.m(), "entering_column: Ax has wrong length");
        let size = self.rhs.len();
        (0..size)
            .map(|i| {
                let row = self.basis_inverse.row(i);
                dot(&row[..size - 1], ax) + row[size - 1]
            })
            .collect()
    }

    /// Reduced cost `(c + wA)x + alpha`, given `c.x` and `Ax`.
    pub fn reduced_cost(&self, cx: f64, ax: &[f64]) -> f64 {
        dot(self.w(), ax) + self.alpha() + cx
    }

    /// Pivots the entering column into row `r`.
    pub fn pivot(
        &mut self,
        entering_col: &[f64],
        reduced_cost: f64,
        r: usize,
        entering_label: BasisLabel,
    ) -> Result<()> {
        let size = self.rhs.len();
        if entering_col.len() != size || r >= size {
            return Err(Error::Dimension("pivot column or row out of range".into()));
        }
        let pivot = entering_col[r];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::Internal(format!("zero pivot element in row {}", r)));
        }

        for v in self.basis_inverse.row_mut(r) {
            *v /= pivot;
        }
        self.rhs[r] /= pivot;
        let pivot_row = self.basis_inverse.row(r).to_vec();
        let pivot_rhs = self.rhs[r];

        for (i, &f) in entering_col.iter().enumerate() {
            if i == r || f == 0.0 {
                continue;
            }
            for (v, p) in self.basis_inverse.row_mut(i).iter_mut().zip(&pivot_row) {
                *v -= f * p;
            }
            self.rhs[i] -= f * pivot_rhs;
        }
        if reduced_cost != 0.0 {
            for (d, p) in self.dual_row.iter_mut().zip(&pivot_row) {
                *d -= reduced_cost * p;
            }
        }
        self.objective += reduced_cost * pivot_rhs;
        self.basis_labels[r] = entering_label;
        self.pivots += 1;
        Ok(())
    }

    /// `max |B^-1 B - I|` where `B` is rebuilt from the original columns of the
    /// labels in the basis.
    pub fn reconstruction_error<F>(&self, column_of: F) -> f64
    where
        F: Fn(BasisLabel) -> Vec<f64>,
    {
        let basis = self.basis_matrix(&column_of);
        self.basis_inverse
            .mul(&basis)
            .max_abs_diff(&DenseMatrix::identity(self.rhs.len()))
    }

    fn basis_matrix<F>(&self, column_of: &F) -> DenseMatrix
    where
        F: Fn(BasisLabel) -> Vec<f64>,
    {
        let size = self.rhs.len();
        let mut basis = DenseMatrix::zeros(size, size);
        for (j, &label) in self.basis_labels.iter().enumerate() {
            let col = column_of(label);
            assert_eq!(col.len(), size, "basis column has wrong length");
            for (i, v) in col.into_iter().enumerate() {
                basis[(i, j)] = v;
            }
        }
        basis
    }

    /// Recomputes `B^-1`, the right-hand side and row zero from the original
    /// columns. `cost_of` gives the minimization-form column cost.
    pub fn refactor<F, G>(&mut self, b: &[f64], column_of: F, cost_of: G, tol: f64) -> Result<()>
    where
        F: Fn(BasisLabel) -> Vec<f64>,
        G: Fn(BasisLabel) -> f64,
    {
        let basis = self.basis_matrix(&column_of);
        let inv = basis
            .inverse(tol)
            .ok_or_else(|| Error::Internal("basis became singular".into()))?;
        let mut rhs0 = b.to_vec();
        rhs0.push(1.0);
        self.rhs = inv.mul_vec(&rhs0);
        let costs: Vec<f64> = self.basis_labels.iter().map(|&l| cost_of(l)).collect();
        self.dual_row = inv.vec_mul(&costs);
        self.objective = -dot(&costs, &self.rhs);
        self.basis_inverse = inv;
        Ok(())
    }
}

/// Minimum-ratio test over rows with `entering_col[i] > tol`; ties go to the
/// smallest row index. Returns [`Error::Unbounded`] when no entry qualifies.
pub fn ratio_test(rhs: &[f64], entering_col: &[f64], tol: f64) -> Result<usize> {
    assert_eq!(rhs.len(), entering_col.len(), "ratio_test: length mismatch");
    let mut best: Option<(usize, f64)> = None;
    for (i, (&b, &y)) in rhs.iter().zip(entering_col).enumerate() {
        if y <= tol {
            continue;
        }
        let ratio = b / y;
        match best {
            Some((_, r)) if ratio >= r => {}
            _ => best = Some((i, ratio)),
        }
    }
    best.map(|(i, _)| i).ok_or(Error::Unbounded)
}
