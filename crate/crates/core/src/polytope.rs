use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{dot, DenseMatrix};

/// The packing polytope `P = {x : Ax <= b, x >= 0}` with `b >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    a: DenseMatrix,
    b: Vec<f64>,
}

impl Polytope {
    pub fn new(a: DenseMatrix, b: Vec<f64>) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::Dimension(format!(
                "constraint matrix must be nonempty, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if b.len() != a.rows() {
            return Err(Error::Dimension(format!(
                "b has {} entries, A has {} rows",
                b.len(),
                a.rows()
            )));
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("right-hand side"));
        }
        if let Some((index, &value)) = b.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::InfeasibleStart { index, value });
        }
        Ok(Polytope { a, b })
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Number of constraints.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Largest violation `max_i (Ax - b)_i`, clipped at zero.
    pub fn violation(&self, x: &[f64]) -> f64 {
        self.a
            .mul_vec(x)
            .iter()
            .zip(&self.b)
            .map(|(ax, b)| ax - b)
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_cost(&self, c: &[f64]) -> Result<()> {
        if c.len() != self.n() {
            return Err(Error::Dimension(format!(
                "cost has {} entries, polytope has {} variables",
                c.len(),
                self.n()
            )));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("cost vector"));
        }
        Ok(())
    }
}

/// A nonnegative integer point returned by an oracle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegerPoint(Vec<u32>);

impl IntegerPoint {
    pub fn new(coords: Vec<u32>) -> Self {
        IntegerPoint(coords)
    }

    pub fn zero(n: usize) -> Self {
        IntegerPoint(vec![0; n])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&v| f64::from(v)).collect()
    }

    pub fn dot(&self, cost: &[f64]) -> f64 {
        debug_assert_eq!(cost.len(), self.0.len());
        self.0
            .iter()
            .zip(cost)
            .filter(|(&x, _)| x != 0)
            .map(|(&x, c)| f64::from(x) * c)
            .sum()
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied().enumerate().filter(|(_, v)| *v != 0)
    }
}

impl From<Vec<u32>> for IntegerPoint {
    fn from(v: Vec<u32>) -> Self {
        IntegerPoint(v)
    }
}

impl fmt::Debug for IntegerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<_> = self.support().collect();
        write!(f, "IntegerPoint(n={}, {:?})", self.0.len(), nz)
    }
}

/// Weights at or below this are treated as zero.
pub const WEIGHT_FLOOR: f64 = 1e-12;

/// Weighted integer points whose weights form a probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexCombination {
    pub points: Vec<IntegerPoint>,
    pub weights: Vec<f64>,
    pub combined_point: Vec<f64>,
    pub objective: f64,
}

impl ConvexCombination {
    /// Assembles a combination, dropping points whose weight is at most
    /// [`WEIGHT_FLOOR`] (round-off left on degenerate basic columns). `combined_point` and `objective` are
    /// recomputed from the surviving terms.
    pub fn from_terms(terms: Vec<(IntegerPoint, f64)>, n: usize, cost: &[f64]) -> Self {
        let mut points = Vec::with_capacity(terms.len());
        let mut weights = Vec::with_capacity(terms.len());
        let mut combined_point = vec![0.0; n];
        for (p, w) in terms {
            if w <= WEIGHT_FLOOR {
                continue;
            }
            for (i, v) in p.support() {
                combined_point[i] += w * f64::from(v);
            }
            points.push(p);
            weights.push(w);
        }
        let objective = dot(cost, &combined_point);
        ConvexCombination {
            points,
            weights,
            combined_point,
            objective,
        }
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Number of points with weight above `tol`.
    pub fn support_size(&self, tol: f64) -> usize {
        self.weights.iter().filter(|&&w| w > tol).count()
    }

    pub fn weight_of(&self, point: &IntegerPoint) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .filter(|(p, _)| *p == point)
            .map(|(_, w)| w)
            .sum()
    }

    /// `max_i |sum_j w_j X_j[i] - combined_point[i]|`, recomputed from scratch.
    pub fn combination_error(&self) -> f64 {
        let n = self.combined_point.len();
        let mut acc = vec![0.0; n];
        for (p, w) in self.points.iter().zip(&self.weights) {
            for (i, v) in p.support() {
                acc[i] += w * f64::from(v);
            }
        }
        acc.iter()
            .zip(&self.combined_point)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
