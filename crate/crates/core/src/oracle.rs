//! Oracle contract and the wrappers built on it.
//!
//! An [`Oracle`] answers `best_point(cost)` with an integer point `X` of the
//! integral polytope `Q` such that `cost.X >= cost.x` for every `x` in the
//! polytope `P` being optimized over. Solvers call it with arbitrary-sign cost
//! vectors; [`PackingOracle`] turns an oracle that is only correct for
//! nonnegative costs into one that accepts any signs, using downward closure
//! of `Q`.
//!
//! Oracles are called through `&self`. An oracle shared between concurrent
//! solves must be `Sync`; the implementations in this crate are pure.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::polytope::{IntegerPoint, Polytope};

pub trait Oracle {
    /// Dimension of the points returned.
    fn dim(&self) -> usize;

    /// Integer point dominating every point of `P` under `cost`.
    fn best_point(&self, cost: &[f64]) -> IntegerPoint;
}

impl<O: Oracle + ?Sized> Oracle for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn best_point(&self, cost: &[f64]) -> IntegerPoint {
        (**self).best_point(cost)
    }
}

impl<O: Oracle + ?Sized> Oracle for Box<O> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn best_point(&self, cost: &[f64]) -> IntegerPoint {
        (**self).best_point(cost)
    }
}

/// Clamps costs to `max(c, 0)` before calling the inner oracle, then zeroes
/// every coordinate whose original cost is negative.
///
/// For `x` in `P` (so `x >= 0`): `c.X' = c+.X >= c+.x >= c.x`.
#[derive(Debug, Clone)]
pub struct PackingOracle<O> {
    inner: O,
}

impl<O: Oracle> PackingOracle<O> {
    pub fn new(inner: O) -> Self {
        PackingOracle { inner }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: Oracle> Oracle for PackingOracle<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn best_point(&self, cost: &[f64]) -> IntegerPoint {
        let clamped: Vec<f64> = cost.iter().map(|&c| c.max(0.0)).collect();
        let point = self.inner.best_point(&clamped);
        let coords = point
            .coords()
            .iter()
            .zip(cost)
            .map(|(&x, &c)| if c < 0.0 { 0 } else { x })
            .collect();
        IntegerPoint::new(coords)
    }
}

/// Oracle over the integer box `{0, ..., upper}^n`: sets every coordinate with
/// positive cost to its upper bound. Valid for any `P` contained in the box.
#[derive(Debug, Clone)]
pub struct BoxOracle {
    upper: Vec<u32>,
}

impl BoxOracle {
    pub fn new(upper: Vec<u32>) -> Self {
        BoxOracle { upper }
    }

    /// Smallest integer box containing `P`, or `None` if some coordinate is
    /// unbounded over `P`.
    pub fn enclosing(polytope: &Polytope) -> Option<Self> {
        let a = polytope.a();
        let upper = (0..polytope.n())
            .map(|j| {
                (0..polytope.m())
                    .filter(|&i| a[(i, j)] > 0.0 && a.row(i).iter().all(|&v| v >= 0.0))
                    .map(|i| polytope.b()[i] / a[(i, j)])
                    .fold(None, |acc: Option<f64>, v| {
                        Some(acc.map_or(v, |a| a.min(v)))
                    })
                    .map(|u| (u - 1e-9).ceil().max(0.0) as u32)
            })
            .collect::<Option<Vec<u32>>>()?;
        Some(BoxOracle { upper })
    }

    pub fn upper(&self) -> &[u32] {
        &self.upper
    }
}

impl Oracle for BoxOracle {
    fn dim(&self) -> usize {
        self.upper.len()
    }

    fn best_point(&self, cost: &[f64]) -> IntegerPoint {
        IntegerPoint::new(
            self.upper
                .iter()
                .zip(cost)
                .map(|(&u, &c)| if c > 0.0 { u } else { 0 })
                .collect(),
        )
    }
}

/// Returns `(A, b / beta)`: optimizing over the scaled polytope with a
/// `beta`-integrality-gap verifier as oracle satisfies the oracle contract.
pub fn scale_polytope(polytope: &Polytope, beta: f64) -> Result<Polytope> {
    if beta.is_nan() || beta < 1.0 || beta.is_infinite() {
        return Err(Error::InvalidBeta(beta));
    }
    let b = polytope.b().iter().map(|v| v / beta).collect();
    Polytope::new(polytope.a().clone(), b)
}

/// Decomposing a known fractional point `x*` of `Q`: optimize `x*.x` over the
/// box `{0 <= x <= x*}`. The unique optimum is `x*` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct PointDecompositionProblem {
    x_star: Vec<f64>,
    polytope: Polytope,
}

impl PointDecompositionProblem {
    pub fn new(x_star: Vec<f64>) -> Result<Self> {
        if x_star.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("target point"));
        }
        if let Some((index, &value)) = x_star.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativeInput { index, value });
        }
        let polytope = Polytope::new(DenseMatrix::identity(x_star.len()), x_star.clone())?;
        Ok(PointDecompositionProblem { x_star, polytope })
    }

    pub fn x_star(&self) -> &[f64] {
        &self.x_star
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn cost(&self) -> &[f64] {
        &self.x_star
    }

    /// Number of positive coordinates of `x*`.
    pub fn support(&self) -> usize {
        self.x_star.iter().filter(|&&v| v > 0.0).count()
    }

    /// `max_i |combined[i] - x*[i]|`.
    pub fn reconstruction_error(&self, combined: &[f64]) -> f64 {
        combined
            .iter()
            .zip(&self.x_star)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn setup_point_decomposition(x_star: Vec<f64>) -> Result<PointDecompositionProblem> {
    PointDecompositionProblem::new(x_star)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct AllOnes(usize);

    impl Oracle for AllOnes {
        fn dim(&self) -> usize {
            self.0
        }

        fn best_point(&self, _cost: &[f64]) -> IntegerPoint {
            IntegerPoint::new(vec![1; self.0])
        }
    }

    #[test]
    fn packing_wrap_zeroes_negative_cost_coordinates() {
        let o = PackingOracle::new(AllOnes(4));
        let p = o.best_point(&[1.0, -2.0, 0.0, -1e-12]);
        assert_eq!(p.coords(), &[1, 0, 1, 0]);
        assert!(o.best_point(&[-1.0; 4]).is_zero());
        assert_eq!(o.best_point(&[1.0; 4]).coords(), &[1; 4]);
    }

    #[test]
    fn box_oracle_takes_positive_costs() {
        let o = BoxOracle::new(vec![2, 3, 1]);
        assert_eq!(o.best_point(&[1.0, 0.0, -1.0]).coords(), &[2, 0, 0]);
    }

    #[test]
    fn enclosing_box() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 0.0]]).unwrap();
        let p = Polytope::new(a, vec![4.0, 4.5]).unwrap();
        assert_eq!(BoxOracle::enclosing(&p).unwrap().upper(), &[2, 2]);
        let a = DenseMatrix::from_rows(&[[1.0, -1.0]]).unwrap();
        let p = Polytope::new(a, vec![1.0]).unwrap();
        assert!(BoxOracle::enclosing(&p).is_none());
    }

    #[test]
    fn scaling() {
        let a = DenseMatrix::from_rows(&[[1.0], [1.0], [1.0], [1.0]]).unwrap();
        let p = Polytope::new(a, vec![1.0, 1.0, 1.0, 4.0]).unwrap();
        assert_eq!(scale_polytope(&p, 2.0).unwrap().b(), &[0.5, 0.5, 0.5, 2.0]);
        assert_eq!(scale_polytope(&p, 1.0).unwrap(), p);
        assert_eq!(scale_polytope(&p, 0.5), Err(Error::InvalidBeta(0.5)));
        let q = Polytope::new(DenseMatrix::identity(1), vec![3.0]).unwrap();
        assert_eq!(scale_polytope(&q, 3.0).unwrap().b(), &[1.0]);
    }

    #[test]
    fn point_problem_setup() {
        let pp = setup_point_decomposition(vec![0.5, 0.0, 0.25]).unwrap();
        assert_eq!(pp.polytope().a(), &DenseMatrix::identity(3));
        assert_eq!(pp.polytope().b(), &[0.5, 0.0, 0.25]);
        assert_eq!(pp.cost(), &[0.5, 0.0, 0.25]);
        assert_eq!(pp.support(), 2);
        assert!(matches!(
            setup_point_decomposition(vec![1.0, -0.1]),
            Err(Error::NegativeInput { index: 1, .. })
        ));
    }
}
