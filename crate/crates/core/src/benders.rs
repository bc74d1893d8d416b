//! Benders row generation, the dual view of the Dantzig-Wolfe master.
//!
//! The master problem over `(z, w)` is
//!
//! ```text
//! max z   s.t.  z <= w.b - (c + wA).X_j   for every generated point X_j
//!               w <= 0,  z free
//! ```
//!
//! `z` lives in minimization form: at the optimum `z = -max {cx : x in P}`.
//! Each round re-solves the master from scratch, then asks the oracle for the
//! point maximizing `(c + wA).X`; if that point's cut is violated it is added.
//! Once no cut is violated, the restricted primal over the collected points
//! yields the convex decomposition.
//!
//! The master is handed to [`solve_lp_reference`] after the substitution
//! `u = -w >= 0`, `z = t - M` with `t >= 0` and `M = max_j c.X_j`. The shift is
//! harmless: `w = 0, z = -M` satisfies every cut, so the optimum has `z >= -M`.
//! Every cut then reads `t + u.(b - A X_j) <= M - c.X_j` with a nonnegative
//! right-hand side, so the slack basis is feasible.

use log::debug;

use crate::dw::DwOptions;
use crate::error::{Error, Result};
use crate::matrix::{dot, DenseMatrix};
use crate::oracle::Oracle;
use crate::polytope::{ConvexCombination, IntegerPoint, Polytope};
use crate::reference::solve_lp_reference;

/// Points whose cuts are in the master; no duplicates.
#[derive(Debug, Clone, PartialEq)]
pub struct CutSet {
    points: Vec<IntegerPoint>,
}

impl CutSet {
    /// The single cut `z <= w.b` of the zero point.
    pub fn new(n: usize) -> Self {
        CutSet {
            points: vec![IntegerPoint::zero(n)],
        }
    }

    /// Adds a cut; returns `false` if the point is already present.
    pub fn insert(&mut self, point: IntegerPoint) -> bool {
        if self.points.contains(&point) {
            return false;
        }
        self.points.push(point);
        true
    }

    pub fn points(&self) -> &[IntegerPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl FromIterator<IntegerPoint> for CutSet {
    fn from_iter<I: IntoIterator<Item = IntegerPoint>>(iter: I) -> Self {
        let mut set = CutSet { points: Vec::new() };
        for p in iter {
            set.insert(p);
        }
        set
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BendersSolution {
    /// Master objective, minimization form.
    pub z: f64,
    /// Duals of `Ax <= b`, all nonpositive.
    pub w: Vec<f64>,
}

impl BendersSolution {
    /// Maximization-form value `-z`.
    pub fn value(&self) -> f64 {
        -self.z
    }

    /// `w.b - (c + wA).X - z`; negative means the cut of `X` is violated.
    pub fn cut_slack(&self, polytope: &Polytope, cost: &[f64], point: &IntegerPoint) -> f64 {
        let ax = polytope.a().mul_vec(&point.to_f64());
        dot(&self.w, polytope.b()) - point.dot(cost) - dot(&self.w, &ax) - self.z
    }
}

pub fn solve_master(cuts: &CutSet, polytope: &Polytope, cost: &[f64]) -> Result<BendersSolution> {
    if cuts.is_empty() {
        return Err(Error::Unbounded);
    }
    polytope.check_cost(cost)?;
    let m = polytope.m();
    let values: Vec<f64> = cuts.points().iter().map(|p| p.dot(cost)).collect();
    let shift = values.iter().copied().fold(0.0, f64::max);

    // columns: t, u_1..u_m
    let mut a = DenseMatrix::zeros(cuts.len(), m + 1);
    let mut rhs = Vec::with_capacity(cuts.len());
    for (j, (point, cx)) in cuts.points().iter().zip(&values).enumerate() {
        let ax = polytope.a().mul_vec(&point.to_f64());
        let row = a.row_mut(j);
        row[0] = 1.0;
        for i in 0..m {
            row[i + 1] = polytope.b()[i] - ax[i];
        }
        rhs.push((shift - cx).max(0.0));
    }
    let mut objective = vec![0.0; m + 1];
    objective[0] = 1.0;
    let lp = solve_lp_reference(&a, &rhs, &objective)?;
    Ok(BendersSolution {
        z: lp.x[0] - shift,
        w: lp.x[1..].iter().map(|u| -u).collect(),
    })
}

/// Queries the oracle at `c + wA`; returns the point if its cut is violated
/// by more than `tol`.
pub fn find_violated_cut<O: Oracle + ?Sized>(
    solution: &BendersSolution,
    oracle: &O,
    polytope: &Polytope,
    cost: &[f64],
    tol: f64,
) -> Option<IntegerPoint> {
    let (point, slack) = query_oracle(solution, oracle, polytope, cost);
    (slack < -tol).then_some(point)
}

fn query_oracle<O: Oracle + ?Sized>(
    solution: &BendersSolution,
    oracle: &O,
    polytope: &Polytope,
    cost: &[f64],
) -> (IntegerPoint, f64) {
    let wa = polytope.a().vec_mul(&solution.w);
    let pricing: Vec<f64> = cost.iter().zip(wa).map(|(c, v)| c + v).collect();
    let point = oracle.best_point(&pricing);
    let slack = dot(&solution.w, polytope.b()) - point.dot(&pricing) - solution.z;
    (point, slack)
}

/// The Dantzig-Wolfe master restricted to `points` (the zero point is always
/// available), solved directly.
pub fn restricted_primal(
    points: &[IntegerPoint],
    polytope: &Polytope,
    cost: &[f64],
) -> Result<ConvexCombination> {
    polytope.check_cost(cost)?;
    let (m, n) = (polytope.m(), polytope.n());
    let mut columns: Vec<&IntegerPoint> = Vec::new();
    for p in points {
        if p.len() != n {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                p.len(),
                n
            )));
        }
        if !p.is_zero() && !columns.contains(&p) {
            columns.push(p);
        }
    }
    let zero = IntegerPoint::zero(n);
    if columns.is_empty() {
        return Ok(ConvexCombination::from_terms(vec![(zero, 1.0)], n, cost));
    }

    // sum (A X_j) lambda_j <= b, sum lambda_j <= 1; the zero point takes the rest
    let mut a = DenseMatrix::zeros(m + 1, columns.len());
    let mut objective = Vec::with_capacity(columns.len());
    for (j, p) in columns.iter().enumerate() {
        let ax = polytope.a().mul_vec(&p.to_f64());
        for i in 0..m {
            a[(i, j)] = ax[i];
        }
        a[(m, j)] = 1.0;
        objective.push(p.dot(cost));
    }
    let mut rhs = polytope.b().to_vec();
    rhs.push(1.0);
    let lp = solve_lp_reference(&a, &rhs, &objective)?;
    let used: f64 = lp.x.iter().sum();
    let mut terms: Vec<(IntegerPoint, f64)> = columns
        .into_iter()
        .cloned()
        .zip(lp.x.iter().copied())
        .collect();
    terms.push((zero, 1.0 - used));
    Ok(ConvexCombination::from_terms(terms, n, cost))
}

/// One Benders round.
#[derive(Debug, Clone)]
pub struct RoundEvent {
    /// 1-based round number.
    pub round: usize,
    pub z: f64,
    pub w: Vec<f64>,
    pub point: IntegerPoint,
    /// `w.b - (c + wA).X - z` for the oracle's point.
    pub slack: f64,
    pub violated: bool,
}

#[derive(Debug, Clone)]
pub struct BendersOutcome {
    pub solution: BendersSolution,
    pub combination: ConvexCombination,
    pub rounds: usize,
    pub cuts: CutSet,
}

impl BendersOutcome {
    pub fn value(&self) -> f64 {
        self.solution.value()
    }
}

pub fn solve<O: Oracle + ?Sized>(
    polytope: &Polytope,
    oracle: &O,
    cost: &[f64],
    options: &DwOptions,
) -> Result<BendersOutcome> {
    solve_with_observer(polytope, oracle, cost, options, |_| {})
}

/// Runs rounds until the oracle's cut is satisfied. `options.max_iters` caps
/// the number of rounds and `options.tol.optimality` is the violation tolerance.
pub fn solve_with_observer<O, F>(
    polytope: &Polytope,
    oracle: &O,
    cost: &[f64],
    options: &DwOptions,
    mut observer: F,
) -> Result<BendersOutcome>
where
    O: Oracle + ?Sized,
    F: FnMut(&RoundEvent),
{
    polytope.check_cost(cost)?;
    if oracle.dim() != polytope.n() {
        return Err(Error::Dimension(format!(
            "oracle works in dimension {}, polytope has {} variables",
            oracle.dim(),
            polytope.n()
        )));
    }
    let mut cuts = CutSet::new(polytope.n());
    let mut round = 0;
    let solution = loop {
        if round >= options.max_iters {
            let value = solve_master(&cuts, polytope, cost)?.value();
            return Err(Error::MaxRoundsExceeded {
                rounds: round,
                value,
            });
        }
        round += 1;
        let solution = solve_master(&cuts, polytope, cost)?;
        let (point, slack) = query_oracle(&solution, oracle, polytope, cost);
        let violated = slack < -options.tol.optimality;
        observer(&RoundEvent {
            round,
            z: solution.z,
            w: solution.w.clone(),
            point: point.clone(),
            slack,
            violated,
        });
        debug!("round {}: z = {}, slack {}", round, solution.z, slack);
        if !violated {
            break solution;
        }
        if !cuts.insert(point) {
            debug!("round {}: violated cut already present, stopping", round);
            break solution;
        }
    };
    let combination = restricted_primal(cuts.points(), polytope, cost)?;
    Ok(BendersOutcome {
        solution,
        combination,
        rounds: round,
        cuts,
    })
}
