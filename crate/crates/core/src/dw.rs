//! Integer Dantzig-Wolfe column generation.
//!
//! The master is `max sum (c.X_j) lambda_j` subject to
//! `sum (A X_j) lambda_j + s = b`, `sum lambda_j = 1`, `lambda, s >= 0`, over
//! the integer points `X_j` the oracle has produced so far. It starts from
//! the zero point at weight one with every slack basic, and each iteration
//! asks the oracle for the best point under the pricing cost `c + wA`. The
//! loop stops as soon as the returned point has nonpositive reduced cost; by
//! the oracle contract the master objective then equals `max {cx : x in P}`.
//!
//! Only the basis is kept: a point whose weight leaves the basis is dropped.

use std::collections::BTreeMap;

use log::{debug, warn};

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::polytope::{ConvexCombination, IntegerPoint, Polytope};
use crate::simplex::{ratio_test, BasisLabel, MasterState, Tolerances};

#[derive(Debug, Clone, Copy)]
pub struct DwOptions {
    pub tol: Tolerances,
    pub max_iters: usize,
    /// Check `B^-1 B = I` every this many pivots and refactor on drift; 0 disables.
    pub refactor_every: usize,
}

impl Default for DwOptions {
    fn default() -> Self {
        DwOptions {
            tol: Tolerances::default(),
            max_iters: 10_000,
            refactor_every: 50,
        }
    }
}

/// One oracle call of the main loop.
#[derive(Debug, Clone)]
pub struct IterationEvent {
    /// 1-based oracle call count.
    pub iteration: usize,
    /// Row zero `(w, alpha)` the oracle was priced against.
    pub dual_row: Vec<f64>,
    /// Pricing cost `c + wA`.
    pub pricing_cost: Vec<f64>,
    pub point: IntegerPoint,
    pub reduced_cost: f64,
    /// `B^-1 [AX; 1]` when the point entered the basis.
    pub entering_column: Option<Vec<f64>>,
    pub entering_label: Option<BasisLabel>,
    /// Row index and previous occupant of the pivot row.
    pub leaving: Option<(usize, BasisLabel)>,
    /// Slacks pivoted back in before the oracle call, with the label each
    /// one replaced.
    pub slack_entries: Vec<(usize, BasisLabel)>,
    /// Master objective after this iteration.
    pub objective: f64,
}

impl IterationEvent {
    pub fn is_optimal(&self) -> bool {
        self.entering_label.is_none()
    }
}

/// Master tableau plus the points currently in the basis.
#[derive(Debug, Clone)]
pub struct DwMaster<'p> {
    polytope: &'p Polytope,
    cost: Vec<f64>,
    state: MasterState,
    points: BTreeMap<usize, IntegerPoint>,
    next_label: usize,
    iterations: usize,
    options: DwOptions,
    finished: bool,
}

impl<'p> DwMaster<'p> {
    pub fn new(polytope: &'p Polytope, cost: &[f64], options: DwOptions) -> Result<Self> {
        polytope.check_cost(cost)?;
        let state = init(polytope)?;
        let mut points = BTreeMap::new();
        points.insert(0, IntegerPoint::zero(polytope.n()));
        Ok(DwMaster {
            polytope,
            cost: cost.to_vec(),
            state,
            points,
            next_label: 1,
            iterations: 0,
            options,
            finished: false,
        })
    }

    pub fn state(&self) -> &MasterState {
        &self.state
    }

    pub fn polytope(&self) -> &Polytope {
        self.polytope
    }

    pub fn cost(&self) -> &[f64] {
        &self.cost
    }

    /// Oracle calls made so far.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Points currently in the basis, keyed by label index.
    pub fn basis_points(&self) -> &BTreeMap<usize, IntegerPoint> {
        &self.points
    }

    /// `c + wA` for the current duals.
    pub fn pricing_cost(&self) -> Vec<f64> {
        let wa = self.polytope.a().vec_mul(self.state.w());
        self.cost.iter().zip(wa).map(|(c, v)| c + v).collect()
    }

    pub fn price(&self, point: &IntegerPoint) -> f64 {
        price(&self.state, &self.cost, self.polytope, point)
    }

    /// One master/oracle round. After an optimal round further calls return
    /// the same optimality verdict without pivoting.
    pub fn iterate<O: Oracle + ?Sized>(&mut self, oracle: &O) -> Result<IterationEvent> {
        if self.iterations >= self.options.max_iters {
            return Err(Error::MaxIterationsExceeded {
                iterations: self.iterations,
                objective: self.state.objective(),
            });
        }
        if oracle.dim() != self.polytope.n() {
            return Err(Error::Dimension(format!(
                "oracle works in dimension {}, polytope has {} variables",
                oracle.dim(),
                self.polytope.n()
            )));
        }
        let slack_entries = self.restore_slacks()?;
        self.iterations += 1;
        let pricing_cost = self.pricing_cost();
        let point = oracle.best_point(&pricing_cost);
        if point.len() != self.polytope.n() {
            return Err(Error::Dimension(format!(
                "oracle returned a point of length {}",
                point.len()
            )));
        }
        let ax = self.polytope.a().mul_vec(&point.to_f64());
        let reduced_cost = self.state.reduced_cost(point.dot(&self.cost), &ax);
        let mut event = IterationEvent {
            iteration: self.iterations,
            dual_row: self.state.dual_row().to_vec(),
            pricing_cost,
            point,
            reduced_cost,
            entering_column: None,
            entering_label: None,
            leaving: None,
            slack_entries,
            objective: self.state.objective(),
        };
        if reduced_cost <= self.options.tol.optimality {
            self.finished = true;
            return Ok(event);
        }

        let y = self.state.entering_column(&ax);
        let r = ratio_test(self.state.rhs(), &y, self.options.tol.pivot).map_err(|_| {
            Error::Internal("master became unbounded despite the convexity row".into())
        })?;
        if self.points.values().any(|p| *p == event.point) {
            warn!(
                "iteration {}: oracle returned a point already in the basis (reduced cost {})",
                self.iterations, reduced_cost
            );
        }
        let label = BasisLabel::Point(self.next_label);
        self.next_label += 1;
        let leaving = self.state.basis_labels()[r];
        self.state.pivot(&y, reduced_cost, r, label)?;
        if let BasisLabel::Point(k) = leaving {
            self.points.remove(&k);
        }
        if let BasisLabel::Point(k) = label {
            self.points.insert(k, event.point.clone());
        }
        debug!(
            "iteration {}: reduced cost {}, {} leaves, objective {}",
            self.iterations,
            reduced_cost,
            leaving,
            self.state.objective()
        );
        self.maybe_refactor()?;

        event.entering_column = Some(y);
        event.entering_label = Some(label);
        event.leaving = Some((r, leaving));
        event.objective = self.state.objective();
        Ok(event)
    }

    /// Pivots slacks with positive reduced cost `w_i` back into the basis,
    /// largest first. The oracle only prices point columns, so a slack that
    /// left earlier is otherwise never reconsidered.
    fn restore_slacks(&mut self) -> Result<Vec<(usize, BasisLabel)>> {
        let m = self.polytope.m();
        let mut entries = Vec::new();
        // each pivot strictly improves unless degenerate; cap the degenerate run
        for _ in 0..4 * (m + 1) {
            let best = self
                .state
                .w()
                .iter()
                .copied()
                .enumerate()
                .filter(|(_, w)| *w > self.options.tol.optimality)
                .max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((i, rc)) = best else { break };
            let y = self.state.basis_inverse().column(i);
            let r = ratio_test(self.state.rhs(), &y, self.options.tol.pivot)?;
            let leaving = self.state.basis_labels()[r];
            self.state.pivot(&y, rc, r, BasisLabel::Slack(i))?;
            if let BasisLabel::Point(k) = leaving {
                self.points.remove(&k);
            }
            debug!("slack s{} re-enters, {} leaves", i + 1, leaving);
            entries.push((i, leaving));
        }
        Ok(entries)
    }

    /// Pivots a real-valued column `(Ax; 1)` with objective coefficient `c.x`
    /// into the basis under the [`BasisLabel::Artificial`] label. Returns the
    /// reduced cost, or `None` when it was not positive and nothing changed.
    pub fn enter_column(&mut self, cx: f64, ax: &[f64]) -> Result<Option<f64>> {
        let reduced_cost = self.state.reduced_cost(cx, ax);
        if reduced_cost <= self.options.tol.optimality {
            return Ok(None);
        }
        let y = self.state.entering_column(ax);
        let r = ratio_test(self.state.rhs(), &y, self.options.tol.pivot)?;
        let leaving = self.state.basis_labels()[r];
        self.state
            .pivot(&y, reduced_cost, r, BasisLabel::Artificial)?;
        if let BasisLabel::Point(k) = leaving {
            self.points.remove(&k);
        }
        Ok(Some(reduced_cost))
    }

    fn maybe_refactor(&mut self) -> Result<()> {
        let every = self.options.refactor_every;
        if every == 0 || !self.state.pivots().is_multiple_of(every) {
            return Ok(());
        }
        if self.state.basis_labels().contains(&BasisLabel::Artificial) {
            return Ok(());
        }
        let m = self.polytope.m();
        let a = self.polytope.a();
        let points = &self.points;
        let cost = &self.cost;
        let column_of = |label: BasisLabel| -> Vec<f64> {
            let mut col = vec![0.0; m + 1];
            match label {
                BasisLabel::Slack(i) => col[i] = 1.0,
                BasisLabel::Point(k) => {
                    let ax = a.mul_vec(&points[&k].to_f64());
                    col[..m].copy_from_slice(&ax);
                    col[m] = 1.0;
                }
                BasisLabel::Artificial => unreachable!("checked above"),
            }
            col
        };
        let err = self.state.reconstruction_error(column_of);
        if err > 1e-9 {
            debug!("refactoring master basis, reconstruction error {:e}", err);
            let cost_of = |label: BasisLabel| match label {
                BasisLabel::Point(k) => -points[&k].dot(cost),
                _ => 0.0,
            };
            self.state
                .refactor(self.polytope.b(), column_of, cost_of, 1e-12)?;
        }
        Ok(())
    }

    pub fn extract_decomposition(&self) -> ConvexCombination {
        extract_decomposition(&self.state, &self.points, &self.cost)
    }
}

/// Starting tableau for `P`: slacks at `b` and the zero point at weight one.
pub fn init(polytope: &Polytope) -> Result<MasterState> {
    MasterState::initial(polytope.b())
}

/// Reduced cost `(c + wA)X + alpha` of an integer point.
pub fn price(state: &MasterState, cost: &[f64], polytope: &Polytope, point: &IntegerPoint) -> f64 {
    let ax = polytope.a().mul_vec(&point.to_f64());
    state.reduced_cost(point.dot(cost), &ax)
}

/// Reads the weights of point labels off the right-hand side.
pub fn extract_decomposition(
    state: &MasterState,
    points: &BTreeMap<usize, IntegerPoint>,
    cost: &[f64],
) -> ConvexCombination {
    let n = cost.len();
    let terms = state
        .basis_labels()
        .iter()
        .zip(state.rhs())
        .filter_map(|(label, &w)| match label {
            BasisLabel::Point(k) => Some((points[k].clone(), w)),
            _ => None,
        })
        .collect();
    ConvexCombination::from_terms(terms, n, cost)
}

#[derive(Debug, Clone)]
pub struct DwSolution {
    pub combination: ConvexCombination,
    /// Oracle calls, including the final one that certified optimality.
    pub iterations: usize,
    pub final_state: MasterState,
}

impl DwSolution {
    pub fn objective(&self) -> f64 {
        self.combination.objective
    }
}

pub fn solve<O: Oracle + ?Sized>(
    polytope: &Polytope,
    oracle: &O,
    cost: &[f64],
    options: &DwOptions,
) -> Result<DwSolution> {
    solve_with_observer(polytope, oracle, cost, options, |_, _| {})
}

/// Like [`solve`], calling `observer` after every oracle call with the event
/// and the master state it produced.
pub fn solve_with_observer<O, F>(
    polytope: &Polytope,
    oracle: &O,
    cost: &[f64],
    options: &DwOptions,
    mut observer: F,
) -> Result<DwSolution>
where
    O: Oracle + ?Sized,
    F: FnMut(&IterationEvent, &MasterState),
{
    let mut master = DwMaster::new(polytope, cost, *options)?;
    loop {
        let event = master.iterate(oracle)?;
        observer(&event, master.state());
        if event.is_optimal() {
            break;
        }
    }
    let combination = master.extract_decomposition();
    debug_assert!((combination.objective - master.state().objective()).abs() < 1e-6);
    Ok(DwSolution {
        combination,
        iterations: master.iterations(),
        final_state: master.state().clone(),
    })
}
