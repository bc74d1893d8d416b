//! Multi-unit auctions with identical units.
//!
//! Variable `x[i][j]` says player `i` receives exactly `j` units
//! (`1 <= j <= units`). Variables are flattened player-major, quantity-minor:
//! index `i * units + (j - 1)`. The LP relaxation is
//!
//! ```text
//! max  sum v[i][j] x[i][j]
//! s.t. sum_j x[i][j] <= 1            for each player i
//!      sum_{i,j} j x[i][j] <= units
//!      x >= 0
//! ```
//!
//! Its integrality gap is at most 2, so the exact and greedy winner
//! determination oracles below satisfy the oracle contract on the polytope
//! scaled by `beta = 2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::oracle::{scale_polytope, Oracle, PackingOracle};
use crate::polytope::{IntegerPoint, Polytope};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuctionInstance {
    pub players: usize,
    pub units: usize,
    /// `valuations[i][j - 1]` is player `i`'s value for `j` units.
    pub valuations: Vec<Vec<f64>>,
}

impl AuctionInstance {
    pub fn new(valuations: Vec<Vec<f64>>) -> Result<Self> {
        let players = valuations.len();
        let units = valuations.first().map_or(0, Vec::len);
        let inst = AuctionInstance {
            players,
            units,
            valuations,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// The 3-player, 4-unit example used throughout the docs and tests.
    pub fn worked_example() -> Self {
        AuctionInstance {
            players: 3,
            units: 4,
            valuations: vec![
                vec![6.0, 6.0, 6.0, 6.0],
                vec![1.0, 4.0, 4.0, 6.0],
                vec![0.0, 1.0, 1.0, 1.0],
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.players == 0 || self.units == 0 {
            return Err(Error::Dimension(format!(
                "auction needs at least one player and one unit, got {} and {}",
                self.players, self.units
            )));
        }
        if self.valuations.len() != self.players {
            return Err(Error::Dimension(format!(
                "{} valuation rows for {} players",
                self.valuations.len(),
                self.players
            )));
        }
        for (i, row) in self.valuations.iter().enumerate() {
            if row.len() != self.units {
                return Err(Error::Dimension(format!(
                    "player {} has {} valuations, expected {}",
                    i + 1,
                    row.len(),
                    self.units
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("valuations"));
            }
            if let Some((j, &value)) = row.iter().enumerate().find(|(_, v)| **v < 0.0) {
                return Err(Error::NegativeInput {
                    index: i * self.units + j,
                    value,
                });
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.players * self.units
    }

    /// Flat index of `x[player][quantity]`, both 0-based / 1-based respectively.
    pub fn var_index(&self, player: usize, quantity: usize) -> usize {
        debug_assert!(player < self.players && (1..=self.units).contains(&quantity));
        player * self.units + quantity - 1
    }

    /// Inverse of [`var_index`](Self::var_index): `(player, quantity)`.
    pub fn var_of(&self, index: usize) -> (usize, usize) {
        (index / self.units, index % self.units + 1)
    }

    /// Coordinate key `"i,j"` with 1-based player and quantity.
    pub fn var_key(&self, index: usize) -> String {
        let (p, q) = self.var_of(index);
        format!("{},{}", p + 1, q)
    }

    pub fn parse_var_key(&self, key: &str) -> Option<usize> {
        let (p, q) = key.split_once(',')?;
        let p: usize = p.trim().parse().ok()?;
        let q: usize = q.trim().parse().ok()?;
        if p == 0 || p > self.players || q == 0 || q > self.units {
            return None;
        }
        Some(self.var_index(p - 1, q))
    }

    /// Flattened valuations, i.e. the LP objective.
    pub fn cost_vector(&self) -> Vec<f64> {
        self.valuations.iter().flatten().copied().collect()
    }

    /// Constraint matrix with one row per player and the supply row last;
    /// `b = [1, ..., 1, units]`; `c` = flattened valuations.
    pub fn build_lp(&self) -> (DenseMatrix, Vec<f64>, Vec<f64>) {
        let (np, mu) = (self.players, self.units);
        let mut a = DenseMatrix::zeros(np + 1, np * mu);
        for i in 0..np {
            for j in 1..=mu {
                let k = self.var_index(i, j);
                a[(i, k)] = 1.0;
                a[(np, k)] = j as f64;
            }
        }
        let mut b = vec![1.0; np];
        b.push(mu as f64);
        (a, b, self.cost_vector())
    }

    pub fn polytope(&self) -> Polytope {
        let (a, b, _) = self.build_lp();
        Polytope::new(a, b).expect("auction LP has nonnegative right-hand side")
    }

    /// `P` with `b` divided by `beta`.
    pub fn scaled_polytope(&self, beta: f64) -> Result<Polytope> {
        scale_polytope(&self.polytope(), beta)
    }

    /// Quantity assigned to each player (0 = nothing), or `None` when the
    /// point is not a feasible assignment.
    pub fn assignment(&self, point: &IntegerPoint) -> Option<Vec<usize>> {
        if point.len() != self.num_vars() {
            return None;
        }
        let mut per_player = vec![0usize; self.players];
        let mut used = 0usize;
        for (k, v) in point.support() {
            if v != 1 {
                return None;
            }
            let (p, q) = self.var_of(k);
            if per_player[p] != 0 {
                return None;
            }
            per_player[p] = q;
            used += q;
        }
        (used <= self.units).then_some(per_player)
    }

    pub fn point_from_assignment(&self, quantities: &[usize]) -> IntegerPoint {
        let mut coords = vec![0u32; self.num_vars()];
        for (p, &q) in quantities.iter().enumerate() {
            if q > 0 {
                coords[self.var_index(p, q)] = 1;
            }
        }
        IntegerPoint::new(coords)
    }

    /// Exact oracle, wrapped so it accepts arbitrary-sign costs.
    pub fn exact_oracle(&self) -> PackingOracle<ExactDpOracle> {
        PackingOracle::new(ExactDpOracle::new(self.clone()))
    }

    /// Greedy half-approximation oracle, wrapped for arbitrary-sign costs.
    pub fn greedy_oracle(&self) -> PackingOracle<GreedyOracle> {
        PackingOracle::new(GreedyOracle::new(self.clone()))
    }
}

fn check_cost(instance: &AuctionInstance, cost: &[f64]) {
    assert_eq!(
        cost.len(),
        instance.num_vars(),
        "cost vector length does not match the auction"
    );
    debug_assert!(
        cost.iter().all(|&c| c >= 0.0),
        "winner determination expects nonnegative costs"
    );
}

fn better(value: f64, best: f64) -> bool {
    value > best + 1e-12 * best.abs().max(1.0)
}

fn tied(value: f64, best: f64) -> bool {
    !better(value, best) && !better(best, value)
}

/// Exact winner determination by dynamic programming over
/// `(player, units remaining)`.
///
/// Among optimal assignments the one using the fewest units is returned; on
/// remaining ties lower-indexed players receive more.
pub fn exact_winner_determination(instance: &AuctionInstance, cost: &[f64]) -> IntegerPoint {
    check_cost(instance, cost);
    let (np, mu) = (instance.players, instance.units);
    let cost_of = |i: usize, j: usize| {
        if j == 0 {
            0.0
        } else {
            cost[instance.var_index(i, j)]
        }
    };

    // best[i][u]: (value, units used, quantity for player i) over players i.., u units available
    let mut best = vec![vec![(0.0f64, 0usize, 0usize); mu + 1]; np + 1];
    for i in (0..np).rev() {
        for u in 0..=mu {
            let mut cur = (f64::NEG_INFINITY, usize::MAX, 0usize);
            for j in 0..=u {
                let (rest_value, rest_units, _) = best[i + 1][u - j];
                let value = cost_of(i, j) + rest_value;
                let units = j + rest_units;
                let take = better(value, cur.0)
                    || (tied(value, cur.0) && (units < cur.1 || (units == cur.1 && j > cur.2)));
                if take {
                    cur = (value, units, j);
                }
            }
            best[i][u] = cur;
        }
    }

    let mut quantities = vec![0usize; np];
    let mut remaining = mu;
    for (i, q) in quantities.iter_mut().enumerate() {
        *q = best[i][remaining].2;
        remaining -= *q;
    }
    instance.point_from_assignment(&quantities)
}

/// Greedy winner determination with value at least half the LP optimum.
///
/// Each player's options form an upper concave hull of `(j, cost[i][j])`
/// starting at `(0, 0)`. Hull increments from all players are taken in order
/// of decreasing value per unit while supply lasts; a player whose next
/// increment does not fit is frozen. The result is the better of that bundle
/// and the single most valuable `(i, j)` option.
pub fn greedy_winner_determination(instance: &AuctionInstance, cost: &[f64]) -> IntegerPoint {
    check_cost(instance, cost);
    let (np, mu) = (instance.players, instance.units);

    struct Step {
        player: usize,
        from: usize,
        to: usize,
        density: f64,
    }

    let mut steps = Vec::new();
    for i in 0..np {
        let mut hull: Vec<(usize, f64)> = vec![(0, 0.0)];
        for j in 1..=mu {
            let v = cost[instance.var_index(i, j)];
            if v <= hull.last().expect("hull starts nonempty").1 {
                continue;
            }
            while hull.len() >= 2 {
                let (j1, v1) = hull[hull.len() - 2];
                let (j2, v2) = hull[hull.len() - 1];
                // drop the middle point when it lies on or below the chord
                let cross = (v2 - v1) * (j - j1) as f64 - (v - v1) * (j2 - j1) as f64;
                if cross <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((j, v));
        }
        for w in hull.windows(2) {
            let ((ja, va), (jb, vb)) = (w[0], w[1]);
            steps.push(Step {
                player: i,
                from: ja,
                to: jb,
                density: (vb - va) / (jb - ja) as f64,
            });
        }
    }
    steps.sort_by(|a, b| {
        b.density
            .partial_cmp(&a.density)
            .expect("finite costs")
            .then(a.player.cmp(&b.player))
            .then(a.from.cmp(&b.from))
    });

    let mut quantities = vec![0usize; np];
    let mut frozen = vec![false; np];
    let mut remaining = mu;
    for s in &steps {
        if frozen[s.player] || quantities[s.player] != s.from {
            continue;
        }
        let extra = s.to - s.from;
        if extra <= remaining {
            quantities[s.player] = s.to;
            remaining -= extra;
        } else {
            frozen[s.player] = true;
        }
    }
    let bundle = instance.point_from_assignment(&quantities);

    let single = (0..instance.num_vars()).map(|k| (k, cost[k])).fold(
        None,
        |acc: Option<(usize, f64)>, (k, v)| match acc {
            Some((_, bv)) if !better(v, bv) => acc,
            _ => Some((k, v)),
        },
    );
    match single {
        Some((k, v)) if better(v, bundle.dot(cost)) => {
            let (p, q) = instance.var_of(k);
            let mut only = vec![0usize; np];
            only[p] = q;
            instance.point_from_assignment(&only)
        }
        _ => bundle,
    }
}

/// Exact DP oracle; expects nonnegative costs (wrap in [`PackingOracle`]).
#[derive(Debug, Clone)]
pub struct ExactDpOracle {
    instance: AuctionInstance,
}

impl ExactDpOracle {
    pub fn new(instance: AuctionInstance) -> Self {
        ExactDpOracle { instance }
    }
}

impl Oracle for ExactDpOracle {
    fn dim(&self) -> usize {
        self.instance.num_vars()
    }

    fn best_point(&self, cost: &[f64]) -> IntegerPoint {
        exact_winner_determination(&self.instance, cost)
    }
}

/// Greedy oracle; expects nonnegative costs (wrap in [`PackingOracle`]).
#[derive(Debug, Clone)]
pub struct GreedyOracle {
    instance: AuctionInstance,
}

impl GreedyOracle {
    pub fn new(instance: AuctionInstance) -> Self {
        GreedyOracle { instance }
    }
}

impl Oracle for GreedyOracle {
    fn dim(&self) -> usize {
        self.instance.num_vars()
    }

    fn best_point(&self, cost: &[f64]) -> IntegerPoint {
        greedy_winner_determination(&self.instance, cost)
    }
}

/// Deterministic instance with monotone valuations: each player's marginal
/// value for one more unit is uniform on the integers `0..=10`, and
/// `v[i][j]` is the running sum.
pub fn generate_instance(players: usize, units: usize, seed: u64) -> Result<AuctionInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let valuations = (0..players)
        .map(|_| {
            let mut total = 0.0;
            (0..units)
                .map(|_| {
                    total += f64::from(rng.gen_range(0u32..=10));
                    total
                })
                .collect()
        })
        .collect();
    AuctionInstance::new(valuations)
}

/// Deterministic instance with monotone integer valuations in
/// `0..=max_value`: `units` uniform draws per player, sorted ascending.
pub fn generate_bounded_instance(
    players: usize,
    units: usize,
    max_value: u32,
    seed: u64,
) -> Result<AuctionInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let valuations = (0..players)
        .map(|_| {
            let mut row: Vec<u32> = (0..units).map(|_| rng.gen_range(0..=max_value)).collect();
            row.sort_unstable();
            row.into_iter().map(f64::from).collect()
        })
        .collect();
    AuctionInstance::new(valuations)
}
