//! JSON instance and result files.
//!
//! Instance files carry a `kind` tag:
//!
//! * `auction`: `players`, `units`, `valuations` (one row per player).
//! * `polytope`: `A`, `b`, `c` and an `oracle`. `exact-dp` and `greedy` treat
//!   the variables as auction variables and need `players` and `units`;
//!   `box` uses the integer box `{0..upper}` (computed from `A`, `b` when
//!   `upper` is omitted).
//! * `point`: `x_star` and an `instance` (inline object or a path relative
//!   to the point file) that supplies the coordinates and the oracle.
//!
//! Sparse vectors are JSON objects keyed `"i,j"` (1-based player and
//! quantity) for auction variables and by 1-based coordinate index otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::auctions::AuctionInstance;
use crate::error::{Error, Result};
use crate::matrix::{dot, DenseMatrix};
use crate::oracle::{BoxOracle, Oracle, PackingOracle};
use crate::polytope::{ConvexCombination, IntegerPoint, Polytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    ExactDp,
    Greedy,
    Box,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Auction(AuctionInstance),
    Polytope(PolytopeInstance),
    Point(PointInstance),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeInstance {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub oracle: OracleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointInstance {
    pub x_star: PointSpec,
    pub instance: InstanceRef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Dense(Vec<f64>),
    Sparse(BTreeMap<String, f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceRef {
    Path(PathBuf),
    Inline(Box<InstanceFile>),
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Dimension(format!("invalid instance file: {}", e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}

/// How coordinates are named in files and traces.
#[derive(Debug, Clone, PartialEq)]
pub enum Coordinates {
    Auction(AuctionInstance),
    Plain(usize),
}

impl Coordinates {
    pub fn dim(&self) -> usize {
        match self {
            Coordinates::Auction(a) => a.num_vars(),
            Coordinates::Plain(n) => *n,
        }
    }

    pub fn key(&self, index: usize) -> String {
        match self {
            Coordinates::Auction(a) => a.var_key(index),
            Coordinates::Plain(_) => (index + 1).to_string(),
        }
    }

    pub fn parse_key(&self, key: &str) -> Option<usize> {
        match self {
            Coordinates::Auction(a) => a.parse_var_key(key),
            Coordinates::Plain(n) => key
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&k| k >= 1 && k <= *n)
                .map(|k| k - 1),
        }
    }

    pub fn sparse(&self, values: &[f64]) -> SparseVector {
        SparseVector(
            values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, &v)| (self.key(i), v))
                .collect(),
        )
    }

    pub fn sparse_point(&self, point: &IntegerPoint) -> SparseVector {
        SparseVector(
            point
                .support()
                .map(|(i, v)| (self.key(i), f64::from(v)))
                .collect(),
        )
    }

    pub fn dense(&self, sparse: &SparseVector) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        for (key, v) in &sparse.0 {
            let i = self
                .parse_key(key)
                .ok_or_else(|| Error::Dimension(format!("unknown coordinate key {:?}", key)))?;
            out[i] = *v;
        }
        Ok(out)
    }
}

/// A fully resolved problem: polytope (unscaled), objective, oracle and
/// coordinate naming.
pub struct Problem {
    pub polytope: Polytope,
    pub cost: Vec<f64>,
    pub oracle: Box<dyn Oracle + Send + Sync>,
    pub coordinates: Coordinates,
    /// Scaling applied by default: 2 for auctions, 1 otherwise.
    pub default_beta: f64,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("polytope", &self.polytope)
            .field("cost", &self.cost)
            .field("coordinates", &self.coordinates)
            .field("default_beta", &self.default_beta)
            .finish_non_exhaustive()
    }
}

fn auction_oracle(inst: &AuctionInstance, kind: OracleKind) -> Box<dyn Oracle + Send + Sync> {
    match kind {
        OracleKind::ExactDp => Box::new(inst.exact_oracle()),
        OracleKind::Greedy => Box::new(inst.greedy_oracle()),
        OracleKind::Box => Box::new(PackingOracle::new(BoxOracle::new(vec![1; inst.num_vars()]))),
    }
}

impl Problem {
    /// Resolves an auction or polytope instance. `oracle` overrides the
    /// file's choice.
    pub fn from_instance(file: &InstanceFile, oracle: Option<OracleKind>) -> Result<Self> {
        match file {
            InstanceFile::Auction(inst) => {
                inst.validate()?;
                let (a, b, c) = inst.build_lp();
                Ok(Problem {
                    polytope: Polytope::new(a, b)?,
                    cost: c,
                    oracle: auction_oracle(inst, oracle.unwrap_or(OracleKind::ExactDp)),
                    coordinates: Coordinates::Auction(inst.clone()),
                    default_beta: 2.0,
                })
            }
            InstanceFile::Polytope(spec) => {
                let a = DenseMatrix::from_rows(&spec.a)?;
                let polytope = Polytope::new(a, spec.b.clone())?;
                polytope.check_cost(&spec.c)?;
                let kind = oracle.unwrap_or(spec.oracle);
                let n = polytope.n();
                let (oracle, coordinates): (Box<dyn Oracle + Send + Sync>, _) = match kind {
                    OracleKind::ExactDp | OracleKind::Greedy => {
                        let (players, units) = match (spec.players, spec.units) {
                            (Some(p), Some(u)) if p * u == n => (p, u),
                            _ => {
                                return Err(Error::Dimension(format!(
                                    "oracle {:?} needs players * units = {} variables",
                                    kind, n
                                )))
                            }
                        };
                        let inst = AuctionInstance::new(vec![vec![0.0; units]; players])?;
                        (auction_oracle(&inst, kind), Coordinates::Auction(inst))
                    }
                    OracleKind::Box => {
                        let inner = match &spec.upper {
                            Some(u) if u.len() == n => BoxOracle::new(u.clone()),
                            Some(u) => {
                                return Err(Error::Dimension(format!(
                                    "upper has {} entries for {} variables",
                                    u.len(),
                                    n
                                )))
                            }
                            None => BoxOracle::enclosing(&polytope).ok_or_else(|| {
                                Error::Dimension(
                                    "polytope is not bounded by a box; give upper".into(),
                                )
                            })?,
                        };
                        (
                            Box::new(PackingOracle::new(inner)) as Box<dyn Oracle + Send + Sync>,
                            Coordinates::Plain(n),
                        )
                    }
                };
                Ok(Problem {
                    polytope,
                    cost: spec.c.clone(),
                    oracle,
                    coordinates,
                    default_beta: 1.0,
                })
            }
            InstanceFile::Point(_) => Err(Error::Dimension(
                "a point file does not define an optimization instance".into(),
            )),
        }
    }
}

/// Loads an instance file from disk.
pub fn load_instance(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Dimension(format!("cannot read {}: {}", path.display(), e)))?;
    InstanceFile::from_json(&text)
}

/// Resolves a point file into the target point and the instance providing
/// its oracle. Relative paths are taken from `base_dir`.
pub fn resolve_point(
    point: &PointInstance,
    base_dir: &Path,
    oracle: Option<OracleKind>,
) -> Result<(Vec<f64>, Problem)> {
    let inner = match &point.instance {
        InstanceRef::Path(p) => {
            let full = if p.is_absolute() {
                p.clone()
            } else {
                base_dir.join(p)
            };
            load_instance(&full)?
        }
        InstanceRef::Inline(file) => (**file).clone(),
    };
    let problem = Problem::from_instance(&inner, oracle)?;
    let x_star = match &point.x_star {
        PointSpec::Dense(v) => {
            if v.len() != problem.coordinates.dim() {
                return Err(Error::Dimension(format!(
                    "x_star has {} entries, instance has {} variables",
                    v.len(),
                    problem.coordinates.dim()
                )));
            }
            v.clone()
        }
        PointSpec::Sparse(map) => problem.coordinates.dense(&SparseVector(
            map.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        ))?,
    };
    Ok((x_star, problem))
}

/// Ordered `key -> value` map, serialized as a JSON object.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector(pub Vec<(String, f64)>);

impl Serialize for SparseVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SparseVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SparseVisitor;

        impl<'de> Visitor<'de> for SparseVisitor {
            type Value = SparseVector;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from coordinate keys to numbers")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<SparseVector, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, f64>()? {
                    out.push((k, v));
                }
                Ok(SparseVector(out))
            }
        }

        deserializer.deserialize_map(SparseVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dw,
    Benders,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub point: SparseVector,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub method: Method,
    pub objective: f64,
    pub beta: f64,
    pub iterations: usize,
    pub combined_point: SparseVector,
    pub decomposition: Vec<DecompositionTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruction_error: Option<f64>,
}

impl ResultFile {
    pub fn new(
        method: Method,
        beta: f64,
        iterations: usize,
        combination: &ConvexCombination,
        coordinates: &Coordinates,
    ) -> Self {
        ResultFile {
            method,
            objective: combination.objective,
            beta,
            iterations,
            combined_point: coordinates.sparse(&combination.combined_point),
            decomposition: combination
                .points
                .iter()
                .zip(&combination.weights)
                .map(|(p, &w)| DecompositionTerm {
                    point: coordinates.sparse_point(p),
                    weight: w,
                })
                .collect(),
            reconstruction_error: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Dimension(format!("invalid result file: {}", e)))
    }
}

/// Independent re-validation of a result against its instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub weight_sum: f64,
    pub min_weight: f64,
    /// `max_i |sum_j w_j X_j[i] - combined_point[i]|`.
    pub combination_error: f64,
    /// `max_i (A x - b / beta)_i`, clipped at zero.
    pub violation: f64,
    /// `|c . x - objective|`.
    pub objective_error: f64,
    /// Points that are not integral and nonnegative.
    pub bad_points: usize,
}

impl CheckReport {
    pub fn passes(&self, tol: f64) -> bool {
        (self.weight_sum - 1.0).abs() <= tol
            && self.min_weight >= -tol
            && self.combination_error <= tol
            && self.violation <= tol
            && self.objective_error <= tol
            && self.bad_points == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sum of weights {:.12}, min weight {:e}, combination error {:e}, violation {:e}, objective error {:e}, bad points {}",
            self.weight_sum,
            self.min_weight,
            self.combination_error,
            self.violation,
            self.objective_error,
            self.bad_points
        )
    }
}

/// Recomputes the weight sum, the combined point, feasibility against
/// `A x <= b / beta` and the objective from the raw result entries.
pub fn check_result(problem: &Problem, result: &ResultFile, beta: f64) -> Result<CheckReport> {
    let coords = &problem.coordinates;
    let n = coords.dim();
    let mut acc = vec![0.0; n];
    let mut weight_sum = 0.0;
    let mut min_weight = f64::INFINITY;
    let mut bad_points = 0;
    for term in &result.decomposition {
        let p = coords.dense(&term.point)?;
        if p.iter().any(|&v| v < 0.0 || v.fract() != 0.0) {
            bad_points += 1;
        }
        weight_sum += term.weight;
        min_weight = min_weight.min(term.weight);
        for (a, v) in acc.iter_mut().zip(&p) {
            *a += term.weight * v;
        }
    }
    let combined = coords.dense(&result.combined_point)?;
    let combination_error = acc
        .iter()
        .zip(&combined)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let b = problem.polytope.b();
    let violation = problem
        .polytope
        .a()
        .mul_vec(&acc)
        .iter()
        .zip(b)
        .map(|(ax, b)| ax - b / beta)
        .fold(0.0, f64::max);
    let objective_error = (dot(&problem.cost, &acc) - result.objective).abs();
    Ok(CheckReport {
        weight_sum,
        min_weight: if min_weight.is_finite() {
            min_weight
        } else {
            0.0
        },
        combination_error,
        violation,
        objective_error,
        bad_points,
    })
}
