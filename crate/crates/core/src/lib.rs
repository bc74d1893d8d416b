//! Integer Dantzig-Wolfe decomposition.
//!
//! Given a packing polytope `P = {x : Ax <= b, x >= 0}` and an oracle that, for
//! any cost vector, returns an integer point of a polytope `Q` dominating every
//! point of `P`, the solvers in this crate compute `max {cx : x in P}` and, in
//! the same pass, write the optimum as a convex combination of at most `m + 1`
//! integer points.
//!
//! Two equivalent drivers are provided:
//!
//! * [`dw`] runs column generation on a dense revised-simplex master.
//! * [`benders`] runs row generation on the dual master and recovers the
//!   decomposition with a restricted primal solve.
//!
//! The [`auctions`] module supplies a concrete setting (multi-unit auctions)
//! with exact and greedy winner-determination oracles.

pub mod auctions;
pub mod benders;
pub mod cli;
pub mod dw;
pub mod error;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod polytope;
pub mod reference;
pub mod simplex;
pub mod trace;

pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use oracle::{Oracle, PackingOracle};
pub use polytope::{ConvexCombination, IntegerPoint, Polytope};
pub use simplex::{BasisLabel, MasterState, Tolerances};
