//! Plugging in your own oracle. Any type that, for every cost vector,
//! returns an integer point at least as good as every point of the polytope
//! works. Here: a two-constraint packing polytope and an oracle that scans
//! a small integer grid.
//!
//!     cargo run --example custom_oracle

use intdw::dw::{self, DwOptions};
use intdw::oracle::BoxOracle;
use intdw::reference::solve_lp_reference;
use intdw::{DenseMatrix, IntegerPoint, Oracle, Polytope};

/// Best point of `{0..=2}^3` by enumeration.
struct Grid;

impl Oracle for Grid {
    fn dim(&self) -> usize {
        3
    }

    fn best_point(&self, cost: &[f64]) -> IntegerPoint {
        let mut best = (f64::NEG_INFINITY, IntegerPoint::zero(3));
        for x in 0..=2u32 {
            for y in 0..=2u32 {
                for z in 0..=2u32 {
                    let p = IntegerPoint::new(vec![x, y, z]);
                    let v = p.dot(cost);
                    if v > best.0 {
                        best = (v, p);
                    }
                }
            }
        }
        best.1
    }
}

fn main() -> intdw::Result<()> {
    let a = DenseMatrix::from_rows(&[[2.0, 1.0, 1.0], [1.0, 3.0, 2.0]])?;
    let polytope = Polytope::new(a.clone(), vec![4.0, 5.0])?;
    let cost = [3.0, 2.0, 2.5];

    let lp = solve_lp_reference(&a, polytope.b(), &cost)?;
    let opts = DwOptions::default();
    let grid = dw::solve(&polytope, &Grid, &cost, &opts)?;
    let boxed = dw::solve(
        &polytope,
        &BoxOracle::enclosing(&polytope).expect("bounded"),
        &cost,
        &opts,
    )?;

    println!("LP value            {:.4}", lp.value);
    println!(
        "DW with grid oracle {:.4} ({} oracle calls)",
        grid.objective(),
        grid.iterations
    );
    println!(
        "DW with box oracle  {:.4} ({} oracle calls)",
        boxed.objective(),
        boxed.iterations
    );
    for (p, w) in grid
        .combination
        .points
        .iter()
        .zip(&grid.combination.weights)
    {
        println!("  {:.4}  {:?}", w, p.coords());
    }
    Ok(())
}
