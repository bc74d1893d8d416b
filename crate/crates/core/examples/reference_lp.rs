//! The dense reference simplex on its own, used for cross-checking.
//!
//!     cargo run --example reference_lp

use intdw::reference::solve_lp_reference;
use intdw::DenseMatrix;

fn main() -> intdw::Result<()> {
    // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
    let a = DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 2.0], [3.0, 2.0]])?;
    let sol = solve_lp_reference(&a, &[4.0, 12.0, 18.0], &[3.0, 5.0])?;
    println!("x = {:?}, value = {}", sol.x, sol.value);
    Ok(())
}
