//! Writing a given fractional allocation as a lottery over integer ones.
//! The fractional point here is half of an LP vertex.
//!
//!     cargo run --example point_decomposition

use intdw::auctions::generate_instance;
use intdw::dw::{self, DwOptions};
use intdw::oracle::setup_point_decomposition;
use intdw::reference::solve_lp_reference;

fn main() -> intdw::Result<()> {
    let auction = generate_instance(3, 5, 4)?;
    let (a, b, c) = auction.build_lp();
    let vertex = solve_lp_reference(&a, &b, &c)?;
    let x_star: Vec<f64> = vertex.x.iter().map(|v| v / 2.0).collect();

    println!("target point:");
    for (k, v) in x_star.iter().enumerate().filter(|(_, v)| **v > 0.0) {
        println!("  x{} = {:.4}", auction.var_key(k), v);
    }

    let problem = setup_point_decomposition(x_star)?;
    let sol = dw::solve(
        problem.polytope(),
        &auction.exact_oracle(),
        problem.cost(),
        &DwOptions::default(),
    )?;

    println!("lottery:");
    for (point, weight) in sol.combination.points.iter().zip(&sol.combination.weights) {
        let q = auction
            .assignment(point)
            .expect("oracle returns assignments");
        println!("  {:.4}  {:?}", weight, q);
    }
    println!(
        "reconstruction error {:.1e}, {} points for {} nonzero coordinates",
        problem.reconstruction_error(&sol.combination.combined_point),
        sol.combination.points.len(),
        problem.support()
    );
    Ok(())
}
