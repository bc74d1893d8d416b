//! The same problem solved from the dual side: each round adds the cut for
//! the oracle's point until none is violated, then a restricted primal over
//! the cut points recovers the lottery.
//!
//!     cargo run --example benders_dual

use intdw::auctions::generate_instance;
use intdw::benders;
use intdw::dw::{self, DwOptions};

fn main() -> intdw::Result<()> {
    let auction = generate_instance(4, 6, 11)?;
    let polytope = auction.scaled_polytope(2.0)?;
    let oracle = auction.exact_oracle();
    let cost = auction.cost_vector();
    let opts = DwOptions::default();

    let out = benders::solve_with_observer(&polytope, &oracle, &cost, &opts, |round| {
        println!(
            "round {:>2}: bound {:>8.4}  cut slack {:>9.4}{}",
            round.round,
            0.0 - round.z,
            round.slack,
            if round.violated { "  (new cut)" } else { "" }
        );
    })?;
    let primal = dw::solve(&polytope, &oracle, &cost, &opts)?;

    println!("Benders value        {:.6}", out.value());
    println!("Dantzig-Wolfe value  {:.6}", primal.objective());
    println!("cuts generated       {}", out.cuts.len());
    println!("points in lottery    {}", out.combination.points.len());
    Ok(())
}
