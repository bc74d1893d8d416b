//! Three bidders, four units: Dantzig-Wolfe with the exact winner
//! determination oracle, printing every master tableau.
//!
//!     cargo run --example worked_example

use intdw::auctions::AuctionInstance;
use intdw::dw::{self, DwOptions};
use intdw::trace::TraceRenderer;

fn main() -> intdw::Result<()> {
    let auction = AuctionInstance::worked_example();
    let polytope = auction.scaled_polytope(2.0)?;
    let oracle = auction.exact_oracle();
    let cost = auction.cost_vector();

    let render = TraceRenderer::with_keys(|k| auction.var_key(k));
    print!("{}", render.initial(&dw::init(&polytope)?));
    let sol = dw::solve_with_observer(
        &polytope,
        &oracle,
        &cost,
        &DwOptions::default(),
        |event, state| print!("{}", render.iteration(event, state)),
    )?;

    println!(
        "\nLP optimum of the half-supply relaxation: {}",
        sol.objective()
    );
    println!("lottery over {} allocations:", sol.combination.points.len());
    for (point, weight) in sol.combination.points.iter().zip(&sol.combination.weights) {
        let quantities = auction
            .assignment(point)
            .expect("oracle returns assignments");
        println!("  {:.3}  units per bidder {:?}", weight, quantities);
    }
    Ok(())
}
