//! Driving the master by hand: one oracle call per step, inspecting duals
//! and the basis in between.
//!
//!     cargo run --example stepwise_master

use intdw::auctions::AuctionInstance;
use intdw::dw::{DwMaster, DwOptions};

fn main() -> intdw::Result<()> {
    let auction = AuctionInstance::worked_example();
    let polytope = auction.scaled_polytope(2.0)?;
    let oracle = auction.exact_oracle();
    let mut master = DwMaster::new(&polytope, &auction.cost_vector(), DwOptions::default())?;

    loop {
        let event = master.iterate(&oracle)?;
        let state = master.state();
        println!(
            "call {}: reduced cost {:>5.2}, objective {:.3}, w = {:?}, alpha = {}",
            event.iteration,
            event.reduced_cost,
            state.objective(),
            state.w(),
            state.alpha()
        );
        if event.is_optimal() {
            break;
        }
        let labels: Vec<String> = state.basis_labels().iter().map(|l| l.to_string()).collect();
        println!("    basis {}", labels.join(" "));
    }

    let lottery = master.extract_decomposition();
    println!("weights {:?}", lottery.weights);
    Ok(())
}
