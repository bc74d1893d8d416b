//! The greedy oracle only promises half of the LP value, which is exactly
//! what the solver needs when supply is halved. Compare it with the exact
//! oracle on a few instances.
//!
//!     cargo run --example greedy_oracle

use intdw::auctions::generate_instance;
use intdw::dw::{self, DwOptions};
use intdw::reference::solve_lp_reference;
use intdw::Oracle;

fn main() -> intdw::Result<()> {
    println!("seed   LP      greedy  exact   DW(greedy) DW(exact)");
    for seed in 0..8 {
        let auction = generate_instance(4, 7, seed)?;
        let (a, b, c) = auction.build_lp();
        let lp = solve_lp_reference(&a, &b, &c)?.value;
        let greedy = auction.greedy_oracle();
        let exact = auction.exact_oracle();

        let half = auction.scaled_polytope(2.0)?;
        let opts = DwOptions::default();
        let with_greedy = dw::solve(&half, &greedy, &c, &opts)?;
        let with_exact = dw::solve(&half, &exact, &c, &opts)?;
        println!(
            "{:>4} {:>7.2} {:>7.2} {:>7.2} {:>10.3} {:>9.3}",
            seed,
            lp,
            greedy.best_point(&c).dot(&c),
            exact.best_point(&c).dot(&c),
            with_greedy.objective(),
            with_exact.objective()
        );
    }
    Ok(())
}
