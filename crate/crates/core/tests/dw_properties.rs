mod common;

use intdw::auctions::{generate_bounded_instance, AuctionInstance};
use intdw::dw::{self, DwMaster, DwOptions};
use intdw::oracle::BoxOracle;
use intdw::reference::solve_lp_reference;
use intdw::{BasisLabel, Oracle, Polytope};
use proptest::prelude::*;

fn auction(players: usize, units: usize, seed: u64) -> (AuctionInstance, Polytope, Vec<f64>) {
    let inst = generate_bounded_instance(players, units, 10, seed).unwrap();
    let polytope = inst.scaled_polytope(2.0).unwrap();
    let cost = inst.cost_vector();
    (inst, polytope, cost)
}

fn column(master: &DwMaster<'_>, label: BasisLabel) -> Vec<f64> {
    let p = master.polytope();
    let mut col = vec![0.0; p.m() + 1];
    match label {
        BasisLabel::Slack(i) => col[i] = 1.0,
        BasisLabel::Point(k) => {
            let ax = p.a().mul_vec(&master.basis_points()[&k].to_f64());
            col[..p.m()].copy_from_slice(&ax);
            col[p.m()] = 1.0;
        }
        BasisLabel::Artificial => panic!("no artificial columns here"),
    }
    col
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn master_invariants_hold_every_iteration(players in 1usize..=4, units in 1usize..=6, seed in any::<u64>()) {
        let (inst, polytope, cost) = auction(players, units, seed);
        let oracle = inst.exact_oracle();
        let opts = DwOptions { refactor_every: 0, ..DwOptions::default() };
        let mut master = DwMaster::new(&polytope, &cost, opts).unwrap();
        let mut last = master.state().objective();
        loop {
            let event = master.iterate(&oracle).unwrap();
            let state = master.state();
            prop_assert!(state.reconstruction_error(|l| column(&master, l)) <= 1e-7);
            prop_assert!(state.rhs().iter().all(|&v| v >= -1e-9), "rhs {:?}", state.rhs());
            prop_assert!(state.objective() >= last - 1e-12);
            last = state.objective();
            if event.is_optimal() {
                break;
            }
            // the column just pivoted in is now a unit column with zero reduced cost
            let (r, _) = event.leaving.unwrap();
            let ax = polytope.a().mul_vec(&event.point.to_f64());
            let y = state.entering_column(&ax);
            for (i, v) in y.iter().enumerate() {
                let unit = if i == r { 1.0 } else { 0.0 };
                prop_assert!((v - unit).abs() <= 1e-9, "column {:?} row {}", y, r);
            }
            prop_assert!(master.price(&event.point).abs() <= 1e-9);
        }
    }

    #[test]
    fn objective_equals_lp_and_combination_is_valid(players in 1usize..=5, units in 1usize..=8, seed in any::<u64>()) {
        let (inst, polytope, cost) = auction(players, units, seed);
        let sol = dw::solve(&polytope, &inst.exact_oracle(), &cost, &DwOptions::default()).unwrap();
        let lp = solve_lp_reference(polytope.a(), polytope.b(), &cost).unwrap();
        prop_assert!((sol.objective() - lp.value).abs() <= 1e-7);
        let c = &sol.combination;
        prop_assert!((c.weight_sum() - 1.0).abs() <= 1e-9);
        prop_assert!(c.weights.iter().all(|&w| w >= 0.0));
        prop_assert!(polytope.violation(&c.combined_point) <= 1e-8);
        prop_assert!(c.combined_point.iter().all(|&v| v >= -1e-12));
        prop_assert!(c.support_size(1e-9) <= polytope.m() + 1);
        prop_assert!(c.combination_error() <= 1e-12);
    }

    #[test]
    fn box_oracle_solves_generic_packing_polytopes(m in 1usize..=3, n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (polytope, cost) = common::random_packing(&mut rng, m, n);
        let oracle = BoxOracle::enclosing(&polytope).unwrap();
        let sol = dw::solve(&polytope, &oracle, &cost, &DwOptions::default()).unwrap();
        let brute = common::brute_force_lp(polytope.a(), polytope.b(), &cost);
        prop_assert!((sol.objective() - brute).abs() <= 1e-7, "DW {} vs {}", sol.objective(), brute);
        prop_assert!(polytope.violation(&sol.combination.combined_point) <= 1e-8);
    }

    #[test]
    fn injecting_the_lp_optimum_reaches_it_in_one_pivot(players in 1usize..=4, units in 1usize..=6, seed in any::<u64>()) {
        let (_, polytope, cost) = auction(players, units, seed);
        let lp = solve_lp_reference(polytope.a(), polytope.b(), &cost).unwrap();
        let mut master = DwMaster::new(&polytope, &cost, DwOptions::default()).unwrap();
        let ax = polytope.a().mul_vec(&lp.x);
        let cx: f64 = lp.x.iter().zip(&cost).map(|(x, c)| x * c).sum();
        master.enter_column(cx, &ax).unwrap();
        prop_assert!((master.state().objective() - lp.value).abs() <= 1e-9);
    }
}

#[test]
fn generated_points_may_violate_the_scaled_constraints() {
    let inst = AuctionInstance::worked_example();
    let polytope = inst.scaled_polytope(2.0).unwrap();
    let sol = dw::solve(
        &polytope,
        &inst.exact_oracle(),
        &inst.cost_vector(),
        &DwOptions::default(),
    )
    .unwrap();
    let first = inst.point_from_assignment(&[1, 2, 0]);
    assert!(sol.combination.points.contains(&first));
    assert_eq!(
        polytope.a().mul_vec(&first.to_f64()),
        vec![1.0, 1.0, 0.0, 3.0]
    );
    assert!(polytope.violation(&first.to_f64()) > 0.0);
    assert!(polytope.violation(&sol.combination.combined_point) <= 1e-12);
}

#[test]
fn zero_cost_stays_at_the_origin() {
    let inst = AuctionInstance::worked_example();
    let polytope = inst.scaled_polytope(2.0).unwrap();
    let sol = dw::solve(
        &polytope,
        &inst.exact_oracle(),
        &[0.0; 12],
        &DwOptions::default(),
    )
    .unwrap();
    assert_eq!(sol.iterations, 1);
    assert_eq!(sol.combination.points, vec![intdw::IntegerPoint::zero(12)]);
    assert_eq!(sol.combination.weights, vec![1.0]);
}

#[test]
fn slack_with_positive_dual_reenters() {
    // three oracle calls leave w_2 > 0; without pricing the slack the loop
    // stops at 4.5 instead of 4.75
    let inst =
        AuctionInstance::new(vec![vec![3.0, 3.0, 8.0, 8.0], vec![1.0, 2.0, 4.0, 6.0]]).unwrap();
    let polytope = inst.scaled_polytope(2.0).unwrap();
    let mut reentered = false;
    let sol = dw::solve_with_observer(
        &polytope,
        &inst.exact_oracle(),
        &inst.cost_vector(),
        &DwOptions::default(),
        |e, _| {
            reentered |= !e.slack_entries.is_empty();
        },
    )
    .unwrap();
    assert!(reentered);
    assert!((sol.objective() - 4.75).abs() <= 1e-12);
}

#[test]
fn iteration_cap_is_reported() {
    let inst = AuctionInstance::worked_example();
    let polytope = inst.scaled_polytope(2.0).unwrap();
    let opts = DwOptions {
        max_iters: 2,
        ..DwOptions::default()
    };
    let err = dw::solve(&polytope, &inst.exact_oracle(), &inst.cost_vector(), &opts).unwrap_err();
    assert!(matches!(
        err,
        intdw::Error::MaxIterationsExceeded { iterations: 2, .. }
    ));
}

#[test]
fn oracle_dimension_mismatch_is_an_error() {
    let inst = AuctionInstance::worked_example();
    let polytope = inst.scaled_polytope(2.0).unwrap();
    let other = AuctionInstance::new(vec![vec![1.0]])
        .unwrap()
        .exact_oracle();
    assert_eq!(other.dim(), 1);
    assert!(dw::solve(
        &polytope,
        &other,
        &inst.cost_vector(),
        &DwOptions::default()
    )
    .is_err());
}
