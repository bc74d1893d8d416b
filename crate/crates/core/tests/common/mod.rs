//! Independent oracles and corpus builders shared by the integration tests.
#![allow(dead_code)]

use intdw::auctions::{generate_bounded_instance, AuctionInstance};
use intdw::{DenseMatrix, IntegerPoint, Polytope};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{Ax <= b, x >= 0}` by solving every square subsystem of
/// active constraints and keeping the feasible solutions.
pub fn enumerate_vertices(a: &DenseMatrix, b: &[f64]) -> Vec<Vec<f64>> {
    let (m, n) = (a.rows(), a.cols());
    // rows 0..m: A x <= b; rows m..m+n: -x <= 0
    let g = |r: usize, j: usize| {
        if r < m {
            a[(r, j)]
        } else if r - m == j {
            -1.0
        } else {
            0.0
        }
    };
    let h = |r: usize| if r < m { b[r] } else { 0.0 };
    let mut vertices = Vec::new();
    for active in subsets(m + n, n) {
        let mat = DMatrix::from_fn(n, n, |i, j| g(active[i], j));
        let rhs = DVector::from_fn(n, |i, _| h(active[i]));
        let lu = mat.lu();
        if lu.determinant().abs() < 1e-10 {
            continue;
        }
        let Some(x) = lu.solve(&rhs) else { continue };
        let feasible =
            (0..m + n).all(|r| (0..n).map(|j| g(r, j) * x[j]).sum::<f64>() <= h(r) + 1e-9);
        if feasible {
            vertices.push(x.iter().copied().collect());
        }
    }
    vertices
}

/// `max cx` over the enumerated vertices.
pub fn brute_force_lp(a: &DenseMatrix, b: &[f64], c: &[f64]) -> f64 {
    enumerate_vertices(a, b)
        .iter()
        .map(|x| x.iter().zip(c).map(|(x, c)| x * c).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Every feasible assignment as a per-player quantity vector.
pub fn all_assignments(inst: &AuctionInstance) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; inst.players];
    fn go(
        i: usize,
        left: usize,
        inst: &AuctionInstance,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == inst.players {
            out.push(cur.clone());
            return;
        }
        for q in 0..=inst.units.min(left) {
            cur[i] = q;
            go(i + 1, left - q, inst, cur, out);
        }
        cur[i] = 0;
    }
    go(0, inst.units, inst, &mut cur, &mut out);
    out
}

pub fn brute_force_assignment_value(inst: &AuctionInstance, cost: &[f64]) -> f64 {
    all_assignments(inst)
        .iter()
        .map(|q| inst.point_from_assignment(q).dot(cost))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Bounded random polytope: integer entries in `-2..=5`, one all-ones row
/// keeping it bounded, integer `b >= 0`.
pub fn random_polytope(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
) -> (DenseMatrix, Vec<f64>, Vec<f64>) {
    let mut rows: Vec<Vec<f64>> = (0..m.saturating_sub(1))
        .map(|_| {
            (0..n)
                .map(|_| f64::from(rng.gen_range(-2i32..=5)))
                .collect()
        })
        .collect();
    rows.push(vec![1.0; n]);
    let b: Vec<f64> = (0..m).map(|_| f64::from(rng.gen_range(0u32..=8))).collect();
    let c: Vec<f64> = (0..n)
        .map(|_| f64::from(rng.gen_range(-3i32..=6)))
        .collect();
    (DenseMatrix::from_rows(&rows).unwrap(), b, c)
}

/// Packing polytope (nonnegative integer data) with a nonnegative objective.
pub fn random_packing(rng: &mut ChaCha8Rng, m: usize, n: usize) -> (Polytope, Vec<f64>) {
    loop {
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| f64::from(rng.gen_range(0u32..=4))).collect())
            .collect();
        let covered = (0..n).all(|j| rows.iter().any(|r| r[j] > 0.0));
        if !covered {
            continue;
        }
        let b: Vec<f64> = (0..m).map(|_| f64::from(rng.gen_range(0u32..=9))).collect();
        let c: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0u32..=7))).collect();
        let p = Polytope::new(DenseMatrix::from_rows(&rows).unwrap(), b).unwrap();
        return (p, c);
    }
}

/// The acceptance corpus: `count` auctions with up to 5 players, up to 8
/// units and integer valuations at most 10.
pub fn auction_corpus(count: usize) -> Vec<AuctionInstance> {
    (0..count as u64)
        .map(|seed| {
            let players = 1 + (seed % 5) as usize;
            let units = 1 + ((seed / 5) % 8) as usize;
            generate_bounded_instance(players, units, 10, 1000 + seed).unwrap()
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn points_of(inst: &AuctionInstance, qs: &[&[usize]]) -> Vec<IntegerPoint> {
    qs.iter().map(|q| inst.point_from_assignment(q)).collect()
}
