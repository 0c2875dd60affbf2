//! The Cantor survivor construction: exact per-level survivor counts
//! against the `c_1 (Y_{k+1}/Y_k)^{|r|}` bound, nesting, and the dimension
//! estimate `m - C * slope`.
//!
//! Run with `cargo run --example cantor_dimension`.

use ffdioph::badset::{build_cantor, c1_constant, survivor_bound_check};
use ffdioph::lattice::Budget;
use ffdioph::{Field, FqElem, Poly, WeightCtx};
use num_rational::Rational64;

fn main() {
    let f = Field::prime(2).unwrap();
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let mut budget = Budget::default();

    // The desk fixture: m = 1, q = 2, delta = 2^{-4}, y_k = Z^{4k} (growth
    // exactly b(delta) = 4 per step).
    let delta_log = Rational64::from_integer(-4);
    println!("c1 = {}", c1_constant(2, 1, -4));
    let ys: Vec<(Vec<Poly>, Rational64)> = (1..=5)
        .map(|k| {
            (
                vec![Poly::monomial(&f, FqElem::ONE, 4 * k)],
                Rational64::from_integer(4 * k as i64),
            )
        })
        .collect();
    let tree = build_cantor(&f, &ctx, &ys, delta_log, 5, 1 << 24, &mut budget).unwrap();
    for (k, level) in tree.levels.iter().enumerate() {
        println!(
            "level {k}: digits {:?}, survivors {}",
            level.disc.nvec,
            level.survivors.len()
        );
    }
    let report = survivor_bound_check(&tree, &ctx).unwrap();
    for lb in &report.per_level {
        println!(
            "level {}: min surviving children {} >= required {} : {}",
            lb.level, lb.min_children, lb.required, lb.ok
        );
    }
    println!(
        "per-level bounds {}, total bound {}",
        if report.all_ok { "hold" } else { "FAIL" },
        if report.totals_ok { "holds" } else { "FAIL" }
    );

    // Every survivor corner keeps |<y_k . theta>| >= delta for all tested k;
    // those corners are exactly the candidate eps-bad targets downstream.
    let sampled =
        ffdioph::badset::sample_bad_delta_check(&tree, &f, tree.levels.len() - 1, 10).unwrap();
    println!("sampled {} deepest survivors, all pass the digit test", sampled.len());
}
