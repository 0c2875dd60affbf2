//! Best approximation sequences with weights: the greedy construction, the
//! uniform product bound, and the controlled-growth subsequence.
//!
//! Run with `cargo run --example best_approximation`.

use ffdioph::bestapprox::{bz_subsequence, enumerate_best_approx, verify_seq_bounds};
use ffdioph::fixtures::{alpha_quad_matrix, inv_z_matrix, liouville_series_matrix};
use ffdioph::lattice::Budget;
use ffdioph::{Field, WeightCtx};
use num_rational::Rational64;

fn main() {
    let f = Field::prime(2).unwrap();
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let mut budget = Budget::default();

    // The rational 1/Z terminates: <A Z> = 0 at the second step.
    let seq = enumerate_best_approx(
        &inv_z_matrix(&f),
        &ctx,
        Rational64::from_integer(4),
        &mut budget,
    )
    .unwrap();
    println!("1/Z: {} steps, terminated = {}", seq.len(), seq.terminated);

    // The quadratic fixture has the classical continued-fraction profile
    // Ylog_i = i - 1, Mlog_i = -i, products exactly 1.
    let seq = enumerate_best_approx(
        &alpha_quad_matrix(&f, 96),
        &ctx,
        Rational64::from_integer(8),
        &mut budget,
    )
    .unwrap();
    println!("alpha_quad profile:");
    for (i, s) in seq.steps.iter().enumerate() {
        println!("  i = {}: Ylog = {}, Mlog = {}", i + 1, s.y_log, s.m_log);
    }
    let report = verify_seq_bounds(&seq, &ctx);
    println!(
        "max log(M_i Y_i+1) = {:?} <= {} (the genus-zero bound)",
        report.max_product, report.bound
    );

    // A subsequence with growth >= q^b and products <= q^(b+c).
    let plan = bz_subsequence(
        &seq,
        Rational64::from_integer(2),
        Rational64::from_integer(1),
        Rational64::from_integer(2),
        &ctx,
    )
    .unwrap();
    println!(
        "plan phi = {:?}, slope surrogate = {}",
        plan.phi,
        plan.slope_surrogate(&seq)
    );

    // The factorial-gap series: huge jumps in Y, so the statistic's
    // denominator races ahead of the count.
    let seq = enumerate_best_approx(
        &liouville_series_matrix(&f, 160),
        &ctx,
        Rational64::from_integer(24),
        &mut budget,
    )
    .unwrap();
    println!("liouville series Ylog profile:");
    let ylogs: Vec<String> = seq.steps.iter().map(|s| s.y_log.to_string()).collect();
    println!("  {}", ylogs.join(", "));
}
