//! The end-to-end lower-bound pipeline on the factorial-gap series: best
//! approximation of the transpose, subsequence extraction, the survivor
//! tree, the dimension estimate, and the eps-bad cross-checks.
//!
//! Run with `cargo run --release --example full_pipeline`.

use ffdioph::badset::pipeline_lower_bound;
use ffdioph::fixtures::{inv_z_matrix, liouville_series_matrix};
use ffdioph::lattice::Budget;
use ffdioph::{Field, WeightCtx};
use num_rational::Rational64;

fn main() {
    let f = Field::prime(2).unwrap();
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let mut budget = Budget::default();

    // The rational 1/Z takes the certified branch: no Cantor stage needed.
    let report = pipeline_lower_bound(
        &inv_z_matrix(&f),
        &ctx,
        Rational64::from_integer(-4),
        Rational64::from_integer(5),
        Rational64::from_integer(8),
        Rational64::from_integer(6),
        50,
        1 << 20,
        &mut budget,
    )
    .unwrap();
    println!("1/Z: remark path (terminated transpose sequence) = {}", report.remark_path);

    // The factorial-gap series runs the full construction.
    let a = liouville_series_matrix(&f, 160);
    let report = pipeline_lower_bound(
        &a,
        &ctx,
        Rational64::from_integer(-4),
        Rational64::from_integer(5),
        Rational64::from_integer(24),
        Rational64::from_integer(6),
        100,
        400_000,
        &mut budget,
    )
    .unwrap();
    let dim = report.dim.as_ref().unwrap();
    println!("sum Z^(-i!):");
    println!("  plan phi = {:?}", report.plan.as_ref().unwrap().phi);
    println!(
        "  dimension bound = {} (c1 = {}, C = {}, slope = {})",
        dim.bound, dim.c1, dim.c_value, dim.slope
    );
    println!(
        "  eps log = {}, survivor levels built = {}, deepest count = {}",
        report.eps_log.unwrap(),
        report.levels_built,
        report.survivors_at_deepest
    );
    println!(
        "  survivor bounds ok = {:?}, samples checked = {}, eps-bad witnesses = {}",
        report.bound_report_ok,
        report.samples_checked,
        report.witnesses.len()
    );
}
