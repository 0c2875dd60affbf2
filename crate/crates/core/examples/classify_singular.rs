//! Singular-on-average classification: the certified terminated case and
//! the trend verdicts from the statistic
//! `Card{i <= k : M_i Y_{i+1} > eps'} / log_q Y_k`.
//!
//! Run with `cargo run --example classify_singular`.

use ffdioph::bestapprox::classify_singular;
use ffdioph::fixtures::{alpha_quad_matrix, inv_z_matrix, liouville_series_matrix};
use ffdioph::lattice::Budget;
use ffdioph::{Field, WeightCtx};
use num_rational::Rational64;

fn main() {
    let f = Field::prime(2).unwrap();
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let mut budget = Budget::default();

    for (name, a, horizon) in [
        ("1/Z", inv_z_matrix(&f), 4),
        ("alpha_quad", alpha_quad_matrix(&f, 96), 8),
        ("sum Z^{-i!}", liouville_series_matrix(&f, 160), 24),
    ] {
        let c = classify_singular(&a, &ctx, Rational64::from_integer(horizon), &mut budget)
            .unwrap();
        println!("{name}: {}", c.verdict.as_str());
        let tail: Vec<String> = c
            .statistic
            .iter()
            .rev()
            .take(4)
            .rev()
            .map(|(k, v)| format!("f({k}) = {v}"))
            .collect();
        println!("  statistic tail: {}", tail.join(", "));
    }
}
