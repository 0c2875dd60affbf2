//! The weighted transference map: explicit constants and the constructive
//! passage from approximations of `A` to approximations of its transpose.
//!
//! Run with `cargo run --example transference`.

use ffdioph::bestapprox::enumerate_best_approx;
use ffdioph::fixtures::alpha_quad_matrix;
use ffdioph::lattice::Budget;
use ffdioph::logval::LogVal;
use ffdioph::transfer::{kappa_constants, transfer, Parallelepiped};
use ffdioph::{Field, WeightCtx};
use num_rational::Rational64;

fn main() {
    let f = Field::prime(2).unwrap();
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let mut budget = Budget::default();

    // Pseudocompound: exponents flip to alpha - alpha_k.
    let p = Parallelepiped::new(vec![2, 0, 1]);
    println!("pseudocompound of {:?} is {:?}", p.alpha, p.pseudocompound().alpha);

    // The constants for m = n = 1, r = s = (1).
    let k = kappa_constants(&ctx);
    println!(
        "beta_d = {}, kappa = ({}, {}, {}, {})",
        k.beta_d, k.kappa1, k.kappa2, k.kappa3, k.kappa4
    );

    // Feed the transference map best-approximation denominators of the
    // quadratic fixture: y_k with M_k Y_{k+1} = 1 is admissible for
    // (eps, Y) = (q^{-1}, Y_k).
    let a = alpha_quad_matrix(&f, 128);
    let seq = enumerate_best_approx(&a, &ctx, Rational64::from_integer(10), &mut budget).unwrap();
    for kidx in [3_usize, 5, 8] {
        let step = &seq.steps[kidx - 1];
        let out = transfer(
            &a,
            &step.y,
            LogVal::from_int(-1),
            LogVal::Finite(step.y_log),
            &ctx,
            &mut budget,
        )
        .unwrap();
        println!(
            "y_{kidx}: x = {:?}, ||x||_r = q^{} <= q^{}, <tA x>_s = q^{} <= q^{}",
            out.x[0], out.x_norm_log, out.x_bound_log, out.tdist_log, out.tdist_bound_log
        );
    }
}
