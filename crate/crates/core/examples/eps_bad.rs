//! Membership checks for eps-bad targets: the finite-horizon witness
//! search, and the eventual membership of flowed grids in the compact
//! family `L_eps`.
//!
//! Run with `cargo run --example eps_bad`.

use ffdioph::dynamics::{eventually_in_l_eps, is_eps_bad};
use ffdioph::fixtures::alpha_quad_matrix;
use ffdioph::kvec::{MatKv, VecKv};
use ffdioph::lattice::Budget;
use ffdioph::logval::LogVal;
use ffdioph::{Field, Laurent, WeightCtx};
use num_rational::Rational64;

fn main() {
    let f = Field::prime(2).unwrap();
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let mut budget = Budget::default();
    let horizon = Rational64::from_integer(7);

    // A = 0, theta = Z^{-1}: the product ||x|| <x theta> is exactly
    // q^{deg x - 1} >= q^{-1}, so eps = q^{-1} has no witness ever.
    let zero = MatKv::zero(&f, 1, 1);
    let theta = VecKv::new(vec![Laurent::z_pow(&f, -1)]);
    let out = is_eps_bad(&zero, &theta, &ctx, LogVal::from_int(-1), horizon, &mut budget).unwrap();
    println!("A = 0, theta = Z^-1, eps = q^-1: witness? {}", out.witness.is_some());

    // theta = 0 for the quadratic: the homogeneous continued-fraction law
    // keeps products at q^{-1}, so eps = q^{-1} passes and eps = 1 fails.
    let a = alpha_quad_matrix(&f, 96);
    let theta0 = VecKv::new(vec![Laurent::zero(&f)]);
    for eps in [-1_i64, 0] {
        let out =
            is_eps_bad(&a, &theta0, &ctx, LogVal::from_int(eps), horizon, &mut budget).unwrap();
        match out.witness {
            None => println!("alpha_quad, eps = q^{eps}: no violation up to horizon"),
            Some(w) => println!(
                "alpha_quad, eps = q^{eps}: witness x = {:?} with product q^{}",
                w.x[0], w.product_log
            ),
        }
    }

    // Grid dynamics: theta integral triggers the countable alternative of
    // the dichotomy (an exact solution of <A y - theta> = 0).
    let theta_int = VecKv::new(vec![Laurent::one(&f)]);
    let rep = eventually_in_l_eps(
        &ffdioph::fixtures::inv_z_matrix(&f),
        &theta_int,
        &ctx,
        LogVal::from_int(-2),
        1,
        5,
        &mut budget,
    )
    .unwrap();
    println!(
        "theta = 1 for A = 1/Z: exact alternative found? {}",
        rep.alternative_exact.is_some()
    );

    // A generic target stays in L_eps across the window for small eps.
    let rep = eventually_in_l_eps(
        &a,
        &theta0,
        &ctx,
        LogVal::from_int(-4),
        1,
        6,
        &mut budget,
    )
    .unwrap();
    println!(
        "alpha_quad, theta = 0, eps = q^-4: first failure in 1..=6: {:?}",
        rep.first_failure
    );
}
