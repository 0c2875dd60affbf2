//! Weighted Dirichlet solving: produce a nonzero integral `y` with
//! `<A y>_r <= q^{-alpha}` and `||y||_s <= q^{alpha}` (genus-zero
//! constants), and verify the bounds independently.
//!
//! Run with `cargo run --example dirichlet_solve`.

use ffdioph::dirichlet::{dirichlet_check, dirichlet_weighted};
use ffdioph::fixtures::alpha_quad_matrix;
use ffdioph::kvec::MatKv;
use ffdioph::lattice::Budget;
use ffdioph::{Field, WeightCtx};

fn main() {
    let f = Field::prime(2).unwrap();
    let mut budget = Budget::default();

    // The quadratic fixture, unweighted m = n = 1.
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let a = alpha_quad_matrix(&f, 64);
    for alpha in 1..=4 {
        let y = dirichlet_weighted(&a, alpha, &ctx, &mut budget).unwrap();
        let (dist, norm, ok) = dirichlet_check(&a, &y, &ctx, alpha).unwrap();
        println!(
            "alpha = {alpha}: y = {:?}, <A y>_r = q^{dist}, ||y||_s = q^{norm}, bounds {}",
            y[0],
            if ok { "hold" } else { "FAIL" }
        );
    }

    // Weighted case r = (1, 2), s = (3): the quasinorm exponents divide by
    // the weights, and the solver works through the scaled lattice.
    let ctx = WeightCtx::new(&f, vec![1, 2], vec![3]).unwrap();
    let entries = vec![
        alpha_quad_matrix(&f, 64).at(0, 0).clone(),
        ffdioph::Laurent::z_pow(&f, -2),
    ];
    let a = MatKv::new(&f, 2, 1, entries);
    let y = dirichlet_weighted(&a, 1, &ctx, &mut budget).unwrap();
    let (dist, norm, ok) = dirichlet_check(&a, &y, &ctx, 1).unwrap();
    println!(
        "weights r=(1,2), s=(3), alpha = 1: <A y>_r = q^{dist}, ||y||_s = q^{norm}, bounds {}",
        if ok { "hold" } else { "FAIL" }
    );
}
