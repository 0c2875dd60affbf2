//! The Dani correspondence in action: diagonal-flow trajectories of
//! `u_A R_v^d`, with the lattice-side systole criterion and the
//! arithmetic-side solvability computed independently at every step.
//!
//! Run with `cargo run --example orbit_trajectory`.

use ffdioph::dynamics::dani_trajectory;
use ffdioph::fixtures::{alpha_quad_matrix, inv_z_matrix, liouville_series_matrix};
use ffdioph::lattice::Budget;
use ffdioph::logval::LogVal;
use ffdioph::{Field, WeightCtx};

fn main() {
    let f = Field::prime(2).unwrap();
    let ctx = WeightCtx::new(&f, vec![1], vec![1]).unwrap();
    let mut budget = Budget::default();

    for (name, a, steps) in [
        ("1/Z", inv_z_matrix(&f), 6),
        ("alpha_quad", alpha_quad_matrix(&f, 96), 8),
        ("sum Z^{-i!}", liouville_series_matrix(&f, 160), 12),
    ] {
        let t = dani_trajectory(&a, &ctx, LogVal::from_int(-1), steps, &mut budget).unwrap();
        print!("{name}: systole logs ");
        for row in &t.rows {
            print!("{} ", row.systole_log);
        }
        println!("| escape fraction {}", t.escape_fraction);
    }
    // The bounded orbit of the quadratic keeps its systole pinned at the
    // continued-fraction floor; the factorial-gap series escapes more and
    // more of the time, the dynamical face of singularity on average.
}
