//! Successive minima of `R_v`-lattices: basis reduction, the exact
//! genus-zero Minkowski product identity, and the independent oracle.
//!
//! Run with `cargo run --example lattice_minima`.

use ffdioph::kvec::MatKv;
use ffdioph::lattice::{oracle_minima, Budget, LatticeBasis};
use ffdioph::{Field, Laurent};

fn main() {
    let f = Field::prime(2).unwrap();
    let mut budget = Budget::default();

    // diag(Z, Z^{-1}): minima q^{-1} and q, covolume log -2.
    let mut mat = MatKv::zero(&f, 2, 2);
    *mat.at_mut(0, 0) = Laurent::z_pow(&f, 1);
    *mat.at_mut(1, 1) = Laurent::z_pow(&f, -1);
    let basis = LatticeBasis::new(mat).unwrap();
    let minima = basis.successive_minima(&mut budget).unwrap();
    println!(
        "diag(Z, Z^-1): lambda logs {:?}, covol log {}, product identity {}",
        minima.lambda_logs,
        minima.covol_log.unwrap(),
        if minima.product_ok == Some(true) { "ok" } else { "unchecked" },
    );

    // A skewed basis that needs actual reduction work: columns (1,1) and
    // (1 + Z^{-1}, 1). The difference (Z^{-1}, 0) realizes lambda_1.
    let mut mat = MatKv::zero(&f, 2, 2);
    *mat.at_mut(0, 0) = Laurent::one(&f);
    *mat.at_mut(1, 0) = Laurent::one(&f);
    *mat.at_mut(0, 1) = Laurent::one(&f).add(&Laurent::z_pow(&f, -1));
    *mat.at_mut(1, 1) = Laurent::one(&f);
    let basis = LatticeBasis::new(mat).unwrap();
    let minima = basis.successive_minima(&mut budget).unwrap();
    println!("skewed basis: lambda logs {:?}", minima.lambda_logs);

    // The oracle recomputes the minima from F_q-linear constraint systems,
    // sharing nothing with the reduction path.
    let slow = oracle_minima(&basis, &mut budget).unwrap();
    println!("oracle agrees: {}", slow == minima.lambda_logs);

    // The sum of minima always equals -v(det): here the determinant is
    // -Z^{-1}, so the sum is -1.
    println!(
        "sum of minima = {}",
        minima.lambda_logs.iter().sum::<i64>()
    );
}
