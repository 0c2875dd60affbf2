//! Exact series arithmetic at the place at infinity: expanding rational
//! functions in powers of `Z^{-1}`, absolute values, and distances to the
//! polynomial ring.
//!
//! Run with `cargo run --example laurent_expansion`.

use ffdioph::{Field, FqElem, Laurent, Poly, RatFunc};

fn main() {
    let f = Field::prime(2).unwrap();

    // A polynomial is its own expansion: Z^3 + 1 has |x| = q^3.
    let p = Laurent::from_poly(Poly::from_coeffs(
        &f,
        vec![FqElem(1), FqElem(0), FqElem(0), FqElem(1)],
    ));
    println!("Z^3+1: valuation {:?}, |x| = q^{}", p.valuation().unwrap(), p.abs_log().unwrap());

    // 1/(Z+1) over F_2 expands as the geometric series Z^{-1} + Z^{-2} + ...
    let g = Laurent::from_ratfunc(
        RatFunc::new(Poly::one(&f), Poly::from_coeffs(&f, vec![FqElem(1), FqElem(1)])).unwrap(),
    );
    let val = g.valuation().unwrap().unwrap();
    let window = g.window(val, val + 10).unwrap();
    println!(
        "1/(Z+1): val {val}, first 10 coefficients {:?}",
        window.iter().map(|c| c.0).collect::<Vec<_>>()
    );

    // The expansion is backed by the rational function, so refining the
    // window never changes previously reported coefficients.
    let wider = g.window(val, val + 30).unwrap();
    assert_eq!(&wider[..10], &window[..]);

    // Distance to R_v strips the polynomial part: Z^2 + 1 + Z^{-3} sits at
    // distance q^{-3} from the ring.
    let x = Laurent::from_poly(Poly::from_coeffs(&f, vec![FqElem(1), FqElem(0), FqElem(1)]))
        .add(&Laurent::z_pow(&f, -3));
    println!("dist(Z^2+1+Z^-3, R_v) = q^{}", x.dist_to_rv_log().unwrap());

    // Truncated elements fail loudly instead of guessing: subtracting a
    // window from itself leaves nothing trustworthy.
    let t = Laurent::truncated(&f, 1, vec![FqElem(1), FqElem(1), FqElem(1)]);
    let cancelled = t.sub(&t);
    println!(
        "window minus itself: abs decidable? {}",
        cancelled.abs_log().is_ok()
    );
}
