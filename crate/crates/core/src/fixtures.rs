//! Named example elements used across examples and test suites.

use crate::field::{Field, FqElem};
use crate::kvec::MatKv;
use crate::laurent::Laurent;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// The quadratic with continued fraction `[0; Z, Z, Z, ...]` over `F_2`:
/// the root of `x^2 + Zx + 1` in `F_2((Z^{-1}))`, whose expansion is
/// `sum_k Z^{-(2^k - 1)}`. Returned as a truncated window of length `prec`.
pub fn alpha_quad(f: &Field, prec: usize) -> Laurent {
    let mut coeffs = vec![FqElem::ZERO; prec];
    let mut e: usize = 1;
    while e <= prec {
        coeffs[e - 1] = FqElem::ONE;
        e = 2 * e + 1;
    }
    Laurent::truncated(f, 1, coeffs)
}

/// `alpha_quad` as a 1x1 matrix.
pub fn alpha_quad_matrix(f: &Field, prec: usize) -> MatKv {
    MatKv::new(f, 1, 1, vec![alpha_quad(f, prec)])
}

/// The rational element `1/Z` as a 1x1 matrix: the canonical
/// not-completely-irrational fixture.
pub fn inv_z_matrix(f: &Field) -> MatKv {
    let e = Laurent::from_ratfunc(
        RatFunc::new(Poly::one(f), Poly::monomial(f, FqElem::ONE, 1)).unwrap(),
    );
    MatKv::new(f, 1, 1, vec![e])
}

/// The factorial-gap series `sum_{i <= 4} Z^{-i!}`, an exact rational
/// element (so its best approximation sequence terminates).
pub fn liouville_rational_matrix(f: &Field) -> MatKv {
    let mut num = Poly::zero(f);
    for e in [1_i64, 2, 6, 24] {
        num = num.add(&Poly::monomial(f, FqElem::ONE, (24 - e) as usize));
    }
    let den = Poly::monomial(f, FqElem::ONE, 24);
    MatKv::new(
        f,
        1,
        1,
        vec![Laurent::from_ratfunc(RatFunc::new(num, den).unwrap())],
    )
}

/// The factorial-gap series `sum Z^{-i!}` as a truncated window covering
/// the terms with `i! < window` (irrational-looking at every horizon the
/// window supports).
pub fn liouville_series_matrix(f: &Field, window: usize) -> MatKv {
    let mut coeffs = vec![FqElem::ZERO; window];
    let mut fact: usize = 1;
    let mut i = 1;
    while fact <= window {
        coeffs[fact - 1] = FqElem::ONE;
        i += 1;
        fact *= i;
    }
    MatKv::new(f, 1, 1, vec![Laurent::truncated(f, 1, coeffs)])
}
