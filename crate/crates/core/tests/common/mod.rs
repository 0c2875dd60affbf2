//! Shared generators for the integration suites.

use ffdioph::field::{Field, FqElem};
use ffdioph::kvec::MatKv;
use ffdioph::laurent::Laurent;
use ffdioph::poly::Poly;
use ffdioph::ratfunc::RatFunc;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_poly(rng: &mut ChaCha8Rng, f: &Field, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let cs: Vec<FqElem> = (0..=deg)
        .map(|_| FqElem(rng.gen_range(0..f.q()) as u16))
        .collect();
    Poly::from_coeffs(f, cs)
}

pub fn random_nonzero_poly(rng: &mut ChaCha8Rng, f: &Field, max_deg: usize) -> Poly {
    loop {
        let p = random_poly(rng, f, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ratfunc(rng: &mut ChaCha8Rng, f: &Field, max_deg: usize) -> RatFunc {
    RatFunc::new(
        random_poly(rng, f, max_deg),
        random_nonzero_poly(rng, f, max_deg),
    )
    .expect("nonzero den")
}

/// A random truncated element of `pi_v O_v` with the given window length.
pub fn random_small_series(rng: &mut ChaCha8Rng, f: &Field, window: usize) -> Laurent {
    let cs: Vec<FqElem> = (0..window)
        .map(|_| FqElem(rng.gen_range(0..f.q()) as u16))
        .collect();
    Laurent::truncated(f, 1, cs)
}

pub fn random_matrix_series(
    rng: &mut ChaCha8Rng,
    f: &Field,
    m: usize,
    n: usize,
    window: usize,
) -> MatKv {
    let entries: Vec<Laurent> = (0..m * n)
        .map(|_| random_small_series(rng, f, window))
        .collect();
    MatKv::new(f, m, n, entries)
}

pub fn random_matrix_ratfunc(
    rng: &mut ChaCha8Rng,
    f: &Field,
    m: usize,
    n: usize,
    max_deg: usize,
) -> MatKv {
    let entries: Vec<Laurent> = (0..m * n)
        .map(|_| Laurent::from_ratfunc(random_ratfunc(rng, f, max_deg)))
        .collect();
    MatKv::new(f, m, n, entries)
}

/// Weight pairs with `|r| = |s| <= 4`.
pub fn weight_pool() -> Vec<(Vec<i64>, Vec<i64>)> {
    vec![
        (vec![1], vec![1]),
        (vec![2], vec![2]),
        (vec![3], vec![3]),
        (vec![4], vec![4]),
        (vec![1, 1], vec![2]),
        (vec![2], vec![1, 1]),
        (vec![1, 2], vec![3]),
        (vec![3], vec![1, 2]),
        (vec![1, 1], vec![1, 1]),
        (vec![2, 2], vec![1, 3]),
        (vec![1, 3], vec![2, 2]),
        (vec![2, 1], vec![1, 2]),
    ]
}
