//! Property-based invariants over randomized exact instances.

use ffdioph::field::{Field, FqElem};
use ffdioph::kvec::{weighted_dist_log, weighted_norm_log};
use ffdioph::laurent::Laurent;
use ffdioph::logval::LogVal;
use ffdioph::poly::Poly;
use ffdioph::ratfunc::RatFunc;
use ffdioph::transfer::Parallelepiped;
use proptest::prelude::*;

fn field(q: u16) -> Field {
    Field::prime(q).unwrap()
}

fn poly_strategy(q: u16, max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0..q, 0..=max_len)
}

fn to_poly(f: &Field, cs: &[u16]) -> Poly {
    Poly::from_coeffs(f, cs.iter().map(|&c| FqElem(c)).collect())
}

proptest! {
    #[test]
    fn ultrametric_with_equality_case(
        q in prop::sample::select(vec![2u16, 3, 5]),
        num_a in poly_strategy(5, 4), den_a in poly_strategy(5, 4),
        num_b in poly_strategy(5, 4), den_b in poly_strategy(5, 4),
    ) {
        let f = field(q);
        let reduce = |c: &[u16]| c.iter().map(|&x| x % q).collect::<Vec<_>>();
        let da = to_poly(&f, &reduce(&den_a));
        let db = to_poly(&f, &reduce(&den_b));
        prop_assume!(!da.is_zero() && !db.is_zero());
        let x = Laurent::from_ratfunc(RatFunc::new(to_poly(&f, &reduce(&num_a)), da).unwrap());
        let y = Laurent::from_ratfunc(RatFunc::new(to_poly(&f, &reduce(&num_b)), db).unwrap());
        let ax = x.abs_log().unwrap();
        let ay = y.abs_log().unwrap();
        let sum = x.add(&y).abs_log().unwrap();
        prop_assert!(sum <= ax.max(ay));
        if ax != ay {
            prop_assert_eq!(sum, ax.max(ay));
        }
        prop_assert_eq!(x.mul(&y).abs_log().unwrap(), ax.add(ay));
    }

    #[test]
    fn quasinorms_are_scalar_invariant(
        cs in prop::collection::vec(poly_strategy(3, 4), 2),
        scalar in 1u16..3,
        w1 in 1i64..=3, w2 in 1i64..=3,
    ) {
        // |c| = 1 for nonzero constants, so both the weighted norm and the
        // weighted distance ignore F_q^* scaling.
        let f = field(3);
        let weights = [w1, w2];
        let v: Vec<Laurent> = cs.iter().map(|c| {
            let p = to_poly(&f, c);
            Laurent::from_ratfunc(
                RatFunc::new(p, Poly::monomial(&f, FqElem::ONE, 2)).unwrap(),
            )
        }).collect();
        let scaled: Vec<Laurent> = v.iter().map(|e| e.scalar_mul(FqElem(scalar))).collect();
        prop_assert_eq!(
            weighted_norm_log(&v, &weights).unwrap(),
            weighted_norm_log(&scaled, &weights).unwrap()
        );
        prop_assert_eq!(
            weighted_dist_log(&v, &weights).unwrap(),
            weighted_dist_log(&scaled, &weights).unwrap()
        );
    }

    #[test]
    fn weighted_quasinorm_ultrametric(
        a1 in poly_strategy(2, 4), a2 in poly_strategy(2, 4),
        b1 in poly_strategy(2, 4), b2 in poly_strategy(2, 4),
        den in poly_strategy(2, 3),
        w1 in 1i64..=3, w2 in 1i64..=3,
    ) {
        let f = field(2);
        let d = to_poly(&f, &den);
        prop_assume!(!d.is_zero());
        let mk = |n: &[u16]| Laurent::from_ratfunc(
            RatFunc::new(to_poly(&f, n), d.clone()).unwrap(),
        );
        let x = [mk(&a1), mk(&a2)];
        let y = [mk(&b1), mk(&b2)];
        let sum = [x[0].add(&y[0]), x[1].add(&y[1])];
        let w = [w1, w2];
        let nx = weighted_norm_log(&x, &w).unwrap();
        let ny = weighted_norm_log(&y, &w).unwrap();
        let ns = weighted_norm_log(&sum, &w).unwrap();
        prop_assert!(ns <= nx.max(ny));
        if nx != ny {
            prop_assert_eq!(ns, nx.max(ny));
        }
    }

    #[test]
    fn distance_to_ring_is_at_most_q_inverse(
        num in poly_strategy(2, 6),
        den in poly_strategy(2, 6),
    ) {
        let f = field(2);
        let d = to_poly(&f, &den);
        prop_assume!(!d.is_zero());
        let x = Laurent::from_ratfunc(RatFunc::new(to_poly(&f, &num), d).unwrap());
        // The fractional tail lives at exponents >= 1 of Z^{-1}.
        prop_assert!(x.dist_to_rv_log().unwrap() <= LogVal::from_int(-1));
    }

    #[test]
    fn dilation_shifts_weighted_norms(
        num in poly_strategy(2, 4),
        den in poly_strategy(2, 4),
        w in 1i64..=4,
        ell in -4i64..=4,
    ) {
        let f = field(2);
        let d = to_poly(&f, &den);
        prop_assume!(!d.is_zero());
        let x = Laurent::from_ratfunc(RatFunc::new(to_poly(&f, &num), d).unwrap());
        let scaled = x.mul_zpow(w * ell);
        let before = weighted_norm_log(&[x], &[w]).unwrap();
        let after = weighted_norm_log(&[scaled], &[w]).unwrap();
        prop_assert_eq!(after, before.shift(ell));
    }

    #[test]
    fn pseudocompound_exponent_sums(alpha in prop::collection::vec(-4i64..=4, 2..=5)) {
        let p = Parallelepiped::new(alpha);
        let star = p.pseudocompound();
        let total = p.total();
        for (a, b) in p.alpha.iter().zip(star.alpha.iter()) {
            prop_assert_eq!(a + b, total);
        }
    }

    #[test]
    fn logval_fraction_strings_round_trip(n in -1000i64..1000, d in 1i64..60) {
        let v = LogVal::from_ratio(n, d);
        prop_assert_eq!(LogVal::from_frac_string(&v.to_frac_string()).unwrap(), v);
    }
}
