//! Constants that depend on the curve data `(g, deg v)`.
//!
//! Everything downstream runs on `K = F_q(Z)` at the place at infinity,
//! where `g = 0` and `deg v = 1`, but the constants are kept as formulas in
//! `(g, deg v)` so a future backend for other places can reuse them, and so
//! the genus-zero coincidences (both Minkowski bounds agreeing, the
//! Dirichlet prefactors collapsing to 1) are visible as evaluations rather
//! than baked-in magic numbers.

use num_rational::Rational64;

/// Curve parameters: genus and degree of the chosen place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveParams {
    pub genus: i64,
    pub deg_v: i64,
}

/// The projective line with the standard place at infinity.
pub const GENUS_ZERO: CurveParams = CurveParams { genus: 0, deg_v: 1 };

impl CurveParams {
    /// `log_q Covol(Lambda)` for a lattice with determinant valuation
    /// `vdet` (valuation in the `q_v` normalization): the covolume scales by
    /// `|det| = q_v^{-vdet}` off the base covolume `q^{(g-1)d}`.
    pub fn covol_log(&self, d: usize, vdet: i64) -> Rational64 {
        Rational64::from_integer(-vdet * self.deg_v + (self.genus - 1) * d as i64)
    }

    /// Lower bound exponent of Minkowski's theorem:
    /// `q^{-(g-1)d} Covol <= prod lambda_k`.
    pub fn minkowski_lower_log(&self, d: usize, covol_log: Rational64) -> Rational64 {
        covol_log - Rational64::from_integer((self.genus - 1) * d as i64)
    }

    /// Upper bound exponent: `prod lambda_k <= q_v^d Covol`.
    pub fn minkowski_upper_log(&self, d: usize, covol_log: Rational64) -> Rational64 {
        covol_log + Rational64::from_integer(self.deg_v * d as i64)
    }

    /// `log_q` of the first-minimum bound `lambda_1 <= q_v Covol^{1/d}`.
    pub fn lambda1_bound_log(&self, d: usize, covol_log: Rational64) -> Rational64 {
        Rational64::from_integer(self.deg_v) + covol_log / Rational64::from_integer(d as i64)
    }

    /// Smallest admissible `r'_i` in Dirichlet's theorem:
    /// the least integer strictly above `1 + (g-1)/deg v`.
    pub fn dirichlet_min_rprime(&self) -> i64 {
        let bound = Rational64::new(self.deg_v + self.genus - 1, self.deg_v);
        floor_strictly_above(bound)
    }

    /// `log_q` of the Dirichlet solve bound `q_v q^{g-1} q_v^{-r'}`.
    pub fn dirichlet_row_bound_log(&self, rprime: i64) -> i64 {
        self.deg_v + self.genus - 1 - rprime * self.deg_v
    }

    /// `log_q` of the weighted Dirichlet prefactor `q^{(deg v + g - 1)/w}`.
    pub fn dirichlet_prefactor_log(&self, min_weight: i64) -> Rational64 {
        Rational64::new(self.deg_v + self.genus - 1, min_weight)
    }

    /// Smallest admissible `alpha` in the weighted Dirichlet corollary:
    /// the least integer strictly above `1/min r + (g-1)/(min r deg v)`.
    pub fn dirichlet_min_alpha(&self, min_r: i64) -> i64 {
        let bound = Rational64::new(self.deg_v + self.genus - 1, min_r * self.deg_v);
        floor_strictly_above(bound)
    }

    /// The transference exponent
    /// `beta_d = ceil((d + 1 + (g-1)d/deg v)/(d-1))`.
    pub fn beta_d(&self, d: usize) -> i64 {
        assert!(d >= 2);
        let num = Rational64::from_integer(d as i64 + 1)
            + Rational64::new((self.genus - 1) * d as i64, self.deg_v);
        ceil_rational(num / Rational64::from_integer(d as i64 - 1))
    }

    /// Uniform bound on `log_q(M_i Y_{i+1})` along a best approximation
    /// sequence: `(deg v + g - 1)(1/min r + 1/min s) + 2 deg v`.
    pub fn bestapprox_product_bound(&self, min_r: i64, min_s: i64) -> Rational64 {
        Rational64::from_integer(self.deg_v + self.genus - 1)
            * (Rational64::new(1, min_r) + Rational64::new(1, min_s))
            + Rational64::from_integer(2 * self.deg_v)
    }
}

fn ceil_rational(x: Rational64) -> i64 {
    x.ceil().to_integer()
}

fn floor_strictly_above(x: Rational64) -> i64 {
    x.floor().to_integer() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_zero_evaluations() {
        let c = GENUS_ZERO;
        assert_eq!(c.covol_log(2, 0), Rational64::from_integer(-2));
        // Both Minkowski bounds coincide at genus zero.
        let covol = Rational64::from_integer(-2);
        assert_eq!(
            c.minkowski_lower_log(2, covol),
            c.minkowski_upper_log(2, covol)
        );
        assert_eq!(c.minkowski_upper_log(2, covol), Rational64::from_integer(0));
        assert_eq!(c.dirichlet_min_rprime(), 1);
        assert_eq!(c.dirichlet_row_bound_log(3), -3);
        assert_eq!(c.dirichlet_prefactor_log(2), Rational64::from_integer(0));
        assert_eq!(c.dirichlet_min_alpha(1), 1);
        assert_eq!(c.dirichlet_min_alpha(3), 1);
        for d in 2..8 {
            assert_eq!(c.beta_d(d), 1);
        }
        assert_eq!(
            c.bestapprox_product_bound(1, 1),
            Rational64::from_integer(2)
        );
        // The bound is 2 for all weights at genus zero.
        assert_eq!(
            c.bestapprox_product_bound(3, 5),
            Rational64::from_integer(2)
        );
    }

    #[test]
    fn positive_genus_formulas() {
        // Symbolic spot checks at (g, deg v) = (2, 3).
        let c = CurveParams { genus: 2, deg_v: 3 };
        assert_eq!(c.covol_log(2, 1), Rational64::from_integer(-3 + 2));
        // beta_3 = ceil((4 + 1*3/3)/2) = ceil(5/2) = 3.
        assert_eq!(c.beta_d(3), 3);
        // r' > 1 + 1/3, so the least integer is 2.
        assert_eq!(c.dirichlet_min_rprime(), 2);
        // (3 + 1)(1/1 + 1/2) + 6 = 12.
        assert_eq!(
            c.bestapprox_product_bound(1, 2),
            Rational64::from_integer(12)
        );
    }
}
