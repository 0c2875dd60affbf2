//! Rational functions `num/den` over `F_q`, the elements of `K = F_q(Z)`.
//!
//! Canonical form: the denominator is monic and coprime to the numerator;
//! zero is `0/1`.

use crate::error::Result;
use crate::field::Field;
use crate::poly::Poly;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(crate::error::Error::Precondition(
                "zero denominator".into(),
            ));
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Poly::one(&field),
            });
        }
        let g = num.gcd(&den)?;
        let (mut num, _) = num.divmod(&g)?;
        let (mut den, _) = den.divmod(&g)?;
        // Normalize the denominator to be monic.
        let lead = den.leading();
        if lead != crate::field::FqElem::ONE {
            let inv = field.inv(lead)?;
            num = num.scalar_mul(inv);
            den = den.scalar_mul(inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let field = p.field().clone();
        RatFunc {
            num: p,
            den: Poly::one(&field),
        }
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Valuation at the place at infinity: `deg den - deg num`.
    /// Returns `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.num
            .degree()
            .map(|dn| self.den.degree().unwrap() - dn)
    }

    pub fn add(&self, other: &RatFunc) -> Result<RatFunc> {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        RatFunc::new(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(crate::error::Error::Precondition(
                "division by zero".into(),
            ));
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Splits `f` as `poly_part + frac_part` with `poly_part` the integral
    /// (polynomial) part and `frac_part` of strictly positive valuation.
    pub fn split_integral(&self) -> Result<(Poly, RatFunc)> {
        let (quot, rem) = self.num.divmod(&self.den)?;
        Ok((quot, RatFunc::new(rem, self.den.clone())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqElem;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn poly(field: &Field, cs: &[u16]) -> Poly {
        Poly::from_coeffs(field, cs.iter().map(|&c| FqElem(c)).collect())
    }

    #[test]
    fn normalization_cancels_gcd() {
        let f = f2();
        // (Z^2+1)/(Z+1) = Z+1 over F_2.
        let r = RatFunc::new(poly(&f, &[1, 0, 1]), poly(&f, &[1, 1])).unwrap();
        assert!(r.is_poly());
        assert_eq!(r.num(), &poly(&f, &[1, 1]));
    }

    #[test]
    fn valuation_at_infinity() {
        let f = f2();
        let r = RatFunc::new(poly(&f, &[1]), poly(&f, &[1, 1])).unwrap();
        assert_eq!(r.valuation(), Some(1));
        let p = RatFunc::from_poly(poly(&f, &[1, 0, 0, 1]));
        assert_eq!(p.valuation(), Some(-3));
        assert_eq!(RatFunc::zero(&f).valuation(), None);
    }

    #[test]
    fn split_integral_parts() {
        let f = f2();
        // (Z^3+1)/Z = Z^2 + 1/Z.
        let r = RatFunc::new(poly(&f, &[1, 0, 0, 1]), poly(&f, &[0, 1])).unwrap();
        let (ip, fp) = r.split_integral().unwrap();
        assert_eq!(ip, poly(&f, &[0, 0, 1]));
        assert_eq!(fp, RatFunc::new(poly(&f, &[1]), poly(&f, &[0, 1])).unwrap());
    }

    #[test]
    fn field_axioms_on_small_pool() {
        let f = Field::prime(3).unwrap();
        let pool: Vec<RatFunc> = vec![
            RatFunc::zero(&f),
            RatFunc::one(&f),
            RatFunc::from_poly(poly(&f, &[0, 1])),
            RatFunc::new(poly(&f, &[1]), poly(&f, &[1, 1])).unwrap(),
            RatFunc::new(poly(&f, &[2, 1]), poly(&f, &[0, 0, 1])).unwrap(),
        ];
        for a in &pool {
            for b in &pool {
                assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                assert_eq!(a.sub(b).unwrap().add(b).unwrap(), *a);
                if !b.is_zero() {
                    assert_eq!(a.div(b).unwrap().mul(b).unwrap(), *a);
                }
            }
        }
    }
}
