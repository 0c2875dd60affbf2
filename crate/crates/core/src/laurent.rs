//! Laurent series in `Z^{-1}` over `F_q`: the completion `K_v = F_q((Z^{-1}))`
//! at the place at infinity.
//!
//! An element is exact when it is backed by a rational function, in which
//! case every coefficient is recomputable on demand and arithmetic stays
//! symbolic. Truncated elements carry an explicit trustworthy window
//! `[val, end)` of coefficients; any operation whose answer would depend on
//! coefficients outside the window fails with a precision error instead of
//! guessing. Exponents are exponents of `Z^{-1}`, so the absolute value of a
//! nonzero element with valuation `v` is `q^{-v}`.

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::logval::LogVal;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Repr {
    /// Exact zero.
    Zero,
    /// Nonzero element of `K`, exact.
    Exact(RatFunc),
    /// Known coefficients on `[val, val + coeffs.len())`, `coeffs[0] != 0`,
    /// nothing known beyond the window.
    Trunc { val: i64, coeffs: Vec<FqElem> },
    /// Every known coefficient (exponents `< bound`) is zero; the element
    /// may be zero or may have valuation `>= bound`.
    Vanishing { bound: i64 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    field: Field,
    repr: Repr,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Exact(r) => write!(f, "{r:?}"),
            Repr::Trunc { val, coeffs } => {
                write!(f, "O-series[")?;
                for (k, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        write!(f, " {}*t^{}", c.0, val + k as i64)?;
                    }
                }
                write!(f, " + O(t^{})]", val + coeffs.len() as i64)
            }
            Repr::Vanishing { bound } => write!(f, "O(t^{bound})"),
        }
    }
}

/// Expansion coefficients of `num/den` at infinity, starting at the
/// valuation `deg den - deg num`, by synthetic division.
fn expand_ratfunc(r: &RatFunc, len: usize) -> Vec<FqElem> {
    let f = r.field().clone();
    let num = r.num();
    let den = r.den();
    let nd = num.degree().expect("nonzero") as usize;
    let dd = den.degree().unwrap() as usize;
    let lead_inv = f.inv(den.leading()).expect("nonzero leading");
    let a = |k: i64| -> FqElem {
        if k < 0 {
            FqElem::ZERO
        } else {
            num.coeff(k as usize)
        }
    };
    let b = |k: i64| -> FqElem {
        if k < 0 {
            FqElem::ZERO
        } else {
            den.coeff(k as usize)
        }
    };
    let mut c: Vec<FqElem> = Vec::with_capacity(len);
    for k in 0..len as i64 {
        let mut acc = a(nd as i64 - k);
        for i in 1..=k.min(dd as i64) {
            acc = f.sub(acc, f.mul(b(dd as i64 - i), c[(k - i) as usize]));
        }
        c.push(f.mul(acc, lead_inv));
    }
    c
}

impl Laurent {
    pub fn zero(field: &Field) -> Laurent {
        Laurent {
            field: field.clone(),
            repr: Repr::Zero,
        }
    }

    pub fn from_ratfunc(r: RatFunc) -> Laurent {
        let field = r.field().clone();
        if r.is_zero() {
            Laurent::zero(&field)
        } else {
            Laurent {
                field,
                repr: Repr::Exact(r),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Laurent {
        Laurent::from_ratfunc(RatFunc::from_poly(p))
    }

    pub fn one(field: &Field) -> Laurent {
        Laurent::from_poly(Poly::one(field))
    }

    /// The monomial `Z^k` (so valuation `-k`).
    pub fn z_pow(field: &Field, k: i64) -> Laurent {
        Laurent::one(field).mul_zpow(k)
    }

    /// Build a truncated element from a coefficient window starting at
    /// exponent `start`; the window length is the precision.
    pub fn truncated(field: &Field, start: i64, coeffs: Vec<FqElem>) -> Laurent {
        let end = start + coeffs.len() as i64;
        Laurent::normalize_window(field, start, end, coeffs)
    }

    pub fn vanishing(field: &Field, bound: i64) -> Laurent {
        Laurent {
            field: field.clone(),
            repr: Repr::Vanishing { bound },
        }
    }

    fn normalize_window(field: &Field, start: i64, end: i64, mut coeffs: Vec<FqElem>) -> Laurent {
        debug_assert_eq!(coeffs.len() as i64, end - start);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Laurent::vanishing(field, end),
            Some(k) => {
                coeffs.drain(..k);
                Laurent {
                    field: field.clone(),
                    repr: Repr::Trunc {
                        val: start + k as i64,
                        coeffs,
                    },
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Zero | Repr::Exact(_))
    }

    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        match &self.repr {
            Repr::Zero => Some(RatFunc::zero(&self.field)),
            Repr::Exact(r) => Some(r.clone()),
            _ => None,
        }
    }

    /// Valuation (exponent of the first nonzero coefficient), if decidable.
    /// `None` means the element is exactly zero.
    pub fn valuation(&self) -> Result<Option<i64>> {
        match &self.repr {
            Repr::Zero => Ok(None),
            Repr::Exact(r) => Ok(Some(r.valuation().unwrap())),
            Repr::Trunc { val, .. } => Ok(Some(*val)),
            Repr::Vanishing { bound } => Err(Error::Precision(format!(
                "valuation undecidable: all known coefficients below t^{bound} are zero"
            ))),
        }
    }

    /// Exponent just past the trustworthy window (`i64::MAX` for exact).
    pub fn known_end(&self) -> i64 {
        match &self.repr {
            Repr::Zero | Repr::Exact(_) => i64::MAX,
            Repr::Trunc { val, coeffs } => val + coeffs.len() as i64,
            Repr::Vanishing { bound } => *bound,
        }
    }

    /// Number of trustworthy coefficients from the valuation on, when the
    /// element is truncated.
    pub fn prec(&self) -> Option<usize> {
        match &self.repr {
            Repr::Trunc { coeffs, .. } => Some(coeffs.len()),
            _ => None,
        }
    }

    /// `|x|` in log scale: `q^{-val}`, `NEG_INF` for zero.
    pub fn abs_log(&self) -> Result<LogVal> {
        match self.valuation()? {
            None => Ok(LogVal::NegInf),
            Some(v) => Ok(LogVal::from_int(-v)),
        }
    }

    /// Coefficient of `(Z^{-1})^e`, when within the trustworthy window.
    pub fn coeff(&self, e: i64) -> Result<FqElem> {
        match &self.repr {
            Repr::Zero => Ok(FqElem::ZERO),
            Repr::Exact(r) => {
                let val = r.valuation().unwrap();
                if e < val {
                    Ok(FqElem::ZERO)
                } else {
                    let w = expand_ratfunc(r, (e - val + 1) as usize);
                    Ok(w[(e - val) as usize])
                }
            }
            Repr::Trunc { val, coeffs } => {
                if e < *val {
                    Ok(FqElem::ZERO)
                } else if e < val + coeffs.len() as i64 {
                    Ok(coeffs[(e - val) as usize])
                } else {
                    Err(Error::Precision(format!(
                        "coefficient at t^{e} beyond the trustworthy window"
                    )))
                }
            }
            Repr::Vanishing { bound } => {
                if e < *bound {
                    Ok(FqElem::ZERO)
                } else {
                    Err(Error::Precision(format!(
                        "coefficient at t^{e} beyond the trustworthy window"
                    )))
                }
            }
        }
    }

    /// The coefficient window `[lo, hi)` (all entries trustworthy).
    pub fn window(&self, lo: i64, hi: i64) -> Result<Vec<FqElem>> {
        let mut out = Vec::with_capacity((hi - lo).max(0) as usize);
        // For exact elements expand once rather than per coefficient.
        if let Repr::Exact(r) = &self.repr {
            let val = r.valuation().unwrap();
            let need = (hi - val).max(0) as usize;
            let w = expand_ratfunc(r, need);
            for e in lo..hi {
                out.push(if e < val {
                    FqElem::ZERO
                } else {
                    w[(e - val) as usize]
                });
            }
            return Ok(out);
        }
        for e in lo..hi {
            out.push(self.coeff(e)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) => return other.clone(),
            (_, Repr::Zero) => return self.clone(),
            (Repr::Exact(a), Repr::Exact(b)) => {
                return Laurent::from_ratfunc(a.add(b).expect("same field"));
            }
            _ => {}
        }
        let end = self.known_end().min(other.known_end());
        let starts: Vec<i64> = [self, other]
            .iter()
            .filter_map(|x| match &x.repr {
                Repr::Exact(r) => Some(r.valuation().unwrap()),
                Repr::Trunc { val, .. } => Some(*val),
                _ => None,
            })
            .collect();
        let start = match starts.iter().min() {
            None => return Laurent::vanishing(f, end), // both vanishing
            Some(&s) => s.min(end),
        };
        let wa = self.window(start, end).expect("within known windows");
        let wb = other.window(start, end).expect("within known windows");
        let sum: Vec<FqElem> = wa
            .iter()
            .zip(wb.iter())
            .map(|(&x, &y)| f.add(x, y))
            .collect();
        Laurent::normalize_window(f, start, end, sum)
    }

    pub fn neg(&self) -> Laurent {
        let f = &self.field;
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Exact(r) => Laurent::from_ratfunc(r.neg()),
            Repr::Trunc { val, coeffs } => Laurent {
                field: f.clone(),
                repr: Repr::Trunc {
                    val: *val,
                    coeffs: coeffs.iter().map(|&c| f.neg(c)).collect(),
                },
            },
            Repr::Vanishing { .. } => self.clone(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => return Laurent::zero(f),
            (Repr::Exact(a), Repr::Exact(b)) => {
                return Laurent::from_ratfunc(a.mul(b).expect("same field"));
            }
            (Repr::Vanishing { bound }, _) => {
                let ov = match &other.repr {
                    Repr::Exact(r) => r.valuation().unwrap(),
                    Repr::Trunc { val, .. } => *val,
                    Repr::Vanishing { bound: b2 } => *b2,
                    Repr::Zero => unreachable!(),
                };
                return Laurent::vanishing(f, bound + ov);
            }
            (_, Repr::Vanishing { .. }) => return other.mul(self),
            _ => {}
        }
        // At least one truncated operand: windowed convolution.
        let len = self.window_len().min(other.window_len());
        let (v1, w1) = self.leading_window(len);
        let (v2, w2) = other.leading_window(len);
        let mut out = vec![FqElem::ZERO; len];
        for i in 0..len {
            if w1[i].is_zero() {
                continue;
            }
            for j in 0..(len - i) {
                out[i + j] = f.add(out[i + j], f.mul(w1[i], w2[j]));
            }
        }
        Laurent::normalize_window(f, v1 + v2, v1 + v2 + len as i64, out)
    }

    /// Trustworthy window length from the valuation on (`usize::MAX` for
    /// exact elements, which can be expanded arbitrarily far).
    fn window_len(&self) -> usize {
        match &self.repr {
            Repr::Trunc { coeffs, .. } => coeffs.len(),
            Repr::Zero | Repr::Exact(_) => usize::MAX,
            Repr::Vanishing { .. } => 0,
        }
    }

    /// `(val, first `len` coefficients from val)` for nonzero decidable
    /// elements.
    fn leading_window(&self, len: usize) -> (i64, Vec<FqElem>) {
        match &self.repr {
            Repr::Trunc { val, coeffs } => (*val, coeffs[..len.min(coeffs.len())].to_vec()),
            Repr::Exact(r) => (r.valuation().unwrap(), expand_ratfunc(r, len)),
            _ => unreachable!("leading_window on zero/vanishing"),
        }
    }

    pub fn div(&self, other: &Laurent) -> Result<Laurent> {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        match &other.repr {
            Repr::Zero => return Err(Error::Precondition("division by zero".into())),
            Repr::Vanishing { .. } => {
                return Err(Error::Precision(
                    "division by an element of undecidable valuation".into(),
                ))
            }
            _ => {}
        }
        match &self.repr {
            Repr::Zero => return Ok(Laurent::zero(f)),
            Repr::Exact(a) => {
                if let Repr::Exact(b) = &other.repr {
                    return Ok(Laurent::from_ratfunc(a.div(b)?));
                }
            }
            Repr::Vanishing { bound } => {
                let ov = other.valuation()?.unwrap();
                return Ok(Laurent::vanishing(f, bound - ov));
            }
            _ => {}
        }
        // Windowed synthetic division.
        let len = self.window_len().min(other.window_len());
        let (v1, w1) = self.leading_window(len);
        let (v2, w2) = other.leading_window(len);
        let lead_inv = f.inv(w2[0])?;
        let mut c: Vec<FqElem> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = w1[k];
            for i in 1..=k {
                acc = f.sub(acc, f.mul(w2[i], c[k - i]));
            }
            c.push(f.mul(acc, lead_inv));
        }
        Ok(Laurent::normalize_window(
            f,
            v1 - v2,
            v1 - v2 + len as i64,
            c,
        ))
    }

    pub fn scalar_mul(&self, c: FqElem) -> Laurent {
        let f = &self.field;
        if c.is_zero() {
            return Laurent::zero(f);
        }
        match &self.repr {
            Repr::Zero | Repr::Vanishing { .. } => self.clone(),
            Repr::Exact(r) => Laurent::from_ratfunc(
                RatFunc::new(r.num().scalar_mul(c), r.den().clone()).expect("nonzero den"),
            ),
            Repr::Trunc { val, coeffs } => Laurent {
                field: f.clone(),
                repr: Repr::Trunc {
                    val: *val,
                    coeffs: coeffs.iter().map(|&a| f.mul(a, c)).collect(),
                },
            },
        }
    }

    /// Multiply by `Z^k` (valuation shifts by `-k`); exactness preserved.
    pub fn mul_zpow(&self, k: i64) -> Laurent {
        let f = &self.field;
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Exact(r) => {
                let rf = if k >= 0 {
                    RatFunc::new(r.num().shift_up(k as usize), r.den().clone())
                } else {
                    RatFunc::new(r.num().clone(), r.den().shift_up((-k) as usize))
                };
                Laurent::from_ratfunc(rf.expect("nonzero den"))
            }
            Repr::Trunc { val, coeffs } => Laurent {
                field: f.clone(),
                repr: Repr::Trunc {
                    val: val - k,
                    coeffs: coeffs.clone(),
                },
            },
            Repr::Vanishing { bound } => Laurent::vanishing(f, bound - k),
        }
    }

    /// The integral (polynomial-in-`Z`) part: coefficients at exponents
    /// `<= 0`. Fails when the window does not cover them.
    pub fn poly_part(&self) -> Result<Poly> {
        let f = &self.field;
        match &self.repr {
            Repr::Zero => Ok(Poly::zero(f)),
            Repr::Exact(r) => Ok(r.split_integral()?.0),
            Repr::Trunc { val, .. } => {
                if self.known_end() < 1 {
                    return Err(Error::Precision(
                        "integral part depends on coefficients beyond the window".into(),
                    ));
                }
                if *val > 0 {
                    return Ok(Poly::zero(f));
                }
                let w = self.window(*val, 1)?;
                // Exponent e of Z^{-1} is degree -e in Z.
                let mut cs = vec![FqElem::ZERO; (-val + 1) as usize];
                for (k, c) in w.iter().enumerate() {
                    let e = val + k as i64;
                    cs[(-e) as usize] = *c;
                }
                Ok(Poly::from_coeffs(f, cs))
            }
            Repr::Vanishing { bound } => {
                if *bound >= 1 {
                    Ok(Poly::zero(f))
                } else {
                    Err(Error::Precision(
                        "integral part depends on coefficients beyond the window".into(),
                    ))
                }
            }
        }
    }

    /// Distance to `R_v` in log scale: the absolute value of the strictly
    /// positive-exponent tail. `NEG_INF` iff the element lies in `F_q[Z]`.
    pub fn dist_to_rv_log(&self) -> Result<LogVal> {
        match &self.repr {
            Repr::Zero => Ok(LogVal::NegInf),
            Repr::Exact(r) => {
                let (_, frac) = r.split_integral()?;
                if frac.is_zero() {
                    Ok(LogVal::NegInf)
                } else {
                    Ok(LogVal::from_int(-frac.valuation().unwrap()))
                }
            }
            Repr::Trunc { val, .. } => {
                let end = self.known_end();
                let lo = (*val).max(1);
                for e in lo..end {
                    if !self.coeff(e)?.is_zero() {
                        return Ok(LogVal::from_int(-e));
                    }
                }
                Err(Error::Precision(
                    "fractional tail vanishes on the whole trustworthy window".into(),
                ))
            }
            Repr::Vanishing { .. } => Err(Error::Precision(
                "fractional tail vanishes on the whole trustworthy window".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn poly(field: &Field, cs: &[u16]) -> Poly {
        Poly::from_coeffs(field, cs.iter().map(|&c| FqElem(c)).collect())
    }

    fn rf(field: &Field, num: &[u16], den: &[u16]) -> RatFunc {
        RatFunc::new(poly(field, num), poly(field, den)).unwrap()
    }

    #[test]
    fn polynomial_is_its_own_expansion() {
        // Z^3 + 1 has valuation -3 and window (1,0,0,1).
        let f = f2();
        let x = Laurent::from_poly(poly(&f, &[1, 0, 0, 1]));
        assert_eq!(x.valuation().unwrap(), Some(-3));
        assert_eq!(
            x.window(-3, 1).unwrap(),
            vec![FqElem(1), FqElem(0), FqElem(0), FqElem(1)]
        );
        assert_eq!(x.abs_log().unwrap(), LogVal::from_int(3));
    }

    #[test]
    fn geometric_series_expansion() {
        // 1/(Z+1) over F_2 expands as Z^{-1} + Z^{-2} + Z^{-3} + ...
        let f = f2();
        let x = Laurent::from_ratfunc(rf(&f, &[1], &[1, 1]));
        assert_eq!(x.valuation().unwrap(), Some(1));
        let prec = 24;
        let w = x.window(1, 1 + prec).unwrap();
        assert!(w.iter().all(|c| c.0 == 1));
        // Long-division oracle: (Z+1) * partial_sum = 1 + O(Z^{-prec}).
        let mut partial = Laurent::zero(&f);
        for e in 1..=prec {
            partial = partial.add(&Laurent::z_pow(&f, -e));
        }
        let check = Laurent::from_poly(poly(&f, &[1, 1])).mul(&partial);
        let diff = check.sub(&Laurent::one(&f));
        assert!(diff.valuation().unwrap().unwrap() >= prec);
    }

    #[test]
    fn zero_expansion_and_abs() {
        let f = f2();
        let z = Laurent::from_ratfunc(RatFunc::zero(&f));
        assert!(z.is_exact_zero());
        assert_eq!(z.abs_log().unwrap(), LogVal::NegInf);
    }

    #[test]
    fn abs_val_examples() {
        let f = f2();
        // Z^{-2} + Z^{-5}: log = -2.
        let x = Laurent::z_pow(&f, -2).add(&Laurent::z_pow(&f, -5));
        assert_eq!(x.abs_log().unwrap(), LogVal::from_int(-2));
    }

    #[test]
    fn dist_to_rv_examples() {
        let f = f2();
        // Z^2 + 1 + Z^{-3} -> log -3.
        let x = Laurent::from_poly(poly(&f, &[1, 0, 1])).add(&Laurent::z_pow(&f, -3));
        assert_eq!(x.dist_to_rv_log().unwrap(), LogVal::from_int(-3));
        // Z^{-1} -> log -1.
        assert_eq!(
            Laurent::z_pow(&f, -1).dist_to_rv_log().unwrap(),
            LogVal::from_int(-1)
        );
        // Z^5 is integral.
        assert_eq!(
            Laurent::z_pow(&f, 5).dist_to_rv_log().unwrap(),
            LogVal::NegInf
        );
    }

    #[test]
    fn precision_exhaustion_is_loud() {
        let f = f2();
        let x = Laurent::truncated(&f, 1, vec![FqElem(1), FqElem(1)]);
        let y = x.clone();
        let diff = x.sub(&y);
        assert!(diff.abs_log().is_err());
        assert!(diff.dist_to_rv_log().is_err());
        // But adding something of larger absolute value recovers decidability.
        let z = diff.add(&Laurent::one(&f));
        assert_eq!(z.abs_log().unwrap(), LogVal::from_int(0));
    }

    #[test]
    fn truncated_mul_precision_bookkeeping() {
        let f = f2();
        // (Z^{-1} known to 3 terms) * (exact Z^2) keeps 3 trustworthy terms.
        let x = Laurent::truncated(&f, 1, vec![FqElem(1), FqElem(0), FqElem(1)]);
        let y = Laurent::z_pow(&f, 2);
        let p = x.mul(&y);
        assert_eq!(p.valuation().unwrap(), Some(-1));
        assert_eq!(p.prec(), Some(3));
        assert_eq!(p.known_end(), 2);
    }

    #[test]
    fn backing_consistency_under_refinement() {
        // Refining the window of an exact element never changes previously
        // reported coefficients.
        let f = Field::prime(3).unwrap();
        let x = Laurent::from_ratfunc(rf(&f, &[1, 2], &[2, 0, 1]));
        let w8 = x.window(x.valuation().unwrap().unwrap(), 8).unwrap();
        let w20 = x.window(x.valuation().unwrap().unwrap(), 20).unwrap();
        assert_eq!(&w20[..w8.len()], &w8[..]);
    }

    fn small_pool(f: &Field) -> Vec<Laurent> {
        let mut pool = vec![Laurent::zero(f), Laurent::one(f)];
        for num in [&[1u16][..], &[0, 1], &[1, 1], &[1, 0, 1]] {
            for den in [&[1u16][..], &[0, 1], &[1, 1], &[0, 0, 1]] {
                pool.push(Laurent::from_ratfunc(rf_u(f, num, den)));
            }
        }
        pool
    }

    fn rf_u(field: &Field, num: &[u16], den: &[u16]) -> RatFunc {
        RatFunc::new(poly(field, num), poly(field, den)).unwrap()
    }

    #[test]
    fn ultrametric_and_multiplicativity_on_pool() {
        let f = f2();
        for x in small_pool(&f) {
            for y in small_pool(&f) {
                let ax = x.abs_log().unwrap();
                let ay = y.abs_log().unwrap();
                let sum = x.add(&y).abs_log().unwrap();
                assert!(sum <= ax.max(ay));
                if ax != ay {
                    assert_eq!(sum, ax.max(ay));
                }
                let prod = x.mul(&y).abs_log().unwrap();
                assert_eq!(prod, ax.add(ay));
            }
        }
    }

    #[test]
    fn rv_cap_ov_is_the_constant_field() {
        // dist_to_Rv = NEG_INF and |x| <= 1 jointly imply x is constant:
        // exhaustive over rational functions from a small degree pool.
        let f = f2();
        for x in small_pool(&f) {
            let integral = x.dist_to_rv_log().unwrap().is_neg_inf();
            let small = x.abs_log().unwrap() <= LogVal::from_int(0);
            if integral && small {
                let r = x.as_ratfunc().unwrap();
                assert!(r.is_poly() && r.num().is_constant());
            }
        }
    }

    #[test]
    fn division_round_trips() {
        let f = Field::prime(3).unwrap();
        for x in small_pool(&f) {
            for y in small_pool(&f) {
                if y.is_exact_zero() {
                    assert!(x.div(&y).is_err());
                    continue;
                }
                let q = x.div(&y).unwrap();
                let back = q.mul(&y);
                assert_eq!(back.as_ratfunc(), x.as_ratfunc());
            }
        }
    }
}
