//! Exact log-scale values.
//!
//! Every absolute value and quasinorm in this crate is a power of `q` with a
//! rational exponent, or zero. [`LogVal`] stores the exponent exactly (the
//! value means `q^exponent`) with a distinguished `NEG_INf` for zero, so
//! comparisons and arithmetic never touch floating point.

use num_rational::Rational64;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

/// `log_q` of an absolute value or quasinorm: an exact rational, or the
/// value `-infinity` representing `log_q 0`.
///
/// The total order puts `NEG_INF` below every finite value; finite values
/// compare as exact rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogVal {
    NegInf,
    Finite(Rational64),
}

pub use LogVal::NegInf;

impl LogVal {
    pub fn from_int(n: i64) -> Self {
        LogVal::Finite(Rational64::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        LogVal::Finite(Rational64::new(num, den))
    }

    pub fn zero() -> Self {
        LogVal::from_int(0)
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, LogVal::NegInf)
    }

    pub fn finite(&self) -> Option<Rational64> {
        match self {
            LogVal::NegInf => None,
            LogVal::Finite(r) => Some(*r),
        }
    }

    /// The finite exponent, panicking on `NEG_INF`. Reserved for call sites
    /// that have already excluded zero.
    pub fn expect_finite(&self) -> Rational64 {
        self.finite().expect("log value is -infinity")
    }

    /// Log of a product: exponents add, and zero absorbs.
    pub fn add(self, other: LogVal) -> LogVal {
        match (self, other) {
            (LogVal::Finite(a), LogVal::Finite(b)) => LogVal::Finite(a + b),
            _ => LogVal::NegInf,
        }
    }

    /// Divide the exponent by a positive integer (the `1/r_i` of a weighted
    /// quasinorm). `NEG_INF` is fixed.
    pub fn div_weight(self, w: i64) -> LogVal {
        assert!(w > 0, "weight must be positive");
        match self {
            LogVal::NegInf => LogVal::NegInf,
            LogVal::Finite(a) => LogVal::Finite(a / Rational64::from_integer(w)),
        }
    }

    /// Multiply the exponent by an integer. `NEG_INF` is fixed.
    pub fn mul_int(self, k: i64) -> LogVal {
        match self {
            LogVal::NegInf => LogVal::NegInf,
            LogVal::Finite(a) => LogVal::Finite(a * Rational64::from_integer(k)),
        }
    }

    /// Shift a finite exponent by an integer. `NEG_INF` is fixed.
    pub fn shift(self, k: i64) -> LogVal {
        match self {
            LogVal::NegInf => LogVal::NegInf,
            LogVal::Finite(a) => LogVal::Finite(a + Rational64::from_integer(k)),
        }
    }

    /// Render as the exact fraction string used by every serialization:
    /// `"neg_inf"`, or `"p"` / `"p/q"` in lowest terms.
    pub fn to_frac_string(&self) -> String {
        match self {
            LogVal::NegInf => "neg_inf".to_string(),
            LogVal::Finite(r) => {
                if r.denom() == &1 {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Parse the fraction-string form accepted and emitted by the CLI.
    pub fn from_frac_string(s: &str) -> crate::error::Result<LogVal> {
        let s = s.trim();
        if s == "neg_inf" {
            return Ok(LogVal::NegInf);
        }
        let parse_i64 = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| crate::error::Error::Malformed(format!("bad rational `{s}`")))
        };
        match s.split_once('/') {
            None => Ok(LogVal::from_int(parse_i64(s)?)),
            Some((n, d)) => {
                let den = parse_i64(d)?;
                if den == 0 {
                    return Err(crate::error::Error::Malformed(format!(
                        "zero denominator in `{s}`"
                    )));
                }
                Ok(LogVal::Finite(Rational64::new(parse_i64(n)?, den)))
            }
        }
    }

    /// True when the exponent is an integer (needed by operations restricted
    /// to exact powers of `q`).
    pub fn is_integer(&self) -> bool {
        match self {
            LogVal::NegInf => false,
            LogVal::Finite(r) => r.denom() == &1 || r.numer().is_zero() && r.denom() == &1,
        }
    }

    /// The integer exponent, if the value is an integral power of `q`.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            LogVal::Finite(r) if r.denom() == &1 => Some(*r.numer()),
            _ => None,
        }
    }
}

impl PartialOrd for LogVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogVal::NegInf, LogVal::NegInf) => Ordering::Equal,
            (LogVal::NegInf, LogVal::Finite(_)) => Ordering::Less,
            (LogVal::Finite(_), LogVal::NegInf) => Ordering::Greater,
            (LogVal::Finite(a), LogVal::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for LogVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_frac_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_neg_inf_first() {
        assert!(LogVal::NegInf < LogVal::from_int(-1_000_000));
        assert!(LogVal::from_ratio(1, 3) < LogVal::from_ratio(1, 2));
        assert_eq!(LogVal::from_ratio(2, 4), LogVal::from_ratio(1, 2));
    }

    #[test]
    fn frac_string_round_trip() {
        for v in [
            LogVal::NegInf,
            LogVal::from_int(-3),
            LogVal::from_int(0),
            LogVal::from_ratio(7, 2),
            LogVal::from_ratio(-5, 3),
        ] {
            assert_eq!(LogVal::from_frac_string(&v.to_frac_string()).unwrap(), v);
        }
    }

    #[test]
    fn product_rule() {
        assert_eq!(
            LogVal::from_int(3).add(LogVal::from_ratio(1, 2)),
            LogVal::from_ratio(7, 2)
        );
        assert!(LogVal::NegInf.add(LogVal::from_int(5)).is_neg_inf());
    }
}
