//! Dense univariate polynomials over `F_q`, the elements of `R_v = F_q[Z]`.
//!
//! Coefficients are stored lowest degree first. The representation is
//! canonical: the vector is empty for the zero polynomial, and the last
//! entry is nonzero otherwise.

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.0)?,
                1 if c.0 == 1 => write!(f, "Z")?,
                1 => write!(f, "{}*Z", c.0)?,
                _ if c.0 == 1 => write!(f, "Z^{i}")?,
                _ => write!(f, "{}*Z^{i}", c.0)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, FqElem::ONE)
    }

    pub fn constant(field: &Field, c: FqElem) -> Poly {
        let coeffs = if c.is_zero() { vec![] } else { vec![c] };
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// The monomial `c * Z^k`.
    pub fn monomial(field: &Field, c: FqElem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().map_or(false, FqElem::is_zero) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn leading(&self) -> FqElem {
        *self.coeffs.last().unwrap_or(&FqElem::ZERO)
    }

    pub fn coeff(&self, k: usize) -> FqElem {
        self.coeffs.get(k).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(f.add(self.coeff(k), other.coeff(k)));
        }
        Poly::from_coeffs(f, out)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.field, other.field);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }

    pub fn scalar_mul(&self, c: FqElem) -> Poly {
        let f = &self.field;
        if c.is_zero() {
            return Poly::zero(f);
        }
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by `Z^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Long division: returns `(quot, rem)` with `self = quot * div + rem`
    /// and `deg rem < deg div`.
    pub fn divmod(&self, div: &Poly) -> Result<(Poly, Poly)> {
        debug_assert_eq!(self.field, div.field);
        if div.is_zero() {
            return Err(Error::Precondition("division by zero polynomial".into()));
        }
        let f = &self.field;
        let dd = div.coeffs.len() - 1;
        let lead_inv = f.inv(div.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FqElem::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let dr = rem.len() - 1;
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            if !c.is_zero() {
                quot[dr - dd] = c;
                for (k, &mk) in div.coeffs.iter().enumerate() {
                    let idx = dr - dd + k;
                    rem[idx] = f.sub(rem[idx], f.mul(c, mk));
                }
            }
            rem.pop();
            while rem.last().map_or(false, FqElem::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// Scale so the leading coefficient is 1 (zero is left unchanged).
    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading");
        self.scalar_mul(inv)
    }

    /// Deterministic total order used for tie-breaking: by degree first,
    /// then coefficient-wise from the constant term up, each coefficient
    /// under the field's digit-lexicographic element order.
    pub fn cmp_key(&self, other: &Poly) -> Ordering {
        let f = &self.field;
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
            match f.elem_cmp(*a, *b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}
