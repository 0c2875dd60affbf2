//! The weight data `(r, s)` shared by every weighted operation:
//! an `m`-tuple and an `n`-tuple of positive integers with equal sums.

use crate::error::{Error, Result};
use crate::field::Field;

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Weights `r` (length `m`) and `s` (length `n`) with `|r| = |s|`, together
/// with the ambient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCtx {
    field: Field,
    r: Vec<i64>,
    s: Vec<i64>,
}

impl WeightCtx {
    pub fn new(field: &Field, r: Vec<i64>, s: Vec<i64>) -> Result<WeightCtx> {
        if r.is_empty() || s.is_empty() {
            return Err(Error::Precondition("m, n >= 1 required".into()));
        }
        if r.iter().any(|&w| w <= 0) || s.iter().any(|&w| w <= 0) {
            return Err(Error::Precondition("weights must be positive".into()));
        }
        let sr: i64 = r.iter().sum();
        let ss: i64 = s.iter().sum();
        if sr != ss {
            return Err(Error::Precondition(format!(
                "|r| = {sr} and |s| = {ss} must agree"
            )));
        }
        Ok(WeightCtx {
            field: field.clone(),
            r,
            s,
        })
    }

    /// Unweighted context: `r = (n, ..., n)` (m entries), `s = (m, ..., m)`.
    pub fn unweighted(field: &Field, m: usize, n: usize) -> Result<WeightCtx> {
        WeightCtx::new(field, vec![n as i64; m], vec![m as i64; n])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn m(&self) -> usize {
        self.r.len()
    }
    pub fn n(&self) -> usize {
        self.s.len()
    }
    pub fn d(&self) -> usize {
        self.m() + self.n()
    }
    pub fn r(&self) -> &[i64] {
        &self.r
    }
    pub fn s(&self) -> &[i64] {
        &self.s
    }
    pub fn sum_r(&self) -> i64 {
        self.r.iter().sum()
    }
    pub fn min_r(&self) -> i64 {
        *self.r.iter().min().unwrap()
    }
    pub fn max_r(&self) -> i64 {
        *self.r.iter().max().unwrap()
    }
    pub fn lcm_r(&self) -> i64 {
        self.r.iter().copied().fold(1, lcm)
    }
    pub fn min_s(&self) -> i64 {
        *self.s.iter().min().unwrap()
    }
    pub fn max_s(&self) -> i64 {
        *self.s.iter().max().unwrap()
    }
    pub fn lcm_s(&self) -> i64 {
        self.s.iter().copied().fold(1, lcm)
    }

    /// The context for the transposed system: weights swapped, so a matrix
    /// statement about `(A, r, s)` becomes one about `(tA, s, r)`.
    pub fn transposed(&self) -> WeightCtx {
        WeightCtx {
            field: self.field.clone(),
            r: self.s.clone(),
            s: self.r.clone(),
        }
    }

    /// The diagonal flow exponents `(r_1, ..., r_m, -s_1, ..., -s_n)`: the
    /// `Z`-power applied to each coordinate by one flow step.
    pub fn flow_exponents(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.d());
        v.extend(self.r.iter().copied());
        v.extend(self.s.iter().map(|&w| -w));
        v
    }

    /// All `d` weights in coordinate order (`r` then `s`), as used by the
    /// combined quasinorm on `K_v^d`.
    pub fn all_weights(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.d());
        v.extend(self.r.iter().copied());
        v.extend(self.s.iter().copied());
        v
    }
}
