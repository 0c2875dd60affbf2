//! Finite fields `F_q` with `q = p^e <= 2^16`.
//!
//! Prime fields are residues mod `p`; extensions are coefficient vectors in
//! the power basis of an explicitly supplied irreducible modulus, which is
//! verified by trial division at construction. Elements are stored as a
//! single index (the base-`p` digit string of the coefficient vector), and
//! multiplication goes through discrete log/exp tables built once per field.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub const MAX_Q: u32 = 1 << 16;

/// An element of `F_q`, stored as the index `sum c_i p^i` of its coefficient
/// vector `(c_0, ..., c_{e-1})` in the power basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FqElem(pub u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// Field description: characteristic, extension degree, modulus, and the
/// arithmetic tables derived from them.
#[derive(Debug)]
pub struct FieldSpec {
    p: u16,
    e: u32,
    q: u32,
    /// Modulus coefficients over `F_p`, lowest degree first, length `e + 1`,
    /// monic. Present only when `e > 1`.
    modulus: Option<Vec<u16>>,
    /// `exp[k] = g^k` for a fixed generator `g`, for `k` in `0..q-1`.
    exp: Vec<u16>,
    /// `log[a]` with `exp[log[a]] = a`, for nonzero `a`.
    log: Vec<u32>,
}

/// Shared handle to a [`FieldSpec`]; cheap to clone and thread-safe.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.e == other.0.e
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

fn is_prime(n: u16) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n as u32 {
        if n as u32 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- F_p[x] helpers used only for table construction ----

fn fp_poly_trim(v: &mut Vec<u16>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_poly_mul(a: &[u16], b: &[u16], p: u16) -> Vec<u16> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u32 * y as u32) % p as u32;
        }
    }
    let mut out: Vec<u16> = out.into_iter().map(|c| c as u16).collect();
    fp_poly_trim(&mut out);
    out
}

fn fp_poly_rem(a: &[u16], m: &[u16], p: u16) -> Vec<u16> {
    let mut r: Vec<u16> = a.to_vec();
    fp_poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u32 * lead_inv as u32 % p as u32) as u16;
        for (k, &mk) in m.iter().enumerate() {
            let idx = dr - dm + k;
            let sub = c as u32 * mk as u32 % p as u32;
            r[idx] = ((r[idx] as u32 + p as u32 - sub) % p as u32) as u16;
        }
        fp_poly_trim(&mut r);
        if r.len() > dr {
            break;
        }
    }
    r
}

fn mod_inv(a: u16, p: u16) -> u16 {
    // Fermat: a^(p-2) mod p.
    let mut result = 1u32;
    let mut base = a as u32 % p as u32;
    let mut exp = p as u32 - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u32;
        }
        base = base * base % p as u32;
        exp >>= 1;
    }
    result as u16
}

fn digits(index: u32, p: u16, e: u32) -> Vec<u16> {
    let mut v = Vec::with_capacity(e as usize);
    let mut n = index;
    for _ in 0..e {
        v.push((n % p as u32) as u16);
        n /= p as u32;
    }
    v
}

fn index_of(digs: &[u16], p: u16) -> u32 {
    let mut n = 0u32;
    for &d in digs.iter().rev() {
        n = n * p as u32 + d as u32;
    }
    n
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u16) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// An extension field with an explicit modulus (coefficients over `F_p`,
    /// lowest degree first, monic of degree `e`).
    pub fn extension(p: u16, e: u32, modulus: Vec<u16>) -> Result<Field> {
        Field::new(p, e, Some(modulus))
    }

    /// An extension field using the lexicographically smallest monic
    /// irreducible modulus of degree `e`.
    pub fn with_default_modulus(p: u16, e: u32) -> Result<Field> {
        if e == 1 {
            return Field::prime(p);
        }
        let count = (p as u64).pow(e);
        for tail in 0..count {
            let mut m = digits(tail as u32, p, e);
            m.push(1);
            if modulus_is_irreducible(&m, p) {
                return Field::extension(p, e, m);
            }
        }
        Err(Error::Precondition(format!(
            "no irreducible modulus of degree {e} over F_{p}"
        )))
    }

    pub fn new(p: u16, e: u32, modulus: Option<Vec<u16>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Precondition("extension degree must be >= 1".into()));
        }
        let q64 = (p as u64).pow(e);
        if q64 > MAX_Q as u64 {
            return Err(Error::Precondition(format!(
                "q = {p}^{e} exceeds the 2^16 cap"
            )));
        }
        let q = q64 as u32;
        let modulus = match (e, modulus) {
            (1, None) => None,
            (1, Some(_)) => {
                return Err(Error::Precondition(
                    "modulus must be absent for prime fields".into(),
                ))
            }
            (_, None) => {
                return Err(Error::Precondition(
                    "extension fields require a modulus".into(),
                ))
            }
            (_, Some(mut m)) => {
                fp_poly_trim(&mut m);
                if m.len() != e as usize + 1 {
                    return Err(Error::Precondition(format!(
                        "modulus degree must be {e}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::Malformed("modulus coefficient out of range".into()));
                }
                if m[e as usize] != 1 {
                    return Err(Error::Precondition("modulus must be monic".into()));
                }
                if !modulus_is_irreducible(&m, p) {
                    return Err(Error::Precondition("modulus is reducible".into()));
                }
                Some(m)
            }
        };

        let mut spec = FieldSpec {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: vec![0; q as usize],
        };
        spec.build_tables()?;
        Ok(Field(Arc::new(spec)))
    }

    pub fn p(&self) -> u16 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> Option<&[u16]> {
        self.0.modulus.as_deref()
    }

    /// All field elements in canonical index order.
    pub fn elems(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q() as u16 as u32).map(|i| FqElem(i as u16))
    }

    pub fn elem_from_index(&self, i: u32) -> FqElem {
        assert!(i < self.q());
        FqElem(i as u16)
    }

    /// Coefficient vector `(c_0, ..., c_{e-1})` of an element.
    pub fn elem_digits(&self, a: FqElem) -> Vec<u16> {
        digits(a.0 as u32, self.p(), self.e())
    }

    pub fn elem_from_digits(&self, digs: &[u16]) -> Result<FqElem> {
        if digs.len() != self.e() as usize || digs.iter().any(|&d| d >= self.p()) {
            return Err(Error::Malformed("bad coefficient vector".into()));
        }
        Ok(FqElem(index_of(digs, self.p()) as u16))
    }

    /// The deterministic element order: lexicographic on the coefficient
    /// vector `(c_0, c_1, ...)`, each coordinate ordered `0 < 1 < ... < p-1`.
    pub fn elem_cmp(&self, a: FqElem, b: FqElem) -> Ordering {
        if self.e() == 1 {
            return a.0.cmp(&b.0);
        }
        self.elem_digits(a).cmp(&self.elem_digits(b))
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p() as u32;
        if self.e() == 1 {
            return FqElem(((a.0 as u32 + b.0 as u32) % p) as u16);
        }
        let mut n = 0u32;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut mult = 1u32;
        for _ in 0..self.e() {
            n += (x % p + y % p) % p * mult;
            x /= p;
            y /= p;
            mult *= p;
        }
        FqElem(n as u16)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.p() as u32;
        if self.e() == 1 {
            return FqElem(((p - a.0 as u32) % p) as u16);
        }
        let mut n = 0u32;
        let mut x = a.0 as u32;
        let mut mult = 1u32;
        for _ in 0..self.e() {
            n += (p - x % p) % p * mult;
            x /= p;
            mult *= p;
        }
        FqElem(n as u16)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let n = self.q() - 1;
        let k = (self.0.log[a.0 as usize] + self.0.log[b.0 as usize]) % n;
        FqElem(self.0.exp[k as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        let n = self.q() - 1;
        let k = (n - self.0.log[a.0 as usize]) % n;
        Ok(FqElem(self.0.exp[k as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// Trial division against all monic polynomials of degree up to `e/2`.
fn modulus_is_irreducible(m: &[u16], p: u16) -> bool {
    let e = m.len() - 1;
    if e == 0 {
        return false;
    }
    for d in 1..=(e / 2) {
        let count = (p as u64).pow(d as u32);
        for tail in 0..count {
            let mut cand = digits(tail as u32, p, d as u32);
            cand.push(1);
            if fp_poly_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    fn build_tables(&mut self) -> Result<()> {
        let q = self.q;
        let n = q - 1;
        // Multiplication of coefficient vectors, reducing mod the modulus.
        let raw_mul = |a: u32, b: u32| -> u32 {
            if self.e == 1 {
                return a * b % self.p as u32;
            }
            let da = digits(a, self.p, self.e);
            let db = digits(b, self.p, self.e);
            let prod = fp_poly_mul(&da, &db, self.p);
            let rem = fp_poly_rem(&prod, self.modulus.as_ref().unwrap(), self.p);
            let mut full = rem;
            full.resize(self.e as usize, 0);
            index_of(&full, self.p)
        };
        // Find a generator of the multiplicative group by direct order check.
        'outer: for g in 2..q.max(3) {
            if g >= q {
                break;
            }
            let mut seen = 0u32;
            let mut x = 1u32;
            let mut exp = Vec::with_capacity(n as usize);
            let mut log = vec![0u32; q as usize];
            for k in 0..n {
                exp.push(x as u16);
                if x == 1 && k > 0 {
                    continue 'outer; // order too small
                }
                log[x as usize] = k;
                x = raw_mul(x, g);
                seen += 1;
            }
            if x == 1 && seen == n {
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
        }
        // q = 2: the group is trivial and the loop above never runs.
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return Ok(());
        }
        Err(Error::Precondition(
            "failed to construct multiplication tables".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &Field) {
        let q = f.q();
        assert!(q <= 16, "exhaustive check is for small fields");
        for a in f.elems() {
            assert_eq!(f.add(a, FqElem::ZERO), a);
            assert_eq!(f.mul(a, FqElem::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
            }
            for b in f.elems() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elems() {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
        }
    }

    #[test]
    fn prime_fields_satisfy_axioms() {
        for p in [2u16, 3, 5, 7, 11, 13] {
            check_axioms(&Field::prime(p).unwrap());
        }
    }

    #[test]
    fn extension_fields_satisfy_axioms() {
        // F_4 = F_2[x]/(x^2+x+1), F_8, F_9, F_16.
        check_axioms(&Field::extension(2, 2, vec![1, 1, 1]).unwrap());
        check_axioms(&Field::extension(2, 3, vec![1, 1, 0, 1]).unwrap());
        check_axioms(&Field::extension(3, 2, vec![1, 0, 1]).unwrap());
        check_axioms(&Field::with_default_modulus(2, 4).unwrap());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over F_2.
        assert!(Field::extension(2, 2, vec![1, 0, 1]).is_err());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn element_order_is_digit_lexicographic() {
        let f = Field::extension(2, 2, vec![1, 1, 1]).unwrap();
        // Indices 0..4 are (0,0),(1,0),(0,1),(1,1); digit-lex order puts
        // (0,1) after (0,0) but before (1,0).
        let order: Vec<u16> = {
            let mut v: Vec<FqElem> = f.elems().collect();
            v.sort_by(|a, b| f.elem_cmp(*a, *b));
            v.into_iter().map(|x| x.0).collect()
        };
        assert_eq!(order, vec![0, 2, 1, 3]);
    }
}
