//! Vectors and matrices over `K_v`, with the weighted quasinorms and
//! weighted distances to the integral points.

use crate::error::Result;
use crate::field::Field;
use crate::laurent::Laurent;
use crate::logval::LogVal;
use crate::poly::Poly;

/// A vector over `K_v` with entries in a shared field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecKv {
    entries: Vec<Laurent>,
}

impl VecKv {
    pub fn new(entries: Vec<Laurent>) -> VecKv {
        assert!(!entries.is_empty());
        VecKv { entries }
    }

    pub fn zero(field: &Field, len: usize) -> VecKv {
        VecKv::new(vec![Laurent::zero(field); len])
    }

    pub fn from_polys(polys: &[Poly]) -> VecKv {
        VecKv::new(polys.iter().map(|p| Laurent::from_poly(p.clone())).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Laurent] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Laurent {
        &self.entries[i]
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn add(&self, other: &VecKv) -> VecKv {
        assert_eq!(self.len(), other.len());
        VecKv::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &VecKv) -> VecKv {
        assert_eq!(self.len(), other.len());
        VecKv::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> VecKv {
        VecKv::new(self.entries.iter().map(Laurent::neg).collect())
    }

    /// True when every entry is exactly zero.
    pub fn is_exact_zero(&self) -> bool {
        self.entries.iter().all(Laurent::is_exact_zero)
    }

    /// Dot product over `K_v`.
    pub fn dot(&self, other: &VecKv) -> Laurent {
        assert_eq!(self.len(), other.len());
        let mut acc = Laurent::zero(self.field());
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            acc = acc.add(&a.mul(b));
        }
        acc
    }

    /// Sup-norm in log scale.
    pub fn sup_log(&self) -> Result<LogVal> {
        let mut best = LogVal::NegInf;
        for e in &self.entries {
            best = best.max(e.abs_log()?);
        }
        Ok(best)
    }
}

/// `max_i |x_i|^{1/w_i}` in log scale; `NEG_INF` for the zero vector.
pub fn weighted_norm_log(entries: &[Laurent], weights: &[i64]) -> Result<LogVal> {
    assert_eq!(entries.len(), weights.len());
    let mut best = LogVal::NegInf;
    for (e, &w) in entries.iter().zip(weights.iter()) {
        best = best.max(e.abs_log()?.div_weight(w));
    }
    Ok(best)
}

/// `inf_{x integral} max_i |x_i - p_i|^{1/w_i}` in log scale: the weighted
/// distance to `R_v^len`, computed coordinatewise.
pub fn weighted_dist_log(entries: &[Laurent], weights: &[i64]) -> Result<LogVal> {
    assert_eq!(entries.len(), weights.len());
    let mut best = LogVal::NegInf;
    for (e, &w) in entries.iter().zip(weights.iter()) {
        best = best.max(e.dist_to_rv_log()?.div_weight(w));
    }
    Ok(best)
}

/// A dense matrix over `K_v`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatKv {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Laurent>,
}

impl MatKv {
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<Laurent>) -> MatKv {
        assert_eq!(entries.len(), rows * cols);
        MatKv {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> MatKv {
        MatKv::new(field, rows, cols, vec![Laurent::zero(field); rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> MatKv {
        let mut m = MatKv::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Laurent::one(field);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Laurent {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> MatKv {
        let mut out = MatKv::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Matrix-vector product over `K_v`.
    pub fn apply(&self, v: &VecKv) -> VecKv {
        assert_eq!(v.len(), self.cols);
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Laurent::zero(&self.field);
            for j in 0..self.cols {
                acc = acc.add(&self.at(i, j).mul(v.entry(j)));
            }
            out.push(acc);
        }
        VecKv::new(out)
    }

    /// Apply to a vector of polynomials (an integral point).
    pub fn apply_polys(&self, v: &[Poly]) -> VecKv {
        self.apply(&VecKv::from_polys(v))
    }

    pub fn row(&self, i: usize) -> VecKv {
        VecKv::new((0..self.cols).map(|j| self.at(i, j).clone()).collect())
    }

    pub fn col(&self, j: usize) -> VecKv {
        VecKv::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }
}

/// Solve `sum_j cols[j] * x_j = rhs` over `K_v` by Gaussian elimination
/// with partial pivoting on decidable absolute values. Exact inputs give an
/// exact solution; truncated inputs degrade conservatively and fail loudly
/// when a pivot is undecidable.
pub fn solve_columns(cols: &[Vec<Laurent>], rhs: &[Laurent]) -> Result<Vec<Laurent>> {
    let d = cols.len();
    assert!(d > 0 && cols.iter().all(|c| c.len() == d) && rhs.len() == d);
    let field = cols[0][0].field().clone();
    // Augmented working copy, row-major.
    let mut work: Vec<Vec<Laurent>> = (0..d)
        .map(|i| {
            let mut row: Vec<Laurent> = (0..d).map(|j| cols[j][i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivot_row_of_col = vec![usize::MAX; d];
    let mut used_row = vec![false; d];
    for col in 0..d {
        // Pivot: the unused row with the largest decidable entry.
        let mut best: Option<(crate::logval::LogVal, usize)> = None;
        for (i, row) in work.iter().enumerate() {
            if used_row[i] {
                continue;
            }
            match row[col].abs_log() {
                Ok(crate::logval::LogVal::NegInf) => {}
                Ok(v) => {
                    if best.as_ref().map_or(true, |(b, _)| v > *b) {
                        best = Some((v, i));
                    }
                }
                Err(e) => return Err(e),
            }
        }
        let Some((_, p)) = best else {
            return Err(crate::error::Error::Precondition(
                "singular system".into(),
            ));
        };
        used_row[p] = true;
        pivot_row_of_col[col] = p;
        let inv = Laurent::one(&field).div(&work[p][col].clone())?;
        for c in 0..=d {
            work[p][c] = work[p][c].mul(&inv);
        }
        for i in 0..d {
            if i == p || work[i][col].is_exact_zero() {
                continue;
            }
            let factor = work[i][col].clone();
            for c in 0..=d {
                let t = work[p][c].mul(&factor);
                work[i][c] = work[i][c].sub(&t);
            }
        }
    }
    Ok((0..d).map(|col| work[pivot_row_of_col[col]][d].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqElem;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn weighted_norm_examples() {
        let f = f2();
        // r = (1,2), xi = (Z^{-3}, Z^{-4}): max(-3, -2) = -2.
        let xi = [Laurent::z_pow(&f, -3), Laurent::z_pow(&f, -4)];
        assert_eq!(
            weighted_norm_log(&xi, &[1, 2]).unwrap(),
            LogVal::from_int(-2)
        );
        // Zero vector.
        let z = [Laurent::zero(&f), Laurent::zero(&f)];
        assert_eq!(weighted_norm_log(&z, &[1, 2]).unwrap(), LogVal::NegInf);
        // r = (2), xi = (Z^3): 3/2.
        let one = [Laurent::z_pow(&f, 3)];
        assert_eq!(
            weighted_norm_log(&one, &[2]).unwrap(),
            LogVal::from_ratio(3, 2)
        );
    }

    #[test]
    fn weighted_dist_examples() {
        let f = f2();
        // r = (1), xi = (Z + Z^{-2}): distance log -2.
        let xi = [Laurent::z_pow(&f, 1).add(&Laurent::z_pow(&f, -2))];
        assert_eq!(weighted_dist_log(&xi, &[1]).unwrap(), LogVal::from_int(-2));
        // r = (1,1), xi = (Z^{-1}, Z^2): max(-1, neg_inf) = -1.
        let xi = [Laurent::z_pow(&f, -1), Laurent::z_pow(&f, 2)];
        assert_eq!(
            weighted_dist_log(&xi, &[1, 1]).unwrap(),
            LogVal::from_int(-1)
        );
        // Integral vector.
        let xi = [Laurent::one(&f), Laurent::z_pow(&f, 5)];
        assert_eq!(weighted_dist_log(&xi, &[1, 1]).unwrap(), LogVal::NegInf);
    }

    #[test]
    fn solve_round_trip() {
        let f = Field::prime(3).unwrap();
        // Columns (1, Z), (Z^{-1}, Z^2); rhs chosen from a known x.
        let cols = vec![
            vec![
                Laurent::one(&f),
                Laurent::z_pow(&f, 1),
            ],
            vec![
                Laurent::z_pow(&f, -1),
                Laurent::z_pow(&f, 2),
            ],
        ];
        let x = [
            Laurent::z_pow(&f, 2),
            Laurent::one(&f).add(&Laurent::z_pow(&f, -3)),
        ];
        let rhs: Vec<Laurent> = (0..2)
            .map(|i| {
                cols[0][i]
                    .mul(&x[0])
                    .add(&cols[1][i].mul(&x[1]))
            })
            .collect();
        let sol = solve_columns(&cols, &rhs).unwrap();
        for (a, b) in sol.iter().zip(x.iter()) {
            assert!(a.sub(b).is_exact_zero());
        }
    }

    #[test]
    fn matrix_apply() {
        let f = f2();
        let mut m = MatKv::identity(&f, 2);
        *m.at_mut(0, 1) = Laurent::z_pow(&f, -1);
        let v = VecKv::new(vec![Laurent::one(&f), Laurent::from_poly(
            crate::poly::Poly::monomial(&f, FqElem::ONE, 1),
        )]);
        let out = m.apply(&v);
        // (1 + Z * Z^{-1}, Z) = (0, Z) over F_2.
        assert!(out.entry(0).is_exact_zero());
        assert_eq!(out.entry(1).abs_log().unwrap(), LogVal::from_int(1));
    }
}
