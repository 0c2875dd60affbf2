//! Small exact linear algebra helpers: reduced row echelon form and
//! nullspaces over `F_q`, and matrix rank over `K = F_q(Z)`.

use crate::field::{Field, FqElem};
use crate::ratfunc::RatFunc;

/// Row-reduce `rows` in place over `F_q`; returns the pivot column of each
/// pivot row in order.
pub fn rref(field: &Field, rows: &mut [Vec<FqElem>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = field.inv(rows[row][col]).expect("nonzero pivot");
        for c in col..ncols {
            rows[row][c] = field.mul(rows[row][c], inv);
        }
        for i in 0..nrows {
            if i != row && !rows[i][col].is_zero() {
                let factor = rows[i][col];
                for c in col..ncols {
                    let t = field.mul(factor, rows[row][c]);
                    rows[i][c] = field.sub(rows[i][c], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    pivots
}

/// A basis of the right nullspace `{x : M x = 0}` of the matrix with the
/// given rows, in a deterministic order (one basis vector per free column,
/// free columns ascending).
pub fn nullspace(field: &Field, rows: &[Vec<FqElem>], ncols: usize) -> Vec<Vec<FqElem>> {
    let mut work: Vec<Vec<FqElem>> = rows.to_vec();
    let pivots = rref(field, &mut work);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![FqElem::ZERO; ncols];
        v[free] = FqElem::ONE;
        for (prow, &pcol) in pivots.iter().enumerate() {
            // x_pcol = -sum over free columns of row coefficient.
            v[pcol] = field.neg(work[prow][free]);
        }
        basis.push(v);
    }
    basis
}

/// One nonzero kernel vector, if the matrix is singular.
pub fn kernel_vector(field: &Field, rows: &[Vec<FqElem>], ncols: usize) -> Option<Vec<FqElem>> {
    nullspace(field, rows, ncols).into_iter().next()
}

/// Rank over `K` of a matrix given by columns of rational functions.
pub fn ratfunc_rank(field: &Field, cols: &[Vec<RatFunc>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let nrows = cols[0].len();
    let mut work: Vec<Vec<RatFunc>> = cols.to_vec();
    let mut rank = 0;
    let mut used = vec![false; work.len()];
    for row in 0..nrows {
        let Some(j) = (0..work.len()).find(|&j| !used[j] && !work[j][row].is_zero()) else {
            continue;
        };
        used[j] = true;
        rank += 1;
        let pivot = work[j][row].clone();
        for k in 0..work.len() {
            if used[k] || work[k][row].is_zero() {
                continue;
            }
            let factor = work[k][row].div(&pivot).expect("nonzero pivot");
            for i in 0..nrows {
                let t = work[j][i].mul(&factor).expect("same field");
                work[k][i] = work[k][i].sub(&t).expect("same field");
            }
        }
    }
    let _ = field;
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn nullspace_dimension() {
        let f = f3();
        // Rank-1 matrix over F_3: rows (1,2,0), (2,4=1,0).
        let rows = vec![
            vec![FqElem(1), FqElem(2), FqElem(0)],
            vec![FqElem(2), FqElem(1), FqElem(0)],
        ];
        let ns = nullspace(&f, &rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                let mut acc = FqElem::ZERO;
                for (a, b) in row.iter().zip(v.iter()) {
                    acc = f.add(acc, f.mul(*a, *b));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let f = f3();
        let rows = vec![
            vec![FqElem(1), FqElem(1)],
            vec![FqElem(0), FqElem(2)],
        ];
        assert!(kernel_vector(&f, &rows, 2).is_none());
    }

    #[test]
    fn ratfunc_rank_detects_dependence() {
        let f = f3();
        let z = RatFunc::from_poly(Poly::monomial(&f, FqElem(1), 1));
        let one = RatFunc::one(&f);
        // Columns (1, Z) and (Z, Z^2) are proportional over K.
        let c1 = vec![one.clone(), z.clone()];
        let c2 = vec![z.clone(), z.mul(&z).unwrap()];
        assert_eq!(ratfunc_rank(&f, &[c1.clone(), c2.clone()]), 1);
        let c3 = vec![one.clone(), one.clone()];
        assert_eq!(ratfunc_rank(&f, &[c1, c2, c3]), 2);
    }
}
