//! `R_v`-lattices in `K_v^d`: covolume, basis reduction, successive minima,
//! bounded enumeration, and the weighted systole.
//!
//! Reduction works directly on Laurent-entry bases by iterated
//! cross-cancellation of leading column terms: while the matrix of leading
//! coefficient vectors is singular over `F_q`, a kernel relation is applied
//! to strictly shrink the largest participating column. When it terminates,
//! the column sup-norms realize the successive minima and enumeration inside
//! any box is exact by the predictable degree property. Truncated entries
//! are handled by the window bookkeeping of [`Laurent`]; a reduction that
//! would need coefficients beyond a trustworthy window fails loudly instead
//! of guessing.

use crate::curve::GENUS_ZERO;
use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::kvec::{weighted_norm_log, MatKv, VecKv};
use crate::laurent::Laurent;
use crate::linalg;
use crate::logval::LogVal;
use crate::poly::Poly;
use crate::weights::WeightCtx;
use num_rational::Rational64;

/// Work counter shared by enumeration and reduction loops.
#[derive(Debug, Clone)]
pub struct Budget {
    remaining: u64,
}

impl Budget {
    pub fn new(cap: u64) -> Budget {
        Budget { remaining: cap }
    }

    pub fn charge(&mut self, n: u64) -> Result<()> {
        if self.remaining < n {
            return Err(Error::Budget("enumeration cap exceeded".into()));
        }
        self.remaining -= n;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(50_000_000)
    }
}

/// A nonsingular `d x d` basis whose columns span an `R_v`-lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    mat: MatKv,
}

impl LatticeBasis {
    pub fn new(mat: MatKv) -> Result<LatticeBasis> {
        if mat.rows() != mat.cols() {
            return Err(Error::Precondition("basis matrix must be square".into()));
        }
        Ok(LatticeBasis { mat })
    }

    pub fn identity(field: &Field, d: usize) -> LatticeBasis {
        LatticeBasis {
            mat: MatKv::identity(field, d),
        }
    }

    pub fn d(&self) -> usize {
        self.mat.rows()
    }

    pub fn field(&self) -> &Field {
        self.mat.field()
    }

    pub fn matrix(&self) -> &MatKv {
        &self.mat
    }

    pub fn matrix_mut(&mut self) -> &mut MatKv {
        &mut self.mat
    }

    pub fn col(&self, j: usize) -> Vec<Laurent> {
        (0..self.d()).map(|i| self.mat.at(i, j).clone()).collect()
    }

    /// Determinant by cofactor expansion (division-free, so truncated
    /// entries degrade conservatively instead of erroring early).
    pub fn det(&self) -> Laurent {
        det_rec(&self.mat, &(0..self.d()).collect::<Vec<_>>(), 0)
    }

    /// `log_q Covol`: `-v(det) - d` at genus zero.
    pub fn covol_log(&self) -> Result<LogVal> {
        let det = self.det();
        match det.valuation() {
            Err(e) => Err(e),
            Ok(None) => Err(Error::Precondition("singular basis".into())),
            Ok(Some(v)) => Ok(LogVal::Finite(GENUS_ZERO.covol_log(self.d(), v))),
        }
    }

    /// Weak-Popov style reduction; see the module docs.
    pub fn reduce(&self, budget: &mut Budget) -> Result<Reduced> {
        let f = self.field().clone();
        let d = self.d();
        let mut cols: Vec<Vec<Laurent>> = (0..d).map(|j| self.col(j)).collect();
        // transform[j] = column j of U, with reduced = original * U.
        let mut transform: Vec<Vec<Poly>> = (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| {
                        if i == j {
                            Poly::one(&f)
                        } else {
                            Poly::zero(&f)
                        }
                    })
                    .collect()
            })
            .collect();

        loop {
            budget.charge(1)?;
            let mut norms = Vec::with_capacity(d);
            let mut lead = Vec::with_capacity(d);
            for col in &cols {
                let (norm, lc) = col_norm_and_lead(&f, col)?;
                norms.push(norm);
                lead.push(lc);
            }
            // Leading coefficient matrix: row i, column j.
            let lc_rows: Vec<Vec<FqElem>> =
                (0..d).map(|i| (0..d).map(|j| lead[j][i]).collect()).collect();
            let Some(c) = linalg::kernel_vector(&f, &lc_rows, d) else {
                return Ok(Reduced {
                    field: f,
                    cols,
                    norms,
                    transform,
                });
            };
            let support: Vec<usize> = (0..d).filter(|&j| !c[j].is_zero()).collect();
            let &jstar = support
                .iter()
                .max_by_key(|&&j| (norms[j], j))
                .expect("nonzero kernel vector");
            let nstar = norms[jstar];
            let mut new_col = vec![Laurent::zero(&f); d];
            let mut new_u = vec![Poly::zero(&f); d];
            for &j in &support {
                let shift = nstar - norms[j];
                debug_assert!(shift >= 0);
                for i in 0..d {
                    let t = cols[j][i].mul_zpow(shift).scalar_mul(c[j]);
                    new_col[i] = new_col[i].add(&t);
                    let tu = transform[j][i].shift_up(shift as usize).scalar_mul(c[j]);
                    new_u[i] = new_u[i].add(&tu);
                }
            }
            if new_col.iter().all(Laurent::is_exact_zero) {
                return Err(Error::Precondition("singular basis".into()));
            }
            cols[jstar] = new_col;
            transform[jstar] = new_u;
        }
    }

    /// Successive minima with realizing vectors. The exact genus-zero
    /// Minkowski identity `sum_k log lambda_k = d + covol_log` is checked on
    /// every reduction whenever the covolume is decidable.
    pub fn successive_minima(&self, budget: &mut Budget) -> Result<Minima> {
        let red = self.reduce(budget)?;
        let d = self.d();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&j| (red.norms[j], j));
        let lambda_logs: Vec<i64> = order.iter().map(|&j| red.norms[j]).collect();
        let realizers: Vec<VecKv> = order
            .iter()
            .map(|&j| VecKv::new(red.cols[j].clone()))
            .collect();
        let covol = self.covol_log();
        let product_ok = match &covol {
            Ok(LogVal::Finite(c)) => {
                let sum: i64 = lambda_logs.iter().sum();
                let expected = GENUS_ZERO.minkowski_upper_log(d, *c);
                assert_eq!(
                    Rational64::from_integer(sum),
                    expected,
                    "Minkowski product identity violated: reduction bug"
                );
                Some(true)
            }
            _ => None,
        };
        Ok(Minima {
            lambda_logs,
            realizers,
            covol_log: covol.ok(),
            product_ok,
            reduced: red,
        })
    }

    /// Minimum over nonzero lattice vectors `(theta, xi)` of
    /// `max(||theta||_r, ||xi||_s)` in log scale.
    pub fn rs_systole(&self, ctx: &WeightCtx, budget: &mut Budget) -> Result<LogVal> {
        assert_eq!(self.d(), ctx.d());
        let red = self.reduce(budget)?;
        let mut best = LogVal::NegInf;
        let mut have = false;
        for col in &red.cols {
            let v = rs_value(col, ctx)?;
            if !have || v < best {
                best = v;
                have = true;
            }
        }
        debug_assert!(have);
        let sigma = best
            .finite()
            .expect("nonzero lattice vector has finite weighted value");
        let sup_bound = weighted_box_sup_bound(&ctx.all_weights(), sigma);
        let mut min_val = best;
        red.for_each_in_box(sup_bound, true, budget, |_, u| {
            let v = rs_value(u, ctx)?;
            if v < min_val {
                min_val = v;
            }
            Ok(())
        })?;
        Ok(min_val)
    }
}

/// `max(||theta||_r, ||xi||_s)` of a `d`-vector split as `(m, n)`.
pub fn rs_value(entries: &[Laurent], ctx: &WeightCtx) -> Result<LogVal> {
    let m = ctx.m();
    let a = weighted_norm_log(&entries[..m], ctx.r())?;
    let b = weighted_norm_log(&entries[m..], ctx.s())?;
    Ok(a.max(b))
}

/// Sup-norm bound (integer log) containing every vector of weighted value
/// `<= sigma`: coordinate `i` satisfies `log|u_i| <= w_i * sigma`.
pub fn weighted_box_sup_bound(weights: &[i64], sigma: Rational64) -> i64 {
    weights
        .iter()
        .map(|&w| floor_rat(sigma * Rational64::from_integer(w)))
        .max()
        .expect("nonempty weights")
}

pub fn floor_rat(x: Rational64) -> i64 {
    x.floor().to_integer()
}

fn det_rec(mat: &MatKv, cols: &[usize], row: usize) -> Laurent {
    let f = mat.field();
    if cols.len() == 1 {
        return mat.at(row, cols[0]).clone();
    }
    let mut acc = Laurent::zero(f);
    for (k, &j) in cols.iter().enumerate() {
        let entry = mat.at(row, j);
        if entry.is_exact_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        let minor = det_rec(mat, &rest, row + 1);
        let term = entry.mul(&minor);
        acc = if k % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Sup-norm (integer log) and leading coefficient vector of a column.
fn col_norm_and_lead(_f: &Field, col: &[Laurent]) -> Result<(i64, Vec<FqElem>)> {
    let mut known_max: Option<i64> = None;
    let mut unknown_cap: Option<i64> = None;
    for e in col {
        match e.abs_log() {
            Ok(LogVal::NegInf) => {}
            Ok(LogVal::Finite(r)) => {
                let v = r.to_integer();
                known_max = Some(known_max.map_or(v, |m: i64| m.max(v)));
            }
            Err(_) => {
                // Undecidable entry: |e| <= q^{-known_end}.
                let cap = -e.known_end();
                unknown_cap = Some(unknown_cap.map_or(cap, |m: i64| m.max(cap)));
            }
        }
    }
    let norm = match (known_max, unknown_cap) {
        (None, None) => {
            return Err(Error::Precondition("singular basis".into()));
        }
        (None, Some(_)) => {
            return Err(Error::Precision(
                "column norm undecidable at available precision".into(),
            ));
        }
        (Some(m), Some(cap)) if m <= cap => {
            return Err(Error::Precision(
                "column norm undecidable at available precision".into(),
            ));
        }
        (Some(m), _) => m,
    };
    let lc: Result<Vec<FqElem>> = col.iter().map(|e| e.coeff(-norm)).collect();
    Ok((norm, lc?))
}

/// Output of a reduction: columns, their sup-norm logs, and the unimodular
/// transform with `reduced = original * transform` (column convention).
#[derive(Debug, Clone)]
pub struct Reduced {
    field: Field,
    pub cols: Vec<Vec<Laurent>>,
    pub norms: Vec<i64>,
    pub transform: Vec<Vec<Poly>>,
}

impl Reduced {
    pub fn d(&self) -> usize {
        self.cols.len()
    }

    /// Visit every nonzero lattice vector of sup-norm `<= q^bound`
    /// (one representative per `F_q^*`-scaling class when `projective`),
    /// in a deterministic order. The callback receives the coefficient
    /// tuple with respect to the reduced basis and the assembled vector.
    pub fn for_each_in_box<F>(
        &self,
        bound: i64,
        projective: bool,
        budget: &mut Budget,
        mut visit: F,
    ) -> Result<()>
    where
        F: FnMut(&[Poly], &[Laurent]) -> Result<()>,
    {
        let caps: Vec<i64> = self.norms.iter().map(|&n| bound - n).collect();
        let field = self.field.clone();
        for_each_tuple(&field, &caps, projective, budget, |tuple| {
            let u = self.assemble(tuple);
            visit(tuple, &u)
        })
    }

    /// `sum_j tuple[j] * col_j`.
    pub fn assemble(&self, tuple: &[Poly]) -> Vec<Laurent> {
        let d = self.d();
        let mut out = vec![Laurent::zero(&self.field); d];
        for (j, p) in tuple.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let pl = Laurent::from_poly(p.clone());
            for i in 0..d {
                out[i] = out[i].add(&self.cols[j][i].mul(&pl));
            }
        }
        out
    }

    /// Coefficients of the same vector with respect to the original basis:
    /// `w = transform * tuple`.
    pub fn to_original_coords(&self, tuple: &[Poly]) -> Vec<Poly> {
        let d = self.d();
        let field = &self.field;
        let mut w = vec![Poly::zero(field); d];
        for (j, p) in tuple.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for i in 0..d {
                w[i] = w[i].add(&self.transform[j][i].mul(p));
            }
        }
        w
    }

    /// The canonical shortest vector: among all vectors realizing
    /// `lambda_1`, the one whose coefficient tuple with respect to the
    /// original basis is smallest in the deterministic polynomial order.
    /// Returns `(w, u)` with `u = original_basis * w`.
    pub fn canonical_shortest(&self, budget: &mut Budget) -> Result<(Vec<Poly>, Vec<Laurent>)> {
        let lambda1 = *self.norms.iter().min().expect("nonempty basis");
        let mut best: Option<(Vec<Poly>, Vec<Laurent>)> = None;
        self.for_each_in_box(lambda1, true, budget, |tuple, u| {
            let w = self.to_original_coords(tuple);
            let better = match &best {
                None => true,
                Some((bw, _)) => cmp_poly_tuple(&w, bw) == std::cmp::Ordering::Less,
            };
            if better {
                best = Some((w, u.to_vec()));
            }
            Ok(())
        })?;
        best.ok_or_else(|| Error::Precondition("empty shortest-vector search".into()))
    }
}

pub fn cmp_poly_tuple(a: &[Poly], b: &[Poly]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp_key(y) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// Enumerate nonzero polynomial tuples with `deg tuple[j] <= caps[j]`
/// (negative cap pins the coordinate to zero), in a deterministic odometer
/// order. With `projective`, only tuples whose first nonzero coefficient
/// (scanning coordinates, then degrees low to high) equals 1 are visited.
pub fn for_each_tuple<F>(
    field: &Field,
    caps: &[i64],
    projective: bool,
    budget: &mut Budget,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[Poly]) -> Result<()>,
{
    // Flatten digit positions: (coordinate, degree) pairs.
    let mut positions: Vec<(usize, usize)> = Vec::new();
    for (j, &cap) in caps.iter().enumerate() {
        if cap >= 0 {
            for k in 0..=(cap as usize) {
                positions.push((j, k));
            }
        }
    }
    if positions.is_empty() {
        return Ok(());
    }
    let q = field.q() as u64;
    let mut digits = vec![0u32; positions.len()];
    loop {
        // Advance the odometer (skipping the all-zero tuple on entry).
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(());
            }
            digits[pos] += 1;
            if (digits[pos] as u64) < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        budget.charge(1)?;
        if projective {
            let first = digits.iter().find(|&&d| d != 0).copied().unwrap_or(0);
            if first != 1 {
                continue;
            }
        }
        let mut tuple: Vec<Vec<FqElem>> = caps
            .iter()
            .map(|&cap| vec![FqElem::ZERO; if cap >= 0 { cap as usize + 1 } else { 0 }])
            .collect();
        for (idx, &(j, k)) in positions.iter().enumerate() {
            tuple[j][k] = field.elem_from_index(digits[idx]);
        }
        let polys: Vec<Poly> = tuple
            .into_iter()
            .map(|cs| Poly::from_coeffs(field, cs))
            .collect();
        visit(&polys)?;
    }
}

/// Successive minima together with the data needed by callers.
#[derive(Debug, Clone)]
pub struct Minima {
    pub lambda_logs: Vec<i64>,
    pub realizers: Vec<VecKv>,
    pub covol_log: Option<LogVal>,
    pub product_ok: Option<bool>,
    pub reduced: Reduced,
}

impl Minima {
    pub fn lambda1_log(&self) -> i64 {
        self.lambda_logs[0]
    }

    pub fn lambda_d_log(&self) -> i64 {
        *self.lambda_logs.last().unwrap()
    }
}

/// Independent successive-minima oracle: for each candidate norm bound `B`,
/// the set `{x in R_v^d : ||Lx|| <= q^B}` is cut out by `F_q`-linear
/// constraints on the coefficients of `x` (every coefficient of `(Lx)_i` at
/// exponents below `-B` vanishes); the `k`-th minimum is the first `B` at
/// which the solution space has `K`-rank `>= k`. Shares only scalar
/// arithmetic with the reduction path.
pub fn oracle_minima(basis: &LatticeBasis, budget: &mut Budget) -> Result<Vec<i64>> {
    let f = basis.field().clone();
    let d = basis.d();
    let det = basis.det();
    let vdet = match det.valuation()? {
        None => return Err(Error::Precondition("singular basis".into())),
        Some(v) => v,
    };
    let logdet = -vdet;
    // Entry magnitude and per-column sup-norm bounds.
    let mut entry_max = i64::MIN;
    let mut col_max = i64::MIN;
    for j in 0..d {
        let mut cn = i64::MIN;
        for i in 0..d {
            if let LogVal::Finite(r) = basis.matrix().at(i, j).abs_log()? {
                let v = r.to_integer();
                entry_max = entry_max.max(v);
                cn = cn.max(v);
            }
        }
        if cn == i64::MIN {
            return Err(Error::Precondition("zero basis column".into()));
        }
        col_max = col_max.max(cn);
    }
    // lambda_1 >= logdet - (d-1) * col_max, lambda_d <= col_max.
    let b_lo = logdet - (d as i64 - 1) * col_max;
    let mut lambdas = Vec::with_capacity(d);
    let mut b = b_lo;
    while lambdas.len() < d {
        budget.charge(1)?;
        if b > col_max {
            return Err(Error::Precondition(
                "oracle bound sweep exceeded the lambda_d bound: inconsistent input".into(),
            ));
        }
        let rank = bounded_space_rank(&f, basis, b, entry_max, logdet, budget)?;
        while lambdas.len() < rank.min(d) {
            lambdas.push(b);
        }
        b += 1;
    }
    Ok(lambdas)
}

/// `K`-rank of `{x : ||Lx|| <= q^B}` via an `F_q` nullspace on coefficient
/// vectors of `x` up to the Cramer degree bound.
fn bounded_space_rank(
    f: &Field,
    basis: &LatticeBasis,
    bound: i64,
    entry_max: i64,
    logdet: i64,
    budget: &mut Budget,
) -> Result<usize> {
    let d = basis.d();
    // |x_j| <= |adj| / |det| * ||u||.
    let deg_cap = (d as i64 - 1) * entry_max - logdet + bound;
    if deg_cap < 0 {
        return Ok(0);
    }
    let cols_per_coord = deg_cap as usize + 1;
    let ncols = d * cols_per_coord;
    // Constraint exponents: coefficients of (Lx)_i at e in [e_min, -B-1]
    // must vanish; below e_min they vanish automatically.
    let mut e_min = i64::MAX;
    for i in 0..d {
        for j in 0..d {
            if let Ok(Some(v)) = basis.matrix().at(i, j).valuation() {
                e_min = e_min.min(v - deg_cap);
            }
        }
    }
    let mut rows: Vec<Vec<FqElem>> = Vec::new();
    for i in 0..d {
        for e in e_min..=(-bound - 1) {
            budget.charge(1)?;
            let mut row = vec![FqElem::ZERO; ncols];
            let mut nonzero = false;
            for j in 0..d {
                let entry = basis.matrix().at(i, j);
                for k in 0..cols_per_coord {
                    // coeff of t^e in Z^k * entry is entry.coeff(e + k).
                    let c = entry.coeff(e + k as i64)?;
                    if !c.is_zero() {
                        nonzero = true;
                    }
                    row[j * cols_per_coord + k] = c;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let ns = linalg::nullspace(f, &rows, ncols);
    if ns.is_empty() {
        return Ok(0);
    }
    // Convert nullspace basis vectors to polynomial tuples and take K-rank.
    let cols: Vec<Vec<crate::ratfunc::RatFunc>> = ns
        .iter()
        .map(|v| {
            (0..d)
                .map(|j| {
                    let cs = v[j * cols_per_coord..(j + 1) * cols_per_coord].to_vec();
                    crate::ratfunc::RatFunc::from_poly(Poly::from_coeffs(f, cs))
                })
                .collect()
        })
        .collect();
    Ok(linalg::ratfunc_rank(f, &cols))
}
