//! Dirichlet-type solvers: given a matrix `A`, produce a nonzero integral
//! `y` making `<A y>` small while `y` stays bounded, by taking a shortest
//! vector of the scaled lattice `diag(Z^{r'}, Z^{-s'}) u_A R_v^d`.

use crate::curve::GENUS_ZERO;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kvec::{weighted_dist_log, weighted_norm_log, MatKv, VecKv};
use crate::lattice::{Budget, LatticeBasis};
use crate::laurent::Laurent;
use crate::logval::LogVal;
use crate::poly::Poly;
use crate::weights::WeightCtx;

/// `u_A = [[I_m, A], [0, I_n]]` as a `d x d` matrix.
pub fn u_a_matrix(a: &MatKv) -> MatKv {
    let f = a.field();
    let m = a.rows();
    let n = a.cols();
    let d = m + n;
    let mut out = MatKv::identity(f, d);
    for i in 0..m {
        for j in 0..n {
            *out.at_mut(i, m + j) = a.at(i, j).clone();
        }
    }
    out
}

/// Scale row `i` of `mat` by `Z^{exps[i]}`.
pub fn scale_rows(mat: &MatKv, exps: &[i64]) -> MatKv {
    assert_eq!(mat.rows(), exps.len());
    let mut out = mat.clone();
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            *out.at_mut(i, j) = mat.at(i, j).mul_zpow(exps[i]);
        }
    }
    out
}

/// Dirichlet's theorem, constructively: returns `y != 0` in `R_v^n` with
/// `|<A_i y>| <= q^{-r'_i}` and `|y_j| <= q^{s'_j}` (genus-zero constants).
///
/// The solution is the canonical shortest vector of the lattice
/// `diag(Z^{r'_1}, ..., Z^{r'_m}, Z^{-s'_1}, ..., Z^{-s'_n}) u_A R_v^d`.
pub fn dirichlet_solve(
    a: &MatKv,
    rprime: &[i64],
    sprime: &[i64],
    budget: &mut Budget,
) -> Result<Vec<Poly>> {
    let m = a.rows();
    let n = a.cols();
    if rprime.len() != m || sprime.len() != n {
        return Err(Error::Precondition("exponent tuple lengths".into()));
    }
    let sum_r: i64 = rprime.iter().sum();
    let sum_s: i64 = sprime.iter().sum();
    if sum_r != sum_s {
        return Err(Error::Precondition(
            "sum r'_i must equal sum s'_j".into(),
        ));
    }
    let min_rp = GENUS_ZERO.dirichlet_min_rprime();
    if rprime.iter().any(|&r| r < min_rp) {
        return Err(Error::Precondition(format!(
            "every r'_i must be at least {min_rp}"
        )));
    }
    let mut exps: Vec<i64> = rprime.to_vec();
    exps.extend(sprime.iter().map(|&s| -s));
    let scaled = scale_rows(&u_a_matrix(a), &exps);
    let basis = LatticeBasis::new(scaled)?;
    let red = basis.reduce(budget)?;
    let (w, _) = red.canonical_shortest(budget)?;
    // Lattice point is D u_A w; its y-block is the tail of w itself.
    let y: Vec<Poly> = w[m..].to_vec();
    if y.iter().all(Poly::is_zero) {
        // The proof rules this out whenever r'_i >= 1: a y = 0 solution
        // would force the x-block below 1 in absolute value, hence zero.
        return Err(Error::Precondition(
            "shortest vector has zero y-block; exponents too weak".into(),
        ));
    }
    Ok(y)
}

/// Weighted Dirichlet: `<A y>_r <= q^{-alpha}` and `||y||_s <= q^{alpha}`
/// (genus-zero prefactors equal 1), by delegation with `r' = alpha r`,
/// `s' = alpha s`.
pub fn dirichlet_weighted(
    a: &MatKv,
    alpha: i64,
    ctx: &WeightCtx,
    budget: &mut Budget,
) -> Result<Vec<Poly>> {
    if alpha < GENUS_ZERO.dirichlet_min_alpha(ctx.min_r()) {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} below the admissible threshold"
        )));
    }
    let rprime: Vec<i64> = ctx.r().iter().map(|&r| alpha * r).collect();
    let sprime: Vec<i64> = ctx.s().iter().map(|&s| alpha * s).collect();
    dirichlet_solve(a, &rprime, &sprime, budget)
}

/// Postcondition checker shared by tests and the CLI: evaluates
/// `<A y>_r` and `||y||_s` independently of the solver.
pub fn dirichlet_check(
    a: &MatKv,
    y: &[Poly],
    ctx: &WeightCtx,
    alpha: i64,
) -> Result<(LogVal, LogVal, bool)> {
    let image = a.apply_polys(y);
    let dist = weighted_dist_log(image.entries(), ctx.r())?;
    let ynorm = weighted_norm_log(&poly_vec_laurent(a.field(), y), ctx.s())?;
    let ok = dist <= LogVal::from_int(-alpha) && ynorm <= LogVal::from_int(alpha);
    Ok((dist, ynorm, ok))
}

pub fn poly_vec_laurent(field: &Field, v: &[Poly]) -> Vec<Laurent> {
    let _ = field;
    v.iter().map(|p| Laurent::from_poly(p.clone())).collect()
}

/// All integral points `y` (up to `F_q^*` scaling) admissible for the box
/// `<A y>_r <= q^{dist_log}`, `||y||_s <= q^{norm_log}`, visited via the
/// reduced basis of the correspondingly scaled `u_A`-lattice. Every
/// admissible `y` appears: its nearest-integer companion `x` puts `(x, y)`
/// inside the box, and any nonzero boxed vector has `y != 0` whenever
/// `dist_log < 0`.
pub fn for_each_admissible_y<F>(
    a: &MatKv,
    ctx: &WeightCtx,
    dist_log: num_rational::Rational64,
    dist_strict: bool,
    norm_log: num_rational::Rational64,
    budget: &mut Budget,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[Poly]) -> Result<()>,
{
    use num_rational::Rational64;
    let m = ctx.m();
    let dist_cap = |r: i64| {
        let t = dist_log * Rational64::from_integer(r);
        if dist_strict && t.is_integer() {
            t.to_integer() - 1
        } else {
            crate::lattice::floor_rat(t)
        }
    };
    let mut exps: Vec<i64> = ctx.r().iter().map(|&r| -dist_cap(r)).collect();
    exps.extend(
        ctx.s()
            .iter()
            .map(|&s| -crate::lattice::floor_rat(norm_log * Rational64::from_integer(s))),
    );
    let scaled = scale_rows(&u_a_matrix(a), &exps);
    let red = LatticeBasis::new(scaled)?.reduce(budget)?;
    red.for_each_in_box(0, true, budget, |tuple, _| {
        let w = red.to_original_coords(tuple);
        let y: Vec<Poly> = w[m..].to_vec();
        if y.iter().all(Poly::is_zero) {
            return Ok(());
        }
        visit(&y)
    })
}

/// The arithmetic side of the Dani correspondence at time `ell`: does some
/// `y != 0` satisfy `<A y>_r <= eps q^{-ell}` and `||y||_s <= eps q^{ell}`?
/// Candidates come from the boxed lattice; the inequalities themselves are
/// rechecked by direct quasinorm evaluation.
pub fn arithmetic_side_solvable(
    a: &MatKv,
    ctx: &WeightCtx,
    eps_log: LogVal,
    ell: i64,
    budget: &mut Budget,
) -> Result<bool> {
    use num_rational::Rational64;
    let eps = eps_log.expect_finite();
    let dist_bound = eps - Rational64::from_integer(ell);
    let norm_bound = eps + Rational64::from_integer(ell);
    if norm_bound < Rational64::from_integer(0) {
        // No nonzero integral vector has s-quasinorm below 1.
        return Ok(false);
    }
    let mut found = false;
    for_each_admissible_y(a, ctx, dist_bound, false, norm_bound, budget, |y| {
        if found {
            return Ok(());
        }
        let ylaur = poly_vec_laurent(a.field(), y);
        let ok_norm = weighted_norm_log(&ylaur, ctx.s())? <= LogVal::Finite(norm_bound);
        let image = a.apply_polys(y);
        let ok_dist = weighted_dist_log(image.entries(), ctx.r())? <= LogVal::Finite(dist_bound);
        if ok_norm && ok_dist {
            found = true;
        }
        Ok(())
    })?;
    Ok(found)
}

/// Convenience: `A` as a `MatKv` from Laurent entries, row-major.
pub fn matrix_from_entries(field: &Field, m: usize, n: usize, entries: Vec<Laurent>) -> MatKv {
    MatKv::new(field, m, n, entries)
}

/// `<A y>_r` for an integral point `y`.
pub fn image_dist_log(a: &MatKv, y: &[Poly], ctx: &WeightCtx) -> Result<LogVal> {
    let image = a.apply_polys(y);
    weighted_dist_log(image.entries(), ctx.r())
}

/// `||y||_s` for an integral point `y`.
pub fn integral_norm_log(field: &Field, y: &[Poly], ctx: &WeightCtx) -> Result<LogVal> {
    weighted_norm_log(&poly_vec_laurent(field, y), ctx.s())
}

/// `A` applied as a grid translation check helper: `A y - theta` as a vector.
pub fn image_minus(a: &MatKv, y: &[Poly], theta: &VecKv) -> VecKv {
    a.apply_polys(y).sub(theta)
}
