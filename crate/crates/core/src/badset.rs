//! The Cantor-set survivor construction inside `(pi_v O_v)^m`, exact
//! survivor counting against the per-level lower bound, the Hausdorff
//! dimension lower-bound estimate, and the end-to-end pipeline composing
//! best approximation, subsequence extraction, the survivor tree, and the
//! `eps`-bad cross-checks.

use crate::bestapprox::{enumerate_best_approx, BestApproxSeq, SubseqPlan};
use crate::dynamics::{is_eps_bad, EpsBadWitness};
use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::kvec::{weighted_norm_log, MatKv, VecKv};
use crate::lattice::Budget;
use crate::laurent::Laurent;
use crate::logval::LogVal;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::weights::WeightCtx;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

/// Exponents `n_{k,j} = ceil(r_j Ylog_k)`: coordinate `j` of a level-`k`
/// cell is determined by digits at exponents `1..=n_{k,j}` of `Z^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyDisc {
    pub nvec: Vec<i64>,
}

impl PolyDisc {
    fn from_ylog(r: &[i64], ylog: Rational64) -> PolyDisc {
        PolyDisc {
            nvec: r
                .iter()
                .map(|&rj| (ylog * Rational64::from_integer(rj)).ceil().to_integer())
                .collect(),
        }
    }
}

/// A surviving cell: for each coordinate, the digit string of its corner.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub digits: Vec<Vec<u16>>,
}

impl Cell {
    /// The corner as an exact point of `(pi_v O_v)^m`.
    pub fn corner(&self, field: &Field) -> VecKv {
        VecKv::new(
            self.digits
                .iter()
                .map(|ds| digits_to_laurent(field, ds))
                .collect(),
        )
    }
}

fn digits_to_laurent(field: &Field, digits: &[u16]) -> Laurent {
    // sum digits[t] (Z^{-1})^{t+1} as an exact rational function.
    let n = digits.len();
    if n == 0 {
        return Laurent::zero(field);
    }
    let mut num = vec![FqElem::ZERO; n];
    for (t, &d) in digits.iter().enumerate() {
        // exponent t+1 of Z^{-1} contributes degree n - (t+1) in Z.
        num[n - t - 1] = FqElem(d);
    }
    let num = Poly::from_coeffs(field, num);
    let den = Poly::monomial(field, FqElem::ONE, n);
    Laurent::from_ratfunc(RatFunc::new(num, den).expect("monomial denominator"))
}

#[derive(Debug, Clone)]
pub struct CantorLevel {
    pub disc: PolyDisc,
    /// Number of surviving parents this level was expanded from.
    pub parents: usize,
    pub survivors: Vec<Cell>,
    /// Minimum surviving-children count over the parents (`None` at level 0).
    pub min_children: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CellTree {
    pub levels: Vec<CantorLevel>,
    pub delta_log: Rational64,
    pub c1: Rational64,
    /// The selected sequence: `(y_k, Ylog_k)` pairs.
    pub ys: Vec<(Vec<Poly>, Rational64)>,
    pub requested_levels: usize,
    pub truncated_by_budget: bool,
}

/// `c_1 = q^{-m} - q^{2m} delta`, which the hypothesis `delta < q^{-3m}`
/// makes positive. Exact when `delta_log` is an integer.
pub fn c1_constant(q: u32, m: usize, delta_log: i64) -> Rational64 {
    let qm = pow_q(q, m as i64);
    let d = pow_q(q, 2 * m as i64 + delta_log);
    Rational64::from_integer(1) / qm - d
}

fn pow_q(q: u32, e: i64) -> Rational64 {
    let mut num = Rational64::from_integer(1);
    let step = Rational64::from_integer(q as i64);
    for _ in 0..e.abs() {
        num = if e >= 0 { num * step } else { num / step };
    }
    num
}

/// Build the survivor tree for the selected sequence `ys` (vectors in
/// `R_v^m - {0}` with their `r`-quasinorm logs), to `levels` subdivision
/// levels. Level `k+1` children are discarded exactly when their corner
/// lies in `Z_{k,delta}`; the growth hypothesis `Ylog_{k+1} - Ylog_k >=
/// b(delta) = -delta_log / min r` makes the corner test decide the whole
/// cell. The total cell count is capped by `cell_cap`; hitting the cap
/// truncates the tree with a marker rather than failing.
pub fn build_cantor(
    field: &Field,
    ctx: &WeightCtx,
    ys: &[(Vec<Poly>, Rational64)],
    delta_log: Rational64,
    levels: usize,
    cell_cap: u64,
    budget: &mut Budget,
) -> Result<CellTree> {
    let m = ctx.m();
    let q = ctx.q();
    let three_m = Rational64::from_integer(-3 * m as i64);
    if !(delta_log < three_m) {
        return Err(Error::Precondition(format!(
            "delta must lie in the open interval (0, q^-{}m)",
            3
        )));
    }
    let delta_int = if delta_log.is_integer() {
        delta_log.to_integer()
    } else {
        return Err(Error::Precondition(
            "delta must be an integral power of q for exact survivor bounds".into(),
        ));
    };
    if levels > ys.len() {
        return Err(Error::Precondition(format!(
            "requested {levels} levels but only {} sequence entries",
            ys.len()
        )));
    }
    let b = -delta_log / Rational64::from_integer(ctx.min_r());
    // Recompute and validate the norms and the growth hypothesis.
    let mut ylogs: Vec<Rational64> = Vec::with_capacity(ys.len());
    for (k, (y, claimed)) in ys.iter().enumerate() {
        let yl: Vec<Laurent> = y.iter().map(|p| Laurent::from_poly(p.clone())).collect();
        let norm = weighted_norm_log(&yl, ctx.r())?;
        let LogVal::Finite(norm) = norm else {
            return Err(Error::Precondition("zero vector in the sequence".into()));
        };
        if norm != *claimed {
            return Err(Error::Precondition(format!(
                "claimed Ylog_{} does not match the recomputed norm",
                k + 1
            )));
        }
        if let Some(prev) = ylogs.last() {
            if norm - prev < b {
                return Err(Error::Precondition(format!(
                    "growth hypothesis fails between entries {} and {}",
                    k, k + 1
                )));
            }
        }
        ylogs.push(norm);
    }

    let c1 = c1_constant(q, m, delta_int);
    let mut total_cells: u64 = 1;
    let mut levels_out = vec![CantorLevel {
        disc: PolyDisc { nvec: vec![0; m] },
        parents: 0,
        survivors: vec![Cell {
            digits: vec![vec![]; m],
        }],
        min_children: None,
    }];
    let mut truncated = false;

    for k in 0..levels {
        let parent_disc = levels_out[k].disc.clone();
        let child_disc = PolyDisc::from_ylog(ctx.r(), ylogs[k]);
        let delta_digits: Vec<i64> = child_disc
            .nvec
            .iter()
            .zip(parent_disc.nvec.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        if delta_digits.iter().any(|&d| d < 0) {
            return Err(Error::Precondition("non-nested polydiscs".into()));
        }
        let children_per_parent: u64 = delta_digits
            .iter()
            .map(|&d| (q as u64).saturating_pow(d as u32))
            .product();
        let parents = levels_out[k].survivors.len() as u64;
        if total_cells.saturating_add(parents.saturating_mul(children_per_parent)) > cell_cap {
            truncated = true;
            break;
        }
        total_cells += parents * children_per_parent;

        // The discard test uses y_k against level-(k+1) cells: skipped for
        // k = 0 by the convention Z_0 = empty... in the source indexing the
        // first tested level uses y_1 for the children of level 1.
        let test_y: Option<&Vec<Poly>> = if k == 0 { None } else { Some(&ys[k - 1].0) };

        let mut survivors = Vec::new();
        let mut min_children: Option<usize> = None;
        for parent in &levels_out[k].survivors {
            budget.charge(children_per_parent)?;
            let mut alive_here = 0usize;
            for_each_extension(q, parent, &delta_digits, |cell| {
                let keep = match test_y {
                    None => true,
                    Some(y) => {
                        let corner = cell.corner(field);
                        let dot = dot_poly_vec(y, &corner);
                        // |<y . theta>| >= delta, exactly.
                        dot.dist_to_rv_log()? >= LogVal::Finite(delta_log)
                    }
                };
                if keep {
                    alive_here += 1;
                    survivors.push(cell);
                }
                Ok(())
            })?;
            min_children = Some(min_children.map_or(alive_here, |m0| m0.min(alive_here)));
        }
        survivors.sort();
        levels_out.push(CantorLevel {
            disc: child_disc,
            parents: levels_out[k].survivors.len(),
            survivors,
            min_children,
        });
    }

    Ok(CellTree {
        levels: levels_out,
        delta_log,
        c1,
        ys: ys.to_vec(),
        requested_levels: levels,
        truncated_by_budget: truncated,
    })
}

fn dot_poly_vec(y: &[Poly], theta: &VecKv) -> Laurent {
    let field = theta.field();
    let mut acc = Laurent::zero(field);
    for (p, t) in y.iter().zip(theta.entries().iter()) {
        acc = acc.add(&Laurent::from_poly(p.clone()).mul(t));
    }
    acc
}

/// Enumerate the digit extensions of a parent cell in canonical order.
fn for_each_extension<F>(q: u32, parent: &Cell, delta_digits: &[i64], mut visit: F) -> Result<()>
where
    F: FnMut(Cell) -> Result<()>,
{
    let m = parent.digits.len();
    let mut positions = Vec::new();
    for (j, &d) in delta_digits.iter().enumerate() {
        for t in 0..d {
            positions.push((j, t));
        }
    }
    let mut digits = vec![0u16; positions.len()];
    loop {
        let mut cell = parent.clone();
        for (idx, &(j, _)) in positions.iter().enumerate() {
            cell.digits[j].push(digits[idx]);
        }
        debug_assert!(cell.digits.len() == m);
        visit(cell)?;
        // Odometer.
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(());
            }
            digits[pos] += 1;
            if (digits[pos] as u32) < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if digits.iter().all(|&d| d == 0) {
            return Ok(());
        }
    }
}

/// Per-level report of the survivor lower bound
/// `Card(children) >= c1 (Y_{k+1}/Y_k)^{|r|}`.
#[derive(Debug, Clone)]
pub struct SurvivorBoundReport {
    pub per_level: Vec<LevelBound>,
    pub all_ok: bool,
    /// Total-survivor bound `Card J_{k+1} >= c1^k (Y_{k+1}/Y_1)^{|r|}`.
    pub totals_ok: bool,
}

#[derive(Debug, Clone)]
pub struct LevelBound {
    pub level: usize,
    pub min_children: usize,
    pub required: Rational64,
    pub ok: bool,
}

pub fn survivor_bound_check(tree: &CellTree, ctx: &WeightCtx) -> Result<SurvivorBoundReport> {
    let mut per_level = Vec::new();
    let mut all_ok = true;
    let sum_r = ctx.sum_r();
    let q = ctx.q();
    let y = |k: usize| -> Rational64 {
        // Y_0 = 1 by convention.
        if k == 0 {
            Rational64::from_integer(0)
        } else {
            tree.ys[k - 1].1
        }
    };
    for (k1, level) in tree.levels.iter().enumerate().skip(1) {
        let k = k1 - 1;
        let Some(min_children) = level.min_children else {
            continue;
        };
        let growth = (y(k1) - y(k)) * Rational64::from_integer(sum_r);
        if !growth.is_integer() {
            return Err(Error::Precondition(
                "non-integral growth exponent: exact bound comparison unavailable".into(),
            ));
        }
        let required = tree.c1 * pow_q(q, growth.to_integer());
        let ok = Rational64::from_integer(min_children as i64) >= required;
        all_ok &= ok;
        per_level.push(LevelBound {
            level: k1,
            min_children,
            required,
            ok,
        });
    }
    // Total bound: Card J_{k} >= c1^{k-1} (Y_k / Y_1)^{|r|}.
    let mut totals_ok = true;
    for (k1, level) in tree.levels.iter().enumerate().skip(2) {
        let growth = (y(k1) - y(1)) * Rational64::from_integer(sum_r);
        if !growth.is_integer() {
            continue;
        }
        let mut required = pow_q(q, growth.to_integer());
        for _ in 0..(k1 - 1) {
            required *= tree.c1;
        }
        totals_ok &= Rational64::from_integer(level.survivors.len() as i64) >= required;
    }
    Ok(SurvivorBoundReport {
        per_level,
        all_ok,
        totals_ok,
    })
}

/// Check that every sampled survivor corner satisfies the digit test
/// `|<y_i . theta>| >= delta` for every tested index `i` (those whose
/// discard pass the cell already went through).
pub fn sample_bad_delta_check(
    tree: &CellTree,
    field: &Field,
    level: usize,
    sample_cap: usize,
) -> Result<Vec<Cell>> {
    let cells = &tree.levels[level].survivors;
    let step = (cells.len() / sample_cap.max(1)).max(1);
    let mut sampled = Vec::new();
    for cell in cells.iter().step_by(step).take(sample_cap) {
        let corner = cell.corner(field);
        for (y, _) in tree.ys.iter().take(level.saturating_sub(1)) {
            let dot = dot_poly_vec(y, &corner);
            if !(dot.dist_to_rv_log()? >= LogVal::Finite(tree.delta_log)) {
                return Err(Error::Precondition(
                    "sampled survivor fails the digit test: construction bug".into(),
                ));
            }
        }
        sampled.push(cell.clone());
    }
    Ok(sampled)
}

/// The dimension lower-bound data. `c_log` is `-log_q c1 / min r`, exact
/// when `c1` is a power of `q` and otherwise a rational upper bound
/// (yielding a valid, slightly weaker, dimension bound).
#[derive(Debug, Clone)]
pub struct DimEstimate {
    pub c1: Rational64,
    pub c_value: Rational64,
    pub c_is_exact: bool,
    pub slope: Rational64,
    pub bound: Rational64,
}

pub fn dim_lower_bound(
    seq: &BestApproxSeq,
    delta_log: Rational64,
    plan: &SubseqPlan,
    ctx: &WeightCtx,
) -> Result<DimEstimate> {
    plan.verify(seq)?;
    let m = ctx.m() as i64;
    let q = ctx.q();
    let delta_int = if delta_log.is_integer() {
        delta_log.to_integer()
    } else {
        return Err(Error::Precondition(
            "delta must be an integral power of q".into(),
        ));
    };
    let c1 = c1_constant(q, ctx.m(), delta_int);
    if !c1.is_positive() {
        return Err(Error::Precondition("c1 must be positive".into()));
    }
    let (neg_log_c1, exact) = neg_log_q_upper(q, c1);
    let c_value = neg_log_c1 / Rational64::from_integer(ctx.min_r());
    let slope = plan.slope_surrogate(seq);
    let bound = Rational64::from_integer(m) - c_value * slope;
    Ok(DimEstimate {
        c1,
        c_value,
        c_is_exact: exact,
        slope,
        bound,
    })
}

/// `-log_q x` for `0 < x <= 1`: exact when `x` is a power of `q`, else the
/// smallest grid rational (denominator 64) at or above the true value.
fn neg_log_q_upper(q: u32, x: Rational64) -> (Rational64, bool) {
    // Exact case: x = q^{-k}.
    let mut probe = Rational64::from_integer(1);
    let qr = Rational64::from_integer(q as i64);
    let mut k = 0_i64;
    while probe >= x {
        if probe == x {
            return (Rational64::from_integer(k), true);
        }
        probe = probe / qr;
        k += 1;
        if k > 512 {
            break;
        }
    }
    // Bracket by exact big-rational powering: find the least t/64 with
    // x >= q^{-t/64}, i.e. x^64 >= q^{-t}.
    let big = |r: Rational64| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
    let x64 = num_traits::pow::pow(big(x), 64);
    let qb = big(qr);
    let mut qpow = BigRational::one();
    let mut t = 0_i64;
    loop {
        // qpow = q^{-t}.
        if x64 >= qpow {
            break;
        }
        qpow /= qb.clone();
        t += 1;
        assert!(t <= 64 * 600, "log bracket runaway");
    }
    let _ = BigRational::zero();
    (Rational64::new(t, 64), false)
}

/// The end-to-end lower-bound pipeline report.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    /// Set when the transpose sequence terminated: the non-completely-
    /// irrational case, where the bad set has full dimension for small
    /// `eps` and no Cantor stage is needed.
    pub remark_path: bool,
    pub seq_len: usize,
    pub plan: Option<SubseqPlan>,
    pub dim: Option<DimEstimate>,
    pub eps_log: Option<Rational64>,
    pub levels_built: usize,
    pub survivors_at_deepest: usize,
    pub bound_report_ok: Option<bool>,
    pub samples_checked: usize,
    pub witnesses: Vec<EpsBadWitness>,
    pub truncated_by_budget: bool,
}

/// Compose: best approximation of the transpose, subsequence extraction,
/// the Cantor tree with survivor bounds, the dimension estimate, and the
/// `eps`-bad cross-check on sampled survivors.
#[allow(clippy::too_many_arguments)]
pub fn pipeline_lower_bound(
    a: &MatKv,
    ctx: &WeightCtx,
    delta_log: Rational64,
    a_log: Rational64,
    horizon_ylog: Rational64,
    epsbad_horizon: Rational64,
    sample_cap: usize,
    cell_cap: u64,
    budget: &mut Budget,
) -> Result<PipelineReport> {
    let tctx = ctx.transposed();
    let at = a.transpose();
    let seq = enumerate_best_approx(&at, &tctx, horizon_ylog, budget)
        .map_err(|e| stage(e, "best approximation of the transpose"))?;
    if seq.terminated {
        return Ok(PipelineReport {
            remark_path: true,
            seq_len: seq.len(),
            plan: None,
            dim: None,
            eps_log: None,
            levels_built: 0,
            survivors_at_deepest: 0,
            bound_report_ok: None,
            samples_checked: 0,
            witnesses: vec![],
            truncated_by_budget: false,
        });
    }
    let b_log = -delta_log / Rational64::from_integer(ctx.min_r());
    let c_log = Rational64::from_integer(2);
    let plan = select_plan_for_tree(&seq, delta_log, a_log, ctx, &tctx, cell_cap)
        .map_err(|e| stage(e, "subsequence extraction"))?;
    // Selected sequence entries; their norms are the transposed context's
    // s-side, which is the original r.
    let ys: Vec<(Vec<Poly>, Rational64)> = plan
        .phi
        .iter()
        .map(|&i| (seq.steps[i - 1].y.clone(), seq.steps[i - 1].y_log))
        .collect();
    let levels = ys.len();
    let tree = build_cantor(a.field(), ctx, &ys, delta_log, levels, cell_cap, budget)
        .map_err(|e| stage(e, "cantor construction"))?;
    let bound_report =
        survivor_bound_check(&tree, ctx).map_err(|e| stage(e, "survivor bound check"))?;
    let dim = dim_lower_bound(&seq, delta_log, &plan, ctx)
        .map_err(|e| stage(e, "dimension estimate"))?;
    let eps_log = delta_log
        * (Rational64::new(1, ctx.min_r()) + Rational64::new(1, ctx.min_s()))
        - b_log
        - c_log;

    let deepest = tree.levels.len() - 1;
    let samples = sample_bad_delta_check(&tree, a.field(), deepest, sample_cap)
        .map_err(|e| stage(e, "survivor digit test"))?;
    let mut witnesses = Vec::new();
    for cell in &samples {
        let theta = cell.corner(a.field());
        let out = is_eps_bad(
            a,
            &theta,
            ctx,
            LogVal::Finite(eps_log),
            epsbad_horizon,
            budget,
        )
        .map_err(|e| stage(e, "eps-bad cross-check"))?;
        if let Some(w) = out.witness {
            witnesses.push(w);
        }
    }
    Ok(PipelineReport {
        remark_path: false,
        seq_len: seq.len(),
        plan: Some(plan),
        dim: Some(dim),
        eps_log: Some(eps_log),
        levels_built: deepest,
        survivors_at_deepest: tree.levels[deepest].survivors.len(),
        bound_report_ok: Some(bound_report.all_ok && bound_report.totals_ok),
        samples_checked: samples.len(),
        witnesses,
        truncated_by_budget: tree.truncated_by_budget,
    })
}

/// Choose the subsequence plan feeding the survivor tree: walk the
/// candidates best-slope first and take the first whose opening tree
/// levels fit the cell budget (so at least one tested subdivision level
/// gets built); otherwise keep the best plan and let the tree truncate
/// with its marker.
pub fn select_plan_for_tree(
    seq: &BestApproxSeq,
    delta_log: Rational64,
    a_log: Rational64,
    ctx: &WeightCtx,
    tctx: &WeightCtx,
    cell_cap: u64,
) -> Result<SubseqPlan> {
    let b_log = -delta_log / Rational64::from_integer(ctx.min_r());
    let c_log = Rational64::from_integer(2);
    let candidates = crate::bestapprox::bz_candidate_plans(seq, a_log, b_log, c_log, tctx);
    if candidates.is_empty() {
        return Err(Error::Precondition("horizon insufficient".into()));
    }
    let fits = |plan: &SubseqPlan| -> bool {
        let mut cum: u128 = 1;
        for &i in plan.phi.iter().take(2) {
            let ylog = seq.steps[i - 1].y_log;
            let digits: i64 = ctx
                .r()
                .iter()
                .map(|&rj| (ylog * Rational64::from_integer(rj)).ceil().to_integer())
                .sum();
            let cells = (ctx.q() as u128).saturating_pow(digits.max(0) as u32);
            cum = cum.saturating_add(cells);
        }
        cum <= cell_cap as u128
    };
    Ok(candidates
        .iter()
        .find(|p| fits(p))
        .unwrap_or(&candidates[0])
        .clone())
}

fn stage(e: Error, name: &str) -> Error {
    match e {
        Error::Malformed(s) => Error::Malformed(format!("[{name}] {s}")),
        Error::Precondition(s) => Error::Precondition(format!("[{name}] {s}")),
        Error::Budget(s) => Error::Budget(format!("[{name}] {s}")),
        Error::Precision(s) => Error::Precision(format!("[{name}] {s}")),
    }
}
