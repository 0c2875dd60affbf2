//! Weighted transference: the pseudocompound construction, the explicit
//! constants `beta_d`, `kappa_1..kappa_4`, and the constructive map taking a
//! good approximation `y` for `A` to a good approximation `x` for the
//! transpose system.

use crate::curve::GENUS_ZERO;
use crate::error::{Error, Result};
use crate::kvec::{weighted_dist_log, weighted_norm_log, MatKv};
use crate::lattice::{Budget, LatticeBasis};
use crate::laurent::Laurent;
use crate::logval::LogVal;
use crate::poly::Poly;
use crate::weights::WeightCtx;
use num_rational::Rational64;
use num_traits::Signed;

/// The parallelepiped `{xi : |xi_k| <= q^{alpha_k}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelepiped {
    pub alpha: Vec<i64>,
}

impl Parallelepiped {
    pub fn new(alpha: Vec<i64>) -> Parallelepiped {
        Parallelepiped { alpha }
    }

    /// Exponent sum `alpha = sum_k alpha_k`.
    pub fn total(&self) -> i64 {
        self.alpha.iter().sum()
    }

    /// The pseudocompound: exponents `alpha - alpha_k`.
    pub fn pseudocompound(&self) -> Parallelepiped {
        let total = self.total();
        Parallelepiped::new(self.alpha.iter().map(|&a| total - a).collect())
    }
}

/// The transference constants of the corollary, exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaConstants {
    pub beta_d: i64,
    pub kappa1: Rational64,
    pub kappa2: Rational64,
    pub kappa3: Rational64,
    pub kappa4: Rational64,
}

/// Closed forms from the corollary's proof:
/// with `D = |s| (1/min r + 1/min s) - 1`,
/// `kappa2 = 1/D`, `kappa4 = (|s|/min s - 1)/D`,
/// `kappa3 = beta_d / min r + 1`,
/// `kappa1 = beta_d / min s + (|s|/min s)(kappa2 + 1) + kappa3`.
pub fn kappa_constants(ctx: &WeightCtx) -> KappaConstants {
    let beta_d = GENUS_ZERO.beta_d(ctx.d());
    let s_sum = Rational64::from_integer(ctx.sum_r());
    let min_r = Rational64::from_integer(ctx.min_r());
    let min_s = Rational64::from_integer(ctx.min_s());
    let one = Rational64::from_integer(1);
    let denom = s_sum * (one / min_r + one / min_s) - one;
    assert!(denom.is_positive());
    let kappa2 = one / denom;
    let kappa4 = (s_sum / min_s - one) / denom;
    let kappa3 = Rational64::from_integer(beta_d) / min_r + one;
    let kappa1 = Rational64::from_integer(beta_d) / min_s + (s_sum / min_s) * (kappa2 + one) + kappa3;
    KappaConstants {
        beta_d,
        kappa1,
        kappa2,
        kappa3,
        kappa4,
    }
}

/// Everything the transference map reports besides the vector itself.
#[derive(Debug, Clone)]
pub struct TransferOutcome {
    /// The nonzero output `x` in `R_v^m`.
    pub x: Vec<Poly>,
    /// `||x||_r` and its guaranteed bound `log X`.
    pub x_norm_log: LogVal,
    pub x_bound_log: Rational64,
    /// `<tA x>_s` and its guaranteed bound `kappa1 - kappa2 alpha_eps - log X`.
    pub tdist_log: LogVal,
    pub tdist_bound_log: Rational64,
    pub kappa: KappaConstants,
    /// Depth of the input point inside the pseudocompound.
    pub kappa0: i64,
}

/// Constructive transference. Given `y != 0` with
/// `<A y>_r <= eps Y^{-1}` and `||y||_s <= Y`, with `eps = q^{-alpha_eps}`
/// (`alpha_eps >= 1`) and `Y = q^{alpha_y}` (`alpha_y >= 1`), produces
/// `x != 0` in `R_v^m` satisfying the transposed inequalities with the
/// `kappa` constants. Fails with a precondition error when the constructed
/// `x` vanishes (the corollary's "for every large enough Y" hypothesis).
pub fn transfer(
    a: &MatKv,
    y: &[Poly],
    eps_log: LogVal,
    y_log: LogVal,
    ctx: &WeightCtx,
    budget: &mut Budget,
) -> Result<TransferOutcome> {
    let f = a.field().clone();
    let m = ctx.m();
    let n = ctx.n();
    let d = ctx.d();
    assert_eq!(a.rows(), m);
    assert_eq!(a.cols(), n);
    let alpha_eps = match eps_log.as_integer() {
        Some(v) if v <= -1 => -v,
        _ => {
            return Err(Error::Precondition(
                "eps must be an exact power q^k with k <= -1".into(),
            ))
        }
    };
    let alpha_y = match y_log.as_integer() {
        Some(v) if v >= 1 => v,
        _ => {
            return Err(Error::Precondition(
                "Y must be an exact power q^k with k >= 1".into(),
            ))
        }
    };

    // Admissibility of y.
    let image = a.apply_polys(y);
    let dist = weighted_dist_log(image.entries(), ctx.r())?;
    let ynorm = weighted_norm_log(
        &y.iter()
            .map(|p| Laurent::from_poly(p.clone()))
            .collect::<Vec<_>>(),
        ctx.s(),
    )?;
    let eps_over_y = LogVal::from_int(-alpha_eps - alpha_y);
    if dist > eps_over_y || ynorm > y_log {
        return Err(Error::Precondition(
            "y does not satisfy the approximation hypotheses".into(),
        ));
    }

    // The proof's auxiliary exponents.
    let one = Rational64::from_integer(1);
    let s_sum = Rational64::from_integer(ctx.sum_r());
    let min_r = Rational64::from_integer(ctx.min_r());
    let min_s = Rational64::from_integer(ctx.min_s());
    let denom = s_sum * (one / min_r + one / min_s) - one;
    let alpha_delta = ((Rational64::from_integer(alpha_eps) - one) / denom)
        .floor()
        .to_integer();
    let alpha_z = ((s_sum / min_s - one) * Rational64::from_integer(alpha_delta))
        .ceil()
        .to_integer();

    // Parallelepiped P: |xi_i| <= Z^{r_i}, |xi_{m+j}| <= delta^{s_j} Z^{-s_j},
    // with log Z = alpha_z + alpha_y and log delta = -alpha_delta.
    let log_z = alpha_z + alpha_y;
    let mut alpha: Vec<i64> = ctx.r().iter().map(|&r| r * log_z).collect();
    alpha.extend(ctx.s().iter().map(|&s| s * (-alpha_delta - log_z)));
    let pp = Parallelepiped::new(alpha);
    let pstar = pp.pseudocompound();

    // z = u_A (x', y) with x' the nearest integral vector to -A y.
    let mut z: Vec<Laurent> = Vec::with_capacity(d);
    for i in 0..m {
        let e = image.entry(i);
        let int_part = e.poly_part()?;
        z.push(e.sub(&Laurent::from_poly(int_part)));
    }
    for p in y {
        z.push(Laurent::from_poly(p.clone()));
    }

    // Depth kappa0 of z inside P*, and the pivot coordinate.
    let mut kappa0: Option<i64> = None;
    let mut pivot: Option<usize> = None;
    for (k, zk) in z.iter().enumerate() {
        match zk.abs_log()? {
            LogVal::NegInf => {}
            LogVal::Finite(l) => {
                let depth = pstar.alpha[k] - l.to_integer();
                if kappa0.map_or(true, |c| depth < c) {
                    kappa0 = Some(depth);
                    pivot = Some(k);
                }
            }
        }
    }
    let (kappa0, pivot) = match (kappa0, pivot) {
        (Some(c), Some(p)) => (c, p),
        _ => return Err(Error::Precondition("z vanished entirely".into())),
    };
    if kappa0 < 0 {
        return Err(Error::Precondition(
            "input point escapes the pseudocompound: hypotheses violated".into(),
        ));
    }

    // F = [[I_m, 0], [-tA, I_n]], the matrix with tF^{-1} = u_A.
    let mut fmat = MatKv::identity(&f, d);
    let at = a.transpose();
    for i in 0..n {
        for j in 0..m {
            *fmat.at_mut(m + i, j) = at.at(i, j).neg();
        }
    }
    let beta_d = GENUS_ZERO.beta_d(d);

    // M: first row Z * (sum_k z_k F_k); remaining rows Z^{-(beta_d+alpha_k)} F_k.
    let mut mmat = MatKv::zero(&f, d, d);
    for c in 0..d {
        let mut acc = Laurent::zero(&f);
        for k in 0..d {
            acc = acc.add(&z[k].mul(fmat.at(k, c)));
        }
        *mmat.at_mut(0, c) = acc.mul_zpow(1);
    }
    let mut row = 1;
    for k in 0..d {
        if k == pivot {
            continue;
        }
        for c in 0..d {
            *mmat.at_mut(row, c) = fmat.at(k, c).mul_zpow(-(beta_d + pp.alpha[k]));
        }
        row += 1;
    }

    let basis = LatticeBasis::new(mmat)?;
    let red = basis.reduce(budget)?;
    let lambda1 = *red.norms.iter().min().unwrap();
    if lambda1 > 0 {
        return Err(Error::Precondition(
            "no admissible short vector: transference lattice too sparse".into(),
        ));
    }
    let (w, _) = red.canonical_shortest(budget)?;
    let x: Vec<Poly> = w[..m].to_vec();
    if x.iter().all(Poly::is_zero) {
        return Err(Error::Precondition(
            "Y too small: transference output vanishes".into(),
        ));
    }

    // Postcondition (the corollary's displayed bounds).
    let kappa = kappa_constants(ctx);
    let x_bound_log =
        kappa.kappa3 + kappa.kappa4 * Rational64::from_integer(alpha_eps) + Rational64::from_integer(alpha_y);
    let tdist_bound_log =
        kappa.kappa1 - kappa.kappa2 * Rational64::from_integer(alpha_eps) - x_bound_log;
    let x_norm_log = weighted_norm_log(
        &x.iter()
            .map(|p| Laurent::from_poly(p.clone()))
            .collect::<Vec<_>>(),
        ctx.r(),
    )?;
    let timage = at.apply_polys(&x);
    let tdist_log = weighted_dist_log(timage.entries(), ctx.s())?;
    assert!(
        x_norm_log <= LogVal::Finite(x_bound_log),
        "transference norm bound violated: construction bug"
    );
    assert!(
        tdist_log <= LogVal::Finite(tdist_bound_log),
        "transference distance bound violated: construction bug"
    );
    Ok(TransferOutcome {
        x,
        x_norm_log,
        x_bound_log,
        tdist_log,
        tdist_bound_log,
        kappa,
        kappa0,
    })
}
