//! Command-line front end: one subcommand per library operation, with
//! machine-readable output. Results go to standard output, logs to standard
//! error. Exit codes: 0 success, 1 malformed input, 2 precondition
//! rejection, 3 budget exhaustion, 4 precision exhaustion.

use clap::{Args, Parser, Subcommand};
use ffdioph::badset::{build_cantor, pipeline_lower_bound, select_plan_for_tree, survivor_bound_check};
use ffdioph::bestapprox::{classify_singular, enumerate_best_approx};
use ffdioph::config::{OutputFormat, RunConfig};
use ffdioph::dirichlet::{dirichlet_check, dirichlet_weighted};
use ffdioph::dynamics::{dani_trajectory, is_eps_bad};
use ffdioph::encode::{logval_to_json, polys_to_json, MatrixFile, RatFuncFile, VectorFile, WeightsFile};
use ffdioph::error::{Error, Result};
use ffdioph::kvec::MatKv;
use ffdioph::laurent::Laurent;
use ffdioph::logval::LogVal;
use ffdioph::selftest::{render_report, run_selftest};
use ffdioph::weights::WeightCtx;
use ffdioph::{Field, Poly};
use num_rational::Rational64;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "ffdioph", version, about = "Exact weighted Diophantine approximation over F_q(Z)")]
struct Cli {
    /// key=value configuration file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Enumeration/work budget override.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Cell cap override for the Cantor construction.
    #[arg(long, global = true)]
    cell_budget: Option<u64>,
    /// Output format override: json or csv.
    #[arg(long, global = true)]
    output: Option<String>,
    /// Seed override for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker count override.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixWeights {
    /// Matrix JSON file.
    #[arg(long)]
    matrix: PathBuf,
    /// Weights JSON file {"r": [...], "s": [...]}.
    #[arg(long)]
    weights: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a rational function as a Laurent series in Z^{-1}.
    Expand {
        /// Input {"field": ..., "ratfunc": {"num": ..., "den": ...}}.
        #[arg(long)]
        input: PathBuf,
        /// Number of coefficients to emit.
        #[arg(long, default_value_t = 16)]
        prec: usize,
    },
    /// Successive minima of a square basis matrix.
    Minima {
        /// Basis JSON (MatrixFile with m = n = d).
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Weighted Dirichlet solve at level alpha.
    Dirichlet {
        #[command(flatten)]
        mw: MatrixWeights,
        #[arg(long)]
        alpha: i64,
    },
    /// Transference: map an approximation y for A to one for the transpose.
    Transfer {
        #[command(flatten)]
        mw: MatrixWeights,
        /// y as a vector JSON file (polynomial entries).
        #[arg(long)]
        y: PathBuf,
        /// log_q eps (integer <= -1).
        #[arg(long, value_parser = parse_logval, allow_hyphen_values = true)]
        eps_log: LogVal,
        /// log_q Y (integer >= 1).
        #[arg(long, value_parser = parse_logval, allow_hyphen_values = true)]
        y_log: LogVal,
    },
    /// Best approximation sequence up to a quasinorm horizon.
    Bestapprox {
        #[command(flatten)]
        mw: MatrixWeights,
        /// log_q of the horizon on ||y||_s (rational p/q).
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        horizon: Rational64,
    },
    /// Singular-on-average classification.
    Classify {
        #[command(flatten)]
        mw: MatrixWeights,
        #[arg(long, value_parser = parse_rational, default_value = "8", allow_hyphen_values = true)]
        horizon: Rational64,
    },
    /// Flow trajectory of u_A R_v^d with both Dani criteria.
    Orbit {
        #[command(flatten)]
        mw: MatrixWeights,
        #[arg(long, value_parser = parse_logval, allow_hyphen_values = true)]
        eps_log: LogVal,
        #[arg(long)]
        steps: i64,
    },
    /// eps-bad membership check for a target theta.
    Epsbad {
        #[command(flatten)]
        mw: MatrixWeights,
        /// theta as a vector JSON file.
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, value_parser = parse_logval, allow_hyphen_values = true)]
        eps_log: LogVal,
        /// log_q of the search horizon on ||x||_s.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        horizon_log: Rational64,
    },
    /// Cantor survivor tree and dimension estimate for a matrix.
    Badset {
        #[command(flatten)]
        mw: MatrixWeights,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        delta_log: Rational64,
        /// Number of subdivision levels (default: plan length).
        #[arg(long)]
        levels: Option<usize>,
        /// Spacing parameter a (log_q, rational).
        #[arg(long, value_parser = parse_rational, default_value = "5", allow_hyphen_values = true)]
        a_log: Rational64,
        /// Best-approximation horizon on log ||y||.
        #[arg(long, value_parser = parse_rational, default_value = "12", allow_hyphen_values = true)]
        horizon: Rational64,
        /// Export up to this many survivor corners.
        #[arg(long, default_value_t = 0)]
        export_samples: usize,
    },
    /// The end-to-end lower-bound pipeline.
    Pipeline {
        #[command(flatten)]
        mw: MatrixWeights,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        delta_log: Rational64,
        #[arg(long, value_parser = parse_rational, default_value = "5", allow_hyphen_values = true)]
        a_log: Rational64,
        #[arg(long, value_parser = parse_rational, default_value = "12", allow_hyphen_values = true)]
        horizon: Rational64,
        #[arg(long, value_parser = parse_rational, default_value = "6", allow_hyphen_values = true)]
        epsbad_horizon: Rational64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Run the deterministic invariant suite.
    Selftest,
}

fn parse_rational(s: &str) -> std::result::Result<Rational64, String> {
    match LogVal::from_frac_string(s) {
        Ok(LogVal::Finite(r)) => Ok(r),
        _ => Err(format!("expected a rational p/q, got `{s}`")),
    }
}

fn parse_logval(s: &str) -> std::result::Result<LogVal, String> {
    LogVal::from_frac_string(s).map_err(|e| e.to_string())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(b) = cli.budget {
        cfg.enum_cap = b;
    }
    if let Some(b) = cli.cell_budget {
        cfg.cell_cap = b;
    }
    if let Some(o) = &cli.output {
        cfg.set("output", o)?;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(w) = cli.workers {
        cfg.set("workers", &w.to_string())?;
    }
    Ok(cfg)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Error::Malformed(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn load_matrix_ctx(mw: &MatrixWeights) -> Result<(Field, MatKv, WeightCtx)> {
    let mf: MatrixFile = read_json(&mw.matrix)?;
    let (field, mat) = mf.to_matrix()?;
    let wf: WeightsFile = read_json(&mw.weights)?;
    let ctx = WeightCtx::new(&field, wf.r, wf.s)?;
    if mat.rows() != ctx.m() || mat.cols() != ctx.n() {
        return Err(Error::Malformed(format!(
            "matrix is {}x{} but weights say {}x{}",
            mat.rows(),
            mat.cols(),
            ctx.m(),
            ctx.n()
        )));
    }
    Ok((field, mat, ctx))
}

fn emit(v: serde_json::Value) {
    println!("{}", serde_json::to_string(&v).expect("serializable"));
}

fn rat_str(r: Rational64) -> String {
    LogVal::Finite(r).to_frac_string()
}

fn run(cli: Cli) -> Result<()> {
    let cfg = load_config(&cli)?;
    let mut budget = cfg.budget();
    match &cli.command {
        Command::Expand { input, prec } => {
            let rf: RatFuncFile = read_json(input)?;
            let field = rf.field.to_field()?;
            let r = ffdioph::encode::ratfunc_from_dto(&field, &rf.ratfunc)?;
            let x = Laurent::from_ratfunc(r);
            match x.valuation()? {
                None => emit(serde_json::json!({"zero": true})),
                Some(val) => {
                    let coeffs = x.window(val, val + *prec as i64)?;
                    emit(serde_json::json!({
                        "val": val,
                        "coeffs": coeffs.iter().map(|c| field.elem_digits(*c)).collect::<Vec<_>>(),
                        "prec": prec,
                    }));
                }
            }
        }
        Command::Minima { matrix } => {
            let mf: MatrixFile = read_json(matrix)?;
            let (_, mat) = mf.to_matrix()?;
            if mat.rows() != mat.cols() {
                return Err(Error::Malformed("minima needs a square basis".into()));
            }
            let basis = ffdioph::lattice::LatticeBasis::new(mat)?;
            let minima = basis.successive_minima(&mut budget)?;
            emit(serde_json::json!({
                "lambda_logs": minima.lambda_logs.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "covol_log": minima.covol_log.map(|c| c.to_frac_string()),
                "product_check": if minima.product_ok == Some(true) { "ok" } else { "unchecked" },
            }));
        }
        Command::Dirichlet { mw, alpha } => {
            let (_, a, ctx) = load_matrix_ctx(mw)?;
            let y = dirichlet_weighted(&a, *alpha, &ctx, &mut budget)?;
            let (dist, ynorm, ok) = dirichlet_check(&a, &y, &ctx, *alpha)?;
            emit(serde_json::json!({
                "y": polys_to_json(&y),
                "dist_log": logval_to_json(&dist),
                "norm_log": logval_to_json(&ynorm),
                "postcondition": ok,
            }));
        }
        Command::Transfer {
            mw,
            y,
            eps_log,
            y_log,
        } => {
            let (field, a, ctx) = load_matrix_ctx(mw)?;
            let yf: VectorFile = read_json(y)?;
            let (_, yv) = yf.to_vec()?;
            let ypolys: Vec<Poly> = yv
                .entries()
                .iter()
                .map(|e| {
                    e.as_ratfunc()
                        .filter(|r| r.is_poly())
                        .map(|r| r.num().clone())
                        .ok_or_else(|| Error::Malformed("y must be integral".into()))
                })
                .collect::<Result<_>>()?;
            let _ = field;
            let out = ffdioph::transfer::transfer(&a, &ypolys, *eps_log, *y_log, &ctx, &mut budget)?;
            emit(serde_json::json!({
                "x": polys_to_json(&out.x),
                "x_norm_log": logval_to_json(&out.x_norm_log),
                "x_bound_log": rat_str(out.x_bound_log),
                "tdist_log": logval_to_json(&out.tdist_log),
                "tdist_bound_log": rat_str(out.tdist_bound_log),
                "kappa": {
                    "beta_d": out.kappa.beta_d,
                    "kappa1": rat_str(out.kappa.kappa1),
                    "kappa2": rat_str(out.kappa.kappa2),
                    "kappa3": rat_str(out.kappa.kappa3),
                    "kappa4": rat_str(out.kappa.kappa4),
                },
                "kappa0": out.kappa0,
            }));
        }
        Command::Bestapprox { mw, horizon } => {
            let (_, a, ctx) = load_matrix_ctx(mw)?;
            let seq = enumerate_best_approx(&a, &ctx, *horizon, &mut budget)?;
            for (idx, step) in seq.steps.iter().enumerate() {
                let product = seq
                    .product_log(idx + 1)
                    .map(rat_str)
                    .unwrap_or_else(|| "none".into());
                emit(serde_json::json!({
                    "i": idx + 1,
                    "y": polys_to_json(&step.y),
                    "Ylog": rat_str(step.y_log),
                    "Mlog": step.m_log.to_frac_string(),
                    "product_log": product,
                }));
            }
            eprintln!(
                "sequence length {} terminated={}",
                seq.len(),
                seq.terminated
            );
        }
        Command::Classify { mw, horizon } => {
            let (_, a, ctx) = load_matrix_ctx(mw)?;
            let c = classify_singular(&a, &ctx, *horizon, &mut budget)?;
            match cfg.output {
                OutputFormat::Json => emit(serde_json::json!({
                    "verdict": c.verdict.as_str(),
                    "eps_prime_log": rat_str(c.eps_prime_log),
                    "statistic": c.statistic.iter()
                        .map(|(k, v)| serde_json::json!([k, rat_str(*v)]))
                        .collect::<Vec<_>>(),
                })),
                OutputFormat::Csv => {
                    println!("verdict,{}", c.verdict.as_str());
                    println!("k,fraction");
                    for (k, v) in &c.statistic {
                        println!("{k},{}", rat_str(*v));
                    }
                }
            }
        }
        Command::Orbit {
            mw,
            eps_log,
            steps,
        } => {
            let (_, a, ctx) = load_matrix_ctx(mw)?;
            let t = dani_trajectory(&a, &ctx, *eps_log, *steps, &mut budget)?;
            match cfg.output {
                OutputFormat::Csv => {
                    println!("ell,systole_log,in_X_gt_eps,arithmetic_side");
                    for row in &t.rows {
                        println!(
                            "{},{},{},{}",
                            row.ell,
                            row.systole_log.to_frac_string(),
                            row.in_x_gt_eps,
                            row.arithmetic_solvable
                        );
                    }
                    println!("escape_fraction,{}", rat_str(t.escape_fraction));
                }
                OutputFormat::Json => emit(serde_json::json!({
                    "rows": t.rows.iter().map(|r| serde_json::json!({
                        "ell": r.ell,
                        "systole_log": r.systole_log.to_frac_string(),
                        "in_X_gt_eps": r.in_x_gt_eps,
                        "arithmetic_side": r.arithmetic_solvable,
                    })).collect::<Vec<_>>(),
                    "escape_fraction": rat_str(t.escape_fraction),
                })),
            }
        }
        Command::Epsbad {
            mw,
            theta,
            eps_log,
            horizon_log,
        } => {
            let (_, a, ctx) = load_matrix_ctx(mw)?;
            let tf: VectorFile = read_json(theta)?;
            let (_, tv) = tf.to_vec()?;
            let out = is_eps_bad(&a, &tv, &ctx, *eps_log, *horizon_log, &mut budget)?;
            match out.witness {
                None => emit(serde_json::json!({
                    "verdict": "no_violation_up_to_horizon",
                    "horizon_log": rat_str(out.horizon_s_log),
                })),
                Some(w) => emit(serde_json::json!({
                    "verdict": "witness",
                    "x": polys_to_json(&w.x),
                    "x_norm_log": logval_to_json(&w.x_norm_log),
                    "product_log": logval_to_json(&w.product_log),
                    "horizon_log": rat_str(out.horizon_s_log),
                })),
            }
        }
        Command::Badset {
            mw,
            delta_log,
            levels,
            a_log,
            horizon,
            export_samples,
        } => {
            let (field, a, ctx) = load_matrix_ctx(mw)?;
            let tctx = ctx.transposed();
            let at = a.transpose();
            let seq = enumerate_best_approx(&at, &tctx, *horizon, &mut budget)?;
            if seq.terminated {
                emit(serde_json::json!({
                    "remark_path": true,
                    "note": "transpose sequence terminated: bad set has full dimension for small eps",
                }));
                return Ok(());
            }
            let plan = select_plan_for_tree(&seq, *delta_log, *a_log, &ctx, &tctx, cfg.cell_cap)?;
            let ys: Vec<(Vec<Poly>, Rational64)> = plan
                .phi
                .iter()
                .map(|&i| (seq.steps[i - 1].y.clone(), seq.steps[i - 1].y_log))
                .collect();
            let levels = levels.unwrap_or(ys.len()).min(ys.len());
            let tree = build_cantor(&field, &ctx, &ys, *delta_log, levels, cfg.cell_cap, &mut budget)?;
            let report = survivor_bound_check(&tree, &ctx)?;
            let dim = ffdioph::badset::dim_lower_bound(&seq, *delta_log, &plan, &ctx)?;
            let levels_json: Vec<serde_json::Value> = tree
                .levels
                .iter()
                .enumerate()
                .map(|(k, lvl)| {
                    let bound_ok = report
                        .per_level
                        .iter()
                        .find(|lb| lb.level == k)
                        .map(|lb| lb.ok);
                    serde_json::json!({
                        "nvec": lvl.disc.nvec,
                        "parents": lvl.parents,
                        "survivors": lvl.survivors.len(),
                        "bound_ok": bound_ok,
                    })
                })
                .collect();
            let samples: Vec<serde_json::Value> = tree.levels[tree.levels.len() - 1]
                .survivors
                .iter()
                .take(*export_samples)
                .map(|c| serde_json::json!(c.digits))
                .collect();
            emit(serde_json::json!({
                "remark_path": false,
                "phi": plan.phi,
                "levels": levels_json,
                "dim_estimate": {
                    "c1": rat_str(dim.c1),
                    "C": rat_str(dim.c_value),
                    "C_exact": dim.c_is_exact,
                    "slope": rat_str(dim.slope),
                    "bound": rat_str(dim.bound),
                },
                "truncated_by_budget": tree.truncated_by_budget,
                "survivor_samples": samples,
            }));
        }
        Command::Pipeline {
            mw,
            delta_log,
            a_log,
            horizon,
            epsbad_horizon,
            samples,
        } => {
            let (_, a, ctx) = load_matrix_ctx(mw)?;
            let report = pipeline_lower_bound(
                &a,
                &ctx,
                *delta_log,
                *a_log,
                *horizon,
                *epsbad_horizon,
                *samples,
                cfg.cell_cap,
                &mut budget,
            )?;
            let dim = report.dim.as_ref().map(|d| {
                serde_json::json!({
                    "c1": rat_str(d.c1),
                    "C": rat_str(d.c_value),
                    "C_exact": d.c_is_exact,
                    "slope": rat_str(d.slope),
                    "bound": rat_str(d.bound),
                })
            });
            emit(serde_json::json!({
                "remark_path": report.remark_path,
                "seq_len": report.seq_len,
                "phi": report.plan.as_ref().map(|p| p.phi.clone()),
                "dim_estimate": dim,
                "eps_log": report.eps_log.map(rat_str),
                "levels_built": report.levels_built,
                "survivors_at_deepest": report.survivors_at_deepest,
                "bound_report_ok": report.bound_report_ok,
                "samples_checked": report.samples_checked,
                "witnesses": report.witnesses.len(),
                "truncated_by_budget": report.truncated_by_budget,
            }));
        }
        Command::Selftest => {
            let reports = run_selftest(&cfg);
            print!("{}", render_report(&cfg, &reports));
            if reports.iter().any(|r| !r.passed()) {
                return Err(Error::Precondition("selftest failures".into()));
            }
        }
    }
    Ok(())
}
