//! Exact weighted Diophantine approximation over the rational function
//! field `F_q(Z)` at the place at infinity.
//!
//! Everything is exact: absolute values and quasinorms live in
//! [`logval::LogVal`] (rational exponents of `q`), series arithmetic either
//! stays symbolic (backed by rational functions) or carries explicit
//! trustworthy windows, and every search is an enumeration inside a proved
//! bound. The crate covers:
//!
//! - [`field`], [`poly`], [`ratfunc`], [`laurent`]: arithmetic for `F_q`,
//!   `R_v = F_q[Z]`, `K = F_q(Z)` and `K_v = F_q((Z^{-1}))`;
//! - [`lattice`]: `R_v`-lattices, covolumes, basis reduction, successive
//!   minima, bounded enumeration, weighted systoles;
//! - [`dirichlet`], [`transfer`]: Dirichlet-type solvers and the weighted
//!   transference map with its explicit constants;
//! - [`bestapprox`]: weighted best approximation sequences, the
//!   singular-on-average statistic, and controlled-growth subsequences;
//! - [`dynamics`]: the diagonal flow on lattices and grids, systole
//!   trajectories, and the `eps`-bad membership checker;
//! - [`badset`]: the Cantor-set survivor construction and the Hausdorff
//!   dimension lower-bound pipeline;
//! - [`encode`], [`config`], [`selftest`]: JSON schemas, run configuration,
//!   and the deterministic invariant suite behind the `selftest` command.

pub mod badset;
pub mod bestapprox;
pub mod config;
pub mod curve;
pub mod dirichlet;
pub mod dynamics;
pub mod encode;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod kvec;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod logval;
pub mod poly;
pub mod ratfunc;
pub mod selftest;
pub mod transfer;
pub mod weights;

pub use error::{Error, Result};
pub use field::{Field, FqElem};
pub use laurent::Laurent;
pub use logval::LogVal;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use weights::WeightCtx;
