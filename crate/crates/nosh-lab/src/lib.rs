//! Instrumental-variable (IV) estimation and simulation toolkit.
//!
//! The crate has three layers:
//!
//! * [`numkit`] — small numeric foundation: a column-oriented [`numkit::Dataset`],
//!   least squares with explicit rank diagnostics, and heteroskedasticity-robust
//!   (sandwich) covariance for just-identified method-of-moments fits.
//! * [`ivest`] — IV estimators: the Wald ratio, a summary-statistic Wald
//!   estimator for published trial results, four two-stage least squares
//!   specifications with increasingly rich effect-modifier adjustment, and a
//!   decomposition of the Wald estimand over the levels of a discrete
//!   instrument.
//! * [`dgp`] + [`mc`] — a configurable data-generating process with
//!   per-individual effect oracles, and a deterministic, parallel Monte Carlo
//!   harness that measures bias, coverage, and rejection rates of the
//!   estimators against the analytic average causal effect.
//!
//! # Quick example
//!
//! ```
//! use nosh_lab::dgp::{builtin_scenario, generate};
//! use nosh_lab::ivest::{tsls_fit, IvKind, IvSpec};
//!
//! let mut config = builtin_scenario(1)?;
//! config.n = 20_000;
//! let sim = generate(&config, 7)?;
//!
//! let spec = IvSpec::new(IvKind::Tsls1, "Z", "X", "Y", None)?;
//! let fit = tsls_fit(&sim.data, &spec)?;
//! assert!((fit.point - sim.ace).abs() < 0.1);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod dgp;
pub mod ivest;
pub mod mc;
pub mod numkit;

#[cfg(doctest)]
mod book;
