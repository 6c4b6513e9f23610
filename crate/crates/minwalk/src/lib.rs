//! Simulation and verification lab for a minimal random walk with
//! long-range memory.
//!
//! The walk lives on {0, 1, 2, ...} and never steps left. The first step is
//! Bernoulli(s). Afterwards, given the position X_n at time n, the walk
//! steps right with probability
//!
//! ```text
//! P[step at time n+1] = q + alpha * X_n / n,     alpha = p - q,
//! ```
//!
//! so the entire history enters only through the current fraction of moves.
//! Despite that thin interface the walk is genuinely non-Markovian in time:
//! depending on alpha it diffuses like an ordinary random walk
//! (alpha < 1/2), picks up a log-corrected variance at the critical point
//! (alpha = 1/2), or turns superdiffusive with a non-Gaussian limit
//! (alpha > 1/2).
//!
//! The crate has three layers:
//!
//! * closed forms ([`closed_form`]): memory coefficients, exact means and
//!   moments, variance sums, scaling classification, iterated-logarithm
//!   constants;
//! * simulation ([`simulate`]): two independently coded sampling engines on
//!   a counter-based deterministic RNG, exact integer ensemble statistics,
//!   and an exact O(n^2) distribution enumerator ([`model`]);
//! * verification ([`verify`], [`stats`]): hypothesis-test style checks
//!   that the sampled walk matches every closed form, with machine-readable
//!   reports.
//!
//! The `examples/` directory is the primary interface: each example is a
//! runnable demonstration of one capability (enumeration, ensembles,
//! closed forms, law-of-large-numbers / CLT / limit-law verification, phase
//! diagrams, iterated-logarithm diagnostics, martingale checks). A thin
//! `minwalk` binary exposes the same operations for scripting.

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod model;
mod numeric;
pub mod simulate;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    enumerate_distribution, enumerate_distribution_with_cap, exact_moment,
    exact_moment_with_cap, step_probability, DistributionTable, ModelParams, WalkState,
    DEFAULT_SUPPORT_CAP, REGIME_EPS,
};
