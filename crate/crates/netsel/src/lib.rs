//! Multi-attribute network selection for heterogeneous wireless environments.
//!
//! The crate ranks candidate access networks (e.g. UMTS, WLAN, WIMAX) against
//! weighted QoS, security and cost criteria and simulates how often a mobile
//! terminal would hand off between them:
//!
//! * [`fahp`] derives criterion weights from fuzzy pairwise comparison
//!   matrices and gates them on a consistency ratio.
//! * [`topsis`] ranks alternatives by relative closeness to the ideal
//!   solution over benefit and cost criteria.
//! * [`selector`] composes a two-level criteria hierarchy into global
//!   weights, builds the decision matrix from live network measurements
//!   (optionally extended with a per-network history score) and picks the
//!   best network.
//! * [`simulator`] runs seeded Monte Carlo trials over randomized network
//!   conditions and compares handoff counts between the history-blind and
//!   history-aware selection algorithms.
//!
//! All ranking operations are pure functions of their inputs. Simulation
//! trials are independent; with the `parallel` feature (enabled by default)
//! they fan out over a rayon thread pool while producing reports that are
//! byte-identical to the sequential path.

pub mod fahp;
pub mod selector;
pub mod simulator;
pub mod topsis;

mod util;

/// Absolute tolerance for floating-point comparisons of derived quantities
/// (weight sums, reciprocity checks, normalized column norms).
pub const ABS_TOL: f64 = 1e-9;

/// Width of a tie band: closeness scores closer than this are treated as
/// equal when ordering alternatives.
pub const TIE_EPS: f64 = 1e-12;
