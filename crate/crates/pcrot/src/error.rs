// SPDX-License-Identifier: MIT OR Apache-2.0

//! Error taxonomy shared by all modules.
//!
//! Errors are part of the numeric contract: certified approximate arithmetic
//! refuses to guess at breakpoints (`BoundaryAmbiguous`) or to pretend a
//! truncated series met an unattainable tolerance (`PrecisionExhausted`).

use thiserror::Error;

/// Library error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An approximate comparison or floor landed within its error bound of a
    /// breakpoint; the caller must refine precision or switch to exact mode.
    #[error("boundary-ambiguous {what}: |distance| = {distance:e} ≤ bound {bound:e}")]
    BoundaryAmbiguous {
        what: String,
        distance: f64,
        bound: f64,
    },

    /// Requested error bound unattainable within the truncation cap.
    #[error("precision exhausted: requested err {requested:e}, best tail bound {achieved:e} at N = {n}")]
    PrecisionExhausted {
        requested: f64,
        achieved: f64,
        n: usize,
    },

    /// Input outside the operation's domain.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// Generalized-inverse argument outside [φ(0), φ(1⁻)).
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Synthesis goal inconsistent (e.g. two orbits with α ∈ {i/q}).
    #[error("infeasible goal: {0}")]
    InfeasibleGoal(String),

    /// Inverse problem input lies in a fixed-point region F₁ ∪ F₂ (ρ_f = 0).
    #[error("input lies in fixed-point region {region}")]
    FixedPointRegion { region: &'static str },

    /// No cycle confirmed and bracket wider than requested; the certified
    /// bracket [lower, upper] ∋ ρ_f is still reported.
    #[error("inconclusive rotation number: bracket [{lower}, {upper}] after {n} iterations")]
    Inconclusive { lower: f64, upper: f64, n: usize },

    /// Operation preconditions (e.g. inside_strict) not met.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// Codeword too short for the requested factor-complexity range.
    #[error("insufficient word length {len} for n_max = {n_max} (need ≥ {need})")]
    InsufficientLength {
        len: usize,
        n_max: usize,
        need: usize,
    },

    /// Parameter validation failure.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Library result alias.
pub type Result<T> = std::result::Result<T, Error>;
