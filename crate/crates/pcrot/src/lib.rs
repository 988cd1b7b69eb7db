// SPDX-License-Identifier: MIT OR Apache-2.0

//! Parameter-space analysis of piecewise λ-affine circle contractions
//!
//! The map under study is f(x) = λx + δ + d·θ_a(x) mod 1 on [0, 1), with
//! contraction λ ∈ (0,1), jump size d ∈ (0, 1−λ), offset δ, and jump
//! location a; θ_a(x) = 1 iff x ≥ a. Each such map has a unique rotation
//! number ρ(f), and for each target (ρ, α) the parameter set
//!
//!   P_{ρ,α} = { (δ, a) : f is semiconjugate to the rotation R_ρ with the
//!               jump point coded by α }
//!
//! is a parallelogram in the (δ, a) square whose corners are explicit
//! geometric series in λ. This crate computes those series and everything
//! built on top of them:
//!
//! - [`map`] — the map itself: evaluation, lift, winding, the M₁/M₂/M₃
//!   branch-structure partition, and fixed-point (ρ = 0, 1) regions.
//! - [`series`] — the boundary functions δ(ρ, α), a(δ, ρ, α), the
//!   semiconjugacy φ, their one-sided limits, and exact gap formulas.
//!   Rational inputs evaluate in closed form over `BigRational`; irrational
//!   inputs get truncated sums with certified tail bounds.
//! - [`regions`] — maximal regions P_{ρ,α}, membership with boundary
//!   strictness, per-denominator enumeration, and parameter synthesis from
//!   dynamical goals (orbit count, word complexity, branch structure).
//! - [`inverse`] — the inverse problems: rotation number of a given map
//!   (with algebraic cycle certificates), the staircase inverse ρ_δ, and
//!   recovery of (ρ, α) from (δ, a) with a containment certificate.
//! - [`dynamics`] — orbits, periodic/Cantor attractors, symbolic codes and
//!   their factor complexity, conjugacy residuals, and the generalized
//!   inverse of φ.
//! - [`sweep`] — Farey-sequence tongue sweeps for plotting; data-parallel
//!   via rayon behind the `parallel` feature (on by default) with a
//!   byte-identical sequential fallback.
//!
//! # Numerics
//!
//! All boundary-sensitive arithmetic runs through [`scalar::Scalar`], which
//! is either an exact `BigRational` or an f64 with a certified error radius.
//! Comparisons that a radius cannot resolve fail loudly with
//! [`error::Error::BoundaryAmbiguous`] instead of guessing a branch; known
//! exact hits (e.g. resonances α = {kρ}) are declared up front and resolved
//! by one-sided convention rather than by floating-point luck.
//!
//! # Example
//!
//! ```
//! use pcrot::map::Params;
//! use pcrot::scalar::Scalar;
//! use pcrot::series::{delta_of, Precision, Rho, RotationTarget};
//!
//! // λ = 1/2, d = 1/4: right edge of the ρ = 1/2 tongue at α = 1/2.
//! let params = Params::from_ratios((1, 2), (1, 4)).unwrap();
//! let target = RotationTarget::new(Rho::rational(1, 2).unwrap(),
//!                                  Scalar::from_ratio(1, 2)).unwrap();
//! let edge = delta_of(&params, &target, &Precision::default()).unwrap();
//! assert!(edge.value.eq_exact(&Scalar::from_ratio(3, 4)));
//! assert!(edge.limit.eq_exact(&Scalar::from_ratio(1, 2)));
//! ```

pub mod dynamics;
pub mod error;
pub mod inverse;
pub mod map;
pub mod regions;
pub mod scalar;
pub mod series;
pub mod sweep;

pub use error::{Error, Result};
pub use map::{MapClass, MapClassTag, MapSpec, Params};
pub use scalar::Scalar;
pub use series::{Precision, Rho, RotationTarget};
