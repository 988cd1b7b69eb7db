// SPDX-License-Identifier: MIT OR Apache-2.0

//! Farey-sequence tongue sweeps over the (δ, a) parameter square.
//!
//! A "tongue" for ρ = p/q is the union ∪_α P_{ρ,α} of the 2q+1 maximal
//! regions of `enumerate_regions`. Sweeping a Farey sequence reproduces the
//! tongue-overlay pictures; each rational is independent, so the sweep is
//! data-parallel. With the `parallel` feature the work fans out via rayon and
//! results are gathered in deterministic (p/q ascending) order; without it a
//! sequential fallback with identical output is used.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::map::Params;
use crate::regions::{enumerate_regions, Region};
use crate::series::Precision;

/// Reduced rationals p/q with 0 < p/q < 1 and q ≤ order, ascending.
/// (F₂₀ has 127 interior terms.)
pub fn farey(order: i64) -> Vec<(i64, i64)> {
    assert!(order >= 1, "farey order must be ≥ 1");
    // Standard next-term recurrence from 0/1, 1/order.
    let mut out = Vec::new();
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, order);
    while c <= order {
        let k = (order + b) / d;
        let (na, nb, nc, nd) = (c, d, k * c - a, k * d - b);
        a = na;
        b = nb;
        c = nc;
        d = nd;
        if a < b {
            out.push((a, b));
        }
    }
    out
}

/// All maximal regions of one rational tongue, labelled by α, δ-ascending.
#[derive(Clone, Debug)]
pub struct Tongue {
    pub p: i64,
    pub q: i64,
    pub regions: Vec<(crate::scalar::Scalar, Region)>,
}

fn tongue(params: &Params, p: i64, q: i64, prec: &Precision) -> Result<Tongue> {
    Ok(Tongue {
        p,
        q,
        regions: enumerate_regions(params, p, q, prec)?,
    })
}

/// Sequential reference sweep (always available; the criterion bench
/// compares it against the parallel entry point).
pub fn tongues_sequential(params: &Params, order: i64, prec: &Precision) -> Result<Vec<Tongue>> {
    farey(order)
        .into_iter()
        .map(|(p, q)| tongue(params, p, q, prec))
        .collect()
}

/// Sweep all tongues of the Farey sequence of the given order.
///
/// Output order and content are identical with and without `parallel`.
#[cfg(feature = "parallel")]
pub fn tongues(params: &Params, order: i64, prec: &Precision) -> Result<Vec<Tongue>> {
    farey(order)
        .into_par_iter()
        .map(|(p, q)| tongue(params, p, q, prec))
        .collect()
}

/// Sweep all tongues of the Farey sequence of the given order.
#[cfg(not(feature = "parallel"))]
pub fn tongues(params: &Params, order: i64, prec: &Precision) -> Result<Vec<Tongue>> {
    tongues_sequential(params, order, prec)
}

/// Parallelogram corners of a region in the (δ, a) square, counter-clockwise
/// from the lower-left: a is affine in δ with slope 1/(1−λ), so the region is
/// bounded by two verticals and two slanted edges.
pub fn region_corners(params: &Params, region: &Region) -> [(f64, f64); 4] {
    let (lo_at_dlo, hi_at_dlo) = region.a_bounds(params, &region.delta_lo);
    let (lo_at_dhi, hi_at_dhi) = region.a_bounds(params, &region.delta_hi);
    [
        (region.delta_lo.to_f64(), lo_at_dlo.to_f64()),
        (region.delta_hi.to_f64(), lo_at_dhi.to_f64()),
        (region.delta_hi.to_f64(), hi_at_dhi.to_f64()),
        (region.delta_lo.to_f64(), hi_at_dlo.to_f64()),
    ]
}
