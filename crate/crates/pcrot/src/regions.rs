// SPDX-License-Identifier: MIT OR Apache-2.0

//! The parameter parallelograms P_{ρ,α}: construction, enumeration (2q+1
//! regions per reduced p/q), membership with the closed/half-open dichotomy,
//! the expected map class per the α-range proposition, and synthesis of maps
//! with prescribed dynamics.
//!
//! P_{ρ,α} = {(δ,a): δ ∈ [δ(ρ⁻,α), δ(ρ,α)], a ∈ [a(δ,ρ⁺,α), a(δ,ρ,α)]}.
//! The a-interval endpoints are affine in δ with slope 1/(1−λ) and constant
//! width, so the region is stored as a δ-interval plus two δ-independent
//! offsets. The rotation-number theorem uses the closed region; the
//! conjugacy/attractor theorem needs the half-open one (δ ≠ δ(ρ,α) and
//! a ≠ a(δ,ρ⁺,α)) when ρ is rational.

use crate::error::{Error, Result};
use crate::map::{MapClassTag, MapSpec, Params};
use crate::scalar::Scalar;
use crate::series::{a_of, delta_of, Precision, Rho, RotationTarget};

/// Which membership convention a region is meant to be used with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InclusionMode {
    /// Rotation-number guarantee: all four boundary pieces included.
    Closed,
    /// Conjugacy/attractor hypotheses: δ ≠ δ_hi and a ≠ a_lo (rational ρ).
    HalfOpen,
}

/// The parameter parallelogram P_{ρ,α}.
#[derive(Clone, Debug)]
pub struct Region {
    pub target: RotationTarget,
    /// δ(ρ⁻,α) ≤ δ(ρ,α).
    pub delta_lo: Scalar,
    pub delta_hi: Scalar,
    /// Admissible a at δ is [δ/(1−λ) + a_offset_lo, δ/(1−λ) + a_offset_hi].
    pub a_offset_lo: Scalar,
    pub a_offset_hi: Scalar,
    pub inclusion_mode: InclusionMode,
}

/// Result of a membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    /// Conjugacy hypotheses hold (δ ≠ δ_hi, a ≠ a_lo for rational ρ).
    InsideStrict,
    /// Only the closed rotation-number guarantee holds.
    InsideBoundary,
    Outside,
}

impl Region {
    /// a-interval bounds at a given δ.
    pub fn a_bounds(&self, params: &Params, delta: &Scalar) -> (Scalar, Scalar) {
        let base = delta.div(&params.one_minus_lambda());
        (base.add(&self.a_offset_lo), base.add(&self.a_offset_hi))
    }

    /// Constant a-width of the parallelogram.
    pub fn a_width(&self) -> Scalar {
        self.a_offset_hi.sub(&self.a_offset_lo)
    }

    /// δ-width.
    pub fn delta_width(&self) -> Scalar {
        self.delta_hi.sub(&self.delta_lo)
    }
}

/// Build P_{ρ,α}. The δ-interval is guaranteed ⊂ (1−λ−d, 1); the a-interval
/// may stick out of [0,1] for α ∈ {0,1} (clip at use sites).
pub fn region(params: &Params, target: &RotationTarget, prec: &Precision) -> Result<Region> {
    let ds = delta_of(params, target, prec)?;
    let asv = a_of(params, &ds.value, target, prec)?;
    let base = ds.value.div(&params.one_minus_lambda());
    let a_offset_hi = asv.value.sub(&base);
    let a_offset_lo = asv.limit.sub(&base);
    Ok(Region {
        target: target.clone(),
        delta_lo: ds.limit,
        delta_hi: ds.value,
        a_offset_lo,
        a_offset_hi,
        inclusion_mode: InclusionMode::Closed,
    })
}

/// Membership with the strict/boundary distinction. Boundary coincidences in
/// approximate mode surface as `BoundaryAmbiguous`.
pub fn contains(
    params: &Params,
    region: &Region,
    delta: &Scalar,
    a: &Scalar,
) -> Result<Containment> {
    let (a_lo, a_hi) = region.a_bounds(params, delta);
    // For irrational ρ the region degenerates to a point up to the certified
    // series error, so a within-error comparison against its own boundary is
    // the expected outcome, not a failure: ambiguity counts as satisfied.
    // Rational ρ keeps hard certified comparisons (they are exact there).
    let soft = matches!(&region.target.rho, Rho::Irrational(_));
    let cmp_ok = |r: Result<bool>| -> Result<bool> {
        match r {
            Ok(b) => Ok(b),
            Err(Error::BoundaryAmbiguous { .. }) if soft => Ok(true),
            Err(e) => Err(e),
        }
    };
    let in_closed = cmp_ok(delta.ge(&region.delta_lo))?
        && cmp_ok(delta.le(&region.delta_hi))?
        && cmp_ok(a.ge(&a_lo))?
        && cmp_ok(a.le(&a_hi))?;
    if !in_closed {
        return Ok(Containment::Outside);
    }
    let strict = match &region.target.rho {
        // Irrational ρ: the closed conditions are already the conjugacy
        // hypotheses.
        Rho::Irrational(_) => true,
        Rho::Rational { .. } => {
            // δ ≠ δ_hi and a ≠ a_lo. Exact scalars decide equality exactly;
            // if either width is zero the strict test can never pass on that
            // side.
            let delta_interior = if delta.eq_exact(&region.delta_hi) {
                false
            } else {
                delta.lt(&region.delta_hi)?
            };
            let a_interior = if a.eq_exact(&a_lo) { false } else { a.cmp_certified(&a_lo)? == std::cmp::Ordering::Greater };
            delta_interior && a_interior
        }
    };
    Ok(if strict {
        Containment::InsideStrict
    } else {
        Containment::InsideBoundary
    })
}

/// The 2q+1 distinct regions of a reduced rational ρ = p/q: α = l/q for
/// l ∈ {0..q} plus the midpoint representative (2l+1)/(2q) of each interval
/// (l/q, (l+1)/q) — all α in one such interval share the same region.
/// Sorted by α.
pub fn enumerate_regions(
    params: &Params,
    p: i64,
    q: i64,
    prec: &Precision,
) -> Result<Vec<(Scalar, Region)>> {
    if q < 2 || p <= 0 || p >= q || num::integer::gcd(p, q) != 1 {
        return Err(Error::InvalidParameter(format!("need reduced 0 < p < q, got {p}/{q}")));
    }
    let rho = Rho::rational(p, q)?;
    let mut out = Vec::with_capacity(2 * q as usize + 1);
    for l in 0..=q {
        let alpha = Scalar::from_ratio(l, q);
        let t = RotationTarget::new(rho.clone(), alpha.clone())?;
        out.push((alpha, region(params, &t, prec)?));
        if l < q {
            let alpha = Scalar::from_ratio(2 * l + 1, 2 * q);
            let t = RotationTarget::new(rho.clone(), alpha.clone())?;
            out.push((alpha, region(params, &t, prec)?));
        }
    }
    Ok(out)
}

/// Strength of the classify_alpha guarantee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    /// Irrational ρ: every point of P_{ρ,α} has the stated class.
    AllPoints,
    /// Rational ρ: some point of the region has the stated class.
    ExistsPoint,
}

/// Expected map class from the α-range proposition: M₁ if α ∈ [0, 1−ρ),
/// M₂ if α = 1−ρ, M₃ if α ∈ (1−ρ, 1].
pub fn classify_alpha(target: &RotationTarget) -> Result<(MapClassTag, Strength)> {
    let one_minus_rho = Scalar::one().sub(&target.rho.as_scalar());
    let strength = if target.rho.is_rational() {
        Strength::ExistsPoint
    } else {
        Strength::AllPoints
    };
    let tag = if target.alpha.eq_exact(&one_minus_rho) {
        MapClassTag::M2
    } else {
        match target.alpha.cmp_certified(&one_minus_rho)? {
            std::cmp::Ordering::Less => MapClassTag::M1,
            std::cmp::Ordering::Equal => MapClassTag::M2,
            std::cmp::Ordering::Greater => MapClassTag::M3,
        }
    };
    Ok((tag, strength))
}

/// A synthesis request: a rotation number plus a dynamical goal.
#[derive(Clone, Debug)]
pub enum SynthesisGoal {
    /// Rational ρ = p/q with one q-cycle (α = 0) or two interleaved q-cycles
    /// (α = 1/(2q)).
    OrbitCount { count: u8, p: i64, q: i64 },
    /// Irrational ρ, generic α (default 1/4): factor complexity p(n) = 2n+1.
    ComplexityGeneric { rho: Scalar, alpha: Option<Scalar> },
    /// Irrational ρ with declared α = {kρ}: complexity p(n) = n+b eventually.
    ComplexityResonant { rho: Scalar, k: i64 },
    /// Any ρ with a prescribed map class of the interior point.
    MapType { rho: Rho, tag: MapClassTag },
}

/// Expected dynamics attached to a synthesized spec.
#[derive(Clone, Debug)]
pub enum Expectation {
    PeriodicOrbits { count: u8, period: i64, winding: i64 },
    ComplexityTwoNPlusOne,
    ComplexityNPlusB { b: i64 },
    MapType { tag: MapClassTag },
}

/// Synthesis certificate: the target, its region, and the claimed dynamics.
#[derive(Clone, Debug)]
pub struct SynthesisCertificate {
    pub target: RotationTarget,
    pub region: Region,
    pub expected: Expectation,
}

/// The b of p(n) = n+b for a declared resonance α = {kρ}: b = |k| if k ≤ −2,
/// b = 1 if k ∈ {−1, 0}, b = k+1 if k ≥ 1.
pub fn resonant_b(k: i64) -> i64 {
    if k <= -2 {
        -k
    } else if k <= 0 {
        1
    } else {
        k + 1
    }
}

/// Interior point of a region under half-open conventions: midpoint in δ,
/// then midpoint of the a-interval clipped to [0,1].
pub fn interior_point(params: &Params, region: &Region) -> Result<(Scalar, Scalar)> {
    let delta = if region.delta_width().is_zero() {
        region.delta_hi.clone()
    } else {
        region.delta_lo.midpoint(&region.delta_hi)
    };
    let (a_lo, a_hi) = region.a_bounds(params, &delta);
    let zero = Scalar::zero();
    let one = Scalar::one();
    let lo = if a_lo.lt(&zero).unwrap_or(false) { zero } else { a_lo.clone() };
    let hi = if a_hi.ge(&one).unwrap_or(false) { one } else { a_hi.clone() };
    if region.a_width().is_zero() {
        // Degenerate a-interval (irrational, no resonance): a = a_hi must be
        // admissible by itself.
        if hi.cmp_certified(&lo).unwrap_or(std::cmp::Ordering::Less) == std::cmp::Ordering::Less {
            return Err(Error::InfeasibleGoal("a-interval falls outside [0,1]".into()));
        }
        return Ok((delta, hi));
    }
    match lo.cmp_certified(&hi) {
        Ok(std::cmp::Ordering::Less) => Ok((delta, lo.midpoint(&hi))),
        _ => Err(Error::InfeasibleGoal("clipped a-interval is empty".into())),
    }
}

/// Synthesize a map with prescribed dynamics: picks α per the goal, builds
/// the region, and returns the interior (δ,a) plus a certificate.
pub fn synthesize(
    params: &Params,
    goal: &SynthesisGoal,
    prec: &Precision,
) -> Result<(MapSpec, SynthesisCertificate)> {
    let (target, expected) = match goal {
        SynthesisGoal::OrbitCount { count, p, q } => {
            if *q < 2 || *p <= 0 || *p >= *q || num::integer::gcd(*p, *q) != 1 {
                return Err(Error::InfeasibleGoal(format!("need reduced 0 < p < q, got {p}/{q}")));
            }
            let rho = Rho::rational(*p, *q)?;
            let alpha = match count {
                1 => Scalar::zero(),
                2 => Scalar::from_ratio(1, 2 * q),
                _ => return Err(Error::InfeasibleGoal("orbit count must be 1 or 2".into())),
            };
            (
                RotationTarget::new(rho, alpha)?,
                Expectation::PeriodicOrbits {
                    count: *count,
                    period: *q,
                    winding: *p,
                },
            )
        }
        SynthesisGoal::ComplexityGeneric { rho, alpha } => {
            if rho.is_exact() {
                return Err(Error::InfeasibleGoal("complexity goals need irrational ρ".into()));
            }
            let alpha = alpha.clone().unwrap_or_else(|| Scalar::from_ratio(1, 4));
            (
                RotationTarget::new(Rho::Irrational(rho.clone()), alpha)?,
                Expectation::ComplexityTwoNPlusOne,
            )
        }
        SynthesisGoal::ComplexityResonant { rho, k } => {
            if rho.is_exact() {
                return Err(Error::InfeasibleGoal("complexity goals need irrational ρ".into()));
            }
            (
                RotationTarget::resonant(Rho::Irrational(rho.clone()), *k)?,
                Expectation::ComplexityNPlusB { b: resonant_b(*k) },
            )
        }
        SynthesisGoal::MapType { rho, tag } => {
            let one_minus_rho = Scalar::one().sub(&rho.as_scalar());
            let alpha = match tag {
                MapClassTag::M1 => one_minus_rho.div(&Scalar::from_int(2)),
                MapClassTag::M2 => one_minus_rho,
                MapClassTag::M3 => one_minus_rho.add(&Scalar::one()).div(&Scalar::from_int(2)),
                MapClassTag::OutOfM => {
                    return Err(Error::InfeasibleGoal("cannot target OutOfM".into()))
                }
            };
            (
                RotationTarget::new(rho.clone(), alpha)?,
                Expectation::MapType { tag: *tag },
            )
        }
    };
    let mut reg = region(params, &target, prec)?;
    reg.inclusion_mode = InclusionMode::HalfOpen;
    let (delta, a) = interior_point(params, &reg)?;
    let spec = MapSpec::new(params.clone(), delta.clone(), a.clone())?;
    // The chosen point must satisfy the strict hypotheses.
    match contains(params, &reg, &delta, &a)? {
        Containment::InsideStrict => {}
        other => {
            return Err(Error::InfeasibleGoal(format!(
                "interior point not strict (got {other:?})"
            )))
        }
    }
    Ok((
        spec,
        SynthesisCertificate {
            target,
            region: reg,
            expected,
        },
    ))
}
