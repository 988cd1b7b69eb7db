// SPDX-License-Identifier: MIT OR Apache-2.0

//! Fundamental objects: the step function θ_a, the auxiliary ψ_α, the lift
//! F(x) = λx + δ + (1−λ)⌊x⌋ + d·θ_a({x}), the circle map f = F mod 1, the
//! rotation R_ρ, and structural classification of the parameter square.
//!
//! Conventions (fixed once for the whole crate):
//! * θ_a(z) = 1 iff z ≥ a — right-continuous, defined on all of ℝ;
//! * intervals [·,·) are left-closed;
//! * the parameter set of interest is M = {δ ∈ (1−λ−d, 1)}, partitioned into
//!   M₁ (3-branch, split at a < η₁), M₂ (2-branch, a ∈ [η₁,η₂]), and
//!   M₃ (3-branch, split at η₂ < a), where η₁ = (1−δ−d)/λ and η₂ = (1−δ)/λ
//!   are the two candidate solutions of F(x) = 1.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ambient map-family parameters λ ∈ (0,1) and d ∈ (0, 1−λ).
#[derive(Clone, Debug)]
pub struct Params {
    pub lambda: Scalar,
    pub d: Scalar,
}

impl Params {
    /// Validated constructor: 0 < λ < 1 and 0 < d < 1 − λ (both strict).
    pub fn new(lambda: Scalar, d: Scalar) -> Result<Self> {
        let zero = Scalar::zero();
        let one = Scalar::one();
        if !(lambda.cmp_certified(&zero)? == std::cmp::Ordering::Greater
            && lambda.cmp_certified(&one)? == std::cmp::Ordering::Less)
        {
            return Err(Error::InvalidParameter(format!("lambda = {lambda} not in (0,1)")));
        }
        let one_minus_lambda = one.sub(&lambda);
        if !(d.cmp_certified(&zero)? == std::cmp::Ordering::Greater
            && d.cmp_certified(&one_minus_lambda)? == std::cmp::Ordering::Less)
        {
            return Err(Error::InvalidParameter(format!("d = {d} not in (0, 1-lambda)")));
        }
        Ok(Params { lambda, d })
    }

    /// Convenience: exact rational parameters.
    pub fn from_ratios(lambda: (i64, i64), d: (i64, i64)) -> Result<Self> {
        Params::new(Scalar::from_ratio(lambda.0, lambda.1), Scalar::from_ratio(d.0, d.1))
    }

    /// 1 − λ.
    pub fn one_minus_lambda(&self) -> Scalar {
        Scalar::one().sub(&self.lambda)
    }

    /// 1 − λ − d (the left edge of M in δ).
    pub fn m_left_edge(&self) -> Scalar {
        self.one_minus_lambda().sub(&self.d)
    }
}

/// The four parameters (λ, d, δ, a) of a lift/map instance.
#[derive(Clone, Debug)]
pub struct MapSpec {
    pub params: Params,
    pub delta: Scalar,
    pub a: Scalar,
}

impl MapSpec {
    /// Validated constructor: δ ∈ [0,1], a ∈ [0,1] on top of valid `params`.
    pub fn new(params: Params, delta: Scalar, a: Scalar) -> Result<Self> {
        let zero = Scalar::zero();
        let one = Scalar::one();
        if delta.ge(&zero)? && delta.le(&one)? && a.ge(&zero)? && a.le(&one)? {
            Ok(MapSpec { params, delta, a })
        } else {
            Err(Error::InvalidParameter(format!("delta = {delta}, a = {a} not in [0,1]")))
        }
    }
}

/// The two candidate solutions of F(x) = 1: η₁ = (1−δ−d)/λ ≤ η₂ = (1−δ)/λ.
#[derive(Clone, Debug)]
pub struct Breakpoints {
    pub eta1: Scalar,
    pub eta2: Scalar,
}

impl Breakpoints {
    pub fn of(spec: &MapSpec) -> Breakpoints {
        let one = Scalar::one();
        let eta2 = one.sub(&spec.delta).div(&spec.params.lambda);
        let eta1 = eta2.sub(&spec.params.d.div(&spec.params.lambda));
        Breakpoints { eta1, eta2 }
    }
}

/// Which member of the M₁/M₂/M₃ partition a spec belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClassTag {
    M1,
    M2,
    M3,
    /// δ ∉ (1−λ−d, 1): the map has a (possibly ghost) fixed point.
    OutOfM,
}

/// Branch structure of the circle map on [0,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchForm {
    /// M₁: λx+δ on [0,a), λx+δ+d on [a,η₁), λx+δ+d−1 on [η₁,1).
    ThreePieceLow,
    /// M₂: λx+δ on [0,a), λx+δ+d−1 on [a,1).
    TwoPiece,
    /// M₃: λx+δ on [0,η₂), λx+δ−1 on [η₂,a), λx+δ−1+d on [a,1).
    ThreePieceHigh,
}

/// Classification result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapClass {
    pub tag: MapClassTag,
    pub branch_form: Option<BranchForm>,
}

/// Fixed-point structure per the F₁/F₂ regions.
#[derive(Clone, Debug)]
pub struct FixedPointInfo {
    pub region: FpRegion,
    pub x_star: Option<Scalar>,
    /// x_* = f(x_*⁻) but x_* ≠ f(x_*): only in F₁ with x_* ∈ {a, 1}.
    pub ghost: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpRegion {
    F1,
    F2,
    None,
}

/// θ_a(z) = 1 iff z ≥ a (right-continuous step), on all of ℝ.
///
/// In approximate mode a comparison within the error bound raises
/// [`Error::BoundaryAmbiguous`]; it is never silently resolved.
pub fn theta(a: &Scalar, z: &Scalar) -> Result<u8> {
    Ok(if z.ge(a)? { 1 } else { 0 })
}

/// ψ_α(z) = (1−λ)⌊z⌋ + d·θ_α({z}); satisfies ψ_α(z+l) = ψ_α(z) + l(1−λ).
pub fn psi(params: &Params, alpha: &Scalar, z: &Scalar) -> Result<Scalar> {
    let fl = z.floor()?;
    let fr = z.sub(&fl);
    let th = theta(alpha, &fr)?;
    let mut out = params.one_minus_lambda().mul(&fl);
    if th == 1 {
        out = out.add(&params.d);
    }
    Ok(out)
}

/// The lift F(x) = λx + δ + (1−λ)⌊x⌋ + d·θ_a({x}); strictly increasing,
/// F(x+1) = F(x) + 1.
pub fn lift_eval(spec: &MapSpec, x: &Scalar) -> Result<Scalar> {
    let fl = x.floor()?;
    let fr = x.sub(&fl);
    let th = theta(&spec.a, &fr)?;
    let mut out = spec
        .params
        .lambda
        .mul(x)
        .add(&spec.delta)
        .add(&spec.params.one_minus_lambda().mul(&fl));
    if th == 1 {
        out = out.add(&spec.params.d);
    }
    Ok(out)
}

/// The circle map f(x) = F(x) mod 1 on [0,1).
pub fn map_eval(spec: &MapSpec, x: &Scalar) -> Result<Scalar> {
    lift_eval(spec, x)?.fract()
}

/// As [`map_eval`], but also reports the winding increment ⌊F(x)⌋ − ⌊x⌋
/// (for x ∈ [0,1) this is just ⌊F(x)⌋).
pub fn map_eval_winding(spec: &MapSpec, x: &Scalar) -> Result<(Scalar, i64)> {
    let fx = lift_eval(spec, x)?;
    let w = fx.floor_int()?;
    let wx = x.floor_int()?;
    let winding = (&w - &wx).try_into().map_err(|_| {
        Error::OutOfDomain("winding increment does not fit in i64".into())
    })?;
    Ok((fx.sub(&Scalar::exact(num::BigRational::from_integer(w))), winding))
}

/// Classify a spec into (η₁, η₂) and the M₁/M₂/M₃/OutOfM tag.
pub fn classify(spec: &MapSpec) -> Result<(Breakpoints, MapClass)> {
    let bp = Breakpoints::of(spec);
    let one = Scalar::one();
    let in_m = spec.delta.cmp_certified(&spec.params.m_left_edge())?
        == std::cmp::Ordering::Greater
        && spec.delta.cmp_certified(&one)? == std::cmp::Ordering::Less;
    if !in_m {
        return Ok((
            bp,
            MapClass {
                tag: MapClassTag::OutOfM,
                branch_form: None,
            },
        ));
    }
    let class = if spec.a.lt(&bp.eta1)? {
        MapClass {
            tag: MapClassTag::M1,
            branch_form: Some(BranchForm::ThreePieceLow),
        }
    } else if spec.a.le(&bp.eta2)? {
        MapClass {
            tag: MapClassTag::M2,
            branch_form: Some(BranchForm::TwoPiece),
        }
    } else {
        MapClass {
            tag: MapClassTag::M3,
            branch_form: Some(BranchForm::ThreePieceHigh),
        }
    };
    Ok((bp, class))
}

/// Fixed-point region test (Eqs. F₁/F₂):
/// F₁: δ ∈ (1−λ−d, 1−λ], a ≥ δ/(1−λ), fixed point x_* = δ/(1−λ);
/// F₂: δ ∈ [1−d, 1),    a ≤ (δ+d−1)/(1−λ), fixed point x_* = (δ+d−1)/(1−λ).
/// `ghost` is set iff x_* ∈ {a, 1} inside F₁ (exactly representable cases).
pub fn fixed_point_check(spec: &MapSpec) -> Result<FixedPointInfo> {
    let one = Scalar::one();
    let oml = spec.params.one_minus_lambda();
    // F1 window.
    let in_f1_delta = spec.delta.cmp_certified(&spec.params.m_left_edge())?
        == std::cmp::Ordering::Greater
        && spec.delta.le(&oml)?;
    if in_f1_delta {
        let x_star = spec.delta.div(&oml);
        if spec.a.ge(&x_star)? {
            let ghost = x_star.eq_exact(&spec.a) || x_star.eq_exact(&one);
            return Ok(FixedPointInfo {
                region: FpRegion::F1,
                x_star: Some(x_star),
                ghost,
            });
        }
    }
    // F2 window.
    let one_minus_d = one.sub(&spec.params.d);
    let in_f2_delta = spec.delta.ge(&one_minus_d)?
        && spec.delta.cmp_certified(&one)? == std::cmp::Ordering::Less;
    if in_f2_delta {
        let x_star = spec.delta.add(&spec.params.d).sub(&one).div(&oml);
        if spec.a.le(&x_star)? {
            return Ok(FixedPointInfo {
                region: FpRegion::F2,
                x_star: Some(x_star),
                ghost: false,
            });
        }
    }
    Ok(FixedPointInfo {
        region: FpRegion::None,
        x_star: None,
        ghost: false,
    })
}

/// The rigid rotation R_ρ(y) = {y + ρ}.
pub fn rotation_eval(rho: &Scalar, y: &Scalar) -> Result<Scalar> {
    y.add(rho).fract()
}
