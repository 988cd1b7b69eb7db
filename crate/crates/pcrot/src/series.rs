// SPDX-License-Identifier: MIT OR Apache-2.0

//! Boundary functions δ(ρ,α), a(δ,ρ,α), the conjugating map φ_{δ,ρ,α}, and
//! all one-sided limits — exact for rational ρ, certified truncation
//! otherwise.
//!
//! Everything reduces to one series,
//!
//! ```text
//! S(β, z₀, ρ) = Σ_{k≥1} λ^k ψ_β(z₀ − kρ),
//! ```
//!
//! with ψ_β(z) = (1−λ)⌊z⌋ + d·θ_β({z}):
//!
//! * δ(ρ,α)      = 1−λ−d + ((1−λ)/λ)·S(1−α, 0, −ρ)
//! * φ(y)        = δ/(1−λ) + (1/λ)·S(α, y, ρ)
//! * φ(y⁻)       = (δ+d)/(1−λ) − 1 − (1/λ)·S(1−α, −y, −ρ)   (symmetry lemma)
//! * a(δ,ρ,α)    = φ(α),   a(δ,ρ⁺,α) = φ(α⁻)
//!
//! For ρ = p/q the periodicity ψ_β(z−p) = ψ_β(z) − p(1−λ) collapses S to a
//! finite sum valid for *any* integer p (so the same engine evaluates the
//! symmetric series, which has negative step, and the endpoint rotations
//! 0/1 and 1/1):
//!
//! ```text
//! S = [ λ^q (ψ_β(z₀) − p) + Σ_{r=1}^{q−1} λ^r ψ_β(z₀ − r p/q) ] / (1 − λ^q).
//! ```
//!
//! One-sided limits in ρ are produced by the closed-form gap lemmas, never by
//! numeric limiting; for irrational ρ the resonance kρ ∈ ℤ+α is undecidable
//! from approximations, so it must be *declared* (α given as {kρ}), otherwise
//! gaps are reported as 0 with a caveat flag.

use num::bigint::BigInt;
use num::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::map::{psi, Params};
use crate::scalar::{ratio, Rational, Scalar};

/// Rotation number: reduced rational p/q or a certified approximation of an
/// irrational.
#[derive(Clone, Debug)]
pub enum Rho {
    /// Reduced p/q with 0 ≤ p ≤ q, q ≥ 1. Interior rotations have 0 < p < q;
    /// the endpoints 0/1 and 1/1 are admitted for the inverse-problem
    /// machinery (ρ_δ at α ∈ {0,1}).
    Rational { p: i64, q: i64 },
    /// Certified approximation of an irrational in (0,1).
    Irrational(Scalar),
}

impl Rho {
    /// Reduced rational constructor.
    pub fn rational(p: i64, q: i64) -> Result<Rho> {
        if q < 1 || p < 0 || p > q {
            return Err(Error::InvalidParameter(format!("rho = {p}/{q} not in [0,1]")));
        }
        let g = gcd(p.max(1), q);
        let (p, q) = if p == 0 { (0, 1) } else { (p / g, q / g) };
        Ok(Rho::Rational { p, q })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Rho::Rational { .. })
    }

    /// The rotation as a scalar.
    pub fn as_scalar(&self) -> Scalar {
        match self {
            Rho::Rational { p, q } => Scalar::from_ratio(*p, *q),
            Rho::Irrational(s) => s.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.as_scalar().to_f64()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// The pair (ρ, α) addressing a parameter region, with optional declared
/// resonance α = {k·ρ} (k ∈ ℤ, k ≠ 0; meaningful for irrational ρ only).
#[derive(Clone, Debug)]
pub struct RotationTarget {
    pub rho: Rho,
    pub alpha: Scalar,
    pub resonance: Option<i64>,
}

impl RotationTarget {
    pub fn new(rho: Rho, alpha: Scalar) -> Result<Self> {
        let zero = Scalar::zero();
        let one = Scalar::one();
        if !(alpha.ge(&zero)? && alpha.le(&one)?) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} not in [0,1]")));
        }
        Ok(RotationTarget { rho, alpha, resonance: None })
    }

    /// Declare α = {k·ρ}: α is *computed* from ρ so the relation holds by
    /// construction, and the resonance index drives gap formulas and exact
    /// tie resolution inside truncated series.
    pub fn resonant(rho: Rho, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("resonance index k must be nonzero".into()));
        }
        let alpha = Scalar::from_int(k).mul(&rho.as_scalar()).fract()?;
        Ok(RotationTarget { rho, alpha, resonance: Some(k) })
    }

    /// 1 − α.
    pub fn one_minus_alpha(&self) -> Scalar {
        Scalar::one().sub(&self.alpha)
    }

    /// Exact test α ∈ {0, 1} (false for approximate α).
    pub fn alpha_is_endpoint(&self) -> bool {
        self.alpha.eq_exact(&Scalar::zero()) || self.alpha.eq_exact(&Scalar::one())
    }
}

/// A value together with its one-sided limit.
///
/// Meaning of `limit` per producer: for [`delta_of`] it is δ(ρ⁻,α); for
/// [`a_of`] it is a(δ,ρ⁺,α); for [`phi`] it is φ(y⁻). In all three cases
/// `limit ≤ value`.
#[derive(Clone, Debug)]
pub struct SidedValue {
    pub value: Scalar,
    pub limit: Scalar,
    /// Set when a sided limit could not be certified (irrational ρ without a
    /// declared resonance): the gap is reported as 0 but may be positive.
    pub caveat: bool,
}

/// Truncation policy for irrational-ρ series.
#[derive(Clone, Copy, Debug)]
pub struct Precision {
    /// Target bound for the truncated tail |Σ_{k>N} λ^k ψ_β(·)|.
    pub eps: f64,
    /// Hard cap on N.
    pub n_max: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { eps: 1e-30, n_max: 4096 }
    }
}

/// Rigorous bound for |Σ_{k>N} λ^k ψ_α(y−kρ)| from |ψ_α(z)| ≤ (1−λ)(|z|+1)+d:
///
/// ```text
/// bound = (1−λ)·ρ·λ^{N+1}·((N+1)−Nλ)/(1−λ)² + ((1−λ)(|y|+1)+d)·λ^{N+1}/(1−λ).
/// ```
///
/// (α does not enter; the bound is uniform in the threshold.)
pub fn tail_bound(n: usize, params: &Params, rho_abs: f64, y_abs: f64) -> f64 {
    let lam = params.lambda.to_f64();
    let d = params.d.to_f64();
    let oml = 1.0 - lam;
    let nf = n as f64;
    let lam_pow = lam.powi(n as i32 + 1);
    let b = oml * rho_abs * lam_pow * ((nf + 1.0) - nf * lam) / (oml * oml)
        + (oml * (y_abs + 1.0) + d) * lam_pow / oml;
    // Inflate to stay a rigorous upper bound under f64 rounding.
    b * (1.0 + 1e-9) + f64::MIN_POSITIVE
}

/// Predicted exact coincidences inside a truncated series, resolvable by the
/// paper's right-continuity conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TieKind {
    /// The argument z₀ − kρ is exactly an integer: {z} = 0, ⌊z⌋ = nearest.
    IntegerHit,
    /// {z₀ − kρ} exactly equals the threshold β: θ_β = 1.
    FracHitsBeta,
}

/// Provenance of the series argument, used to predict exact ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YKind {
    /// No exact relation declared; any near-breakpoint term is an error.
    Generic,
    /// y equals α of the target.
    AtAlpha,
    /// y = {kρ} exactly (attractor gap endpoints), k ≥ 1.
    AtKRho(i64),
    /// y = {kρ + α} exactly, k ≥ 1.
    AtKRhoPlusAlpha(i64),
}

/// ψ_β(z) with an optional declared tie at this argument.
fn psi_tied(params: &Params, beta: &Scalar, z: &Scalar, tie: Option<TieKind>) -> Result<Scalar> {
    match tie {
        None => psi(params, beta, z),
        Some(TieKind::IntegerHit) => {
            // z is exactly an integer m: ψ = (1−λ)·m + d·θ_β(0); θ_β(0) = 1
            // iff β = 0.
            let m = z.to_f64().round();
            let m = Scalar::exact(Rational::from_integer(
                BigInt::from(m as i64),
            ));
            let mut out = params.one_minus_lambda().mul(&m);
            if beta.is_zero() {
                out = out.add(&params.d);
            }
            Ok(out)
        }
        Some(TieKind::FracHitsBeta) => {
            // {z} = β ∈ (0,1) exactly: ⌊z⌋ = nearest integer to z − β, θ = 1.
            let m = (z.to_f64() - beta.to_f64()).round();
            let m = Scalar::exact(Rational::from_integer(BigInt::from(m as i64)));
            Ok(params.one_minus_lambda().mul(&m).add(&params.d))
        }
    }
}

/// Finite closed form of S(β, z₀, p/q) for any integer p, q ≥ 1.
fn sum_psi_rational(
    params: &Params,
    beta: &Scalar,
    z0: &Scalar,
    p: i64,
    q: i64,
) -> Result<Scalar> {
    debug_assert!(q >= 1);
    let lam = &params.lambda;
    let lam_q = lam.powi(q as u32);
    let mut inner = lam_q.mul(&psi(params, beta, z0)?.sub(&Scalar::from_int(p)));
    let mut lam_r = lam.clone();
    for r in 1..q {
        let arg = z0.sub(&Scalar::exact(ratio(r * p, q)));
        inner = inner.add(&lam_r.mul(&psi(params, beta, &arg)?));
        lam_r = lam_r.mul(lam);
    }
    Ok(inner.div(&Scalar::one().sub(&lam_q)))
}

/// Truncated S(β, z₀, ρ) for irrational ρ: terms ψ_β(z₀ + k·step) with
/// step = ∓ρ, declared ties resolved exactly, certified tail added to `err`.
fn sum_psi_irrational(
    params: &Params,
    beta: &Scalar,
    z0: &Scalar,
    step: &Scalar,
    ties: &[(i64, TieKind)],
    prec: &Precision,
) -> Result<Scalar> {
    let rho_abs = step.to_f64().abs();
    let y_abs = z0.to_f64().abs();
    let mut n = 1usize;
    while tail_bound(n, params, rho_abs, y_abs) > prec.eps {
        n += 1;
        if n > prec.n_max {
            return Err(Error::PrecisionExhausted {
                requested: prec.eps,
                achieved: tail_bound(prec.n_max, params, rho_abs, y_abs),
                n: prec.n_max,
            });
        }
    }
    // The sum is approximate anyway; demote the exact constants once so the
    // per-term arithmetic stays in certified f64 instead of re-deriving
    // rational error bounds on every operation.
    let demote = |s: &Scalar| {
        let (v, e) = s.to_approx();
        Scalar::approx(v, e)
    };
    let params_a = Params { lambda: demote(&params.lambda), d: demote(&params.d) };
    // β must keep exact endpoint identity for the θ_β(0) tie convention.
    let beta_a = if beta.is_exact() && (beta.is_zero() || beta.eq_exact(&Scalar::one())) {
        beta.clone()
    } else {
        demote(beta)
    };
    let mut acc = Scalar::approx(0.0, 0.0);
    let mut lam_k = params_a.lambda.clone();
    let mut z = z0.clone();
    for k in 1..=(n as i64) {
        z = z.add(step);
        let tie = ties.iter().find(|(i, _)| *i == k).map(|(_, t)| *t);
        let term = psi_tied(&params_a, &beta_a, &z, tie)?;
        acc = acc.add(&lam_k.mul(&term));
        lam_k = lam_k.mul(&params_a.lambda);
    }
    let tail = tail_bound(n, params, rho_abs, y_abs);
    let (v, e) = acc.to_approx();
    Ok(Scalar::approx(v, e + tail))
}

/// Membership of r·p/q in ℤ + α over r ∈ {1,…,q−1}; returns the unique r_α
/// if present. Requires exact α (approximate α cannot certify membership).
fn rational_resonance(p: i64, q: i64, alpha: &Scalar) -> Option<i64> {
    let alpha = alpha.as_rational()?;
    for r in 1..q {
        let diff = ratio(r * p, q) - alpha;
        if diff.is_integer() {
            return Some(r);
        }
    }
    None
}

/// δ-gap δ(ρ,α) − δ(ρ⁻,α) for ρ = p/q (closed-form gap lemma):
/// (λ^{q−1}/(1−λ^q))·(1−λ)·(1−λ−d + d·1{α∈{0,1}} + λ^{−r_α}·d·1{D≠∅}).
fn delta_gap_rational(params: &Params, p: i64, q: i64, target: &RotationTarget) -> Scalar {
    let lam = &params.lambda;
    let pref = lam
        .powi(q as u32 - 1)
        .div(&Scalar::one().sub(&lam.powi(q as u32)))
        .mul(&params.one_minus_lambda());
    let mut inner = params.m_left_edge();
    if target.alpha_is_endpoint() {
        inner = inner.add(&params.d);
    }
    if let Some(r) = rational_resonance(p, q, &target.alpha) {
        inner = inner.add(&params.d.div(&lam.powi(r as u32)));
    }
    pref.mul(&inner)
}

/// a-gap a(δ,ρ,α) − a(δ,ρ⁺,α) for ρ = p/q (independent of δ):
/// (λ^{q−1}/(1−λ^q))·(d + (1−λ−d)·1{α∈{0,1}}) +
/// (λ^{r_α−1}/(1−λ^q))·(1−λ−d)·1{D≠∅}.
fn a_gap_rational(params: &Params, p: i64, q: i64, target: &RotationTarget) -> Scalar {
    let lam = &params.lambda;
    let denom = Scalar::one().sub(&lam.powi(q as u32));
    let mut inner = params.d.clone();
    if target.alpha_is_endpoint() {
        inner = inner.add(&params.m_left_edge());
    }
    let mut out = lam.powi(q as u32 - 1).div(&denom).mul(&inner);
    if let Some(r) = rational_resonance(p, q, &target.alpha) {
        out = out.add(&lam.powi(r as u32 - 1).div(&denom).mul(&params.m_left_edge()));
    }
    out
}

/// Irrational gaps from a declared resonance α = {k·ρ} (gap lemma for
/// irrational ρ): k < 0 ⇒ δ-gap (1−λ)·d·λ^{−k−1}; k > 0 ⇒ a-gap
/// (1−λ−d)·λ^{k−1}; the other gap is 0.
fn irrational_gaps(params: &Params, resonance: Option<i64>) -> (Scalar, Scalar, bool) {
    match resonance {
        None => (Scalar::zero(), Scalar::zero(), true),
        Some(k) if k < 0 => (
            params
                .one_minus_lambda()
                .mul(&params.d)
                .mul(&params.lambda.powi((-k - 1) as u32)),
            Scalar::zero(),
            false,
        ),
        Some(k) => (
            Scalar::zero(),
            params.m_left_edge().mul(&params.lambda.powi((k - 1) as u32)),
            false,
        ),
    }
}

/// Ties for the value series S(α, y, ρ) (terms ψ_α(y − kρ)).
fn value_series_ties(kind: YKind, resonance: Option<i64>) -> Vec<(i64, TieKind)> {
    let mut ties = Vec::new();
    match kind {
        YKind::Generic => {}
        YKind::AtAlpha => {
            // y − kρ ∈ ℤ iff kρ ≡ α iff k = k₀ (k₀ > 0).
            if let Some(k0) = resonance {
                if k0 >= 1 {
                    ties.push((k0, TieKind::IntegerHit));
                }
            }
        }
        YKind::AtKRho(k) => {
            // {kρ} − k'ρ ∈ ℤ iff k' = k; ≡ α iff k' = k − k₀.
            ties.push((k, TieKind::IntegerHit));
            if let Some(k0) = resonance {
                if k - k0 >= 1 {
                    ties.push((k - k0, TieKind::FracHitsBeta));
                }
            }
        }
        YKind::AtKRhoPlusAlpha(k) => {
            // {kρ+α} − k'ρ ≡ α iff k' = k; ∈ ℤ iff k' = k + k₀.
            ties.push((k, TieKind::FracHitsBeta));
            if let Some(k0) = resonance {
                if k + k0 >= 1 {
                    ties.push((k + k0, TieKind::IntegerHit));
                }
            }
        }
    }
    ties
}

/// Ties for the symmetric left-limit series S(1−α, −y, −ρ) (terms
/// ψ_{1−α}(kρ − y)).
fn left_series_ties(kind: YKind, resonance: Option<i64>) -> Vec<(i64, TieKind)> {
    let mut ties = Vec::new();
    match kind {
        YKind::Generic => {}
        YKind::AtAlpha => {
            // kρ − α ∈ ℤ iff k = k₀ (k₀ > 0).
            if let Some(k0) = resonance {
                if k0 >= 1 {
                    ties.push((k0, TieKind::IntegerHit));
                }
            }
        }
        YKind::AtKRho(k) => {
            // k'ρ − {kρ} ∈ ℤ iff k' = k; ≡ 1−α iff k' = k − k₀.
            ties.push((k, TieKind::IntegerHit));
            if let Some(k0) = resonance {
                if k - k0 >= 1 {
                    ties.push((k - k0, TieKind::FracHitsBeta));
                }
            }
        }
        YKind::AtKRhoPlusAlpha(k) => {
            // k'ρ − {kρ+α} ≡ −α ≡ 1−α iff k' = k; ∈ ℤ iff k' = k + k₀.
            ties.push((k, TieKind::FracHitsBeta));
            if let Some(k0) = resonance {
                if k + k0 >= 1 {
                    ties.push((k + k0, TieKind::IntegerHit));
                }
            }
        }
    }
    ties
}

/// δ(ρ,α) with its left limit δ(ρ⁻,α).
///
/// Rational ρ: finite-sum closed form and exact gap lemma, zero tolerance.
/// Irrational ρ: certified truncation; the gap requires a declared resonance,
/// otherwise it is reported 0 with `caveat`.
pub fn delta_of(params: &Params, target: &RotationTarget, prec: &Precision) -> Result<SidedValue> {
    let beta = target.one_minus_alpha();
    let pref = params.one_minus_lambda().div(&params.lambda);
    match &target.rho {
        Rho::Rational { p, q } => {
            // S(1−α, 0, −ρ): step −p/q.
            let s = sum_psi_rational(params, &beta, &Scalar::zero(), -p, *q)?;
            let value = params.m_left_edge().add(&pref.mul(&s));
            let gap = delta_gap_rational(params, *p, *q, target);
            Ok(SidedValue {
                limit: value.sub(&gap),
                value,
                caveat: false,
            })
        }
        Rho::Irrational(rho) => {
            // Ties: {kρ} = 1−α iff k = −k₀ (declared k₀ < 0).
            let mut ties = Vec::new();
            if let Some(k0) = target.resonance {
                if k0 < 0 {
                    ties.push((-k0, TieKind::FracHitsBeta));
                }
            }
            let s = sum_psi_irrational(params, &beta, &Scalar::zero(), rho, &ties, prec)?;
            let value = params.m_left_edge().add(&pref.mul(&s));
            let (dgap, _agap, caveat) = irrational_gaps(params, target.resonance);
            Ok(SidedValue {
                limit: value.sub(&dgap),
                value,
                caveat,
            })
        }
    }
}

/// φ_{δ,ρ,α}(y) with its left limit φ(y⁻), the latter always via the
/// symmetric series (never numeric limiting). `kind` declares exact
/// coincidences of y with series breakpoints (α resonance, gap endpoints).
pub fn phi_with_kind(
    params: &Params,
    delta: &Scalar,
    target: &RotationTarget,
    y: &Scalar,
    kind: YKind,
    prec: &Precision,
) -> Result<SidedValue> {
    let oml = params.one_minus_lambda();
    let head = delta.div(&oml);
    let left_head = delta.add(&params.d).div(&oml).sub(&Scalar::one());
    let inv_lam = Scalar::one().div(&params.lambda);
    match &target.rho {
        Rho::Rational { p, q } => {
            let s = sum_psi_rational(params, &target.alpha, y, *p, *q)?;
            let value = head.add(&inv_lam.mul(&s));
            let s_left =
                sum_psi_rational(params, &target.one_minus_alpha(), &y.neg(), -p, *q)?;
            let limit = left_head.sub(&inv_lam.mul(&s_left));
            Ok(SidedValue { value, limit, caveat: false })
        }
        Rho::Irrational(rho) => {
            let ties_v = value_series_ties(kind, target.resonance);
            let s = sum_psi_irrational(params, &target.alpha, y, &rho.neg(), &ties_v, prec)?;
            let value = head.add(&inv_lam.mul(&s));
            let ties_l = left_series_ties(kind, target.resonance);
            let s_left = sum_psi_irrational(
                params,
                &target.one_minus_alpha(),
                &y.neg(),
                rho,
                &ties_l,
                prec,
            )?;
            let limit = left_head.sub(&inv_lam.mul(&s_left));
            Ok(SidedValue { value, limit, caveat: false })
        }
    }
}

/// φ_{δ,ρ,α}(y) and φ(y⁻). If `y` is (bitwise) the target's α, the α-ties
/// are resolved automatically.
pub fn phi(
    params: &Params,
    delta: &Scalar,
    target: &RotationTarget,
    y: &Scalar,
    prec: &Precision,
) -> Result<SidedValue> {
    let kind = if *y == target.alpha { YKind::AtAlpha } else { YKind::Generic };
    phi_with_kind(params, delta, target, y, kind, prec)
}

/// a(δ,ρ,α) = φ(α) with its right-in-ρ limit a(δ,ρ⁺,α) = φ(α⁻); affine in δ
/// with slope 1/(1−λ), and the gap is independent of δ.
pub fn a_of(
    params: &Params,
    delta: &Scalar,
    target: &RotationTarget,
    prec: &Precision,
) -> Result<SidedValue> {
    let sv = phi_with_kind(params, delta, target, &target.alpha.clone(), YKind::AtAlpha, prec)?;
    let caveat = match &target.rho {
        Rho::Rational { .. } => false,
        Rho::Irrational(_) => false, // both sides computed from series; no gap guess involved
    };
    Ok(SidedValue { caveat, ..sv })
}

/// The closed-form rational gaps, exposed for cross-checking: returns
/// (δ-gap, a-gap) for ρ = p/q.
pub fn rational_gaps(params: &Params, target: &RotationTarget) -> Result<(Scalar, Scalar)> {
    match &target.rho {
        Rho::Rational { p, q } => Ok((
            delta_gap_rational(params, *p, *q, target),
            a_gap_rational(params, *p, *q, target),
        )),
        Rho::Irrational(_) => {
            let (d, a, _) = irrational_gaps(params, target.resonance);
            Ok((d, a))
        }
    }
}

/// Whether the fractional multiples r·p/q, r ∈ {1..q−1}, ever land in ℤ+α
/// (the D_{ρ,α} ≠ ∅ condition of the gap lemma), with the witness r_α.
pub fn rational_resonance_index(p: i64, q: i64, alpha: &Scalar) -> Option<i64> {
    rational_resonance(p, q, alpha)
}

/// Convert a (possibly huge-denominator) exact rational rotation to a term
/// count-independent certified evaluation of δ(ρ,α): breakpoint decisions use
/// exact integer arithmetic mod q, accumulation is f64 with tail + rounding
/// slop. Used by bisection where the exact finite sum (O(q) big-rational
/// terms) would be too expensive.
pub fn delta_of_rational_certified(
    params: &Params,
    p: &BigInt,
    q: &BigInt,
    alpha: &Scalar,
    prec: &Precision,
) -> Result<Scalar> {
    let alpha_r = alpha
        .as_rational()
        .ok_or_else(|| Error::InvalidParameter("certified δ evaluation needs exact α".into()))?;
    let beta = Rational::from_integer(BigInt::from(1)) - alpha_r; // 1 − α
    let lam = params.lambda.to_f64();
    let d = params.d.to_f64();
    let oml = 1.0 - lam;
    let rho = (p.to_f64().unwrap()) / (q.to_f64().unwrap());
    // Choose N for the requested tail (treating ρ as a number ≤ 1).
    let eps = prec.eps.max(1e-18);
    let mut n = 1usize;
    while tail_bound(n, params, rho, 0.0) > eps {
        n += 1;
        if n > prec.n_max {
            return Err(Error::PrecisionExhausted {
                requested: eps,
                achieved: tail_bound(prec.n_max, params, rho, 0.0),
                n: prec.n_max,
            });
        }
    }
    let mut sum = 0.0f64;
    let mut lam_k = lam;
    let mut kp_mod_q = BigInt::zero();
    let mut kp_div_q = BigInt::zero();
    // (kp mod q)/q ≥ β ⟺ (kp mod q)·β_den ≥ β_num·q; both sides stay integers.
    let beta_den = beta.denom().clone();
    let beta_num_q = beta.numer() * q;
    for _ in 1..=n {
        // Advance kp = (k-1)p + p; maintain quotient and remainder mod q.
        kp_mod_q += p;
        while kp_mod_q >= *q {
            kp_mod_q -= q;
            kp_div_q += 1;
        }
        // ψ_{1−α}(kρ) = (1−λ)·⌊kp/q⌋ + d·θ_{1−α}((kp mod q)/q), decided exactly.
        let th = if &kp_mod_q * &beta_den >= beta_num_q { d } else { 0.0 };
        let term = oml * kp_div_q.to_f64().unwrap() + th;
        sum += lam_k * term;
        lam_k *= lam;
    }
    let tail = tail_bound(n, params, rho, 0.0);
    // Rounding slop: n accumulations of terms of size ≤ (1−λ)k+d ≤ n+1.
    let slop = (n as f64) * 8.0 * f64::EPSILON * (sum.abs() + 1.0);
    let s = Scalar::approx(sum, tail + slop);
    Ok(params.m_left_edge().add(&Scalar::approx(oml / lam, 4.0 * f64::EPSILON).mul(&s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_quarter() -> Params {
        Params::from_ratios((1, 2), (1, 4)).unwrap()
    }

    fn prec() -> Precision {
        Precision::default()
    }

    #[test]
    fn delta_hand_values() {
        let p = half_quarter();
        // [DERIVED] δ(1/2, 1/2) = 3/4, δ(1/2⁻, 1/2) = 1/2.
        let t = RotationTarget::new(Rho::rational(1, 2).unwrap(), Scalar::from_ratio(1, 2)).unwrap();
        let sv = delta_of(&p, &t, &prec()).unwrap();
        assert!(sv.value.eq_exact(&Scalar::from_ratio(3, 4)));
        assert!(sv.limit.eq_exact(&Scalar::from_ratio(1, 2)));
        // [DERIVED] δ(1/2, 1) = 5/6, δ(1/2⁻, 1) = 2/3.
        let t = RotationTarget::new(Rho::rational(1, 2).unwrap(), Scalar::one()).unwrap();
        let sv = delta_of(&p, &t, &prec()).unwrap();
        assert!(sv.value.eq_exact(&Scalar::from_ratio(5, 6)));
        assert!(sv.limit.eq_exact(&Scalar::from_ratio(2, 3)));
    }

    #[test]
    fn a_hand_values() {
        let p = half_quarter();
        let t = RotationTarget::new(Rho::rational(1, 2).unwrap(), Scalar::from_ratio(1, 2)).unwrap();
        // [DERIVED] a(3/4, 1/2, 1/2) = 1, a(3/4, 1/2⁺, 1/2) = 1/2 = η₂.
        let sv = a_of(&p, &Scalar::from_ratio(3, 4), &t, &prec()).unwrap();
        assert!(sv.value.eq_exact(&Scalar::one()));
        assert!(sv.limit.eq_exact(&Scalar::from_ratio(1, 2)));
        // [DERIVED] affine shift: δ = 1/2 gives value 1/2.
        let sv = a_of(&p, &Scalar::from_ratio(1, 2), &t, &prec()).unwrap();
        assert!(sv.value.eq_exact(&Scalar::from_ratio(1, 2)));
    }

    #[test]
    fn a_slope_in_delta() {
        // [PAPER] a(δ,ρ,α) is affine in δ with slope 1/(1−λ).
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        let t = RotationTarget::new(Rho::rational(1, 4).unwrap(), Scalar::from_ratio(5, 16)).unwrap();
        let d1 = Scalar::from_ratio(27, 100);
        let d2 = Scalar::from_ratio(33, 100);
        let a1 = a_of(&p, &d1, &t, &prec()).unwrap();
        let a2 = a_of(&p, &d2, &t, &prec()).unwrap();
        let slope = a2.value.sub(&a1.value).div(&d2.sub(&d1));
        assert!(slope.eq_exact(&Scalar::one().div(&p.one_minus_lambda())));
        // Gap independent of δ.
        let g1 = a1.value.sub(&a1.limit);
        let g2 = a2.value.sub(&a2.limit);
        assert!(g1.eq_exact(&g2));
    }

    #[test]
    fn phi_hand_value_and_identities() {
        let p = half_quarter();
        let t = RotationTarget::new(Rho::rational(1, 2).unwrap(), Scalar::from_ratio(1, 2)).unwrap();
        let d = Scalar::from_ratio(3, 4);
        // [DERIVED] φ(0) = 1/2.
        let sv = phi(&p, &d, &t, &Scalar::zero(), &prec()).unwrap();
        assert!(sv.value.eq_exact(&Scalar::from_ratio(1, 2)));
        // [PAPER] φ(0) = (δ − δ(ρ⁻,α))/(1−λ), φ(0⁻) = (δ − δ(ρ,α))/(1−λ).
        let ds = delta_of(&p, &t, &prec()).unwrap();
        let oml = p.one_minus_lambda();
        assert!(sv.value.eq_exact(&d.sub(&ds.limit).div(&oml)));
        assert!(sv.limit.eq_exact(&d.sub(&ds.value).div(&oml)));
        // [TRIVIAL] φ(y+1) = φ(y) + 1.
        let y = Scalar::from_ratio(3, 7);
        let v0 = phi(&p, &d, &t, &y, &prec()).unwrap();
        let v1 = phi(&p, &d, &t, &y.add(&Scalar::one()), &prec()).unwrap();
        assert!(v1.value.eq_exact(&v0.value.add(&Scalar::one())));
        assert!(v1.limit.eq_exact(&v0.limit.add(&Scalar::one())));
    }

    #[test]
    fn phi_alpha_matches_a_of() {
        // [PAPER] φ(α) = a(δ,ρ,α) and φ(α⁻) = a(δ,ρ⁺,α).
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        let t = RotationTarget::new(Rho::rational(1, 3).unwrap(), Scalar::from_ratio(1, 2)).unwrap();
        let d = Scalar::from_ratio(1, 2);
        let via_phi = phi(&p, &d, &t, &Scalar::from_ratio(1, 2), &prec()).unwrap();
        let via_a = a_of(&p, &d, &t, &prec()).unwrap();
        assert!(via_phi.value.eq_exact(&via_a.value));
        assert!(via_phi.limit.eq_exact(&via_a.limit));
    }

    #[test]
    fn gap_closed_forms_match_sided_values() {
        // [DERIVED] gap lemma cross-check on assorted rational targets.
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        for (pp, qq, an, ad) in [(1i64, 3i64, 1i64, 2i64), (2, 5, 1, 5), (1, 4, 5, 16), (1, 2, 1, 1), (3, 4, 0, 1)] {
            let t = RotationTarget::new(Rho::rational(pp, qq).unwrap(), Scalar::from_ratio(an, ad)).unwrap();
            let (dg, ag) = rational_gaps(&p, &t).unwrap();
            let ds = delta_of(&p, &t, &prec()).unwrap();
            assert!(ds.value.sub(&ds.limit).eq_exact(&dg), "δ-gap mismatch at {pp}/{qq}, α={an}/{ad}");
            let asv = a_of(&p, &Scalar::from_ratio(1, 2), &t, &prec()).unwrap();
            assert!(asv.value.sub(&asv.limit).eq_exact(&ag), "a-gap mismatch at {pp}/{qq}, α={an}/{ad}");
        }
    }

    #[test]
    fn alpha_one_reduces_to_contracted_rotation() {
        // [PAPER] δ(ρ,1) = (1−λ)(1 + ((1−λ)/λ)Σλ^k⌊kρ⌋): d cancels.
        // Compare two different d at the same λ.
        for (pp, qq) in [(1i64, 2i64), (1, 3), (2, 3), (3, 5), (5, 12)] {
            let p1 = Params::from_ratios((1, 2), (1, 4)).unwrap();
            let p2 = Params::from_ratios((1, 2), (1, 3)).unwrap();
            let t = RotationTarget::new(Rho::rational(pp, qq).unwrap(), Scalar::one()).unwrap();
            let v1 = delta_of(&p1, &t, &prec()).unwrap().value;
            let v2 = delta_of(&p2, &t, &prec()).unwrap().value;
            assert!(v1.eq_exact(&v2));
        }
    }

    #[test]
    fn irrational_matches_rational_nearby() {
        // The certified truncation evaluated at a float equal to 1/2 must
        // agree with the exact value within its err.
        let p = half_quarter();
        let t_exact = RotationTarget::new(Rho::rational(1, 2).unwrap(), Scalar::from_ratio(1, 4)).unwrap();
        let exact = delta_of(&p, &t_exact, &prec()).unwrap().value;
        // 0.5 is exactly representable, so θ-comparisons stay unambiguous at
        // offsets; use a slightly perturbed value to dodge exact breakpoints.
        let rho = Scalar::approx(0.5 + 1e-7, 1e-13);
        let t = RotationTarget::new(Rho::Irrational(rho), Scalar::from_ratio(1, 4)).unwrap();
        let approx = delta_of(&p, &t, &prec()).unwrap().value;
        // δ is monotone; 1e-7 away the value differs by at most the local gap
        // structure — just sanity-check proximity at 1e-3.
        assert!((approx.to_f64() - exact.to_f64()).abs() < 1e-3);
    }

    #[test]
    fn tail_bound_behaviour() {
        let p = half_quarter();
        // [TRIVIAL] monotone decreasing in N, → 0.
        let b1 = tail_bound(10, &p, 0.7, 0.5);
        let b2 = tail_bound(20, &p, 0.7, 0.5);
        let b3 = tail_bound(200, &p, 0.7, 0.5);
        assert!(b1 > b2 && b2 > b3);
        // [DERIVED] λ=1/2, N=60 ⇒ bound < 2⁻⁵⁰ for ρ, y ∈ [0,1].
        assert!(tail_bound(60, &p, 1.0, 1.0) < 2f64.powi(-50));
    }

    #[test]
    fn certified_rational_delta_agrees_with_exact() {
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        for (pp, qq) in [(1i64, 3i64), (2, 5), (1, 2), (3, 7)] {
            let alpha = Scalar::from_ratio(1, 3);
            let t = RotationTarget::new(Rho::rational(pp, qq).unwrap(), alpha.clone()).unwrap();
            let exact = delta_of(&p, &t, &prec()).unwrap().value;
            let cert = delta_of_rational_certified(
                &p,
                &BigInt::from(pp),
                &BigInt::from(qq),
                &alpha,
                &Precision { eps: 1e-15, n_max: 4096 },
            )
            .unwrap();
            let (v, e) = cert.to_approx();
            assert!((v - exact.to_f64()).abs() <= e + 1e-15);
        }
    }
}
