// SPDX-License-Identifier: MIT OR Apache-2.0

//! Rotation-number estimation from (δ,a) and the constructive inverse
//! (δ,a) → (ρ,α) via the monotone functions ρ_δ, Φ_δ, α_δ.
//!
//! * `rotation_number` iterates the lift from x = 0, maintains the monotone
//!   bracket |F^n(0)/n − ρ| ≤ 1/n, and upgrades to an exact p/q when a
//!   near-return is confirmed algebraically: the q-fold affine composition
//!   f^q(x) = λ^q x + C has the unique fixed point x* = C/(1−λ^q), which is
//!   re-iterated to check branch consistency and winding.
//! * `rho_delta` realizes ρ_δ(α) = min{ρ: δ(ρ,α) ≥ δ} by bisection with the
//!   invariant δ(lo,α) < δ ≤ δ(hi,α), followed by a Stern–Brocot scan for a
//!   rational plateau δ ∈ [δ(p/q⁻,α), δ(p/q,α)] with q ≤ Q_cap.
//! * `invert` applies the three-case analysis (α = 0 / α = 1 / interior
//!   bisection on the monotone Φ_δ), certifying every answer through exact
//!   region membership.

use num::bigint::BigInt;
use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::map::{fixed_point_check, map_eval_winding, FpRegion, MapSpec, Params};
use crate::regions::{contains, enumerate_regions, region, Containment, Region};
use crate::scalar::{Rational, Scalar};
use crate::series::{a_of, delta_of, Precision, Rho, RotationTarget};

/// Certified bracket for ρ_f, optionally upgraded to an exact rational.
#[derive(Clone, Debug)]
pub struct RotationEstimate {
    pub lower: Scalar,
    pub upper: Scalar,
    /// Reduced (p, q) when a cycle was confirmed.
    pub exact: Option<(i64, i64)>,
    /// Lift iterations spent.
    pub iterations: usize,
}

/// Default near-return threshold for cycle detection.
pub const DEFAULT_CYCLE_EPS: f64 = 1e-12;

/// Longest cycle length probed by near-return detection.
const CYCLE_WINDOW: usize = 512;

/// Rotation number of the circle map from (δ,a) by lift iteration with
/// algebraic cycle confirmation.
///
/// Returns `Err(Inconclusive)` (carrying the bracket) when no cycle is
/// confirmed within `n_max` iterations and the bracket stayed wider than
/// `eps`.
pub fn rotation_number(spec: &MapSpec, n_max: usize, eps: f64) -> Result<RotationEstimate> {
    // Fixed-point regions have ρ_f = 0 outright.
    let fp = fixed_point_check(spec)?;
    if fp.region != FpRegion::None {
        return Ok(RotationEstimate {
            lower: Scalar::zero(),
            upper: Scalar::zero(),
            exact: Some((0, 1)),
            iterations: 0,
        });
    }
    let mut xs: Vec<Scalar> = vec![Scalar::zero()];
    let mut xs_f64: Vec<f64> = vec![0.0];
    let mut windings: Vec<i64> = vec![0]; // cumulative winding before step n
    let mut consts: Vec<Scalar> = Vec::new(); // branch constant of step n
    let mut x = Scalar::zero();
    let mut w: i64 = 0;
    for n in 1..=n_max {
        let (fx, dw) = map_eval_winding(spec, &x)?;
        // Branch constant c with f(x) = λx + c on the current branch.
        consts.push(fx.sub(&spec.params.lambda.mul(&x)));
        x = fx;
        w += dw;
        xs.push(x.clone());
        xs_f64.push(x.to_f64());
        windings.push(w);
        // Near-return scan over recent offsets, shortest q first.
        let max_q = n.min(CYCLE_WINDOW);
        for q in 1..=max_q {
            if (xs_f64[n] - xs_f64[n - q]).abs() < eps {
                let p = windings[n] - windings[n - q];
                if p <= 0 {
                    continue;
                }
                if let Some((pp, qq)) = confirm_cycle(spec, &consts[n - q..n], p)? {
                    let (lower, upper) = bracket(w, &x, n);
                    return Ok(RotationEstimate {
                        lower,
                        upper,
                        exact: Some((pp, qq)),
                        iterations: n,
                    });
                }
            }
        }
    }
    let (lower, upper) = bracket(w, &x, n_max);
    if upper.to_f64() - lower.to_f64() <= eps {
        return Ok(RotationEstimate {
            lower,
            upper,
            exact: None,
            iterations: n_max,
        });
    }
    Err(Error::Inconclusive {
        lower: lower.to_f64(),
        upper: upper.to_f64(),
        n: n_max,
    })
}

fn bracket(w: i64, x: &Scalar, n: usize) -> (Scalar, Scalar) {
    // F^n(0) = w + x; |F^n(0)/n − ρ| ≤ 1/n for monotone lifts.
    let fn0 = Scalar::from_int(w).add(x);
    let n_s = Scalar::from_int(n as i64);
    let lower = fn0.sub(&Scalar::one()).div(&n_s);
    let upper = fn0.add(&Scalar::one()).div(&n_s);
    let clamp = |s: Scalar, lo: f64, hi: f64| {
        let v = s.to_f64();
        if v < lo {
            Scalar::zero()
        } else if v > hi {
            Scalar::one()
        } else {
            s
        }
    };
    (clamp(lower, 0.0, 1.0), clamp(upper, 0.0, 1.0))
}

/// Algebraic confirmation: the candidate branch constants (c_1..c_q) define
/// x* = C/(1−λ^q) with C = Σ λ^{q−j} c_j; accept iff iterating f exactly from
/// x* reproduces the constants, returns to x*, and winds p times.
fn confirm_cycle(spec: &MapSpec, consts: &[Scalar], p: i64) -> Result<Option<(i64, i64)>> {
    let q = consts.len();
    let lam = &spec.params.lambda;
    let mut c = Scalar::zero();
    for cj in consts {
        c = lam.mul(&c).add(cj);
    }
    let lam_q = lam.powi(q as u32);
    let x_star = c.div(&Scalar::one().sub(&lam_q));
    if !(x_star.ge(&Scalar::zero()).unwrap_or(false)
        && x_star.lt(&Scalar::one()).unwrap_or(false))
    {
        return Ok(None);
    }
    let mut x = x_star.clone();
    let mut wind = 0i64;
    for cj in consts {
        let (fx, dw) = match map_eval_winding(spec, &x) {
            Ok(v) => v,
            Err(Error::BoundaryAmbiguous { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let expect = lam.mul(&x).add(cj).fract()?;
        if x.is_exact() && fx.is_exact() {
            if !fx.eq_exact(&expect) {
                return Ok(None);
            }
        } else {
            // Approx mode: constants must agree within certified bounds.
            let (fv, fe) = fx.to_approx();
            let (ev, ee) = expect.to_approx();
            if (fv - ev).abs() > fe + ee + 1e-9 {
                return Ok(None);
            }
        }
        x = fx;
        wind += dw;
    }
    let closes = if x_star.is_exact() && x.is_exact() {
        x.eq_exact(&x_star)
    } else {
        (x.to_f64() - x_star.to_f64()).abs() <= x.err() + x_star.err() + 1e-9
    };
    if !closes || wind != p {
        return Ok(None);
    }
    let g = num::integer::gcd(p, q as i64);
    Ok(Some((p / g, q as i64 / g)))
}

/// Result of ρ_δ(α): the rotation value plus the plateau rational, if found.
#[derive(Clone, Debug)]
pub struct RhoDelta {
    pub rho: Rho,
    /// Set iff a rational plateau δ ∈ [δ(p/q⁻,α), δ(p/q,α)] was certified.
    pub plateau: Option<(i64, i64)>,
}

/// Default cap on plateau denominators (regions shrink like λ^{q−1}).
pub const DEFAULT_Q_CAP: i64 = 64;

fn delta_at_rational(
    params: &Params,
    p: i64,
    q: i64,
    alpha: &Scalar,
    prec: &Precision,
) -> Result<crate::series::SidedValue> {
    let t = RotationTarget::new(Rho::rational(p, q)?, alpha.clone())?;
    delta_of(params, &t, prec)
}

/// ρ_δ(α) = min{ρ ∈ [0,1]: δ(ρ,α) ≥ δ} by bisection + Stern–Brocot plateau
/// scan. Monotone: non-increasing and continuous in α.
pub fn rho_delta(
    params: &Params,
    delta: &Scalar,
    alpha: &Scalar,
    tol: f64,
    q_cap: i64,
    prec: &Precision,
) -> Result<RhoDelta> {
    let one = Scalar::one();
    if !(delta.cmp_certified(&params.m_left_edge())? == std::cmp::Ordering::Greater
        && delta.lt(&one)?)
    {
        return Err(Error::OutOfDomain(format!("delta = {delta} outside (1-lambda-d, 1)")));
    }
    // Endpoints: δ ≤ δ(0,α) ⇒ ρ = 0 (only reachable for α = 1, where
    // δ(0,1) = 1−λ); δ ≥ δ(1⁻,α) ⇒ ρ = 1.
    let d0 = delta_at_rational(params, 0, 1, alpha, prec)?;
    if delta.le(&d0.value).unwrap_or(false) {
        return Ok(RhoDelta { rho: Rho::rational(0, 1)?, plateau: Some((0, 1)) });
    }
    let d1 = delta_at_rational(params, 1, 1, alpha, prec)?;
    if delta.ge(&d1.limit).unwrap_or(false) {
        return Ok(RhoDelta { rho: Rho::rational(1, 1)?, plateau: Some((1, 1)) });
    }
    // Bisection on exact rational midpoints, invariant δ(lo,α) < δ ≤ δ(hi,α).
    let mut lo = Rational::from_integer(BigInt::from(0));
    let mut hi = Rational::from_integer(BigInt::from(1));
    let tol_r = tol.max(1e-15);
    while (&hi - &lo).to_f64().unwrap_or(0.0) > tol_r {
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        let q_small = mid.denom().to_i64().filter(|q| *q <= q_cap);
        let ge = match q_small {
            Some(q) => {
                let p = mid.numer().to_i64().unwrap();
                let sv = delta_at_rational(params, p, q, alpha, prec)?;
                // Early plateau hit?
                if delta.le(&sv.value).unwrap_or(false) && delta.ge(&sv.limit).unwrap_or(false) {
                    return Ok(RhoDelta { rho: Rho::rational(p, q)?, plateau: Some((p, q)) });
                }
                delta.le(&sv.value)?
            }
            None => {
                let v = crate::series::delta_of_rational_certified(
                    params,
                    mid.numer(),
                    mid.denom(),
                    alpha,
                    prec,
                )?;
                // Ambiguity pushes toward the high side; the exact plateau
                // scan below is the authority.
                delta.le(&v).unwrap_or(true)
            }
        };
        if ge {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Stern–Brocot scan of [lo,hi] for a plateau rational with q ≤ q_cap.
    let mut candidates = stern_brocot_in(&lo, &hi, q_cap);
    candidates.sort_by_key(|(p, q)| (*q, *p));
    for (p, q) in candidates {
        let sv = delta_at_rational(params, p, q, alpha, prec)?;
        if delta.le(&sv.value).unwrap_or(false) && delta.ge(&sv.limit).unwrap_or(false) {
            return Ok(RhoDelta { rho: Rho::rational(p, q)?, plateau: Some((p, q)) });
        }
    }
    let lo_f = lo.to_f64().unwrap();
    let hi_f = hi.to_f64().unwrap();
    Ok(RhoDelta {
        rho: Rho::Irrational(Scalar::approx(
            0.5 * (lo_f + hi_f),
            0.5 * (hi_f - lo_f) + 1e-15,
        )),
        plateau: None,
    })
}

/// All reduced rationals p/q, q ≤ q_cap, inside [lo, hi], by Stern–Brocot
/// descent with interval pruning.
fn stern_brocot_in(lo: &Rational, hi: &Rational, q_cap: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    // Node: (a/b, c/d) bracketing the subtree of mediants.
    let mut stack: Vec<((i64, i64), (i64, i64))> = vec![((0, 1), (1, 1))];
    while let Some(((a, b), (c, d))) = stack.pop() {
        let (mp, mq) = (a + c, b + d);
        if mq > q_cap {
            continue;
        }
        let m = Rational::new(BigInt::from(mp), BigInt::from(mq));
        if m >= *lo && m <= *hi {
            out.push((mp, mq));
        }
        // Left subtree covers (a/b, m); recurse if it intersects [lo,hi].
        if m > *lo {
            stack.push(((a, b), (mp, mq)));
        }
        if m < *hi {
            stack.push(((mp, mq), (c, d)));
        }
    }
    out
}

/// Φ_δ(α) = φ_{δ,ρ_δ(α),α}(α): composes `rho_delta` with the series module.
pub fn big_phi(
    params: &Params,
    delta: &Scalar,
    alpha: &Scalar,
    tol: f64,
    prec: &Precision,
) -> Result<Scalar> {
    let rd = rho_delta(params, delta, alpha, tol, DEFAULT_Q_CAP, prec)?;
    let target = RotationTarget::new(rd.rho, alpha.clone())?;
    Ok(a_of(params, delta, &target, prec)?.value)
}

/// Successful inversion: (ρ, α) with the exact membership checks.
#[derive(Clone, Debug)]
pub struct InverseCertificate {
    pub rho: Rho,
    pub alpha: Scalar,
    /// The certifying region P_{ρ,α}.
    pub region: Region,
    /// δ ∈ [δ(ρ⁻,α), δ(ρ,α)] and a ∈ [a(δ,ρ⁺,α), a(δ,ρ,α)].
    pub checks: (bool, bool),
    /// Strictness of the membership (boundary inputs get the rotation-number
    /// guarantee only).
    pub containment: Containment,
}

fn try_certify(
    params: &Params,
    rho: Rho,
    alpha: &Scalar,
    delta: &Scalar,
    a: &Scalar,
    prec: &Precision,
) -> Option<InverseCertificate> {
    let target = RotationTarget::new(rho.clone(), alpha.clone()).ok()?;
    let reg = region(params, &target, prec).ok()?;
    let cont = contains(params, &reg, delta, a).ok()?;
    if cont == Containment::Outside {
        return None;
    }
    let (a_lo, a_hi) = reg.a_bounds(params, delta);
    let check_delta = delta.ge(&reg.delta_lo).unwrap_or(false)
        && delta.le(&reg.delta_hi).unwrap_or(false);
    let check_a = a.ge(&a_lo).unwrap_or(false) && a.le(&a_hi).unwrap_or(false);
    Some(InverseCertificate {
        rho,
        alpha: alpha.clone(),
        region: reg,
        checks: (check_delta, check_a),
        containment: cont,
    })
}

/// The constructive inverse: Case 1 (a ≤ Φ_δ(0), δ < 1−d ⇒ α = 0), Case 2
/// (a ≥ Φ_δ(1⁻), δ > 1−λ ⇒ α = 1), Case 3 (α = α_δ(a) by bisection on the
/// monotone Φ_δ), each validated by exact region membership.
pub fn invert(
    params: &Params,
    delta: &Scalar,
    a: &Scalar,
    tol: f64,
    prec: &Precision,
) -> Result<InverseCertificate> {
    let spec = MapSpec::new(params.clone(), delta.clone(), a.clone())?;
    let fp = fixed_point_check(&spec)?;
    match fp.region {
        FpRegion::F1 => return Err(Error::FixedPointRegion { region: "F1" }),
        FpRegion::F2 => return Err(Error::FixedPointRegion { region: "F2" }),
        FpRegion::None => {}
    }
    let one = Scalar::one();
    let one_minus_d = one.sub(&params.d);
    let q_cap = DEFAULT_Q_CAP;
    // Case 1: α = 0. Ambiguous evaluations fall through to Case 3.
    if delta.lt(&one_minus_d).unwrap_or(false) {
        if let Ok(r0) = rho_delta(params, delta, &Scalar::zero(), tol, q_cap, prec) {
            let t0 = RotationTarget::new(r0.rho.clone(), Scalar::zero())?;
            if let Ok(phi0) = a_of(params, delta, &t0, prec) {
                if a.le(&phi0.value).unwrap_or(false) {
                    if let Some(cert) =
                        try_certify(params, r0.rho, &Scalar::zero(), delta, a, prec)
                    {
                        return Ok(cert);
                    }
                }
            }
        }
    }
    // Case 2: α = 1 (conservative: lower-bound Φ_δ(1⁻) by φ_{δ,ρ_δ(1),1}(1⁻)
    // refined over a near-1 grid, then validate by the certificate itself).
    if delta.cmp_certified(&params.one_minus_lambda()).map(|o| o == std::cmp::Ordering::Greater).unwrap_or(false) {
        if let Ok(r1) = rho_delta(params, delta, &one, tol, q_cap, prec) {
            let t1 = RotationTarget::new(r1.rho.clone(), one.clone())?;
            if let Ok(sv) = a_of(params, delta, &t1, prec) {
                let mut bound = sv.limit;
                for denom in [64i64, 256, 1024] {
                    let ag = Scalar::from_ratio(denom - 1, denom);
                    if let Ok(v) = big_phi(params, delta, &ag, tol, prec) {
                        if v.cmp_certified(&bound).map(|o| o == std::cmp::Ordering::Greater).unwrap_or(false) {
                            bound = v;
                        }
                    }
                }
                if a.ge(&bound).unwrap_or(true) {
                    if let Some(cert) = try_certify(params, r1.rho, &one, delta, a, prec) {
                        return Ok(cert);
                    }
                }
            }
        }
    }
    // Case 3: interior α by bisection on the monotone right-continuous Φ_δ,
    // with a rational-plateau census shortcut.
    let mut alpha_lo = Rational::from_integer(BigInt::from(0));
    let mut alpha_hi = Rational::from_integer(BigInt::from(1));
    let mut iters = 0usize;
    let mut probed: Vec<(i64, i64)> = Vec::new();
    while (&alpha_hi - &alpha_lo).to_f64().unwrap_or(0.0) > tol {
        iters += 1;
        // A probe α can land near-resonant with the (approximate) ρ_δ(α) and
        // make Φ_δ(α) boundary-ambiguous; such probes are moved, not failed.
        let mut decided: Option<(Rational, Scalar)> = None;
        for (fnum, fden) in [(1i64, 2i64), (7, 16), (9, 16), (3, 8), (5, 8)] {
            let mid = &alpha_lo
                + (&alpha_hi - &alpha_lo) * Rational::new(BigInt::from(fnum), BigInt::from(fden));
            let mid_s = Scalar::exact(mid.clone());
            let rd = match rho_delta(params, delta, &mid_s, tol, q_cap, prec) {
                Ok(rd) => rd,
                Err(Error::BoundaryAmbiguous { .. }) => continue,
                Err(e) => return Err(e),
            };
            if let Some((p, q)) = rd.plateau {
                if q >= 2 && !probed.contains(&(p, q)) {
                    probed.push((p, q));
                    // Census shortcut: some region of this rational must
                    // contain (δ,a) if p/q is the true rotation number.
                    for (alpha_rep, reg) in enumerate_regions(params, p, q, prec)? {
                        if contains(params, &reg, delta, a)? != Containment::Outside {
                            if let Some(cert) = try_certify(
                                params, Rho::rational(p, q)?, &alpha_rep, delta, a, prec,
                            ) {
                                return Ok(cert);
                            }
                        }
                    }
                }
            }
            let t = RotationTarget::new(rd.rho, mid_s)?;
            match a_of(params, delta, &t, prec) {
                Ok(sv) => {
                    decided = Some((mid, sv.value));
                    break;
                }
                Err(Error::BoundaryAmbiguous { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        let Some((mid, phi_mid)) = decided else {
            // Every probe in the bracket is boundary-ambiguous: the bracket
            // has closed in on a rational α — leave it to the candidate sweep.
            break;
        };
        match phi_mid.cmp_certified(a) {
            Ok(std::cmp::Ordering::Less) => alpha_lo = mid,
            Ok(_) => alpha_hi = mid,
            // Φ_δ(mid) = a within error: a sits on the plateau through mid.
            Err(Error::BoundaryAmbiguous { .. }) => alpha_hi = mid,
            Err(e) => return Err(e),
        }
    }
    // Final candidates: small rationals inside the bracket, then the bracket
    // endpoint itself.
    let mut cands = stern_brocot_in(&alpha_lo, &alpha_hi, 64);
    cands.sort_by_key(|(p, q)| (*q, *p));
    for (p, q) in cands {
        let alpha = Scalar::from_ratio(p, q);
        match rho_delta(params, delta, &alpha, tol, q_cap, prec) {
            Ok(rd) => {
                if let Some(cert) = try_certify(params, rd.rho, &alpha, delta, a, prec) {
                    return Ok(cert);
                }
            }
            Err(Error::BoundaryAmbiguous { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let alpha = Scalar::exact(alpha_hi.clone());
    if let Ok(rd) = rho_delta(params, delta, &alpha, tol, q_cap, prec) {
        if let Some(cert) = try_certify(params, rd.rho, &alpha, delta, a, prec) {
            return Ok(cert);
        }
    }
    Err(Error::Inconclusive {
        lower: alpha_lo.to_f64().unwrap_or(0.0),
        upper: alpha_hi.to_f64().unwrap_or(1.0),
        n: iters,
    })
}
