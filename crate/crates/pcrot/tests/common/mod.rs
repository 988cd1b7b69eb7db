// SPDX-License-Identifier: MIT OR Apache-2.0

//! Independent brute-force oracle for the boundary series.
//!
//! Everything here is computed straight from the defining series
//! S(β, z₀, ρ) = Σ_{k≥1} λ^k ψ_β(z₀ − kρ), with exact `BigRational`
//! partial sums (k ≤ 200 by default) and an exact interval bound on the
//! dropped tail — no closed forms, no library code paths. The library's
//! zero-tolerance rational values must land inside `partial ± tail`.

#![allow(dead_code)]

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// θ_β({z}) with exact comparisons; β ∈ [0, 1].
fn theta_frac(beta: &Rat, z: &Rat) -> Rat {
    let fract = z - z.floor();
    if fract >= *beta {
        Rat::one()
    } else {
        Rat::zero()
    }
}

/// ψ_β(z) = (1−λ)⌊z⌋ + d·θ_β({z}).
pub fn psi(lambda: &Rat, d: &Rat, beta: &Rat, z: &Rat) -> Rat {
    (Rat::one() - lambda) * z.floor() + d * theta_frac(beta, z)
}

/// Exact partial sum Σ_{k=1}^{kmax} λ^k ψ_β(z₀ − k·step).
pub fn s_partial(lambda: &Rat, d: &Rat, beta: &Rat, z0: &Rat, step: &Rat, kmax: usize) -> Rat {
    let mut pow = Rat::one();
    let mut sum = Rat::zero();
    for k in 1..=kmax {
        pow *= lambda;
        let z = z0 - Rat::from(BigInt::from(k)) * step;
        sum += &pow * psi(lambda, d, beta, &z);
    }
    sum
}

/// Exact bound on |Σ_{k>kmax} λ^k ψ_β(z₀ − k·step)| from
/// |ψ_β(z)| ≤ (1−λ)(|z|+1) + d and |z₀ − k·step| ≤ |z₀| + k|step|:
/// a constant geometric tail plus an arithmetico-geometric tail
/// Σ_{k>K} kλ^k = λ^{K+1}((K+1) − Kλ)/(1−λ)².
pub fn s_tail(lambda: &Rat, d: &Rat, z0: &Rat, step: &Rat, kmax: usize) -> Rat {
    let one = Rat::one();
    let oml = &one - lambda;
    let k = BigInt::from(kmax);
    let lam_k1 = pow_rat(lambda, kmax + 1);
    let const_part = (&oml * (z0.abs() + &one) + d) * &lam_k1 / &oml;
    let agm = &lam_k1 * (Rat::from(&k + 1) - Rat::from(k) * lambda) / (&oml * &oml);
    const_part + &oml * step.abs() * agm
}

fn pow_rat(x: &Rat, n: usize) -> Rat {
    let mut out = Rat::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

/// Oracle for δ(ρ,α) = 1−λ−d + ((1−λ)/λ)·S(1−α, 0, −ρ): (partial, tail).
pub fn delta_oracle(lambda: &Rat, d: &Rat, rho: &Rat, alpha: &Rat, kmax: usize) -> (Rat, Rat) {
    let one = Rat::one();
    let oml = &one - lambda;
    let beta = &one - alpha;
    let zero = Rat::zero();
    let step = -rho.clone();
    let scale = &oml / lambda;
    let s = s_partial(lambda, d, &beta, &zero, &step, kmax);
    let t = s_tail(lambda, d, &zero, &step, kmax);
    (&one - lambda - d + &scale * s, &scale * t)
}

/// Oracle for φ_{δ,ρ,α}(y) = δ/(1−λ) + (1/λ)·S(α, y, ρ): (partial, tail).
/// a(δ,ρ,α) is this at y = α.
pub fn phi_oracle(
    lambda: &Rat,
    d: &Rat,
    delta: &Rat,
    rho: &Rat,
    alpha: &Rat,
    y: &Rat,
    kmax: usize,
) -> (Rat, Rat) {
    let one = Rat::one();
    let oml = &one - lambda;
    let scale = one / lambda;
    let s = s_partial(lambda, d, alpha, y, rho, kmax);
    let t = s_tail(lambda, d, y, rho, kmax);
    (delta / &oml + &scale * s, &scale * t)
}

/// Exact contracted-rotation boundary (the a = 1 classic):
/// δ(ρ) = (1−λ)(1 + ((1−λ)/λ)·Σ_{k≥1} λ^k ⌊kp/q⌋), summed in closed form
/// via ⌊(r+mq)p/q⌋ = ⌊rp/q⌋ + mp.
pub fn contracted_rotation_delta(lambda: &Rat, p: i64, q: i64) -> Rat {
    let one = Rat::one();
    let oml = &one - lambda;
    let lam_q = pow_rat(lambda, q as usize);
    let denom = &one - &lam_q;
    let mut head = Rat::zero();
    let mut geom = Rat::zero();
    let mut pow = Rat::one();
    for r in 1..=q {
        pow *= lambda;
        head += &pow * Rat::from(BigInt::from((r * p).div_euclid(q)));
        geom += &pow;
    }
    let series = head / &denom + Rat::from(BigInt::from(p)) * geom * &lam_q / (&denom * &denom);
    &oml * (&one + (&oml / lambda) * series)
}

/// Assert that an exact library value lies in the oracle interval.
pub fn assert_in_oracle(value: &Rat, partial: &Rat, tail: &Rat, what: &str) {
    let lo = partial - tail;
    let hi = partial + tail;
    assert!(
        *value >= lo && *value <= hi,
        "{what}: value {value} outside oracle interval [{lo}, {hi}]"
    );
}
