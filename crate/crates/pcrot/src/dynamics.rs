// SPDX-License-Identifier: MIT OR Apache-2.0

//! Orbits, attractors, symbolic codes, factor complexity, conjugacy
//! verification, and the generalized inverse of φ.
//!
//! Inside the strict region the conjugacy f ∘ φ = φ ∘ R_ρ makes everything
//! computable from the rotation side: for ρ = p/q the attractor is the one or
//! two q-cycles σ_i = φ(i/q), γ_i = φ({α + i/q}); for irrational ρ its
//! closure is a Cantor set sampled via φ with explicit gaps (φ(y⁻), φ(y)) at
//! the jump points y ∈ {kρ} ∪ {kρ + α}.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::map::{classify, map_eval, map_eval_winding, theta, BranchForm, MapSpec, Params};
use crate::regions::{contains, region, Containment};
use crate::scalar::Scalar;
use crate::series::{phi, phi_with_kind, Precision, Rho, RotationTarget, YKind};

/// (x₀, f(x₀), …, f^n(x₀)) plus per-step winding increments ⌊F(x_k)⌋ − ⌊x_k⌋.
pub fn iterate_orbit(spec: &MapSpec, x0: &Scalar, n: usize) -> Result<(Vec<Scalar>, Vec<i64>)> {
    let mut xs = Vec::with_capacity(n + 1);
    let mut winds = Vec::with_capacity(n);
    let mut x = x0.clone();
    xs.push(x.clone());
    for _ in 0..n {
        let (fx, w) = map_eval_winding(spec, &x)?;
        xs.push(fx.clone());
        winds.push(w);
        x = fx;
    }
    Ok((xs, winds))
}

/// One periodic orbit, listed in dynamical order.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub points: Vec<Scalar>,
    /// Total winding over one period (the p of ρ = p/q).
    pub winding: i64,
}

/// Attractor description.
#[derive(Clone, Debug)]
pub enum Attractor {
    /// Rational ρ: one q-cycle (α ∈ {i/q}) or two interleaved q-cycles.
    Periodic { orbits: Vec<Cycle> },
    /// Irrational ρ: samples y ↦ φ(y) and the gap list at jump points, with
    /// the geometric bound on the total unreported gap mass.
    CantorSample {
        samples: Vec<(Scalar, Scalar)>,
        /// Open gaps (φ(y⁻), φ(y)), pairwise disjoint.
        gaps: Vec<(Scalar, Scalar)>,
        unreported_mass: f64,
    },
}

/// Sampling controls for the irrational case.
#[derive(Clone, Copy, Debug)]
pub struct AttractorOptions {
    pub grid: usize,
    /// Gaps enumerated for k ≤ gap_depth at {kρ} and {kρ+α}.
    pub gap_depth: i64,
}

impl Default for AttractorOptions {
    fn default() -> Self {
        AttractorOptions { grid: 256, gap_depth: 40 }
    }
}

/// Compute the attractor of a spec known to sit strictly inside P_{ρ,α}.
pub fn attractor(
    params: &Params,
    spec: &MapSpec,
    target: &RotationTarget,
    opts: &AttractorOptions,
    prec: &Precision,
) -> Result<Attractor> {
    let reg = region(params, target, prec)?;
    if contains(params, &reg, &spec.delta, &spec.a)? != Containment::InsideStrict {
        return Err(Error::HypothesisViolated(
            "attractor requires contains = inside_strict".into(),
        ));
    }
    match &target.rho {
        Rho::Rational { p, q } => {
            let p = *p;
            let q = *q;
            let mut orbits = Vec::new();
            // σ-cycle through y = 0 in dynamical order y_j = {j·p/q}.
            let sigma = cycle_through(params, spec, target, &Scalar::zero(), p, q, prec)?;
            orbits.push(sigma);
            // γ-cycle through y = α, distinct iff α ∉ {i/q}.
            let alpha_on_grid = target
                .alpha
                .mul(&Scalar::from_int(q))
                .as_rational()
                .map(|r| r.is_integer())
                .unwrap_or(false);
            if !alpha_on_grid {
                let gamma = cycle_through(params, spec, target, &target.alpha, p, q, prec)?;
                orbits.push(gamma);
                check_interleaving(&orbits[0], &orbits[1])?;
            }
            Ok(Attractor::Periodic { orbits })
        }
        Rho::Irrational(_) => {
            let mut samples = Vec::with_capacity(opts.grid);
            for j in 0..opts.grid {
                let y = Scalar::from_ratio(j as i64, opts.grid as i64);
                match phi(params, &spec.delta, target, &y, prec) {
                    Ok(sv) => samples.push((y, sv.value)),
                    // Near-breakpoint grid points are skipped, not guessed.
                    Err(Error::BoundaryAmbiguous { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            let rho = target.rho.as_scalar();
            let mut gaps = Vec::new();
            for k in 1..=opts.gap_depth {
                let y_sigma = Scalar::from_int(k).mul(&rho).fract()?;
                let sv = phi_with_kind(params, &spec.delta, target, &y_sigma, YKind::AtKRho(k), prec)?;
                gaps.push((sv.limit, sv.value));
                let y_gamma = Scalar::from_int(k).mul(&rho).add(&target.alpha).fract()?;
                let sv = phi_with_kind(
                    params,
                    &spec.delta,
                    target,
                    &y_gamma,
                    YKind::AtKRhoPlusAlpha(k),
                    prec,
                )?;
                gaps.push((sv.limit, sv.value));
            }
            // Jump at {kρ} has size λ^{k−1}(1−λ−d), at {kρ+α} size λ^{k−1}d;
            // total mass beyond depth K is Σ_{k>K} λ^{k−1}(1−λ) = λ^K.
            let unreported_mass = params.lambda.to_f64().powi(opts.gap_depth as i32);
            Ok(Attractor::CantorSample {
                samples,
                gaps,
                unreported_mass,
            })
        }
    }
}

fn cycle_through(
    params: &Params,
    spec: &MapSpec,
    target: &RotationTarget,
    y0: &Scalar,
    p: i64,
    q: i64,
    prec: &Precision,
) -> Result<Cycle> {
    let mut points = Vec::with_capacity(q as usize);
    for j in 0..q {
        let y = y0.add(&Scalar::from_ratio(j * p, q)).fract()?;
        let kind = if y == *y0 && *y0 == target.alpha { YKind::AtAlpha } else { YKind::Generic };
        points.push(phi_with_kind(params, &spec.delta, target, &y, kind, prec)?.value);
    }
    // Verify f maps each point to the next, exactly in exact mode, and
    // accumulate the winding.
    let mut winding = 0i64;
    for j in 0..q as usize {
        let (fx, w) = map_eval_winding(spec, &points[j])?;
        let next = &points[(j + 1) % q as usize];
        let ok = if fx.is_exact() && next.is_exact() {
            fx.eq_exact(next)
        } else {
            (fx.to_f64() - next.to_f64()).abs() <= fx.err() + next.err() + 1e-9
        };
        if !ok {
            return Err(Error::HypothesisViolated(format!(
                "f(φ(y_{j})) does not hit the next cycle point"
            )));
        }
        winding += w;
    }
    Ok(Cycle { points, winding })
}

/// Lemma-6.4 interleaving 0 ≤ σ₀ < γ₀ < σ₁ < … < γ_{q−1} < 1 of the sorted
/// cycles.
fn check_interleaving(sigma: &Cycle, gamma: &Cycle) -> Result<()> {
    let mut s: Vec<f64> = sigma.points.iter().map(|x| x.to_f64()).collect();
    let mut g: Vec<f64> = gamma.points.iter().map(|x| x.to_f64()).collect();
    s.sort_by(f64::total_cmp);
    g.sort_by(f64::total_cmp);
    for i in 0..s.len() {
        let ok = s[i] < g[i] && (i + 1 == s.len() || g[i] < s[i + 1]);
        if !ok {
            return Err(Error::HypothesisViolated(
                "σ/γ interleaving violated".into(),
            ));
        }
    }
    Ok(())
}

/// A finite symbolic itinerary plus the partition that produced it.
#[derive(Clone, Debug)]
pub struct SymbolCode {
    /// Word over {0,1,2} (or {0,1} when an interval is degenerate).
    pub symbols: Vec<u8>,
    /// Ordered interior breakpoints of the partition.
    pub cuts: Vec<Scalar>,
    /// Set when an iterate was boundary-ambiguous and the word was truncated
    /// there rather than guessed.
    pub truncated: bool,
}

/// Interior cuts of the map's natural partition: (a, η₁) for M₁, (a) for M₂,
/// (η₂, a) for M₃; cuts at 0 or 1 (degenerate intervals) are dropped.
fn map_cuts(spec: &MapSpec) -> Result<Vec<Scalar>> {
    let (bp, class) = classify(spec)?;
    let raw = match class.branch_form {
        Some(BranchForm::ThreePieceLow) => vec![spec.a.clone(), bp.eta1],
        Some(BranchForm::TwoPiece) => vec![spec.a.clone()],
        Some(BranchForm::ThreePieceHigh) => vec![bp.eta2, spec.a.clone()],
        None => {
            return Err(Error::HypothesisViolated("code needs a map in M".into()));
        }
    };
    keep_interior(raw)
}

fn keep_interior(raw: Vec<Scalar>) -> Result<Vec<Scalar>> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    let mut cuts = Vec::new();
    for c in raw {
        if c.eq_exact(&zero) || c.eq_exact(&one) {
            continue;
        }
        if c.cmp_certified(&zero)? == std::cmp::Ordering::Greater
            && c.cmp_certified(&one)? == std::cmp::Ordering::Less
        {
            // Drop duplicates (e.g. α = 1−ρ).
            if cuts.iter().any(|x: &Scalar| x.eq_exact(&c)) {
                continue;
            }
            cuts.push(c);
        }
    }
    Ok(cuts)
}

fn symbol_at(cuts: &[Scalar], x: &Scalar) -> Result<u8> {
    let mut s = 0u8;
    for c in cuts {
        if theta(c, x)? == 1 {
            s += 1;
        }
    }
    Ok(s)
}

/// Itinerary of x₀ under f through the natural partition, length n+1.
pub fn code(spec: &MapSpec, x0: &Scalar, n: usize) -> Result<SymbolCode> {
    let cuts = map_cuts(spec)?;
    let mut symbols = Vec::with_capacity(n + 1);
    let mut x = x0.clone();
    let mut truncated = false;
    for step in 0..=n {
        match symbol_at(&cuts, &x) {
            Ok(s) => symbols.push(s),
            Err(Error::BoundaryAmbiguous { .. }) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        }
        if step < n {
            match map_eval(spec, &x) {
                Ok(fx) => x = fx,
                Err(Error::BoundaryAmbiguous { .. }) => {
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(SymbolCode { symbols, cuts, truncated })
}

/// Itinerary of y₀ under R_ρ through the partition cut at {α, 1−ρ} (sorted;
/// degenerate cuts dropped), length n+1.
pub fn rotation_code(target: &RotationTarget, y0: &Scalar, n: usize) -> Result<SymbolCode> {
    let one_minus_rho = Scalar::one().sub(&target.rho.as_scalar());
    let mut raw = vec![target.alpha.clone(), one_minus_rho];
    raw.sort_by(|a, b| a.to_f64().total_cmp(&b.to_f64()));
    let cuts = keep_interior(raw)?;
    let rho = target.rho.as_scalar();
    let mut symbols = Vec::with_capacity(n + 1);
    let mut y = y0.clone();
    let mut truncated = false;
    for step in 0..=n {
        match symbol_at(&cuts, &y) {
            Ok(s) => symbols.push(s),
            Err(Error::BoundaryAmbiguous { .. }) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        }
        if step < n {
            y = y.add(&rho).fract()?;
        }
    }
    Ok(SymbolCode { symbols, cuts, truncated })
}

/// Factor complexity p(n) = #distinct length-n subwords, for n = 1..n_max.
///
/// Requires word length ≥ 4·(n_max + (2·n_max+1)) — the universal bound
/// p(n) ≤ 2n+1 standing in for the expected complexity.
pub fn complexity(word: &[u8], n_max: usize) -> Result<Vec<usize>> {
    let need = 4 * (n_max + 2 * n_max + 1);
    if word.len() < need {
        return Err(Error::InsufficientLength {
            len: word.len(),
            n_max,
            need,
        });
    }
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut set: HashSet<&[u8]> = HashSet::new();
        for w in word.windows(n) {
            set.insert(w);
        }
        out.push(set.len());
    }
    Ok(out)
}

/// f(x) where x = φ(y): boundary-ambiguous branch decisions are resolved via
/// the coding identity θ_a(φ(y)) = θ_α(y), and ambiguous wrapping via the
/// expected image φ(R_ρ y).
fn f_at_phi(
    spec: &MapSpec,
    x: &Scalar,
    y: &Scalar,
    target: &RotationTarget,
    expected: &Scalar,
) -> Result<Scalar> {
    match map_eval(spec, x) {
        Ok(v) => Ok(v),
        Err(Error::BoundaryAmbiguous { .. }) => {
            let th = theta(&target.alpha, y)?;
            let mut lift = spec.params.lambda.mul(x).add(&spec.delta);
            if th == 1 {
                lift = lift.add(&spec.params.d);
            }
            // Wrap by whichever integer shift lands nearest the expected
            // image (the true value is φ(R_ρ y) by the conjugacy).
            let v = lift.to_f64();
            let shift = (v - expected.to_f64()).round();
            Ok(lift.sub(&Scalar::approx(shift, 0.0)))
        }
        Err(e) => Err(e),
    }
}

/// max over the grid of |f(φ(y)) − φ({y+ρ})| (circle distance). Exact mode
/// must give exactly 0; approximate mode returns the maximal residual with
/// the combined certified bound attached as `err`.
pub fn conjugacy_residual(
    params: &Params,
    spec: &MapSpec,
    target: &RotationTarget,
    grid: &[Scalar],
    prec: &Precision,
) -> Result<Scalar> {
    let reg = region(params, target, prec)?;
    if contains(params, &reg, &spec.delta, &spec.a)? != Containment::InsideStrict {
        return Err(Error::HypothesisViolated(
            "conjugacy residual requires contains = inside_strict".into(),
        ));
    }
    let rho = target.rho.as_scalar();
    let mut exact_all = true;
    let mut max_resid = 0.0f64;
    let mut max_bound = 0.0f64;
    let mut max_exact = Scalar::zero();
    for y in grid {
        let x = phi(params, &spec.delta, target, y, prec)?.value;
        let ry = y.add(&rho).fract()?;
        // For exact y = 0 the image point is {1·ρ}, whose series hits the
        // exact tie z = 0 at k = 1; declare it so the engine can resolve it.
        let kind = if y.is_zero() { YKind::AtKRho(1) } else { YKind::Generic };
        let img = phi_with_kind(params, &spec.delta, target, &ry, kind, prec)?.value;
        let fx = f_at_phi(spec, &x, y, target, &img)?;
        if fx.is_exact() && img.is_exact() {
            let r = fx.sub(&img).abs();
            if r.to_f64() > max_exact.to_f64() {
                max_exact = r;
            }
        } else {
            exact_all = false;
            let d = (fx.to_f64() - img.to_f64()).abs();
            let d = d.min(1.0 - d).max(0.0).min(d);
            max_resid = max_resid.max(d);
            max_bound = max_bound.max(fx.err() + img.err());
        }
    }
    if exact_all {
        Ok(max_exact)
    } else {
        Ok(Scalar::approx(max_resid, max_bound))
    }
}

/// Generalized inverse φ̃(x) = inf{y ∈ [0,1): φ(y) ≥ x}.
///
/// Rational ρ: φ is piecewise constant with jumps exactly at {i/q} ∪ {α+i/q},
/// so the infimum is attained at a jump point and computed exactly.
/// Irrational ρ: bisection on the strictly increasing φ down to `tol`.
pub fn generalized_inverse(
    params: &Params,
    delta: &Scalar,
    target: &RotationTarget,
    x: &Scalar,
    tol: f64,
    prec: &Precision,
) -> Result<Scalar> {
    let phi0 = phi(params, delta, target, &Scalar::zero(), prec)?.value;
    let phi1_left = phi(params, delta, target, &Scalar::one(), prec)?.limit;
    if x.lt(&phi0).unwrap_or(false) || x.ge(&phi1_left).unwrap_or(false) {
        return Err(Error::OutOfRange(format!(
            "x = {x} outside [φ(0), φ(1⁻)) = [{phi0}, {phi1_left})"
        )));
    }
    match &target.rho {
        Rho::Rational { p: _, q } => {
            let mut ys: Vec<Scalar> = Vec::new();
            for i in 0..*q {
                ys.push(Scalar::from_ratio(i, *q));
                let ya = target.alpha.add(&Scalar::from_ratio(i, *q)).fract()?;
                if !ys.iter().any(|v| v.eq_exact(&ya)) {
                    ys.push(ya);
                }
            }
            ys.sort_by(|a, b| a.to_f64().total_cmp(&b.to_f64()));
            for y in ys {
                let v = phi(params, delta, target, &y, prec)?.value;
                if v.ge(x)? {
                    return Ok(y);
                }
            }
            Err(Error::OutOfRange("no jump point reaches x (unexpected)".into()))
        }
        Rho::Irrational(_) => {
            // Invariant: φ(lo) < x ≤ φ at hi (hi = 1 stands for 1⁻).
            let mut lo = 0.0f64;
            let mut hi = 1.0f64;
            if phi0.ge(x).unwrap_or(false) {
                return Ok(Scalar::zero());
            }
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                let v = phi(params, delta, target, &Scalar::approx(mid, 0.0), prec)?.value;
                match v.cmp_certified(x) {
                    Ok(std::cmp::Ordering::Less) => lo = mid,
                    Ok(_) => hi = mid,
                    // Treat unresolvable midpoints as ≥ (φ is increasing;
                    // the final interval still brackets φ̃(x)).
                    Err(Error::BoundaryAmbiguous { .. }) => hi = mid,
                    Err(e) => return Err(e),
                }
            }
            Ok(Scalar::approx(hi, hi - lo))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::default()
    }

    #[test]
    fn orbit_two_cycle() {
        // [DERIVED] λ=1/2, δ=3/4, a=1: orbit (1/6, 5/6, 1/6).
        let p = Params::from_ratios((1, 2), (1, 4)).unwrap();
        let spec = MapSpec::new(p, Scalar::from_ratio(3, 4), Scalar::one()).unwrap();
        let (xs, winds) = iterate_orbit(&spec, &Scalar::from_ratio(1, 6), 2).unwrap();
        assert!(xs[0].eq_exact(&Scalar::from_ratio(1, 6)));
        assert!(xs[1].eq_exact(&Scalar::from_ratio(5, 6)));
        assert!(xs[2].eq_exact(&Scalar::from_ratio(1, 6)));
        // Winding over the cycle = p = 1.
        assert_eq!(winds.iter().sum::<i64>(), 1);
        // [TRIVIAL] n = 0.
        let (xs, winds) = iterate_orbit(&spec, &Scalar::from_ratio(1, 6), 0).unwrap();
        assert_eq!(xs.len(), 1);
        assert!(winds.is_empty());
    }

    #[test]
    fn fig7_two_period4_orbits() {
        // [PAPER] Fig. 7: two period-4 orbits, interleaved.
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        let spec = MapSpec::new(p.clone(), Scalar::from_ratio(27, 100), Scalar::from_ratio(34, 100)).unwrap();
        let t = RotationTarget::new(Rho::rational(1, 4).unwrap(), Scalar::from_ratio(5, 16)).unwrap();
        let att = attractor(&p, &spec, &t, &AttractorOptions::default(), &prec()).unwrap();
        match att {
            Attractor::Periodic { orbits } => {
                assert_eq!(orbits.len(), 2);
                assert_eq!(orbits[0].points.len(), 4);
                assert_eq!(orbits[1].points.len(), 4);
                assert_eq!(orbits[0].winding, 1);
            }
            _ => panic!("expected periodic attractor"),
        }
    }

    #[test]
    fn single_cycle_alpha_one() {
        // [DERIVED] λ=1/2, d=1/4, ρ=1/2, α=1, δ=0.7 ∈ (2/3, 5/6), a=1:
        // one period-2 cycle.
        let p = Params::from_ratios((1, 2), (1, 4)).unwrap();
        let spec = MapSpec::new(p.clone(), Scalar::from_ratio(7, 10), Scalar::one()).unwrap();
        let t = RotationTarget::new(Rho::rational(1, 2).unwrap(), Scalar::one()).unwrap();
        let att = attractor(&p, &spec, &t, &AttractorOptions::default(), &prec()).unwrap();
        match att {
            Attractor::Periodic { orbits } => {
                assert_eq!(orbits.len(), 1);
                assert_eq!(orbits[0].points.len(), 2);
            }
            _ => panic!("expected periodic attractor"),
        }
    }

    #[test]
    fn code_equality_fig7() {
        // [PAPER] θ-codes of f on the attractor equal the rotation codes.
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        let spec = MapSpec::new(p.clone(), Scalar::from_ratio(27, 100), Scalar::from_ratio(34, 100)).unwrap();
        let t = RotationTarget::new(Rho::rational(1, 4).unwrap(), Scalar::from_ratio(5, 16)).unwrap();
        for y0 in [Scalar::zero(), Scalar::from_ratio(1, 3), Scalar::from_ratio(7, 9)] {
            let x0 = phi(&p, &spec.delta, &t, &y0, &prec()).unwrap().value;
            let c_map = code(&spec, &x0, 24).unwrap();
            let c_rot = rotation_code(&t, &y0, 24).unwrap();
            assert!(!c_map.truncated && !c_rot.truncated);
            assert_eq!(c_map.symbols, c_rot.symbols, "codes differ at y0 = {y0}");
        }
    }

    #[test]
    fn rotation_code_period4() {
        // [DERIVED] ρ=1/4, α=5/16, y0=0: period-4 word visiting all three
        // intervals.
        let t = RotationTarget::new(Rho::rational(1, 4).unwrap(), Scalar::from_ratio(5, 16)).unwrap();
        let c = rotation_code(&t, &Scalar::zero(), 11).unwrap();
        assert_eq!(&c.symbols[0..4], &c.symbols[4..8]);
        let set: HashSet<u8> = c.symbols.iter().copied().collect();
        assert_eq!(set.len(), 3);
        // [TRIVIAL] α=0 → two-letter word.
        let t = RotationTarget::new(Rho::rational(1, 3).unwrap(), Scalar::zero()).unwrap();
        let c = rotation_code(&t, &Scalar::zero(), 11).unwrap();
        assert!(c.symbols.iter().all(|s| *s <= 1));
        assert_eq!(c.cuts.len(), 1);
    }

    #[test]
    fn complexity_periodic_word() {
        // [TRIVIAL] 0101… has p(n) = 2.
        let word: Vec<u8> = (0..200).map(|i| (i % 2) as u8).collect();
        let p = complexity(&word, 3).unwrap();
        assert_eq!(p, vec![2, 2, 2]);
        // Too-short words are refused.
        assert!(matches!(
            complexity(&word[..20], 3),
            Err(Error::InsufficientLength { .. })
        ));
    }

    #[test]
    fn conjugacy_residual_exact_zero() {
        // [PAPER]/[DERIVED] Fig. 7 residual is exactly 0 on a 256-point grid.
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        let spec = MapSpec::new(p.clone(), Scalar::from_ratio(27, 100), Scalar::from_ratio(34, 100)).unwrap();
        let t = RotationTarget::new(Rho::rational(1, 4).unwrap(), Scalar::from_ratio(5, 16)).unwrap();
        let grid: Vec<Scalar> = (0..256).map(|j| Scalar::from_ratio(j, 256)).collect();
        let r = conjugacy_residual(&p, &spec, &t, &grid, &prec()).unwrap();
        assert!(r.is_exact() && r.is_zero());
    }

    #[test]
    fn generalized_inverse_rational_jumps() {
        let p = Params::from_ratios((7, 10), (1, 5)).unwrap();
        let t = RotationTarget::new(Rho::rational(1, 4).unwrap(), Scalar::from_ratio(5, 16)).unwrap();
        let delta = Scalar::from_ratio(27, 100);
        // [TRIVIAL] x = φ(0) → 0.
        let phi0 = phi(&p, &delta, &t, &Scalar::zero(), &prec()).unwrap().value;
        let y = generalized_inverse(&p, &delta, &t, &phi0, 1e-12, &prec()).unwrap();
        assert!(y.eq_exact(&Scalar::zero()));
        // φ̃(φ(y_j)) = y_j at jump points; monotone along jump points.
        let mut last = -1.0;
        for i in 0..4i64 {
            let yj = Scalar::from_ratio(i, 4);
            let v = phi(&p, &delta, &t, &yj, &prec()).unwrap().value;
            let back = generalized_inverse(&p, &delta, &t, &v, 1e-12, &prec()).unwrap();
            assert!(back.eq_exact(&yj));
            assert!(v.to_f64() > last);
            last = v.to_f64();
        }
    }
}
