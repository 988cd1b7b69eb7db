// SPDX-License-Identifier: MIT OR Apache-2.0

//! `pcrot` — command-line front-end for the piecewise-contraction toolkit.
//!
//! Every subcommand takes the map parameters as decimal strings or exact
//! `p/q` rational literals, emits deterministic JSON/CSV/SVG artifacts, and
//! uses the exit-code convention: 0 success, 1 check failed, 2 bad input.

mod svg;
mod util;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pcrot::dynamics::{
    attractor, code, complexity, conjugacy_residual, rotation_code, Attractor, AttractorOptions,
    SymbolCode,
};
use pcrot::inverse::{invert, rotation_number, DEFAULT_CYCLE_EPS};
use pcrot::map::{classify, fixed_point_check, FpRegion, MapClassTag, MapSpec, Params};
use pcrot::regions::{
    contains, enumerate_regions, region, synthesize, Containment, Expectation, InclusionMode,
    Region, SynthesisGoal,
};
use pcrot::scalar::Scalar;
use pcrot::series::{phi, Precision, Rho, RotationTarget};
use pcrot::sweep::{region_corners, tongues};

use util::{emit, fmt_f64, parse_rho, parse_scalar, render_json, rho_json, scalar_json, Mode};

#[derive(Parser)]
#[command(name = "pcrot", version, about = "parameter-space toolkit for 3-interval piecewise λ-affine circle contractions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args)]
struct Common {
    /// Contraction rate λ in (0,1); `p/q` or decimal.
    #[arg(long)]
    lambda: String,
    /// Jump size d in (0, 1−λ); `p/q` or decimal.
    #[arg(long)]
    d: String,
    /// exact: decimals become exact rationals; approx: decimals become
    /// certified f64 values. `p/q` literals are always exact.
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Error bound attached to approx-mode decimal inputs (default: a few ulp).
    #[arg(long)]
    err: Option<f64>,
}

impl Common {
    fn params(&self) -> Result<Params> {
        let lambda = parse_scalar(&self.lambda, self.mode, self.err)?;
        let d = parse_scalar(&self.d, self.mode, self.err)?;
        Params::new(lambda, d).map_err(|e| anyhow!("{e}"))
    }

    fn scalar(&self, s: &str) -> Result<Scalar> {
        parse_scalar(s, self.mode, self.err)
    }

    fn mode_str(&self) -> &'static str {
        match self.mode {
            Mode::Exact => "exact",
            Mode::Approx => "approx",
        }
    }
}

/// (ρ, α) target options; `--resonance k` declares α = {kρ} and replaces --alpha.
#[derive(Args)]
struct TargetArgs {
    /// Rotation number: `p/q` (rational) or decimal (irrational approximation).
    #[arg(long)]
    rho: String,
    /// Region parameter α in [0,1]; required unless --resonance is given.
    #[arg(long)]
    alpha: Option<String>,
    /// Declare α = {k·ρ} (k ≠ 0); enables exact tie handling at resonances.
    #[arg(long)]
    resonance: Option<i64>,
}

impl TargetArgs {
    fn target(&self, common: &Common) -> Result<RotationTarget> {
        let rho = parse_rho(&self.rho, common.err)?;
        match (self.resonance, &self.alpha) {
            (Some(k), _) => RotationTarget::resonant(rho, k).map_err(|e| anyhow!("{e}")),
            (None, Some(a)) => {
                RotationTarget::new(rho, common.scalar(a)?).map_err(|e| anyhow!("{e}"))
            }
            (None, None) => bail!("either --alpha or --resonance is required"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the parameter region P_{ρ,α} in the (δ, a) square.
    Region {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: TargetArgs,
        /// Write JSON here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also draw the parallelogram with the η₁/η₂ partition lines.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Enumerate all 2q+1 maximal regions of a rational tongue ρ = p/q.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Rational rotation number `p/q`, q ≥ 2.
        #[arg(long)]
        rho: String,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Region corners, one per line (header: p,q,alpha,corner,delta,a).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Synthesize a map with prescribed dynamics, with a certificate.
    Synth {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        goal: GoalKind,
        /// Rotation number (`p/q` for orbit-count/map-type, decimal for complexity goals).
        #[arg(long)]
        rho: String,
        /// Number of periodic orbits (goal = orbit-count): 1 or 2.
        #[arg(long)]
        count: Option<u8>,
        /// Generic α for complexity-generic (default 1/4).
        #[arg(long)]
        alpha: Option<String>,
        /// Resonance index k for complexity-resonant.
        #[arg(long)]
        k: Option<i64>,
        /// Target class for map-type.
        #[arg(long, value_enum)]
        class: Option<ClassKind>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Inverse problem: (δ, a) → certified (ρ, α) with a membership check.
    Invert {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        a: String,
        /// Bracketing tolerance for the rotation-number bisection.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Rotation number of a concrete map by certified cycle detection.
    Rotnum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 10_000)]
        iters: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Attractor of a map strictly inside P_{ρ,α}: q-cycles or Cantor samples.
    Attractor {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        a: String,
        /// Sample-grid size for the irrational case.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        /// One orbit point / sample / gap per line.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Symbolic itinerary of an orbit under the map's natural partition.
    Code {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        a: String,
        /// Initial point in [0,1).
        #[arg(long)]
        x0: String,
        /// Word length (number of symbols − 1 iterations).
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Factor complexity p(1..n_max) of an orbit code.
    Complexity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        x0: String,
        /// Word length; must be ≥ 4(3·n_max + 1) for a certified count.
        #[arg(long, default_value_t = 4000)]
        len: usize,
        #[arg(long, default_value_t = 15)]
        n_max: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify a full spec against a target: containment, conjugacy residual,
    /// attractor shape, code equality. Exit 0 iff all checks pass.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Farey tongue overlay of the (δ, a) square (SVG + optional corner CSV).
    Plot {
        #[command(flatten)]
        common: Common,
        /// Farey order (≤ 30). Order 1 still draws the single tongue ρ = 1/2.
        #[arg(long)]
        farey_order: i64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GoalKind {
    OrbitCount,
    ComplexityGeneric,
    ComplexityResonant,
    MapType,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    M1,
    M2,
    M3,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Optional PCROT_THREADS caps the rayon worker pool.
fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Ok(n) = std::env::var("PCROT_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn prec() -> Precision {
    Precision::default()
}

fn region_json(params: &Params, reg: &Region) -> Value {
    let (a_lo, a_hi) = reg.a_bounds(params, &reg.delta_lo);
    json!({
        "delta_lo": scalar_json(&reg.delta_lo),
        "delta_hi": scalar_json(&reg.delta_hi),
        "a_offset_lo": scalar_json(&reg.a_offset_lo),
        "a_offset_hi": scalar_json(&reg.a_offset_hi),
        "a_lo_at_delta_lo": scalar_json(&a_lo),
        "a_hi_at_delta_lo": scalar_json(&a_hi),
        "inclusion": match reg.inclusion_mode {
            InclusionMode::Closed => "closed",
            InclusionMode::HalfOpen => "half_open",
        },
        "degenerate": !reg.target.rho.is_rational(),
    })
}

fn symbols_string(code: &SymbolCode) -> String {
    code.symbols.iter().map(|s| (b'0' + s) as char).collect()
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Region { common, target, json: json_out, svg: svg_out } => {
            let params = common.params()?;
            let target = target.target(&common)?;
            let reg = region(&params, &target, &prec()).map_err(|e| anyhow!("{e}"))?;
            let mut body = region_json(&params, &reg);
            let obj = body.as_object_mut().unwrap();
            obj.insert("lambda".into(), scalar_json(&params.lambda));
            obj.insert("d".into(), scalar_json(&params.d));
            obj.insert("rho".into(), rho_json(&target.rho));
            obj.insert("alpha".into(), scalar_json(&target.alpha));
            obj.insert("mode".into(), json!(common.mode_str()));
            if !reg.target.rho.is_rational() {
                obj.insert(
                    "notice".into(),
                    json!("irrational rho: region degenerates to a single point"),
                );
            }
            emit(json_out.as_deref(), &render_json(&body))?;
            if let Some(path) = svg_out {
                emit(Some(&path), &svg::region_svg(&params, &reg))?;
            }
            Ok(0)
        }

        Command::Enumerate { common, rho, json: json_out, csv } => {
            let params = common.params()?;
            let (p, q) = match parse_rho(&rho, None)? {
                Rho::Rational { p, q } if q >= 2 => (p, q),
                _ => bail!("enumerate needs a rational rho p/q with q >= 2"),
            };
            let regions = enumerate_regions(&params, p, q, &prec()).map_err(|e| anyhow!("{e}"))?;
            let list: Vec<Value> = regions
                .iter()
                .map(|(alpha, reg)| {
                    let mut v = region_json(&params, reg);
                    v.as_object_mut().unwrap().insert("alpha".into(), scalar_json(alpha));
                    v
                })
                .collect();
            let body = json!({
                "lambda": scalar_json(&params.lambda),
                "d": scalar_json(&params.d),
                "rho": format!("{p}/{q}"),
                "mode": common.mode_str(),
                "regions": list,
            });
            emit(json_out.as_deref(), &render_json(&body))?;
            if let Some(path) = csv {
                let mut out = String::from("p,q,alpha,corner,delta,a\n");
                for (alpha, reg) in &regions {
                    for (i, (dd, aa)) in region_corners(&params, reg).iter().enumerate() {
                        out.push_str(&format!(
                            "{p},{q},{},{i},{},{}\n",
                            alpha,
                            fmt_f64(*dd),
                            fmt_f64(*aa)
                        ));
                    }
                }
                emit(Some(&path), &out)?;
            }
            Ok(0)
        }

        Command::Synth { common, goal, rho, count, alpha, k, class, json: json_out } => {
            let params = common.params()?;
            let goal = match goal {
                GoalKind::OrbitCount => {
                    let (p, q) = match parse_rho(&rho, None)? {
                        Rho::Rational { p, q } => (p, q),
                        _ => bail!("orbit-count needs a rational rho p/q"),
                    };
                    let count = count.context("--count is required for orbit-count")?;
                    SynthesisGoal::OrbitCount { count, p, q }
                }
                GoalKind::ComplexityGeneric => {
                    let rho = match parse_rho(&rho, common.err)? {
                        Rho::Irrational(s) => s,
                        _ => bail!("complexity goals need an irrational (decimal) rho"),
                    };
                    let alpha = alpha.as_deref().map(|a| common.scalar(a)).transpose()?;
                    SynthesisGoal::ComplexityGeneric { rho, alpha }
                }
                GoalKind::ComplexityResonant => {
                    let rho = match parse_rho(&rho, common.err)? {
                        Rho::Irrational(s) => s,
                        _ => bail!("complexity goals need an irrational (decimal) rho"),
                    };
                    let k = k.context("--k is required for complexity-resonant")?;
                    SynthesisGoal::ComplexityResonant { rho, k }
                }
                GoalKind::MapType => {
                    let tag = match class.context("--class is required for map-type")? {
                        ClassKind::M1 => MapClassTag::M1,
                        ClassKind::M2 => MapClassTag::M2,
                        ClassKind::M3 => MapClassTag::M3,
                    };
                    SynthesisGoal::MapType { rho: parse_rho(&rho, common.err)?, tag }
                }
            };
            let (spec, cert) =
                synthesize(&params, &goal, &prec()).map_err(|e| anyhow!("{e}"))?;
            let expected = match &cert.expected {
                Expectation::PeriodicOrbits { count, period, winding } => json!({
                    "kind": "periodic_orbits",
                    "count": count, "period": period, "winding": winding,
                }),
                Expectation::ComplexityTwoNPlusOne => json!({"kind": "complexity_2n_plus_1"}),
                Expectation::ComplexityNPlusB { b } => {
                    json!({"kind": "complexity_n_plus_b", "b": b})
                }
                Expectation::MapType { tag } => json!({
                    "kind": "map_type",
                    "class": format!("{tag:?}"),
                }),
            };
            let body = json!({
                "lambda": scalar_json(&params.lambda),
                "d": scalar_json(&params.d),
                "delta": scalar_json(&spec.delta),
                "a": scalar_json(&spec.a),
                "rho": rho_json(&cert.target.rho),
                "alpha": scalar_json(&cert.target.alpha),
                "mode": common.mode_str(),
                "expected": expected,
                "region": region_json(&params, &cert.region),
            });
            emit(json_out.as_deref(), &render_json(&body))?;
            Ok(0)
        }

        Command::Invert { common, delta, a, tol, json: json_out } => {
            let params = common.params()?;
            let delta = common.scalar(&delta)?;
            let a = common.scalar(&a)?;
            match invert(&params, &delta, &a, tol, &prec()) {
                Ok(cert) => {
                    let body = json!({
                        "lambda": scalar_json(&params.lambda),
                        "d": scalar_json(&params.d),
                        "delta": scalar_json(&delta),
                        "a": scalar_json(&a),
                        "rho": rho_json(&cert.rho),
                        "alpha": scalar_json(&cert.alpha),
                        "mode": common.mode_str(),
                        "checks": {"delta_recomputed": cert.checks.0, "a_recomputed": cert.checks.1},
                        "containment": format!("{:?}", cert.containment),
                        "region": region_json(&params, &cert.region),
                    });
                    emit(json_out.as_deref(), &render_json(&body))?;
                    Ok(0)
                }
                Err(e) => {
                    let body = json!({"error": format!("{e}")});
                    emit(json_out.as_deref(), &render_json(&body))?;
                    Ok(1)
                }
            }
        }

        Command::Rotnum { common, delta, a, iters, json: json_out } => {
            let params = common.params()?;
            let spec = MapSpec::new(params.clone(), common.scalar(&delta)?, common.scalar(&a)?)
                .map_err(|e| anyhow!("{e}"))?;
            let est =
                rotation_number(&spec, iters, DEFAULT_CYCLE_EPS).map_err(|e| anyhow!("{e}"))?;
            let body = json!({
                "lambda": scalar_json(&params.lambda),
                "d": scalar_json(&params.d),
                "delta": scalar_json(&spec.delta),
                "a": scalar_json(&spec.a),
                "mode": common.mode_str(),
                "lower": est.lower.to_f64(),
                "upper": est.upper.to_f64(),
                "exact": est.exact.map(|(p, q)| format!("{p}/{q}")),
                "iterations": est.iterations,
            });
            emit(json_out.as_deref(), &render_json(&body))?;
            Ok(0)
        }

        Command::Attractor { common, target, delta, a, grid, json: json_out, csv } => {
            let params = common.params()?;
            let target = target.target(&common)?;
            let spec = MapSpec::new(params.clone(), common.scalar(&delta)?, common.scalar(&a)?)
                .map_err(|e| anyhow!("{e}"))?;
            let opts = AttractorOptions { grid, ..AttractorOptions::default() };
            let att = attractor(&params, &spec, &target, &opts, &prec())
                .map_err(|e| anyhow!("{e}"))?;
            let (body_att, csv_body) = match &att {
                Attractor::Periodic { orbits } => {
                    let mut csv_s = String::from("kind,orbit,index,u,v\n");
                    for (oi, cyc) in orbits.iter().enumerate() {
                        for (i, pt) in cyc.points.iter().enumerate() {
                            csv_s.push_str(&format!(
                                "point,{oi},{i},{},{}\n",
                                fmt_f64(pt.to_f64()),
                                cyc.winding
                            ));
                        }
                    }
                    (
                        json!({
                            "kind": "periodic",
                            "orbits": orbits.iter().map(|c| json!({
                                "winding": c.winding,
                                "points": c.points.iter().map(scalar_json).collect::<Vec<_>>(),
                            })).collect::<Vec<_>>(),
                        }),
                        csv_s,
                    )
                }
                Attractor::CantorSample { samples, gaps, unreported_mass } => {
                    let mut csv_s = String::from("kind,orbit,index,u,v\n");
                    for (i, (y, x)) in samples.iter().enumerate() {
                        csv_s.push_str(&format!(
                            "sample,0,{i},{},{}\n",
                            fmt_f64(y.to_f64()),
                            fmt_f64(x.to_f64())
                        ));
                    }
                    for (i, (lo, hi)) in gaps.iter().enumerate() {
                        csv_s.push_str(&format!(
                            "gap,0,{i},{},{}\n",
                            fmt_f64(lo.to_f64()),
                            fmt_f64(hi.to_f64())
                        ));
                    }
                    (
                        json!({
                            "kind": "cantor_sample",
                            "samples": samples.iter()
                                .map(|(y, x)| json!([scalar_json(y), scalar_json(x)]))
                                .collect::<Vec<_>>(),
                            "gaps": gaps.iter()
                                .map(|(lo, hi)| json!([scalar_json(lo), scalar_json(hi)]))
                                .collect::<Vec<_>>(),
                            "unreported_mass": unreported_mass,
                        }),
                        csv_s,
                    )
                }
            };
            let body = json!({
                "lambda": scalar_json(&params.lambda),
                "d": scalar_json(&params.d),
                "delta": scalar_json(&spec.delta),
                "a": scalar_json(&spec.a),
                "rho": rho_json(&target.rho),
                "alpha": scalar_json(&target.alpha),
                "mode": common.mode_str(),
                "attractor": body_att,
            });
            emit(json_out.as_deref(), &render_json(&body))?;
            if let Some(path) = csv {
                emit(Some(&path), &csv_body)?;
            }
            Ok(0)
        }

        Command::Code { common, delta, a, x0, n, json: json_out } => {
            let params = common.params()?;
            let spec = MapSpec::new(params.clone(), common.scalar(&delta)?, common.scalar(&a)?)
                .map_err(|e| anyhow!("{e}"))?;
            let word = code(&spec, &common.scalar(&x0)?, n).map_err(|e| anyhow!("{e}"))?;
            let body = json!({
                "lambda": scalar_json(&params.lambda),
                "d": scalar_json(&params.d),
                "delta": scalar_json(&spec.delta),
                "a": scalar_json(&spec.a),
                "mode": common.mode_str(),
                "symbols": symbols_string(&word),
                "cuts": word.cuts.iter().map(scalar_json).collect::<Vec<_>>(),
                "truncated": word.truncated,
            });
            emit(json_out.as_deref(), &render_json(&body))?;
            Ok(0)
        }

        Command::Complexity { common, delta, a, x0, len, n_max, json: json_out } => {
            let params = common.params()?;
            let spec = MapSpec::new(params.clone(), common.scalar(&delta)?, common.scalar(&a)?)
                .map_err(|e| anyhow!("{e}"))?;
            let word = code(&spec, &common.scalar(&x0)?, len).map_err(|e| anyhow!("{e}"))?;
            if word.truncated {
                let body = json!({
                    "error": "orbit code hit a boundary-ambiguous iterate; word truncated",
                    "usable_length": word.symbols.len(),
                });
                emit(json_out.as_deref(), &render_json(&body))?;
                return Ok(1);
            }
            let pn = complexity(&word.symbols, n_max).map_err(|e| anyhow!("{e}"))?;
            let body = json!({
                "lambda": scalar_json(&params.lambda),
                "d": scalar_json(&params.d),
                "delta": scalar_json(&spec.delta),
                "a": scalar_json(&spec.a),
                "mode": common.mode_str(),
                "word_length": word.symbols.len(),
                "complexity": pn,
            });
            emit(json_out.as_deref(), &render_json(&body))?;
            Ok(0)
        }

        Command::Verify { common, target, delta, a, json: json_out } => {
            let params = common.params()?;
            let target = target.target(&common)?;
            let spec = MapSpec::new(params.clone(), common.scalar(&delta)?, common.scalar(&a)?)
                .map_err(|e| anyhow!("{e}"))?;
            let (body, ok) = verify_report(&params, &spec, &target)?;
            emit(json_out.as_deref(), &render_json(&body))?;
            Ok(if ok { 0 } else { 1 })
        }

        Command::Plot { common, farey_order, svg: svg_out, csv } => {
            let params = common.params()?;
            if !(1..=30).contains(&farey_order) {
                bail!("farey order must be in 1..=30");
            }
            // Order 1 has no interior rationals; draw the single tongue 1/2.
            let sweep = tongues(&params, farey_order.max(2), &prec())
                .map_err(|e| anyhow!("{e}"))?;
            emit(svg_out.as_deref(), &svg::tongues_svg(&params, &sweep))?;
            if let Some(path) = csv {
                let mut out = String::from("p,q,alpha,corner,delta,a\n");
                for t in &sweep {
                    for (alpha, reg) in &t.regions {
                        for (i, (dd, aa)) in region_corners(&params, reg).iter().enumerate() {
                            out.push_str(&format!(
                                "{},{},{},{i},{},{}\n",
                                t.p,
                                t.q,
                                alpha,
                                fmt_f64(*dd),
                                fmt_f64(*aa)
                            ));
                        }
                    }
                }
                emit(Some(&path), &out)?;
            }
            Ok(0)
        }
    }
}

/// The Theorem-2.8-style report: containment, conjugacy residual, attractor
/// shape, and map-code vs rotation-code equality.
fn verify_report(params: &Params, spec: &MapSpec, target: &RotationTarget) -> Result<(Value, bool)> {
    let mut checks = serde_json::Map::new();
    let pr = prec();

    // Fixed-point regions short-circuit everything: ρ = 0 there.
    let fp = fixed_point_check(spec).map_err(|e| anyhow!("{e}"))?;
    if fp.region != FpRegion::None {
        let body = json!({
            "lambda": scalar_json(&params.lambda),
            "d": scalar_json(&params.d),
            "delta": scalar_json(&spec.delta),
            "a": scalar_json(&spec.a),
            "rho": "0/1",
            "fixed_point_region": format!("{:?}", fp.region),
            "ghost": fp.ghost,
            "pass": false,
        });
        return Ok((body, false));
    }

    let (_, class) = classify(spec).map_err(|e| anyhow!("{e}"))?;
    let reg = region(params, target, &pr).map_err(|e| anyhow!("{e}"))?;
    let containment = contains(params, &reg, &spec.delta, &spec.a).map_err(|e| anyhow!("{e}"))?;
    let strict = containment == Containment::InsideStrict;
    checks.insert("containment".into(), json!(format!("{containment:?}")));
    checks.insert("containment_pass".into(), json!(strict));

    let mut all = strict;
    if strict {
        // Conjugacy residual on a 64-point grid.
        let grid: Vec<Scalar> = (0..64).map(|j| Scalar::from_ratio(j, 64)).collect();
        match conjugacy_residual(params, spec, target, &grid, &pr) {
            Ok(resid) => {
                let pass = resid.to_f64() <= resid.err();
                checks.insert("residual".into(), json!(resid.to_f64()));
                checks.insert("residual_bound".into(), json!(resid.err()));
                checks.insert("residual_pass".into(), json!(pass));
                all &= pass;
            }
            Err(e) => {
                checks.insert("residual_pass".into(), json!(false));
                checks.insert("residual_error".into(), json!(format!("{e}")));
                all = false;
            }
        }

        // Attractor shape and code equality.
        match attractor(params, spec, target, &AttractorOptions::default(), &pr) {
            Ok(Attractor::Periodic { orbits }) => {
                let (p, q) = match target.rho {
                    Rho::Rational { p, q } => (p, q),
                    _ => (0, 0),
                };
                let shape_ok = q > 0
                    && orbits
                        .iter()
                        .all(|c| c.points.len() == q as usize && c.winding == p);
                checks.insert("attractor_orbits".into(), json!(orbits.len()));
                checks.insert("attractor_pass".into(), json!(shape_ok));
                all &= shape_ok;
                // Map code of each cycle vs the rotation code of its y-seed.
                let n = (4 * q as usize).max(16);
                let mut codes_ok = true;
                for (cyc, y0) in orbits.iter().zip([Scalar::zero(), target.alpha.clone()]) {
                    let cm = code(spec, &cyc.points[0], n).map_err(|e| anyhow!("{e}"))?;
                    let cr = rotation_code(target, &y0, n).map_err(|e| anyhow!("{e}"))?;
                    codes_ok &= !cm.truncated && !cr.truncated && cm.symbols == cr.symbols;
                }
                checks.insert("code_equality_pass".into(), json!(codes_ok));
                all &= codes_ok;
            }
            Ok(Attractor::CantorSample { unreported_mass, .. }) => {
                checks.insert("attractor_pass".into(), json!(true));
                checks.insert("attractor_unreported_mass".into(), json!(unreported_mass));
                // Code equality on the orbit of φ(0), overlap of prefixes.
                let x0 = phi(params, &spec.delta, target, &Scalar::zero(), &pr)
                    .map_err(|e| anyhow!("{e}"))?
                    .value;
                let cm = code(spec, &x0, 40).map_err(|e| anyhow!("{e}"))?;
                let cr = rotation_code(target, &Scalar::zero(), 40).map_err(|e| anyhow!("{e}"))?;
                let k = cm.symbols.len().min(cr.symbols.len());
                let codes_ok = k >= 8 && cm.symbols[..k] == cr.symbols[..k];
                checks.insert("code_equality_pass".into(), json!(codes_ok));
                all &= codes_ok;
            }
            Err(e) => {
                checks.insert("attractor_pass".into(), json!(false));
                checks.insert("attractor_error".into(), json!(format!("{e}")));
                all = false;
            }
        }
    } else {
        checks.insert("skipped".into(), json!("conjugacy checks require strict containment"));
    }

    let body = json!({
        "lambda": scalar_json(&params.lambda),
        "d": scalar_json(&params.d),
        "delta": scalar_json(&spec.delta),
        "a": scalar_json(&spec.a),
        "rho": rho_json(&target.rho),
        "alpha": scalar_json(&target.alpha),
        "class": format!("{:?}", class.tag),
        "checks": Value::Object(checks),
        "pass": all,
    });
    Ok((body, all))
}
