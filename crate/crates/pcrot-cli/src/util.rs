// SPDX-License-Identifier: MIT OR Apache-2.0

//! Number parsing and deterministic serialization helpers.
//!
//! Rational literals `p/q` always parse exactly. Decimal strings parse as
//! exact rationals (mantissa / 10^k) in exact mode, or as certified f64
//! approximations in approx mode. Exact scalars serialize back to `p/q`
//! strings so a JSON round-trip is lossless.

use anyhow::{anyhow, bail, Context, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use serde_json::Value;

use pcrot::scalar::Scalar;
use pcrot::series::Rho;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Approx,
}

/// Parse a decimal string like `0.27` or `-1.5` into an exact rational.
fn decimal_to_rational(s: &str) -> Result<BigRational> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        bail!("empty number");
    }
    let digits: String = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        bail!("invalid decimal literal: {s}");
    }
    let numer: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(BigInt::from(sign) * numer, denom))
}

/// Parse a scalar: `p/q` is always exact; a decimal string is exact in
/// exact mode and a certified f64 in approx mode (with error `err` if given).
pub fn parse_scalar(s: &str, mode: Mode, err: Option<f64>) -> Result<Scalar> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().context("bad rational numerator")?;
        let q: BigInt = q.trim().parse().context("bad rational denominator")?;
        if q.is_zero() {
            bail!("zero denominator in {s}");
        }
        return Ok(Scalar::exact(BigRational::new(p, q)));
    }
    match mode {
        Mode::Exact => Ok(Scalar::exact(decimal_to_rational(s)?)),
        Mode::Approx => {
            let v: f64 = s.parse().with_context(|| format!("bad number: {s}"))?;
            Ok(match err {
                Some(e) => Scalar::approx(v, e),
                None => Scalar::approx_ulp(v),
            })
        }
    }
}

/// Parse a rotation number: `p/q` → rational, a decimal string → certified
/// irrational approximation (that is the only way to address an irrational).
pub fn parse_rho(s: &str, err: Option<f64>) -> Result<Rho> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().context("bad rho numerator")?;
        let q: i64 = q.trim().parse().context("bad rho denominator")?;
        return Rho::rational(p, q).map_err(|e| anyhow!("{e}"));
    }
    let v: f64 = s.parse().with_context(|| format!("bad rho: {s}"))?;
    Ok(Rho::Irrational(match err {
        Some(e) => Scalar::approx(v, e),
        None => Scalar::approx_ulp(v),
    }))
}

/// Serialize a scalar: exact → lossless "p/q" string, approx → f64 number.
pub fn scalar_json(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(r) => Value::String(format!("{}/{}", r.numer(), r.denom())),
        None => serde_json::json!(s.to_f64()),
    }
}

pub fn rho_json(rho: &Rho) -> Value {
    match rho {
        Rho::Rational { p, q } => Value::String(format!("{p}/{q}")),
        Rho::Irrational(s) => scalar_json(s),
    }
}

/// Pretty JSON with sorted keys (serde_json's default map) and a trailing
/// newline — byte-identical for identical inputs.
pub fn render_json(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    out.push('\n');
    out
}

/// Write to the given path, or stdout when the path is `-` or absent.
pub fn emit(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::write(p, content).with_context(|| format!("writing {}", p.display()))?
        }
        _ => print!("{content}"),
    }
    Ok(())
}

/// Deterministic fixed-point formatting for CSV/SVG coordinates.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.12}")
}

/// One-based HSV→RGB hex ramp used to grade tongues by ρ.
pub fn rho_color(rho: f64) -> String {
    let h = 300.0 * rho; // hue sweep, avoids wrapping back to red
    let (r, g, b) = hsv_rgb(h, 0.75, 0.85);
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn hsv_rgb(h: f64, s: f64, v: f64) -> (u8, u8, u8) {
    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as i64 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    (
        ((r + m) * 255.0).round() as u8,
        ((g + m) * 255.0).round() as u8,
        ((b + m) * 255.0).round() as u8,
    )
}
