// SPDX-License-Identifier: MIT OR Apache-2.0

//! Static SVG 1.1 emission for the (δ, a) parameter square: single-region
//! plots with the η₁/η₂ partition lines, and Farey tongue overlays.

use pcrot::map::Params;
use pcrot::regions::Region;
use pcrot::sweep::{region_corners, Tongue};

use crate::util::{fmt_f64, rho_color};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

fn px(delta: f64) -> String {
    fmt_f64(MARGIN + delta * (SIZE - 2.0 * MARGIN))
}

fn py(a: f64) -> String {
    fmt_f64(SIZE - MARGIN - a * (SIZE - 2.0 * MARGIN))
}

fn polygon(corners: &[(f64, f64)], style: &str) -> String {
    let pts: Vec<String> = corners
        .iter()
        .map(|(d, a)| format!("{},{}", px(*d), py(*a)))
        .collect();
    format!("  <polygon points=\"{}\" {style}/>\n", pts.join(" "))
}

/// Clip a line segment (in δ,a coordinates) to the unit square and emit it.
fn clipped_line(p0: (f64, f64), p1: (f64, f64), style: &str) -> String {
    // Liang–Barsky against [0,1]².
    let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [
        (-dx, p0.0),
        (dx, 1.0 - p0.0),
        (-dy, p0.1),
        (dy, 1.0 - p0.1),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return String::new();
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 > t1 {
        return String::new();
    }
    let a = (p0.0 + t0 * dx, p0.1 + t0 * dy);
    let b = (p0.0 + t1 * dx, p0.1 + t1 * dy);
    format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
        px(a.0),
        py(a.1),
        px(b.0),
        py(b.1)
    )
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n  <title>{title}</title>\n  <rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{w}\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n",
        s = SIZE,
        m = MARGIN,
        w = SIZE - 2.0 * MARGIN,
        title = title,
    )
}

/// Single parallelogram in the unit (δ, a) square with the η₁/η₂ partition
/// lines a = (1−δ−d)/λ and a = (1−δ)/λ.
pub fn region_svg(params: &Params, region: &Region) -> String {
    let lam = params.lambda.to_f64();
    let d = params.d.to_f64();
    let mut out = header("parameter region in the (delta, a) square");
    for (off, style) in [
        (d, "stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6,4\""),
        (0.0, "stroke=\"#888888\" stroke-width=\"1\""),
    ] {
        // a = (1 − δ − off)/λ evaluated at δ = 0 and δ = 1.
        let line = clipped_line(
            (0.0, (1.0 - off) / lam),
            (1.0, (0.0 - off) / lam),
            style,
        );
        out.push_str(&line);
    }
    let corners = region_corners(params, region);
    let degenerate = (corners[0].0 - corners[1].0).abs() < 1e-12
        && (corners[0].1 - corners[3].1).abs() < 1e-12;
    if degenerate {
        out.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#c03030\"/>\n",
            px(corners[0].0),
            py(corners[0].1)
        ));
    } else {
        out.push_str(&polygon(
            &corners,
            "fill=\"#c0303080\" stroke=\"#c03030\" stroke-width=\"1\"",
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Farey tongue overlay, color-graded by ρ; white gaps are uncovered points.
pub fn tongues_svg(params: &Params, tongues: &[Tongue]) -> String {
    let mut out = header("Farey tongues in the (delta, a) square");
    for t in tongues {
        let color = rho_color(t.p as f64 / t.q as f64);
        let style = format!("fill=\"{color}\" fill-opacity=\"0.8\" stroke=\"none\"");
        for (_, reg) in &t.regions {
            out.push_str(&polygon(&clip_corners(region_corners(params, reg)), &style));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Regions at α ∈ {0,1} can stick out of the unit square; clamp for display.
fn clip_corners(mut c: [(f64, f64); 4]) -> [(f64, f64); 4] {
    for p in &mut c {
        p.1 = p.1.clamp(0.0, 1.0);
    }
    c
}
