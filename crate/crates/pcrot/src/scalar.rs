// SPDX-License-Identifier: MIT OR Apache-2.0

//! Unified numeric contract: exact arbitrary-precision rationals or certified
//! approximate reals `(value, err)` with `|value − true| ≤ err`.
//!
//! Arithmetic on two exact scalars stays exact; any approximate operand
//! produces an approximate result with rigorously propagated error:
//!
//! * `a ± b`: `err = err_a + err_b`
//! * `a · b`: `err = |a|·err_b + |b|·err_a + err_a·err_b`
//! * `a / b`: `err = (|a|·err_b + |b|·err_a) / (|b|·(|b| − err_b))`, defined
//!   only when the denominator interval excludes 0
//!
//! plus a per-operation floating-point rounding slop (a few ulps), so the
//! attached bound survives binary64 rounding.
//!
//! Comparisons are *certified*: an approximate comparison whose uncertainty
//! intervals overlap raises [`Error::BoundaryAmbiguous`] instead of guessing.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Exact rational backing type.
pub type Rational = BigRational;

/// A real number: exact rational or certified binary64 approximation.
#[derive(Clone, Debug)]
pub enum Scalar {
    /// Exact arbitrary-precision rational (reduced, positive denominator —
    /// maintained by `BigRational` itself).
    Exact(Rational),
    /// `|value − true| ≤ err`, with `err ≥ 0` finite.
    Approx {
        /// Best available binary64 value.
        value: f64,
        /// Rigorous absolute error bound.
        err: f64,
    },
}

/// Extra relative slop added per floating-point operation so that propagated
/// error bounds absorb binary64 rounding (4 ulps is generous for one op plus
/// the error-arithmetic itself).
const ROUND_SLOP: f64 = 4.0 * f64::EPSILON;

fn slop(value: f64) -> f64 {
    ROUND_SLOP * value.abs() + f64::MIN_POSITIVE
}

impl Scalar {
    /// Exact integer.
    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(Rational::from_integer(BigInt::from(n)))
    }

    /// Exact reduced fraction `p/q` (`q ≠ 0`).
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::Exact(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Exact scalar from a rational.
    pub fn exact(r: Rational) -> Self {
        Scalar::Exact(r)
    }

    /// Certified approximation.
    pub fn approx(value: f64, err: f64) -> Self {
        debug_assert!(err >= 0.0 && err.is_finite() && value.is_finite());
        Scalar::Approx { value, err }
    }

    /// Approximation of an f64 assumed exact as a binary64 (err = 0 would be
    /// wrong once it stands in for an irrational: callers pass their own err).
    /// This helper attaches a 1-ulp bound, appropriate when `value` is the
    /// correctly rounded binary64 of the intended real.
    pub fn approx_ulp(value: f64) -> Self {
        Scalar::Approx {
            value,
            err: f64::EPSILON * value.abs() + f64::MIN_POSITIVE,
        }
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Exact payload, if any.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx { .. } => None,
        }
    }

    /// Best binary64 value (rounded for exact scalars).
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx { value, .. } => *value,
        }
    }

    /// Attached error bound (0 for exact).
    pub fn err(&self) -> f64 {
        match self {
            Scalar::Exact(_) => 0.0,
            Scalar::Approx { err, .. } => *err,
        }
    }

    /// Demote to a certified approximation (exact scalars get a rigorous
    /// bound on their own binary64 rounding).
    pub fn to_approx(&self) -> (f64, f64) {
        match self {
            Scalar::Exact(r) => {
                let v = r.to_f64().unwrap_or(f64::NAN);
                // |v − r| bounded by the exact difference, rounded up a bit.
                let err = match Rational::from_f64(v) {
                    Some(vr) => {
                        let diff = (&vr - r).abs();
                        diff.to_f64().unwrap_or(f64::INFINITY) * (1.0 + ROUND_SLOP)
                            + f64::MIN_POSITIVE
                    }
                    None => f64::INFINITY,
                };
                (v, err)
            }
            Scalar::Approx { value, err } => (*value, *err),
        }
    }

    fn binop_approx(a: &Scalar, b: &Scalar, f: impl Fn(f64, f64) -> f64, e: impl Fn(f64, f64, f64, f64) -> f64) -> Scalar {
        let (av, ae) = a.to_approx();
        let (bv, be) = b.to_approx();
        let v = f(av, bv);
        let err = e(av, ae, bv, be) + slop(v) + slop(av) + slop(bv);
        Scalar::Approx { value: v, err }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::binop_approx(self, other, |a, b| a + b, |_, ae, _, be| ae + be),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            _ => Scalar::binop_approx(self, other, |a, b| a - b, |_, ae, _, be| ae + be),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::binop_approx(
                self,
                other,
                |a, b| a * b,
                |av, ae, bv, be| av.abs() * be + bv.abs() * ae + ae * be,
            ),
        }
    }

    /// Division; panics if an approximate denominator interval contains 0
    /// (library-internal divisors are bounded away from 0 by construction).
    pub fn div(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Exact(a / b)
            }
            _ => {
                let (bv, be) = other.to_approx();
                assert!(bv.abs() > be, "approximate divisor interval contains zero");
                Scalar::binop_approx(
                    self,
                    other,
                    |a, b| a / b,
                    |av, ae, bv, be| (av.abs() * be + bv.abs() * ae) / (bv.abs() * (bv.abs() - be)),
                )
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Approx { value, err } => Scalar::Approx { value: -value, err: *err },
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.abs()),
            Scalar::Approx { value, err } => Scalar::Approx { value: value.abs(), err: *err },
        }
    }

    /// Non-negative integer power (exact stays exact).
    pub fn powi(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Certified three-way comparison. Exact–exact compares exactly; with an
    /// approximate operand, overlapping uncertainty intervals are ambiguous.
    pub fn cmp_certified(&self, other: &Scalar) -> Result<Ordering, Error> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(a.cmp(b)),
            _ => {
                let (av, ae) = self.to_approx();
                let (bv, be) = other.to_approx();
                let gap = ae + be + slop(av) + slop(bv);
                if (av - bv).abs() <= gap {
                    Err(Error::BoundaryAmbiguous {
                        what: "scalar comparison".into(),
                        distance: (av - bv).abs(),
                        bound: gap,
                    })
                } else if av < bv {
                    Ok(Ordering::Less)
                } else {
                    Ok(Ordering::Greater)
                }
            }
        }
    }

    pub fn lt(&self, other: &Scalar) -> Result<bool, Error> {
        Ok(self.cmp_certified(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &Scalar) -> Result<bool, Error> {
        Ok(self.cmp_certified(other)? != Ordering::Greater)
    }

    pub fn ge(&self, other: &Scalar) -> Result<bool, Error> {
        Ok(self.cmp_certified(other)? != Ordering::Less)
    }

    /// Exact equality test; false for any approximate operand.
    pub fn eq_exact(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx { .. } => false,
        }
    }

    /// `⌊self⌋` as an exact integer scalar; ambiguous when an approximate
    /// value sits within `err` of an integer.
    pub fn floor(&self) -> Result<Scalar, Error> {
        Ok(Scalar::Exact(Rational::from_integer(self.floor_int()?)))
    }

    /// `⌊self⌋` as a `BigInt`.
    pub fn floor_int(&self) -> Result<BigInt, Error> {
        match self {
            Scalar::Exact(r) => Ok(r.floor().to_integer()),
            Scalar::Approx { value, err } => {
                let f = value.floor();
                let frac = value - f;
                let gap = err + slop(*value);
                // Ambiguous when the interval [value−gap, value+gap]
                // straddles an integer.
                if frac <= gap || 1.0 - frac <= gap {
                    return Err(Error::BoundaryAmbiguous {
                        what: "floor near integer".into(),
                        distance: frac.min(1.0 - frac),
                        bound: gap,
                    });
                }
                BigInt::from_f64(f).ok_or(Error::BoundaryAmbiguous {
                    what: "floor of non-finite value".into(),
                    distance: f64::NAN,
                    bound: gap,
                })
            }
        }
    }

    /// Fractional part `{self} = self − ⌊self⌋ ∈ [0,1)`.
    pub fn fract(&self) -> Result<Scalar, Error> {
        Ok(self.sub(&self.floor()?))
    }

    /// Midpoint `(self+other)/2`.
    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        self.add(other).div(&Scalar::from_int(2))
    }

    /// Lossless display: exact rationals as `p/q` (or integer), approximate
    /// values in decimal.
    pub fn display(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.to_integer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Approx { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Approx { value: a, err: ea }, Scalar::Approx { value: b, err: eb }) => {
                a == b && ea == eb
            }
            _ => false,
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Exact rational helper: reduced `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
