//! Stability of fixed points.
//!
//! Two independent paths are computed for every fixed point: the root-location
//! conditions on F(λ) = λ² + Bλ + C (with B = −p, C = q), and the moduli of the
//! eigenvalues themselves. They must agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed_points::{FixedPointRecord, Label};
use crate::model::{jacobian, jacobian_at_fixed, Complex, Matrix2, Parameters, State};

/// Band for ||λ| − 1| and for the equality branches of the root-location test.
pub const HYPERBOLICITY_TOL: f64 = 1e-9;

/// Disagreements between the two paths are tolerated inside this band around the unit circle.
pub const ADJACENT_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilityClass {
    Attracting,
    Repelling,
    Saddle,
    NonHyperbolic,
}

impl StabilityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            StabilityClass::Attracting => "attracting",
            StabilityClass::Repelling => "repelling",
            StabilityClass::Saddle => "saddle",
            StabilityClass::NonHyperbolic => "non-hyperbolic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "attracting" => StabilityClass::Attracting,
            "repelling" => StabilityClass::Repelling,
            "saddle" => StabilityClass::Saddle,
            "non-hyperbolic" => StabilityClass::NonHyperbolic,
            _ => return None,
        })
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the companion root lies when λ = 1 is a root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Companion {
    Inside,
    OnCircle,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootTag {
    BothInside,
    BothOutside,
    OneInOneOut,
    RootAtMinusOne,
    ConjugateOnCircle,
    DoubleMinusOne,
    RootAtOne(Companion),
    OneOutsideOtherInside,
    OneOutsideOtherBeyondMinusOne,
    OneOutsideOtherAtMinusOne,
}

impl RootTag {
    pub fn class(&self) -> StabilityClass {
        use StabilityClass::*;
        match self {
            RootTag::BothInside => Attracting,
            RootTag::BothOutside | RootTag::OneOutsideOtherBeyondMinusOne => Repelling,
            RootTag::OneInOneOut | RootTag::OneOutsideOtherInside => Saddle,
            RootTag::RootAtMinusOne
            | RootTag::ConjugateOnCircle
            | RootTag::DoubleMinusOne
            | RootTag::RootAtOne(_)
            | RootTag::OneOutsideOtherAtMinusOne => NonHyperbolic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootLocation {
    pub tag: RootTag,
    /// F(1) = 1 + B + C
    pub f_one: f64,
    /// F(−1) = 1 − B + C
    pub f_minus_one: f64,
    pub c: f64,
}

fn zero(x: f64) -> bool {
    x.abs() <= HYPERBOLICITY_TOL
}

/// Root location of λ² + Bλ + C relative to the unit circle, from F(±1) and C.
pub fn classify_roots(b: f64, c: f64) -> RootLocation {
    let f_one = 1.0 + b + c;
    let f_minus_one = 1.0 - b + c;
    let tag = if zero(f_one) {
        // the other root equals C
        let m = c.abs() - 1.0;
        RootTag::RootAtOne(if zero(m) {
            Companion::OnCircle
        } else if m < 0.0 {
            Companion::Inside
        } else {
            Companion::Outside
        })
    } else if f_one > 0.0 {
        if zero(f_minus_one) {
            if zero(b - 2.0) {
                RootTag::DoubleMinusOne
            } else {
                RootTag::RootAtMinusOne
            }
        } else if f_minus_one < 0.0 {
            RootTag::OneInOneOut
        } else if zero(c - 1.0) && b > -2.0 && b < 2.0 {
            RootTag::ConjugateOnCircle
        } else if c < 1.0 {
            RootTag::BothInside
        } else {
            RootTag::BothOutside
        }
    } else if zero(f_minus_one) {
        RootTag::OneOutsideOtherAtMinusOne
    } else if f_minus_one < 0.0 {
        RootTag::OneOutsideOtherBeyondMinusOne
    } else {
        RootTag::OneOutsideOtherInside
    };
    RootLocation { tag, f_one, f_minus_one, c }
}

/// Coefficients (p, q) of λ² − pλ + q at a coexistence fixed point.
pub fn char_poly(params: &Parameters, u_star: f64) -> Result<(f64, f64)> {
    params.check_fixed_abscissa(u_star)?;
    let (c, beta, theta) = (params.c(), params.beta(), params.theta());
    let u = u_star;
    let den = 1.0 + c * u;
    let k = (1.0 - u) * (1.0 + 2.0 * c * u) / den;
    let p = k + 1.0;
    let q = k + u * (1.0 - u) * (beta / (den * den) - theta);
    Ok((p, q))
}

/// Eigenvalues of a real 2×2 matrix. A real pair comes in descending order; a
/// complex pair comes with the non-negative imaginary part first.
pub fn eigenvalues(m: &Matrix2) -> (Complex, Complex) {
    let tr = m.trace();
    let det = m.det();
    let half = 0.5 * tr;
    // discriminant of λ² − tr·λ + det, computed from the entries to limit cancellation
    let d = 0.25 * (m.a11 - m.a22) * (m.a11 - m.a22) + m.a12 * m.a21;
    if d >= 0.0 {
        let s = d.sqrt();
        let big = if half >= 0.0 { half + s } else { half - s };
        let small = if big != 0.0 { det / big } else { 0.0 };
        let (hi, lo) = if big >= small { (big, small) } else { (small, big) };
        (Complex::new(hi, 0.0), Complex::new(lo, 0.0))
    } else {
        let w = (-d).sqrt();
        (Complex::new(half, w), Complex::new(half, -w))
    }
}

/// Definition-style classification from eigenvalue moduli.
pub fn class_from_moduli(l1: Complex, l2: Complex) -> StabilityClass {
    let (m1, m2) = (l1.norm(), l2.norm());
    if (m1 - 1.0).abs().min((m2 - 1.0).abs()) <= HYPERBOLICITY_TOL {
        StabilityClass::NonHyperbolic
    } else if m1 < 1.0 && m2 < 1.0 {
        StabilityClass::Attracting
    } else if m1 > 1.0 && m2 > 1.0 {
        StabilityClass::Repelling
    } else {
        StabilityClass::Saddle
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub label: Label,
    pub u: f64,
    pub v: f64,
    /// Reported class. Equals `analytic_class` unless the two paths differ inside
    /// the adjacent band, where the eigenvalue class is reported.
    pub class: StabilityClass,
    pub analytic_class: StabilityClass,
    pub eigen_class: StabilityClass,
    pub eigenvalues: (Complex, Complex),
    /// trace and determinant of the Jacobian
    pub p: f64,
    pub q: f64,
    pub root_location: RootLocation,
    /// For E2 on the unit circle: whether p(u*) < 2 holds.
    pub conjugate_precondition: Option<bool>,
}

fn band_class(x: f64, below: StabilityClass, above: StabilityClass) -> StabilityClass {
    if zero(x) {
        StabilityClass::NonHyperbolic
    } else if x < 0.0 {
        below
    } else {
        above
    }
}

pub fn classify_fixed_point(params: &Parameters, fp: &FixedPointRecord) -> Result<StabilityReport> {
    use StabilityClass::*;
    let (c, beta, r, theta) = (params.c(), params.beta(), params.r(), params.theta());
    let (jac, p, q) = match fp.label {
        Label::E0 | Label::E1 => {
            let j = jacobian(params, &State::raw(fp.u, fp.v));
            (j, j.trace(), j.det())
        }
        Label::E2 | Label::E3 | Label::E4 => {
            let j = jacobian_at_fixed(params, fp.u)?;
            let (p, q) = char_poly(params, fp.u)?;
            (j, p, q)
        }
    };
    let root_location = classify_roots(-p, q);
    let mut conjugate_precondition = None;
    let analytic_class = match fp.label {
        Label::E0 => band_class(r - 2.0, Saddle, Repelling),
        Label::E1 => {
            let lo = beta / (1.0 + c);
            let x = r + theta;
            if zero(x - lo) || zero(x - lo - 2.0) {
                NonHyperbolic
            } else if lo < x && x < lo + 2.0 {
                Attracting
            } else {
                Saddle
            }
        }
        Label::E2 => {
            let class = band_class(q - 1.0, Attracting, Repelling);
            if class == NonHyperbolic {
                conjugate_precondition = Some(p < 2.0);
            }
            class
        }
        Label::E3 => band_class(root_location.f_minus_one, Repelling, Saddle),
        Label::E4 => NonHyperbolic,
    };
    let eigenvalues = eigenvalues(&jac);
    let eigen_class = class_from_moduli(eigenvalues.0, eigenvalues.1);

    let class = if analytic_class == eigen_class {
        analytic_class
    } else {
        let gap = (eigenvalues.0.norm() - 1.0)
            .abs()
            .min((eigenvalues.1.norm() - 1.0).abs());
        let either_nh = analytic_class == NonHyperbolic || eigen_class == NonHyperbolic;
        if either_nh && gap <= ADJACENT_BAND {
            eigen_class
        } else {
            return Err(Error::ClassifierDisagreement {
                label: fp.label,
                analytic: analytic_class,
                eigen: eigen_class,
            });
        }
    };

    Ok(StabilityReport {
        label: fp.label,
        u: fp.u,
        v: fp.v,
        class,
        analytic_class,
        eigen_class,
        eigenvalues,
        p,
        q,
        root_location,
        conjugate_precondition,
    })
}
