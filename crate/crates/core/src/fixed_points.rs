//! Fixed points E0–E4 and the existence regimes of the coexistence points.
//!
//! Coexistence points solve v = (1 − u)(1 + cu) together with
//! cθu² − (β − rc − θ)u + r = 0, and are kept only when 0 < u < 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{coexistence_v, Parameters};

/// Relative tolerance on the case-boundary equalities.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    E0,
    E1,
    E2,
    E3,
    E4,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::E0 => "E0",
            Label::E1 => "E1",
            Label::E2 => "E2",
            Label::E3 => "E3",
            Label::E4 => "E4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExistenceCase {
    /// r+θ < β ≤ (r+θ)²/θ and c below (β−r−θ)/(r+θ): one point E2.
    CaseI,
    /// β > (r+θ)²/θ and c below (β−r−θ)/(r+θ): one point E2.
    CaseII,
    /// β > (r+θ)²/θ and c strictly between the two bounds: E2 and E3.
    CaseIII,
    /// β > (r+θ)²/θ and c on the upper bound: the double point E4.
    CaseIV,
    NoPositive,
    /// c = (β−r−θ)/(r+θ): one root of the quadratic is u = 1.
    BoundaryDegenerate,
}

impl ExistenceCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExistenceCase::CaseI => "CaseI",
            ExistenceCase::CaseII => "CaseII",
            ExistenceCase::CaseIII => "CaseIII",
            ExistenceCase::CaseIV => "CaseIV",
            ExistenceCase::NoPositive => "NoPositive",
            ExistenceCase::BoundaryDegenerate => "BoundaryDegenerate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "CaseI" => ExistenceCase::CaseI,
            "CaseII" => ExistenceCase::CaseII,
            "CaseIII" => ExistenceCase::CaseIII,
            "CaseIV" => ExistenceCase::CaseIV,
            "NoPositive" => ExistenceCase::NoPositive,
            "BoundaryDegenerate" => ExistenceCase::BoundaryDegenerate,
            _ => return None,
        })
    }

    /// Whether the smaller root E2 is present.
    pub fn has_e2(&self) -> bool {
        matches!(
            self,
            ExistenceCase::CaseI | ExistenceCase::CaseII | ExistenceCase::CaseIII
        )
    }
}

impl fmt::Display for ExistenceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointRecord {
    pub label: Label,
    pub u: f64,
    pub v: f64,
    pub case: ExistenceCase,
    /// (β − rc − θ)² − 4crθ
    pub discriminant: f64,
}

/// The three thresholds that partition parameter space.
#[derive(Debug, Clone, Copy)]
pub struct Thresholds {
    /// (β − r − θ)/(r + θ)
    pub c_lower: f64,
    /// (β + θ − 2√(βθ))/r
    pub c_upper: f64,
    /// (r + θ)²/θ
    pub beta_split: f64,
}

pub fn thresholds(params: &Parameters) -> Thresholds {
    let (beta, r, theta) = (params.beta(), params.r(), params.theta());
    Thresholds {
        c_lower: (beta - r - theta) / (r + theta),
        c_upper: (beta + theta - 2.0 * (beta * theta).sqrt()) / r,
        beta_split: (r + theta) * (r + theta) / theta,
    }
}

pub fn discriminant(params: &Parameters) -> f64 {
    let (c, beta, r, theta) = (params.c(), params.beta(), params.r(), params.theta());
    let b = beta - r * c - theta;
    b * b - 4.0 * c * r * theta
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= BOUNDARY_TOL * a.abs().max(b.abs())
}

pub fn existence_case(params: &Parameters) -> ExistenceCase {
    let (c, beta, r, theta) = (params.c(), params.beta(), params.r(), params.theta());
    if beta <= r + theta {
        return ExistenceCase::NoPositive;
    }
    let t = thresholds(params);
    if near(c, t.c_lower) {
        return ExistenceCase::BoundaryDegenerate;
    }
    if beta > t.beta_split {
        if near(c, t.c_upper) {
            ExistenceCase::CaseIV
        } else if c < t.c_lower {
            ExistenceCase::CaseII
        } else if c < t.c_upper {
            ExistenceCase::CaseIII
        } else {
            ExistenceCase::NoPositive
        }
    } else if c < t.c_lower {
        ExistenceCase::CaseI
    } else {
        ExistenceCase::NoPositive
    }
}

/// Both roots of the quadratic, smaller first, or `None` when the discriminant is negative.
///
/// The larger-magnitude root is taken from the quadratic formula and the other from
/// the product of roots r/(cθ).
pub fn quadratic_roots(params: &Parameters) -> Option<(f64, f64)> {
    let (c, beta, r, theta) = (params.c(), params.beta(), params.r(), params.theta());
    let a = c * theta;
    let b = beta - r * c - theta;
    let disc = discriminant(params);
    let scale = b * b + 4.0 * c * r * theta;
    let disc = if disc < 0.0 {
        // round-off around a double root
        if disc >= -1e-14 * scale {
            0.0
        } else {
            return None;
        }
    } else {
        disc
    };
    let q = 0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return None;
    }
    let (x1, x2) = (q / a, r / q);
    Some(if x1 <= x2 { (x1, x2) } else { (x2, x1) })
}

fn admissible(u: f64) -> bool {
    // v = (1 - u)(1 + cu) > 0 requires u < 1 strictly
    u > 0.0 && u < 1.0
}

pub fn positive_fixed_points(params: &Parameters) -> Vec<FixedPointRecord> {
    let case = existence_case(params);
    let disc = discriminant(params);
    let record = |label, u: f64| FixedPointRecord {
        label,
        u,
        v: coexistence_v(params, u),
        case,
        discriminant: disc,
    };
    match case {
        ExistenceCase::NoPositive => Vec::new(),
        ExistenceCase::CaseIV => {
            let (beta, r, theta) = (params.beta(), params.r(), params.theta());
            let u_bar = r / (theta.sqrt() * (beta.sqrt() - theta.sqrt()));
            if admissible(u_bar) {
                vec![record(Label::E4, u_bar)]
            } else {
                Vec::new()
            }
        }
        ExistenceCase::BoundaryDegenerate => {
            // one root sits at u = 1 (merging with E1); the other may still be admissible
            let Some((lo, hi)) = quadratic_roots(params) else {
                return Vec::new();
            };
            let other = if (lo - 1.0).abs() < (hi - 1.0).abs() { hi } else { lo };
            if admissible(other) && (other - 1.0).abs() > 1e-6 {
                vec![record(Label::E2, other)]
            } else {
                Vec::new()
            }
        }
        ExistenceCase::CaseI | ExistenceCase::CaseII | ExistenceCase::CaseIII => {
            let Some((lo, hi)) = quadratic_roots(params) else {
                return Vec::new();
            };
            let mut out = Vec::with_capacity(2);
            if admissible(lo) {
                out.push(record(Label::E2, lo));
            }
            if case == ExistenceCase::CaseIII && admissible(hi) && hi > lo {
                out.push(record(Label::E3, hi));
            }
            out
        }
    }
}

pub fn all_fixed_points(params: &Parameters) -> Vec<FixedPointRecord> {
    let case = existence_case(params);
    let disc = discriminant(params);
    let mut out = vec![
        FixedPointRecord { label: Label::E0, u: 0.0, v: 0.0, case, discriminant: disc },
        FixedPointRecord { label: Label::E1, u: 1.0, v: 0.0, case, discriminant: disc },
    ];
    out.extend(positive_fixed_points(params));
    out
}

/// E2 at these parameters, if it exists.
pub fn e2(params: &Parameters) -> Option<FixedPointRecord> {
    positive_fixed_points(params)
        .into_iter()
        .find(|fp| fp.label == Label::E2)
}
