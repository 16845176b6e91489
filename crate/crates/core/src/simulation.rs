//! Orbit iteration, attractor classification near E2 and θ sweeps.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fixed_points::{e2, existence_case, ExistenceCase, FixedPointRecord};
use crate::model::{step, Parameters, State};
use crate::stability::{classify_fixed_point, StabilityClass};

pub const EPS_CONV: f64 = 1e-3;
pub const EPS_CURVE: f64 = 1e-3;
pub const BOX_MIN: f64 = -1.0;
pub const BOX_MAX: f64 = 10.0;

pub fn default_transient(n: usize) -> usize {
    n / 2
}

fn in_box(s: &State) -> bool {
    s.is_finite() && (BOX_MIN..=BOX_MAX).contains(&s.u()) && (BOX_MIN..=BOX_MAX).contains(&s.v())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitResult {
    pub initial: State,
    pub params: Parameters,
    pub n: usize,
    pub transient: usize,
    /// States s_k for transient ≤ k < n (or up to the escape).
    pub tail: Vec<State>,
    pub escaped: bool,
    /// Index k of the first state outside the box.
    pub escape_step: Option<usize>,
}

impl OrbitResult {
    /// Orbit index of `tail[i]`.
    pub fn index_of(&self, i: usize) -> usize {
        self.transient + i
    }
}

/// Iterate s_0 = initial, s_{k+1} = V(s_k) for k < n − 1 and keep s_k with k ≥ transient.
///
/// Stops at the first state that leaves [−1, 10]² or overflows.
pub fn orbit(params: &Parameters, initial: State, n: usize, transient: usize) -> OrbitResult {
    assert!(n > transient, "n = {n} must exceed transient = {transient}");
    let mut tail = Vec::with_capacity(n - transient);
    let mut escape_step = None;
    let mut s = initial;
    for k in 0..n {
        if k > 0 {
            match step(params, &s) {
                Ok(next) => s = next,
                Err(_) => {
                    escape_step = Some(k);
                    break;
                }
            }
        }
        if !in_box(&s) {
            escape_step = Some(k);
            break;
        }
        if k >= transient {
            tail.push(s);
        }
    }
    OrbitResult {
        initial,
        params: *params,
        n,
        transient,
        tail,
        escaped: escape_step.is_some(),
        escape_step,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttractorKind {
    ConvergedToPoint,
    ClosedCurve,
    Escaped,
    Unresolved,
}

impl AttractorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttractorKind::ConvergedToPoint => "ConvergedToPoint",
            AttractorKind::ClosedCurve => "ClosedCurve",
            AttractorKind::Escaped => "Escaped",
            AttractorKind::Unresolved => "Unresolved",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            AttractorKind::ConvergedToPoint,
            AttractorKind::ClosedCurve,
            AttractorKind::Escaped,
            AttractorKind::Unresolved,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

impl fmt::Display for AttractorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttractorSummary {
    pub kind: AttractorKind,
    pub reference: FixedPointRecord,
    /// Euclidean distances of the tail to the reference; `None` for an empty tail.
    pub min_distance: Option<f64>,
    pub max_distance: Option<f64>,
    pub mean_distance: Option<f64>,
    /// First orbit index from which every retained state stays within ε_conv.
    pub convergence_step: Option<usize>,
}

pub fn attractor_summary(orbit: &OrbitResult, reference: &FixedPointRecord) -> AttractorSummary {
    let target = State::raw(reference.u, reference.v);
    let dist: Vec<f64> = orbit.tail.iter().map(|s| s.distance(&target)).collect();
    let (min, max, mean) = if dist.is_empty() {
        (None, None, None)
    } else {
        let min = dist.iter().copied().fold(f64::INFINITY, f64::min);
        let max = dist.iter().copied().fold(0.0, f64::max);
        (Some(min), Some(max), Some(dist.iter().sum::<f64>() / dist.len() as f64))
    };

    let kind = if orbit.escaped {
        AttractorKind::Escaped
    } else if max.is_some_and(|m| m < EPS_CONV) {
        AttractorKind::ConvergedToPoint
    } else if min.is_some_and(|m| m > EPS_CURVE) {
        AttractorKind::ClosedCurve
    } else {
        AttractorKind::Unresolved
    };

    let convergence_step = (kind == AttractorKind::ConvergedToPoint).then(|| {
        let within = dist.iter().rev().take_while(|&&d| d < EPS_CONV).count();
        orbit.index_of(dist.len() - within)
    });

    AttractorSummary {
        kind,
        reference: *reference,
        min_distance: min,
        max_distance: max,
        mean_distance: mean,
        convergence_step,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta: f64,
    pub case: Option<ExistenceCase>,
    pub e2: Option<FixedPointRecord>,
    pub stability: Option<StabilityClass>,
    pub orbit: Option<OrbitResult>,
    pub summary: Option<AttractorSummary>,
    /// Failure recorded for this row, if any.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub c: f64,
    pub beta: f64,
    pub r: f64,
    pub initial: State,
    pub n: usize,
    pub transient: usize,
    pub rows: Vec<SweepRow>,
}

fn sweep_row(c: f64, beta: f64, r: f64, theta: f64, initial: State, n: usize, transient: usize) -> SweepRow {
    let mut row = SweepRow {
        theta,
        case: None,
        e2: None,
        stability: None,
        orbit: None,
        summary: None,
        error: None,
    };
    let params = match Parameters::new(c, beta, r, theta) {
        Ok(p) => p,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.case = Some(existence_case(&params));
    row.e2 = e2(&params);
    if let Some(fp) = &row.e2 {
        match classify_fixed_point(&params, fp) {
            Ok(rep) => row.stability = Some(rep.class),
            Err(e) => row.error = Some(e.to_string()),
        }
    }
    let orb = orbit(&params, initial, n, transient);
    row.summary = row.e2.as_ref().map(|fp| attractor_summary(&orb, fp));
    row.orbit = Some(orb);
    row
}

/// One row per θ, in grid order; rows are computed in parallel.
pub fn sweep_theta(
    c: f64,
    beta: f64,
    r: f64,
    theta_grid: &[f64],
    initial: State,
    n: usize,
    transient: usize,
) -> SweepResult {
    assert!(!theta_grid.is_empty(), "empty theta grid");
    assert!(n > transient, "n = {n} must exceed transient = {transient}");
    let rows = theta_grid
        .par_iter()
        .map(|&theta| sweep_row(c, beta, r, theta, initial, n, transient))
        .collect();
    SweepResult { c, beta, r, initial, n, transient, rows }
}
