use thiserror::Error;

use crate::stability::StabilityClass;
use crate::fixed_points::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("parameter `{name}` must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },

    #[error("state ({u}, {v}) must be finite and non-negative")]
    InvalidState { u: f64, v: f64 },

    #[error("map produced a non-finite state from ({u}, {v})")]
    NonFiniteResult { u: f64, v: f64 },

    #[error("u = {u} is not a positive fixed point abscissa (quadratic residual {residual:e})")]
    NotAFixedPoint { u: f64, residual: f64 },

    #[error("classifier disagreement at {label}: root-location path says {analytic}, eigenvalue path says {eigen}")]
    ClassifierDisagreement {
        label: Label,
        analytic: StabilityClass,
        eigen: StabilityClass,
    },

    #[error("no critical theta found in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("positive fixed point E2 does not exist at theta = {theta}")]
    ExistenceLost { theta: f64 },

    #[error("p(u*) = {p} >= 2 at theta0 = {theta0}; no conjugate pair on the unit circle")]
    PConditionFailed { theta0: f64, p: f64 },

    #[error("perturbation {theta_pert} gives real eigenvalues (4b - a^2 = {gap:e})")]
    RealEigenvalues { theta_pert: f64, gap: f64 },

    #[error("perturbation {theta_pert} exceeds the guard 0.1*theta0 = {limit}")]
    PerturbationTooLarge { theta_pert: f64, limit: f64 },

    #[error("transversality derivative {derivative} vanishes")]
    TransversalityFailed { derivative: f64 },

    #[error("strong resonance: critical eigenvalue is a root of unity of order {order}")]
    StrongResonance { order: u32 },

    #[error("discriminating quantity L = {l:e} is degenerate")]
    DegenerateL { l: f64 },
}
