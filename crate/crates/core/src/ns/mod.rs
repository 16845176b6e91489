//! Neimark–Sacker analysis of E2 with θ as the bifurcation parameter.
//!
//! Two routes produce the normal-form quantities. The exact route expands the map,
//! pushes the expansion through the eigenvector basis and evaluates L from the
//! resulting partial derivatives; it decides the verdict. The reference route
//! evaluates a set of simplified closed forms verbatim, including their known
//! slips, and is kept for comparison.

pub mod critical;
pub mod lyapunov;
pub mod normal_form;
pub mod poly;
pub mod taylor;

use serde::{Deserialize, Serialize};

pub use critical::{
    critical_eigenvalues, nondegeneracy, perturbed_jacobian, perturbed_trace_det,
    resonance_order, solve_theta0, transversality, CriticalPoint,
};
pub use lyapunov::{
    discriminating_quantity, l_coefficients, lyapunov_quantities, reference_l_coefficients,
    LCoefficients, LyapunovSummary, Verdict,
};
pub use normal_form::{normal_form, reference_normal_form, NormalFormData};
pub use taylor::{reference_taylor_coefficients, shifted_map, taylor_coefficients, TaylorCoefficients};

use crate::error::{Error, Result};
use crate::model::Complex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NsReport {
    pub critical: CriticalPoint,
    /// Critical eigenvalue with negative imaginary part.
    pub lambda1: Complex,
    pub lambda2: Complex,
    /// d|λ|/dθ* at θ* = 0
    pub d_modulus: f64,
    pub nondegenerate: bool,
    pub exact: LyapunovSummary,
    pub reference: LyapunovSummary,
    /// Verdict of the exact route.
    pub verdict: Verdict,
    /// Whether both routes give L of the same sign.
    pub routes_agree: bool,
}

/// Full pipeline: θ0, transversality, nondegeneracy, normal form, L.
pub fn ns_report(c: f64, beta: f64, r: f64, interval: (f64, f64)) -> Result<NsReport> {
    let cp = solve_theta0(c, beta, r, interval)?;
    let d_modulus = transversality(&cp);
    if !(d_modulus != 0.0 && d_modulus.is_finite()) {
        return Err(Error::TransversalityFailed { derivative: d_modulus });
    }
    let (lambda1, lambda2) = cp.eigenpair();
    if let Some(order) = resonance_order(lambda1) {
        return Err(Error::StrongResonance { order });
    }

    let exact_tc = taylor_coefficients(&cp);
    let exact = lyapunov_quantities(&cp, &normal_form(&cp, &exact_tc))?;

    let ref_tc = reference_taylor_coefficients(&cp);
    let reference = LyapunovSummary::new(&cp, reference_l_coefficients(&cp, &ref_tc));

    Ok(NsReport {
        lambda1,
        lambda2,
        d_modulus,
        nondegenerate: true,
        verdict: exact.verdict,
        routes_agree: exact.l.signum() == reference.l.signum(),
        exact,
        reference,
        critical: cp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_report() {
        let rep = ns_report(1.0, 4.0, 10.0 / 9.0, (0.1, 1.0)).unwrap();
        assert!((rep.critical.theta0 - 4.0 / 9.0).abs() < 1e-10);
        assert!((rep.d_modulus + 7.0 / 24.0).abs() < 1e-12);
        assert!(rep.nondegenerate);
        assert!(rep.lambda1.im < 0.0 && rep.lambda2.im > 0.0);
        assert!(rep.exact.l < 0.0 && rep.reference.l < 0.0);
        assert!(rep.routes_agree);
        assert_eq!(rep.verdict, Verdict::AttractingCurve);
    }

    #[test]
    fn gate_failures() {
        assert!(matches!(
            ns_report(1.0, 4.0, 10.0 / 9.0, (0.5, 0.9)),
            Err(Error::NoSignChange { .. })
        ));
        assert!(matches!(
            ns_report(1.0, 1.0, 1.0, (0.1, 1.0)),
            Err(Error::ExistenceLost { .. })
        ));
    }
}
