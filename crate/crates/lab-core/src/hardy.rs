//! Hardy-inequality checker on the half-line.

use crate::error::{LabError, Result};
use crate::field::Field;
use crate::norms::weighted_lp_norm;
use crate::ops::trace;
use crate::quad::QuadratureSpec;

#[derive(Debug, Clone, Copy)]
pub struct HardyCheck {
    /// ||u||_{L^p(w_{gamma-p})}
    pub lhs: f64,
    /// ||u'||_{L^p(w_gamma)}
    pub rhs: f64,
    pub ratio: f64,
}

/// Checks the hypotheses of the half-line Hardy inequality and records the
/// observed constant lhs/rhs.
///
/// Hypotheses: gamma < p-1 with vanishing trace, or gamma > p-1. The
/// critical exponent gamma = p-1 is rejected; the divergence of the observed
/// constant there is probed by [`hardy_ratio_unchecked`].
pub fn hardy_check(u: &Field, p: f64, gamma: f64, quad: &QuadratureSpec) -> Result<HardyCheck> {
    if u.d != 1 {
        return Err(LabError::InvalidParameter("hardy_check is one-dimensional".into()));
    }
    if (gamma - (p - 1.0)).abs() < 1e-12 {
        return Err(LabError::HypothesisViolated(format!(
            "gamma = p - 1 = {gamma}: Hardy's inequality fails at the critical exponent"
        )));
    }
    if gamma < p - 1.0 && !u.is_zero() {
        let tr = trace(u, 0, 1e-6)?;
        if tr.value.norm() > 1e-8 {
            return Err(LabError::HypothesisViolated(format!(
                "gamma < p-1 requires Tr(u) = 0, got |Tr u| = {:.3e}",
                tr.value.norm()
            )));
        }
    }
    hardy_ratio_unchecked(u, p, gamma, quad)
}

/// The two Hardy norms without hypothesis checks (used to exhibit the
/// divergence along gamma = p-1).
pub fn hardy_ratio_unchecked(
    u: &Field,
    p: f64,
    gamma: f64,
    quad: &QuadratureSpec,
) -> Result<HardyCheck> {
    if u.is_zero() {
        return Ok(HardyCheck { lhs: 0.0, rhs: 0.0, ratio: 0.0 });
    }
    let du = u.derivative(&[1])?;
    let lhs = crate::norms::weighted_lp_norm_vanishing(u, p, gamma - p, quad)?;
    let rhs = weighted_lp_norm(&du, p, gamma, quad)?;
    let ratio = if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    };
    Ok(HardyCheck { lhs, rhs, ratio })
}

/// Classical constant p / |gamma - p + 1|, a sanity ceiling for the observed
/// ratios (not asserted as sharp).
pub fn classical_hardy_ceiling(p: f64, gamma: f64) -> f64 {
    p / (gamma - p + 1.0).abs()
}
