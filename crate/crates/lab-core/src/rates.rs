//! Elliptic-regularity rate functions.

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateKind {
    /// Inductive rate: 1 + |lambda|^{-(k-1)+/2} for gamma in (-1, p-1),
    /// 1 + |lambda|^{-k/2} for gamma in (p-1, 2p-1).
    G,
    /// Interpolation-improved rate: 1 for gamma + kp in (-1, 2p-1),
    /// 1 + |lambda|^{-(gamma+kp-2p+1+eps)/(2p)} above.
    H,
}

#[derive(Debug, Clone, Copy)]
pub struct RateFunction {
    pub kind: RateKind,
    pub p: f64,
    pub k: i32,
    pub gamma: f64,
    pub eps: f64,
}

impl RateFunction {
    pub fn g(p: f64, k: i32, gamma: f64) -> Result<RateFunction> {
        if k < 0 {
            return Err(LabError::InvalidParameter("rate g needs k >= 0".into()));
        }
        if !(gamma > -1.0 && gamma < 2.0 * p - 1.0) || (gamma - (p - 1.0)).abs() < 1e-12 {
            return Err(LabError::InvalidParameter(format!(
                "rate g needs gamma in (-1, 2p-1) off p-1, got {gamma}"
            )));
        }
        Ok(RateFunction { kind: RateKind::G, p, k, gamma, eps: 0.0 })
    }

    pub fn h(p: f64, k: i32, gamma: f64, eps: f64) -> Result<RateFunction> {
        if k < 0 || eps <= 0.0 {
            return Err(LabError::InvalidParameter("rate h needs k >= 0 and eps > 0".into()));
        }
        Ok(RateFunction { kind: RateKind::H, p, k, gamma, eps })
    }

    /// The small-|lambda| blow-up exponent of the rate.
    pub fn small_lambda_exponent(&self) -> f64 {
        match self.kind {
            RateKind::G => {
                if self.gamma < self.p - 1.0 {
                    ((self.k - 1).max(0) as f64) / 2.0
                } else {
                    self.k as f64 / 2.0
                }
            }
            RateKind::H => {
                let wk = self.gamma + self.k as f64 * self.p;
                if wk < 2.0 * self.p - 1.0 {
                    0.0
                } else {
                    (wk - 2.0 * self.p + 1.0 + self.eps) / (2.0 * self.p)
                }
            }
        }
    }

    pub fn eval(&self, lambda_abs: f64) -> f64 {
        let e = self.small_lambda_exponent();
        if e == 0.0 {
            // flat branch; the constant 2 normalizes against 1 + |l|^0
            match self.kind {
                RateKind::G => 2.0,
                RateKind::H => 1.0,
            }
        } else {
            1.0 + lambda_abs.powf(-e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_rate_branches() {
        // (2,1,2.5): gamma in (p-1, 2p-1) branch: 1 + |l|^{-1/2}; g(1) = 2
        let g = RateFunction::g(2.0, 1, 2.5).unwrap();
        assert!((g.eval(1.0) - 2.0).abs() < 1e-15);
        assert!((g.eval(0.25) - 3.0).abs() < 1e-15);
        // (2,0,0.5): (k-1)+ = 0: flat, equals 2 at every lambda
        let g = RateFunction::g(2.0, 0, 0.5).unwrap();
        assert_eq!(g.eval(0.01), 2.0);
        assert_eq!(g.eval(100.0), 2.0);
        // (2,1,0.5): gamma in (-1, p-1): (k-1)+ = 0 flat
        let g = RateFunction::g(2.0, 1, 0.5).unwrap();
        assert_eq!(g.small_lambda_exponent(), 0.0);
    }

    #[test]
    fn h_rate_branches() {
        // (2,1,2.5), eps = 0.1: exponent (4.5 - 3 + 0.1)/4 = 0.4
        let h = RateFunction::h(2.0, 1, 2.5, 0.1).unwrap();
        assert!((h.small_lambda_exponent() - 0.4).abs() < 1e-15);
        // bounded window
        let h = RateFunction::h(2.0, 0, 1.5, 0.1).unwrap();
        assert_eq!(h.eval(0.01), 1.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(RateFunction::g(2.0, -1, 0.5).is_err());
        assert!(RateFunction::g(2.0, 0, 1.0).is_err());
        assert!(RateFunction::h(2.0, 0, 0.5, 0.0).is_err());
    }
}
