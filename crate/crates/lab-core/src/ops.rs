//! Multiplication, extension and trace operators.

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::field::Field;

/// (M^theta f)(x) = x_1^theta f(x). M^{-theta} inverts M^theta exactly.
pub fn multiply_power(f: &Field, theta: f64) -> Field {
    f.multiply_power(theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Full-line evaluator of the odd/even extension of a half-space field.
#[derive(Debug, Clone)]
pub struct Extended {
    field: Field,
    parity: Parity,
}

/// E_odd f(y) = sign(y_1) f(|y_1|, y~), E_even f(y) = f(|y_1|, y~).
pub fn extend(f: &Field, parity: Parity) -> Extended {
    Extended { field: f.clone(), parity }
}

impl Extended {
    pub fn eval(&self, y: &[f64]) -> Complex64 {
        let mut x = y.to_vec();
        let y1 = y[0];
        x[0] = y1.abs();
        if x[0] == 0.0 {
            x[0] = 1e-300;
        }
        let v = self.field.eval(&x);
        match self.parity {
            Parity::Even => v,
            Parity::Odd => {
                if y1 < 0.0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// d^alpha of the extension away from the interface:
    /// sign(y_1)^(alpha_1 + parity) (d^alpha f)(|y_1|, y~).
    pub fn eval_deriv(&self, alpha: &[usize], y: &[f64]) -> Result<Complex64> {
        let mut x = y.to_vec();
        x[0] = y[0].abs().max(1e-300);
        let v = self.field.derivative(alpha)?.eval(&x);
        let flips = alpha[0] + if self.parity == Parity::Odd { 1 } else { 0 };
        Ok(if y[0] < 0.0 && flips % 2 == 1 { -v } else { v })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

/// A boundary limit extracted by Richardson extrapolation.
#[derive(Debug, Clone, Copy)]
pub struct TraceValue {
    pub value: Complex64,
    pub order: usize,
    pub residual: f64,
}

/// Richardson-extrapolated limit of d_1^order f(x_1, 0~) as x_1 -> 0.
pub fn trace(f: &Field, order: usize, tol: f64) -> Result<TraceValue> {
    f.require_order(order + 1)?;
    trace_at(f, order, &vec![0.0; f.d - 1], tol)
}

/// Trace at a fixed tangential point.
pub fn trace_at(f: &Field, order: usize, x_tang: &[f64], tol: f64) -> Result<TraceValue> {
    let h = 1e-4;
    let mut alpha = vec![0usize; f.d];
    alpha[0] = order;
    let mut x = Vec::with_capacity(f.d);
    x.push(h);
    x.extend_from_slice(x_tang);
    let samples: Vec<Complex64> = (0..3)
        .map(|i| {
            x[0] = h / 2f64.powi(i);
            f.eval_deriv(&alpha, &x)
        })
        .collect();
    // Neville extrapolation to x_1 = 0 assuming an expansion in powers of h
    let l1 = [
        2.0 * samples[1] - samples[0],
        2.0 * samples[2] - samples[1],
    ];
    let l2 = (4.0 * l1[1] - l1[0]) / 3.0;
    let residual = (l2 - l1[1]).norm();
    if !residual.is_finite() || residual > tol {
        return Err(LabError::NoTrace { residual, tol });
    }
    Ok(TraceValue { value: l2, order, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::{AxialProfile, ExpPoly};
    use crate::norms::weighted_lp_norm;
    use crate::quad::QuadratureSpec;

    fn exp_field() -> Field {
        Field::axial(AxialProfile::new(ExpPoly::exp_decay(&[(1.0, 0.0)], 1.0)))
    }

    fn x_exp_field() -> Field {
        Field::axial(AxialProfile::new(ExpPoly::exp_decay(&[(1.0, 1.0)], 1.0)))
    }

    #[test]
    fn multiply_power_definition_and_inverse() {
        let f = exp_field();
        let xf = multiply_power(&f, 1.0);
        assert!((xf.eval(&[1.3]).re - 1.3 * (-1.3f64).exp()).abs() < 1e-14);
        let id = multiply_power(&multiply_power(&f, 0.5), -0.5);
        for &x in &[0.1, 0.7, 2.0, 5.0] {
            assert!((id.eval(&[x]) - f.eval(&[x])).norm() <= 1e-12);
        }
    }

    #[test]
    fn odd_extension_sign() {
        let e = extend(&exp_field(), Parity::Odd);
        let v = e.eval(&[-1.0]);
        assert!((v.re + (-1.0f64).exp()).abs() < 1e-12, "{v}");
        assert!((v.re + 0.36788).abs() < 1e-5);
    }

    #[test]
    fn even_extension_isometry() {
        // ||E_even f||_{L^2(R)} = sqrt(2) ||f||_{L^2(R_+)} = 1 for f = e^{-x}
        let quad = QuadratureSpec::default();
        let f = exp_field();
        let n_half = weighted_lp_norm(&f, 2.0, 0.0, &quad).unwrap();
        let e = extend(&f, Parity::Even);
        // integrate |Ef|^2 over R as both half-lines
        let rule = crate::quad::HalfLineRule::build_with(&quad, 0.0, 40.0).unwrap();
        let full: f64 = rule.integrate(|x| {
            e.eval(&[x]).norm_sqr() + e.eval(&[-x]).norm_sqr()
        });
        assert!((full.sqrt() - 2f64.sqrt() * n_half).abs() < 1e-9);
        assert!((full.sqrt() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn extension_derivative_flip() {
        // d_1 E_even f(y) = sign(y_1) (d_1 f)(|y_1|)
        let f = exp_field();
        let e = extend(&f, Parity::Even);
        let d_pos = e.eval_deriv(&[1], &[0.5]).unwrap();
        let d_neg = e.eval_deriv(&[1], &[-0.5]).unwrap();
        assert!((d_pos + d_neg).norm() <= 1e-12);
        let expect = -(-0.5f64).exp();
        assert!((d_pos.re - expect).abs() < 1e-12);
    }

    #[test]
    fn trace_values() {
        let tol = 1e-8;
        let t = trace(&exp_field(), 0, tol).unwrap();
        assert!((t.value.re - 1.0).abs() < 1e-9);
        let t = trace(&x_exp_field(), 0, tol).unwrap();
        assert!(t.value.norm() < 1e-10);
        let t = trace(&x_exp_field(), 1, tol).unwrap();
        assert!((t.value.re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn trace_missing_orders() {
        let z = Field::axial(AxialProfile::new(crate::axial::Cutoff::witness()));
        assert!(trace(&z, 3, 1e-8).is_err());
    }
}
