//! Weighted Lebesgue and Sobolev norms on the half-space.
//!
//! The axial integral uses the boundary-weighted half-line rule with its
//! Jacobi exponent matched to weight power + p * (leading field power), the
//! tangential directions use panel rules over the Gaussian support, and
//! every norm carries the doubled-radius tail certificate.

use crate::error::{LabError, Result};
use crate::field::Field;
use crate::quad::{effective_r_max, line_rule, HalfLineRule, QuadratureSpec, Rule};
use crate::space::{multi_indices, SpaceParams};

/// || f ||_{L^p(R^d_+, w_gamma)}.
///
/// Homogeneous of degree one in f; relative quadrature error bounded by
/// 10 * tail_tol for admissible inputs.
pub fn weighted_lp_norm(f: &Field, p: f64, gamma: f64, quad: &QuadratureSpec) -> Result<f64> {
    if gamma <= -1.0 {
        return Err(LabError::NonIntegrableWeight { gamma });
    }
    weighted_lp_norm_vanishing(f, p, gamma, quad)
}

/// Weighted L^p norm admitting weight exponents <= -1 when the field
/// vanishes fast enough at the boundary (gamma + p sigma_0 > -1), as in the
/// left side of Hardy's inequality.
pub fn weighted_lp_norm_vanishing(
    f: &Field,
    p: f64,
    gamma: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(LabError::InvalidParameter(format!("p = {p}")));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let sigma0 = f.boundary_power();
    let alpha = gamma + p * sigma0;
    if alpha <= -1.0 {
        return Err(LabError::NonIntegrableWeight { gamma: alpha });
    }
    let r_max = effective_r_max(quad.r_max, f.axial_support_radius(), alpha);
    let rule = HalfLineRule::build_aligned(quad, alpha, r_max, &f.axial_knots())?;

    let integral = if f.d == 1 {
        rule.integrate_checked(|x| f.eval(&[x]).norm().powf(p) * x.powf(-p * sigma0))?
    } else {
        let windows = f.tangential_windows();
        let tang: Vec<Rule> = windows
            .iter()
            .map(|&(lo, hi)| {
                let center = 0.5 * (lo + hi);
                let half = 0.5 * (hi - lo);
                line_rule(center, half, 24, quad.n_bulk.max(8))
            })
            .collect();
        rule.integrate_checked(|x1| {
            let inner = tangential_integral(f, x1, &tang, p);
            inner * x1.powf(-p * sigma0)
        })?
    };
    if !integral.is_finite() || integral < 0.0 {
        return Err(LabError::QuadratureDiverged(format!(
            "norm integral evaluated to {integral}"
        )));
    }
    Ok(integral.powf(1.0 / p))
}

fn tangential_integral(f: &Field, x1: f64, tang: &[Rule], p: f64) -> f64 {
    match tang.len() {
        1 => tang[0].integrate(|s| f.eval(&[x1, s]).norm().powf(p)),
        2 => {
            let mut acc = 0.0;
            for (&s1, &w1) in tang[0].nodes.iter().zip(&tang[0].weights) {
                acc += w1 * tang[1].integrate(|s2| f.eval(&[x1, s1, s2]).norm().powf(p));
            }
            acc
        }
        n => unreachable!("tangential dimension {n}"),
    }
}

/// Inhomogeneous Sobolev norm: l^1 sum over |alpha| <= k of the weighted
/// L^p norms of the derivatives, all in the same weight w_gamma.
pub fn weighted_sobolev_norm(f: &Field, sp: &SpaceParams, quad: &QuadratureSpec) -> Result<f64> {
    if sp.k < 0 {
        return Err(LabError::InvalidParameter(
            "Sobolev norm needs k >= 0 (k = -1 is the weak setting)".into(),
        ));
    }
    f.require_order(sp.k as usize)?;
    let mut total = 0.0;
    for alpha in multi_indices(f.d, sp.k as usize) {
        let df = f.derivative(&alpha)?;
        total += weighted_lp_norm(&df, sp.p, sp.gamma, quad)?;
    }
    Ok(total)
}

/// Homogeneous Sobolev norm: order-|alpha| derivatives measured in
/// w_{gamma + |alpha| p}.
pub fn homogeneous_sobolev_norm(
    f: &Field,
    sp: &SpaceParams,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if sp.k < 0 {
        return Err(LabError::InvalidParameter("homogeneous norm needs k >= 0".into()));
    }
    f.require_order(sp.k as usize)?;
    let mut total = 0.0;
    for alpha in multi_indices(f.d, sp.k as usize) {
        let order: usize = alpha.iter().sum();
        let df = f.derivative(&alpha)?;
        total += weighted_lp_norm(&df, sp.p, sp.gamma + order as f64 * sp.p, quad)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::{AxialProfile, ExpPoly};
    use crate::field::Field;
    use crate::special::gamma as gamma_fn;

    fn exp_field() -> Field {
        Field::axial(AxialProfile::new(ExpPoly::exp_decay(&[(1.0, 0.0)], 1.0)))
    }

    fn x_exp_field() -> Field {
        Field::axial(AxialProfile::new(ExpPoly::exp_decay(&[(1.0, 1.0)], 1.0)))
    }

    #[test]
    fn lp_norm_closed_forms() {
        let quad = QuadratureSpec::default();
        let f = exp_field();
        // int e^{-2x} = 1/2
        let n = weighted_lp_norm(&f, 2.0, 0.0, &quad).unwrap();
        assert!((n - 0.5f64.sqrt()).abs() < 1e-10, "{n}");
        // int x e^{-2x} = 1/4
        let n = weighted_lp_norm(&f, 2.0, 1.0, &quad).unwrap();
        assert!((n - 0.5).abs() < 1e-10);
        // int x^{-1/2} e^{-2x} = sqrt(pi/2)
        let n = weighted_lp_norm(&f, 2.0, -0.5, &quad).unwrap();
        let exact = (std::f64::consts::PI / 2.0).sqrt().sqrt();
        assert!((n - exact).abs() < 1e-7, "{n} vs {exact}");
        assert!((n - 1.11951).abs() < 1e-5);
    }

    #[test]
    fn lp_norm_zero_and_guard() {
        let quad = QuadratureSpec::default();
        assert_eq!(weighted_lp_norm(&Field::zero(1), 2.0, 0.0, &quad).unwrap(), 0.0);
        assert!(matches!(
            weighted_lp_norm(&exp_field(), 2.0, -1.0, &quad),
            Err(LabError::NonIntegrableWeight { .. })
        ));
    }

    #[test]
    fn lp_norm_fractional_power_field() {
        // ||x^0.3 e^{-x}||_L2(w_0)^2 = Gamma(1.6) / 2^1.6
        let quad = QuadratureSpec::default();
        let f = Field::axial(AxialProfile::new(ExpPoly::exp_decay(&[(1.0, 0.3)], 1.0)));
        let n = weighted_lp_norm(&f, 2.0, 0.0, &quad).unwrap();
        let exact = (gamma_fn(1.6) / 2f64.powf(1.6)).sqrt();
        assert!(((n - exact) / exact).abs() < 1e-9, "{n} vs {exact}");
    }

    #[test]
    fn sobolev_norm_examples() {
        let quad = QuadratureSpec::default();
        let sp = SpaceParams::new(2.0, 0, 0.0, 1).unwrap();
        let n = weighted_sobolev_norm(&exp_field(), &sp, &quad).unwrap();
        assert!((n - 0.7071068).abs() < 1e-6);

        let sp = SpaceParams::new(2.0, 1, 0.0, 1).unwrap();
        let n = weighted_sobolev_norm(&exp_field(), &sp, &quad).unwrap();
        assert!((n - 1.4142136).abs() < 1e-6);

        // f = x e^{-x}, k=1, gamma=2: ||f|| = sqrt(3)/2, ||f'|| = 1/2
        let sp = SpaceParams::new(2.0, 1, 2.0, 1).unwrap();
        let n = weighted_sobolev_norm(&x_exp_field(), &sp, &quad).unwrap();
        let exact = (3.0f64).sqrt() / 2.0 + 0.5;
        assert!((n - exact).abs() < 1e-9, "{n} vs {exact}");
        assert!((n - 1.3660254).abs() < 1e-6);
    }

    #[test]
    fn sobolev_monotone_in_k_and_reduces_at_k0() {
        let quad = QuadratureSpec::default();
        let f = x_exp_field();
        let n0 = weighted_sobolev_norm(&f, &SpaceParams::new(2.0, 0, 2.0, 1).unwrap(), &quad)
            .unwrap();
        let n1 = weighted_sobolev_norm(&f, &SpaceParams::new(2.0, 1, 2.0, 1).unwrap(), &quad)
            .unwrap();
        let lp = weighted_lp_norm(&f, 2.0, 2.0, &quad).unwrap();
        assert!((n0 - lp).abs() < 1e-12);
        assert!(n1 > n0);
    }

    #[test]
    fn homogeneous_norm_example() {
        let quad = QuadratureSpec::default();
        let sp = SpaceParams::new(2.0, 1, 0.0, 1).unwrap();
        let n = homogeneous_sobolev_norm(&exp_field(), &sp, &quad).unwrap();
        // ||f||_{L2(w0)} + ||f'||_{L2(w2)} = 1/sqrt(2) + 1/2
        assert!((n - 1.2071068).abs() < 1e-6, "{n}");
    }

    #[test]
    fn homogeneous_scaling_law() {
        // each |alpha|-term of f_r(x) = f(rx) rescales by r^(|a| - (gamma+|a|p+1)/p)
        let quad = QuadratureSpec::default();
        let f = x_exp_field();
        let r = 2.0;
        let fr = f.scaled_arg(r);
        let (p, gamma) = (2.0, 0.5);
        for order in 0..=1usize {
            let g = gamma + order as f64 * p;
            let a = weighted_lp_norm(&fr.derivative(&[order]).unwrap(), p, g, &quad).unwrap();
            let b = weighted_lp_norm(&f.derivative(&[order]).unwrap(), p, g, &quad).unwrap();
            let expect = r.powf(order as f64 - (g + 1.0) / p);
            assert!(((a / b) - expect).abs() < 1e-9, "order {order}: {} vs {expect}", a / b);
        }
    }

    #[test]
    fn norm_2d_factorizes_for_separable() {
        use crate::tangential::GaussFactor;
        let quad = QuadratureSpec::default();
        let axial = AxialProfile::new(ExpPoly::exp_decay(&[(1.0, 1.0)], 1.0));
        let f2 = Field::separable(axial.clone(), vec![GaussFactor::gaussian(1.0, 0.0)]);
        let n2 = weighted_lp_norm(&f2, 2.0, 1.0, &quad).unwrap();
        let n_ax = weighted_lp_norm(&Field::axial(axial), 2.0, 1.0, &quad).unwrap();
        // ||e^{-s^2/4}||_{L^2(R)} = (2 pi)^(1/4)
        let n_tan = (2.0 * std::f64::consts::PI).sqrt().sqrt();
        assert!(((n2 - n_ax * n_tan) / n2).abs() < 1e-9, "{n2} vs {}", n_ax * n_tan);
    }
}
