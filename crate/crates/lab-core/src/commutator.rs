//! Commutator identities between derivatives, the coordinate multiplier and
//! the Dirichlet/Neumann resolvents.

use num_complex::Complex64;

use crate::cx::c;
use crate::error::Result;
use crate::field::Field;
use crate::norms::weighted_lp_norm;
use crate::quad::QuadratureSpec;
use crate::resolvent::{resolvent_apply, LaplaceCfg};
use crate::sampled::sample_profile;
use crate::space::Bc;

/// Laplace preset for the nested commutator chains: a dense time grid (the
/// identity needs ~3e-7 per resolvent) over the lean convolution rule.
pub fn commutator_laplace_cfg() -> LaplaceCfg {
    LaplaceCfg {
        t_lo_eps: 1e-8,
        t_hi_factor: 42.0,
        panels_per_unit: 2.0,
        n_per_panel: 12,
        conv: crate::semigroup::ConvCfg::fine(),
    }
}

#[derive(Debug, Clone)]
pub struct CommutatorResidual {
    pub identity: String,
    /// || residual ||_{L^p(w)} / || u ||_{L^p(w)}
    pub relative: f64,
}

/// Sample a field's axial profiles onto splines (orders 0..=max_order) so a
/// second resolvent application stays affordable.
fn sampled_field(f: &Field, max_order: usize, x_max: f64, n: usize) -> Field {
    Field {
        d: f.d,
        terms: f
            .terms
            .iter()
            .map(|t| crate::field::Term {
                coeff: t.coeff,
                axial: sample_profile(&t.axial, max_order, x_max, n),
                tangential: t.tangential.clone(),
            })
            .collect(),
    }
}

fn relative_norm(
    res: &Field,
    u_norm: f64,
    p: f64,
    gamma: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    Ok(weighted_lp_norm(res, p, gamma, quad)? / u_norm)
}

/// The Dirichlet commutator suite at a resolvent point z:
///   (i)   [d_j, R(z, Lap_Dir)] u = 0 for tangential j,
///   (ii)  [d_1^2, R(z, Lap_Dir)] u = 0,
///   (iii) [M d_1^l, R] u = -2 R d_1^{l+1} R u for l in {0, 1}.
///
/// u must be axially compactly supported in (0, inf).
pub fn dirichlet_commutator_suite(
    z: Complex64,
    u: &Field,
    p: f64,
    gamma: f64,
    lcfg: &LaplaceCfg,
    quad: &QuadratureSpec,
) -> Result<Vec<CommutatorResidual>> {
    let mut out = Vec::new();
    let u_norm = weighted_lp_norm(u, p, gamma, quad)?;
    let ru = resolvent_apply(Bc::Dirichlet, z, u, lcfg)?;

    // (i) tangential derivatives commute
    if u.d >= 2 {
        let mut alpha = vec![0; u.d];
        alpha[1] = 1;
        let lhs = ru.derivative(&alpha)?;
        let rhs = resolvent_apply(Bc::Dirichlet, z, &u.derivative(&alpha)?, lcfg)?;
        let res = lhs.add_scaled(&rhs, c(-1.0));
        out.push(CommutatorResidual {
            identity: "[d_2, R(z,Dir)] u".into(),
            relative: relative_norm(&res, u_norm, p, gamma, quad)?,
        });
    }

    // (ii) axial second derivative commutes
    {
        let mut alpha = vec![0; u.d];
        alpha[0] = 2;
        let lhs = ru.derivative(&alpha)?;
        let rhs = resolvent_apply(Bc::Dirichlet, z, &u.derivative(&alpha)?, lcfg)?;
        let res = lhs.add_scaled(&rhs, c(-1.0));
        out.push(CommutatorResidual {
            identity: "[d_1^2, R(z,Dir)] u".into(),
            relative: relative_norm(&res, u_norm, p, gamma, quad)?,
        });
    }

    // (iii) [M d_1^l, R] u = -2 R d_1^{l+1} R u; sample R u once at order 2
    // and let both chains ride the same spline
    let x_max = ru.axial_support_radius().min(45.0);
    let ru_s = sampled_field(&ru, 2, x_max, 1700);
    for l in 0..=1usize {
        let mut alpha = vec![0; u.d];
        alpha[0] = l;
        let du = u.derivative(&alpha)?;
        let lhs_a = ru.derivative(&alpha)?.multiply_power(1.0);
        let lhs_b = resolvent_apply(Bc::Dirichlet, z, &du.multiply_power(1.0), lcfg)?;
        let mut alpha1 = vec![0; u.d];
        alpha1[0] = l + 1;
        let inner = ru_s.derivative(&alpha1)?;
        let rhs = resolvent_apply(Bc::Dirichlet, z, &inner, lcfg)?.scaled(c(-2.0));
        let res = lhs_a.add_scaled(&lhs_b, c(-1.0)).add_scaled(&rhs, c(-1.0));
        out.push(CommutatorResidual {
            identity: format!("[M d_1^{l}, R(z,Dir)] u + 2 R d_1^{} R u", l + 1),
            relative: relative_norm(&res, u_norm, p, gamma, quad)?,
        });
    }
    Ok(out)
}

/// The Neumann commutator suite:
///   (i)   [d_j, R(z, Lap_Neu)] u = 0 for tangential j,
///   (ii)  [d_1^2, R(z, Lap_Neu)] u = 0,
///   (iii) d_1 R(z, Lap_Neu) u = R(z, Lap_Dir) d_1 u.
///
/// d_1 u must be compactly supported in (0, inf).
pub fn neumann_commutator_suite(
    z: Complex64,
    u: &Field,
    p: f64,
    gamma: f64,
    lcfg: &LaplaceCfg,
    quad: &QuadratureSpec,
) -> Result<Vec<CommutatorResidual>> {
    let mut out = Vec::new();
    let u_norm = weighted_lp_norm(u, p, gamma, quad)?;
    let ru = resolvent_apply(Bc::Neumann, z, u, lcfg)?;

    if u.d >= 2 {
        let mut alpha = vec![0; u.d];
        alpha[1] = 1;
        let lhs = ru.derivative(&alpha)?;
        let rhs = resolvent_apply(Bc::Neumann, z, &u.derivative(&alpha)?, lcfg)?;
        let res = lhs.add_scaled(&rhs, c(-1.0));
        out.push(CommutatorResidual {
            identity: "[d_2, R(z,Neu)] u".into(),
            relative: relative_norm(&res, u_norm, p, gamma, quad)?,
        });
    }
    {
        let mut alpha = vec![0; u.d];
        alpha[0] = 2;
        let lhs = ru.derivative(&alpha)?;
        let rhs = resolvent_apply(Bc::Neumann, z, &u.derivative(&alpha)?, lcfg)?;
        let res = lhs.add_scaled(&rhs, c(-1.0));
        out.push(CommutatorResidual {
            identity: "[d_1^2, R(z,Neu)] u".into(),
            relative: relative_norm(&res, u_norm, p, gamma, quad)?,
        });
    }
    {
        let mut alpha = vec![0; u.d];
        alpha[0] = 1;
        let lhs = ru.derivative(&alpha)?;
        let rhs = resolvent_apply(Bc::Dirichlet, z, &u.derivative(&alpha)?, lcfg)?;
        let res = lhs.add_scaled(&rhs, c(-1.0));
        out.push(CommutatorResidual {
            identity: "d_1 R(z,Neu) u - R(z,Dir) d_1 u".into(),
            relative: relative_norm(&res, u_norm, p, gamma, quad)?,
        });
    }
    Ok(out)
}

/// Base commutation relation [M^j d^a, Lap] u = -j(j-1) M^{j-2} d^a u
/// - 2 j M^{j-1} d_1 d^a u, checked pointwise on smooth fields.
pub fn base_commutation_residual(u: &Field, j: u32, xs: &[f64]) -> Result<f64> {
    assert_eq!(u.d, 1);
    let jf = j as f64;
    let lap_u = u.laplacian()?;
    let m_lap = lap_u.multiply_power(jf);
    let lap_m = u.multiply_power(jf).laplacian()?;
    let t1 = u.multiply_power(jf - 2.0).scaled(c(-jf * (jf - 1.0)));
    let t2 = u.derivative(&[1])?.multiply_power(jf - 1.0).scaled(c(-2.0 * jf));
    let mut worst: f64 = 0.0;
    for &x in xs {
        let lhs = m_lap.eval(&[x]) - lap_m.eval(&[x]);
        let rhs = -t1.eval(&[x]) - t2.eval(&[x]);
        worst = worst.max((lhs + rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::{AxialProfile, Cutoff, ExpPoly};
    use crate::tangential::GaussFactor;

    fn bump_1d() -> Field {
        Field::axial(AxialProfile::new(Cutoff::bump(0.4, 0.9, 1.8, 2.6)))
    }

    #[test]
    fn base_relation_pointwise() {
        // [M^j d^a, Lap]: checked against the closed form on x^2 e^{-x^2/4}
        let u = Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 2.0)], 1.0)));
        let xs: Vec<f64> = vec![0.4, 1.0, 2.3, 3.7];
        for j in [1u32, 2, 3] {
            let res = base_commutation_residual(&u, j, &xs).unwrap();
            assert!(res < 1e-10, "j={j}: {res:.3e}");
        }
    }

    #[test]
    fn dirichlet_suite_1d() {
        let quad = QuadratureSpec::coarse();
        let lcfg = commutator_laplace_cfg();
        let u = bump_1d();
        let res = dirichlet_commutator_suite(c(1.0), &u, 2.0, 0.5, &lcfg, &quad).unwrap();
        for r in &res {
            eprintln!("  {}: {:.3e}", r.identity, r.relative);
            assert!(r.relative <= 1e-6, "{}: {:.3e}", r.identity, r.relative);
        }
    }

    #[test]
    fn dirichlet_suite_complex_point_2d() {
        let quad = QuadratureSpec::coarse();
        let lcfg = LaplaceCfg::coarse();
        let u = Field::separable(
            AxialProfile::new(Cutoff::bump(0.4, 0.9, 1.8, 2.6)),
            vec![GaussFactor::gaussian(1.0, 0.0)],
        );
        let res =
            dirichlet_commutator_suite(Complex64::new(1.0, 1.0), &u, 2.0, 0.5, &lcfg, &quad)
                .unwrap();
        // tangential and axial-second commutators at the coarse preset
        for r in res.iter().take(2) {
            assert!(r.relative <= 1e-4, "{}: {:.3e}", r.identity, r.relative);
        }
    }

    #[test]
    fn neumann_suite_1d() {
        let quad = QuadratureSpec::coarse();
        let lcfg = commutator_laplace_cfg();
        // witness cutoff: derivative compactly supported in (0, inf)
        let u = Field::axial(AxialProfile::new(Cutoff::witness()));
        let res = neumann_commutator_suite(c(1.0), &u, 2.0, 0.5, &lcfg, &quad).unwrap();
        for r in &res {
            assert!(r.relative <= 1e-6, "{}: {:.3e}", r.identity, r.relative);
        }
    }
}
