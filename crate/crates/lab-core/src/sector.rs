//! Sectoriality scanning: |lambda| ||R(lambda, A)|| tables over rays outside
//! the sector, and the small-lambda growth-transfer fit.

use num_complex::Complex64;

use crate::error::Result;
use crate::field::Field;
use crate::fit::{fit_log_log, log_grid, ExponentFit};
use crate::norms::weighted_sobolev_norm;
use crate::quad::QuadratureSpec;
use crate::resolvent::{resolvent_apply, LaplaceCfg};
use crate::space::{Bc, SpaceParams};

/// One table entry: lambda on a ray, sup over the battery of
/// |lambda| ||R(lambda, A) f|| / ||f|| in the operator's norm.
#[derive(Debug, Clone, Copy)]
pub struct SectorEntry {
    pub ray_arg: f64,
    pub lambda_abs: f64,
    pub sup_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct SectorialityReport {
    pub entries: Vec<SectorEntry>,
    /// max/min of the table (uniform boundedness witness).
    pub variation: f64,
    /// Fitted small-lambda exponent of ||R(lambda) zeta|| along arg = pi,
    /// present when a growth-regime fit was requested.
    pub small_lambda_fit: Option<ExponentFit>,
    /// Estimated angle: all rays probed stayed finite.
    pub rays_probed: Vec<f64>,
}

/// Norm context of the operator: Dirichlet acts on W^{k,p}(w_{gamma+kp}),
/// Neumann on W^{k+1,p}(w_{gamma+kp}).
pub fn operator_norm_params(bc: Bc, sp: &SpaceParams) -> Result<SpaceParams> {
    let order = match bc {
        Bc::Dirichlet => sp.k,
        Bc::Neumann => sp.k + 1,
    };
    SpaceParams::new(sp.p, order, sp.weight_exponent(), sp.d)
}

/// Applies R(lambda, lambda_shift - Lap) = -(( lambda_shift - lambda) - Lap)^{-1}.
pub fn shifted_resolvent(
    bc: Bc,
    lambda: Complex64,
    lambda_shift: f64,
    f: &Field,
    cfg: &LaplaceCfg,
) -> Result<Field> {
    let mu = Complex64::new(lambda_shift, 0.0) - lambda;
    Ok(resolvent_apply(bc, mu, f, cfg)?.scaled(Complex64::new(-1.0, 0.0)))
}

pub struct ScanConfig {
    pub rays: Vec<f64>,
    pub moduli: Vec<f64>,
    pub lambda_shift: f64,
    pub laplace: LaplaceCfg,
    pub quad: QuadratureSpec,
    /// Fit ||R(|l| e^{i pi}) zeta|| for |l| in the lower decade when set.
    pub small_lambda_witness: Option<Field>,
}

impl ScanConfig {
    pub fn standard(lambda_shift: f64) -> ScanConfig {
        ScanConfig {
            rays: vec![
                3.0 * std::f64::consts::FRAC_PI_4,
                7.0 * std::f64::consts::PI / 8.0,
                std::f64::consts::PI,
            ],
            moduli: log_grid(1e-2, 1e2, 9),
            lambda_shift,
            laplace: LaplaceCfg::coarse(),
            quad: QuadratureSpec::coarse(),
            small_lambda_witness: None,
        }
    }
}

/// Scan |lambda| ||R(lambda, A)|| over rays of C minus the sector for
/// A = lambda_shift - Lap; report-producing (errors only on broken input).
pub fn sectoriality_scan(
    bc: Bc,
    sp: &SpaceParams,
    battery: &[(String, Field)],
    config: &ScanConfig,
) -> Result<SectorialityReport> {
    let norm_sp = operator_norm_params(bc, sp)?;
    let mut entries = Vec::new();
    let mut norms_f = Vec::new();
    for (_, f) in battery {
        norms_f.push(weighted_sobolev_norm(f, &norm_sp, &config.quad)?);
    }
    for &ray in &config.rays {
        for &m in &config.moduli {
            let lambda = Complex64::from_polar(m, ray);
            let mut sup = 0.0f64;
            for ((_, f), &nf) in battery.iter().zip(&norms_f) {
                let u = shifted_resolvent(bc, lambda, config.lambda_shift, f, &config.laplace)?;
                let nu = weighted_sobolev_norm(&u, &norm_sp, &config.quad)?;
                sup = sup.max(m * nu / nf);
            }
            entries.push(SectorEntry { ray_arg: ray, lambda_abs: m, sup_ratio: sup });
        }
    }
    let max = entries.iter().map(|e| e.sup_ratio).fold(0.0, f64::max);
    let min = entries.iter().map(|e| e.sup_ratio).fold(f64::INFINITY, f64::min);
    let small_lambda_fit = match &config.small_lambda_witness {
        None => None,
        Some(zeta) => {
            let nz = weighted_sobolev_norm(zeta, &norm_sp, &config.quad)?;
            let moduli = log_grid(1e-3, 1e-1, 8);
            let mut vals = Vec::new();
            for &m in &moduli {
                // lambda = -m: unshifted operator, mu = m > 0
                let u = shifted_resolvent(
                    bc,
                    Complex64::new(-m, 0.0),
                    config.lambda_shift,
                    zeta,
                    &config.laplace,
                )?;
                vals.push(weighted_sobolev_norm(&u, &norm_sp, &config.quad)? / nz);
            }
            Some(fit_log_log(&moduli, &vals)?)
        }
    };
    Ok(SectorialityReport {
        entries,
        variation: max / min.max(1e-300),
        small_lambda_fit,
        rays_probed: config.rays.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::{AxialProfile, Cutoff, ExpPoly};

    #[test]
    fn bounded_regime_table_is_uniform() {
        // Dirichlet (2,0,1.5): gamma + kp in (-1, 2p-1), lambda_shift = 0
        let sp = SpaceParams::new(2.0, 0, 1.5, 1).unwrap();
        let battery = vec![
            (
                "x*exp(-x^2/4)".to_string(),
                Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 1.0)], 1.0))),
            ),
            (
                "witness".to_string(),
                Field::axial(AxialProfile::new(Cutoff::witness())),
            ),
        ];
        let mut config = ScanConfig::standard(0.0);
        config.moduli = log_grid(1e-2, 1e2, 5);
        config.rays = vec![3.0 * std::f64::consts::FRAC_PI_4, std::f64::consts::PI];
        let report = sectoriality_scan(Bc::Dirichlet, &sp, &battery, &config).unwrap();
        assert!(report.variation <= 20.0, "variation {}", report.variation);
        assert!(report.entries.iter().all(|e| e.sup_ratio.is_finite()));
    }

    #[test]
    fn growth_regime_small_lambda_exponent() {
        // Dirichlet (2,1,2.5): fitted exponent -(1 + 0.375) = -1.375 +- 0.1
        let sp = SpaceParams::new(2.0, 1, 2.5, 1).unwrap();
        let zeta = Field::axial(AxialProfile::new(Cutoff::witness()));
        let mut config = ScanConfig::standard(0.0);
        config.rays = vec![std::f64::consts::PI];
        config.moduli = log_grid(1e-1, 1e1, 4);
        config.small_lambda_witness = Some(zeta);
        let report = sectoriality_scan(
            Bc::Dirichlet,
            &sp,
            &[(
                "x*exp(-x^2/4)".to_string(),
                Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 1.0)], 1.0))),
            )],
            &config,
        )
        .unwrap();
        let fit = report.small_lambda_fit.unwrap();
        assert!(
            (fit.slope + 1.375).abs() <= 0.1,
            "small-lambda slope {} (want -1.375 +- 0.1)",
            fit.slope
        );
    }

    #[test]
    fn shift_restores_uniform_boundedness() {
        let sp = SpaceParams::new(2.0, 1, 2.5, 1).unwrap();
        let battery = vec![(
            "witness".to_string(),
            Field::axial(AxialProfile::new(Cutoff::witness())),
        )];
        let mut config = ScanConfig::standard(1.0);
        config.moduli = log_grid(1e-2, 1e2, 5);
        config.rays = vec![std::f64::consts::PI];
        let report = sectoriality_scan(Bc::Dirichlet, &sp, &battery, &config).unwrap();
        // the shifted operator is invertible, so |l| ||R|| -> 0 at the origin;
        // uniform boundedness means the sup stays finite and modest
        let sup = report.entries.iter().map(|e| e.sup_ratio).fold(0.0f64, f64::max);
        assert!(sup.is_finite() && sup <= 10.0, "shifted sup {sup}");
    }
}
