//! Resolvent of the Dirichlet/Neumann Laplacian by rotated Laplace
//! quadrature of the heat semigroup:
//!
//!   (mu - Lap)^{-1} = e^{i delta} int_0^inf e^{-mu e^{i delta} t} T(t e^{i delta}) dt,
//!
//! with delta = -arg(mu)/2, valid for mu off the spectral cut (-inf, 0].
//! The discretized integral is a weighted sum of heat evolutions, stored as
//! a [`HeatComb`] per separable term.

use num_complex::Complex64;

use crate::axial::AxialProfile;
use crate::error::{LabError, Result};
use crate::field::{Field, Term};
use crate::quad::panel_rule;
use crate::semigroup::{ConvCfg, HeatComb};
use crate::space::Bc;

/// Node counts for the Laplace-in-time discretization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceCfg {
    /// Lower truncation of the decay-rate-scaled time integral.
    pub t_lo_eps: f64,
    /// Upper truncation: t_hi = t_hi_decades / effective decay rate.
    pub t_hi_factor: f64,
    /// Panels per unit of log time.
    pub panels_per_unit: f64,
    pub n_per_panel: usize,
    pub conv: ConvCfg,
}

impl LaplaceCfg {
    pub fn fine() -> LaplaceCfg {
        LaplaceCfg {
            t_lo_eps: 1e-8,
            t_hi_factor: 42.0,
            panels_per_unit: 1.0,
            n_per_panel: 12,
            conv: ConvCfg::fine(),
        }
    }

    pub fn coarse() -> LaplaceCfg {
        LaplaceCfg {
            t_lo_eps: 1e-6,
            t_hi_factor: 36.0,
            panels_per_unit: 0.7,
            n_per_panel: 9,
            conv: ConvCfg::coarse(),
        }
    }

    pub fn refined(&self) -> LaplaceCfg {
        LaplaceCfg {
            panels_per_unit: self.panels_per_unit * 1.6,
            n_per_panel: self.n_per_panel + 3,
            conv: self.conv.refined(),
            ..*self
        }
    }
}

/// (weight, time) nodes discretizing the rotated Laplace representation of
/// (mu - Lap)^{-1} with a fixed rotation delta.
pub fn laplace_nodes(
    mu: Complex64,
    delta: f64,
    cfg: &LaplaceCfg,
) -> Result<Vec<(Complex64, Complex64)>> {
    if mu.im == 0.0 && mu.re <= 0.0 {
        return Err(LabError::BranchCut { lambda: mu });
    }
    let arg = mu.arg();
    if (arg + delta).abs() >= std::f64::consts::FRAC_PI_2 - 1e-9
        || delta.abs() >= std::f64::consts::FRAC_PI_2 - 1e-9
    {
        return Err(LabError::InvalidParameter(format!(
            "rotation {delta} incompatible with arg mu = {arg}"
        )));
    }
    let rot = Complex64::from_polar(1.0, delta);
    // effective exponential decay rate of |e^{-mu e^{i delta} t}|
    let rate = mu.norm() * (arg + delta).cos();
    let t_lo = cfg.t_lo_eps / rate;
    let t_hi = cfg.t_hi_factor / rate;
    let span = (t_hi / t_lo).ln();
    let n_panels = ((span * cfg.panels_per_unit).ceil() as usize).max(4);
    let edges: Vec<f64> = (0..=n_panels)
        .map(|i| t_lo * (t_hi / t_lo).powf(i as f64 / n_panels as f64))
        .collect();
    let rule = panel_rule(&edges, cfg.n_per_panel);
    Ok(rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &w)| (w * rot * (-mu * rot * t).exp(), t * rot))
        .collect())
}

/// The natural rotation for a given mu: half the argument, so both the
/// Laplace factor and the kernel keep a cos(arg/2) margin.
pub fn natural_rotation(mu: Complex64) -> f64 {
    -mu.arg() / 2.0
}

/// (mu - Lap_bc)^{-1} f by rotated Laplace quadrature. For d >= 2 each
/// Laplace node contributes a separable term (the tangential heat factor is
/// time-dependent), so the output has one term per node and source term.
pub fn resolvent_apply(bc: Bc, mu: Complex64, f: &Field, cfg: &LaplaceCfg) -> Result<Field> {
    let nodes = laplace_nodes(mu, natural_rotation(mu), cfg)?;
    resolvent_from_nodes(bc, &nodes, f, cfg)
}

/// Assemble the resolvent-type combination sum_j w_j T(s_j) f.
pub fn resolvent_from_nodes(
    bc: Bc,
    nodes: &[(Complex64, Complex64)],
    f: &Field,
    cfg: &LaplaceCfg,
) -> Result<Field> {
    let mut terms = Vec::new();
    for t in &f.terms {
        if f.d == 1 {
            let axial = compose_or_comb(bc, nodes, &t.axial, &cfg.conv);
            terms.push(Term { coeff: t.coeff, axial, tangential: Vec::new() });
        } else {
            let w_max = nodes.iter().map(|&(w, _)| w.norm()).fold(0.0, f64::max);
            let cut = 1e-9 * w_max * t.coeff.norm().max(1e-300);
            for &(w, s) in nodes {
                if w.norm() * t.coeff.norm() < cut {
                    continue;
                }
                let axial = compose_or_comb(bc, &[(w, s)], &t.axial, &cfg.conv);
                terms.push(Term {
                    coeff: t.coeff,
                    axial,
                    tangential: t.tangential.iter().map(|g| g.evolve(s)).collect(),
                });
            }
        }
    }
    Ok(Field { d: f.d, terms })
}

fn compose_or_comb(
    bc: Bc,
    nodes: &[(Complex64, Complex64)],
    src: &AxialProfile,
    conv: &ConvCfg,
) -> AxialProfile {
    if nodes.len() == 1 {
        let (w, s) = nodes[0];
        if let Some(composed) = src.0.compose_heat(bc, s) {
            return scaled_profile(composed, w);
        }
    }
    // a comb over a comb of the same bc flattens to the product node set
    if let Some((inner, inner_src)) = src.0.as_heat_comb(bc) {
        if nodes.len() * inner.len() <= 120_000 {
            let mut product = Vec::with_capacity(nodes.len() * inner.len());
            let mut w_max: f64 = 0.0;
            for &(w, s) in nodes {
                for &(wi, si) in &inner {
                    let ww = w * wi;
                    w_max = w_max.max(ww.norm());
                    product.push((ww, s + si));
                }
            }
            product.retain(|(w, _)| w.norm() > 1e-13 * w_max);
            return AxialProfile::new(HeatComb {
                bc,
                nodes: product,
                src: inner_src,
                cfg: *conv,
            });
        }
    }
    AxialProfile::new(HeatComb { bc, nodes: nodes.to_vec(), src: src.clone(), cfg: *conv })
}

fn scaled_profile(p: AxialProfile, w: Complex64) -> AxialProfile {
    // fold a scalar weight into a single-node comb or wrap
    AxialProfile::new(ScaledAxial { base: p, w })
}

#[derive(Debug)]
struct ScaledAxial {
    base: AxialProfile,
    w: Complex64,
}

impl crate::axial::AxialFn for ScaledAxial {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        self.w * self.base.eval_deriv(n, x)
    }
    fn max_order(&self) -> Option<usize> {
        self.base.max_order()
    }
    fn boundary_power(&self) -> f64 {
        self.base.boundary_power()
    }
    fn decay(&self) -> crate::axial::Decay {
        self.base.decay()
    }
    fn compose_heat(&self, bc: Bc, z: Complex64) -> Option<AxialProfile> {
        self.base
            .0
            .compose_heat(bc, z)
            .map(|c| scaled_profile(c, self.w))
    }
    fn as_heat_comb(&self, bc: Bc) -> Option<(Vec<(Complex64, Complex64)>, AxialProfile)> {
        self.base.0.as_heat_comb(bc).map(|(nodes, src)| {
            (nodes.into_iter().map(|(w, s)| (w * self.w, s)).collect(), src)
        })
    }
}

/// (mu - Lap)^{-1}^m f through the exact Laplace identity
/// R(mu)^m = int_0^inf t^{m-1}/(m-1)! e^{-mu t} T(t) dt.
pub fn resolvent_power_apply(
    bc: Bc,
    mu: Complex64,
    m: u32,
    f: &Field,
    cfg: &LaplaceCfg,
) -> Result<Field> {
    assert!(m >= 1);
    let delta = natural_rotation(mu);
    let base = laplace_nodes(mu, delta, cfg)?;
    let mut fact = 1.0;
    for i in 1..m {
        fact *= i as f64;
    }
    let nodes: Vec<(Complex64, Complex64)> = base
        .into_iter()
        .map(|(w, s)| (w * s.powu(m - 1) / fact, s))
        .collect();
    resolvent_from_nodes(bc, &nodes, f, cfg)
}

/// Residual || (mu - Lap) u - f ||_grid-sup with the Laplacian taken from
/// kernel derivatives of u.
pub fn resolvent_residual_sup(
    mu: Complex64,
    u: &Field,
    f: &Field,
    xs: &[f64],
) -> Result<f64> {
    assert_eq!(u.d, 1);
    let lap = u.laplacian()?;
    let mut worst: f64 = 0.0;
    for &x in xs {
        let r = mu * u.eval(&[x]) - lap.eval(&[x]) - f.eval(&[x]);
        worst = worst.max(r.norm());
    }
    Ok(worst)
}
