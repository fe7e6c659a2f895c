//! Contour-integral holomorphic functional calculus for the shifted
//! Laplacian A = lambda_shift - Lap:
//!
//!   phi(A) = (1/2 pi i) int_{Gamma_nu} phi(z) R(z, A) dz,
//!
//! over the boundary of Sigma_nu minus the ball B(0, arc_radius), traversed
//! downwards. Each resolvent on the contour is the rotated Laplace transform
//! of the semigroup with a rotation fixed per contour piece, so the double
//! (contour x Laplace) integral collapses to a single time integral with
//! scalar contour prefactors: the evaluation cost of phi(A) f matches a
//! single resolvent application.

use std::sync::Arc;

use num_complex::Complex64;

use crate::axial::AxialProfile;
use crate::cx::c;
use crate::error::{LabError, Result};
use crate::field::{Field, Term};
use crate::quad::{dyadic_edges, panel_rule, Rule};
use crate::semigroup::{ConvCfg, HeatComb};
use crate::space::Bc;

/// Discretization of Gamma_nu = boundary of (Sigma_nu minus B(0, delta)).
#[derive(Debug, Clone)]
pub struct ContourSpec {
    /// Ray angle, 0 < nu < omega.
    pub nu: f64,
    /// Radius of the origin-avoiding arc; must satisfy arc_radius < lambda_shift.
    pub arc_radius: f64,
    /// Ray truncation radius (analytic tail corrections applied beyond).
    pub r_max: f64,
    /// Gauss nodes per dyadic ray panel.
    pub n_ray: usize,
    /// Gauss nodes per arc panel (panels of at most pi/8 angle).
    pub n_arc: usize,
}

impl ContourSpec {
    pub fn standard(lambda_shift: f64) -> ContourSpec {
        ContourSpec {
            nu: 3.0 * std::f64::consts::PI / 32.0,
            arc_radius: 0.5 * lambda_shift.min(1.0).max(1e-3),
            r_max: 1e4 * lambda_shift.max(1.0),
            n_ray: 12,
            n_arc: 10,
        }
    }

    pub fn validate(&self, lambda_shift: f64) -> Result<()> {
        if !(self.nu > 0.0 && self.nu < std::f64::consts::FRAC_PI_2) {
            return Err(LabError::InvalidParameter(format!("nu = {}", self.nu)));
        }
        if !(self.arc_radius > 0.0 && self.arc_radius < lambda_shift) {
            return Err(LabError::InvalidParameter(format!(
                "arc radius {} must lie in (0, lambda_shift = {lambda_shift})",
                self.arc_radius
            )));
        }
        if self.r_max < 10.0 * lambda_shift.max(1.0) {
            return Err(LabError::InvalidParameter("r_max too small".into()));
        }
        Ok(())
    }
}

/// A bounded holomorphic symbol on the sector, with its declared behavior
/// at infinity.
#[derive(Clone)]
pub struct HolomorphicSymbol {
    pub name: String,
    pub eval: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    /// Symbols without decay rely on the origin-avoiding arc and the
    /// analytic ray-tail correction.
    pub decays_at_infinity: bool,
}

impl std::fmt::Debug for HolomorphicSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HolomorphicSymbol").field("name", &self.name).finish()
    }
}

impl HolomorphicSymbol {
    pub fn new(
        name: &str,
        decays_at_infinity: bool,
        eval: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> HolomorphicSymbol {
        HolomorphicSymbol { name: name.to_string(), eval: Arc::new(eval), decays_at_infinity }
    }

    /// sup |phi| over a dense sector sample (the recorded H-infinity norm).
    pub fn hinf_norm_estimate(&self, omega: f64) -> f64 {
        let mut sup: f64 = 0.0;
        for i in 0..=160 {
            let m = 1e-4 * (1e8f64).powf(i as f64 / 160.0);
            for &frac in &[-0.999, -0.5, 0.0, 0.5, 0.999] {
                let z = Complex64::from_polar(m, frac * omega);
                sup = sup.max((self.eval)(z).norm());
            }
        }
        sup
    }
}

/// Time-grid parameters of the collapsed contour representation.
#[derive(Debug, Clone, Copy)]
pub struct HinfCfg {
    pub t_lo_eps: f64,
    pub t_hi_factor: f64,
    pub panels_per_unit: f64,
    pub n_per_panel: usize,
    pub conv: ConvCfg,
    /// Cap on |phi| over the contour.
    pub symbol_cap: f64,
}

impl HinfCfg {
    pub fn fine() -> HinfCfg {
        HinfCfg {
            t_lo_eps: 1e-7,
            t_hi_factor: 50.0,
            panels_per_unit: 6.0,
            n_per_panel: 12,
            conv: ConvCfg::coarse(),
            symbol_cap: 1e8,
        }
    }
}

struct Piece {
    /// Laplace rotation for this contour piece.
    delta: f64,
    /// (contour weight including phi and orientation, mu = lambda_shift - z).
    nodes: Vec<(Complex64, Complex64)>,
}

fn build_pieces(
    spec: &ContourSpec,
    lambda_shift: f64,
    phi: &HolomorphicSymbol,
    cap: f64,
) -> Result<Vec<Piece>> {
    spec.validate(lambda_shift)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut pieces = Vec::new();
    let mut worst: f64 = 0.0;
    // rays: Gauss nodes on dyadic panels of [arc_radius, r_max], refined
    // geometrically toward the arc junction so the shared time grid's
    // largest times (Laplace decay scale 1/(t sin(nu/2))) stay resolved
    let mut edges: Vec<f64> = (1..=30)
        .rev()
        .map(|j| spec.arc_radius * (1.0 + 2f64.powi(-j)))
        .collect();
    edges.insert(0, spec.arc_radius);
    edges.extend(dyadic_edges(2.0 * spec.arc_radius, spec.r_max).into_iter().skip(1));
    let ray_rule = panel_rule(&edges, spec.n_ray);
    for (sign, orient) in [(1.0, -1.0), (-1.0, 1.0)] {
        // sign = +1 upper ray (orientation -1: traversed inward)
        let dir = Complex64::from_polar(1.0, sign * spec.nu);
        let delta = sign * (std::f64::consts::PI - spec.nu) / 2.0;
        let nodes = ray_rule
            .nodes
            .iter()
            .zip(&ray_rule.weights)
            .map(|(&r, &w)| {
                let z = r * dir;
                let pv = (phi.eval)(z);
                worst = worst.max(pv.norm());
                (c(orient) * pv * dir * w / two_pi_i, c(lambda_shift) - z)
            })
            .collect();
        pieces.push(Piece { delta, nodes });
    }
    // arc: theta from nu down to -nu; parametrize increasing with sign -1
    let n_arc_panels = ((2.0 * spec.nu / (std::f64::consts::PI / 8.0)).ceil() as usize).max(2);
    let edges: Vec<f64> = (0..=n_arc_panels)
        .map(|i| -spec.nu + 2.0 * spec.nu * i as f64 / n_arc_panels as f64)
        .collect();
    let arc_rule = panel_rule(&edges, spec.n_arc);
    let nodes = arc_rule
        .nodes
        .iter()
        .zip(&arc_rule.weights)
        .map(|(&th, &w)| {
            let z = Complex64::from_polar(spec.arc_radius, th);
            let pv = (phi.eval)(z);
            worst = worst.max(pv.norm());
            let dz = Complex64::new(0.0, 1.0) * z;
            (c(-1.0) * pv * dz * w / two_pi_i, c(lambda_shift) - z)
        })
        .collect();
    pieces.push(Piece { delta: 0.0, nodes });
    if worst > cap {
        return Err(LabError::SymbolUnboundedOnContour { max_abs: worst, cap });
    }
    Ok(pieces)
}

/// phi(lambda_shift - Lap) f through the contour representation.
pub fn hinf_apply(
    bc: Bc,
    phi: &HolomorphicSymbol,
    spec: &ContourSpec,
    lambda_shift: f64,
    f: &Field,
    cfg: &HinfCfg,
) -> Result<Field> {
    if f.d != 1 {
        return Err(LabError::InvalidParameter(
            "contour calculus implemented on the half-line".into(),
        ));
    }
    if !phi.decays_at_infinity && spec.arc_radius <= 0.0 {
        return Err(LabError::InvalidParameter(
            "non-decaying symbols need an origin-avoiding arc".into(),
        ));
    }
    // regularize at infinity: the truncated ray pair drops mass of order
    // sin(nu) (phi_inf A + phi_1) / r_max unless the symbol decays like
    // z^-2. Split off the limit and the 1/z coefficient (estimated by
    // Richardson on the ray ends); their calculus is exact:
    //   phi(A) = phi_inf I + phi_1 (lambda_shift + A)^{-1} + psi(A).
    let (phi_inf, phi_1) = ray_end_expansion(phi, spec);
    if !(phi_inf.is_finite() && phi_1.is_finite()) {
        return Err(LabError::SymbolUnboundedOnContour {
            max_abs: f64::INFINITY,
            cap: cfg.symbol_cap,
        });
    }
    let base = phi.eval.clone();
    let ls = lambda_shift;
    let phi = HolomorphicSymbol {
        name: phi.name.clone(),
        eval: Arc::new(move |z| base(z) - phi_inf - phi_1 / (c(ls) + z)),
        decays_at_infinity: true,
    };
    let phi = &phi;
    let pieces = build_pieces(spec, lambda_shift, phi, cfg.symbol_cap)?;
    // shared time grid across pieces (the small-t parts of the two rays
    // cancel pairwise; a shared grid realizes that cancellation node-wise)
    let mut rho_min = f64::INFINITY;
    for p in &pieces {
        let rot = Complex64::from_polar(1.0, p.delta);
        for &(_, mu) in &p.nodes {
            rho_min = rho_min.min((mu * rot).re);
        }
    }
    if !(rho_min > 0.0) {
        return Err(LabError::InvalidParameter(format!(
            "contour rotation margin collapsed (rho_min = {rho_min})"
        )));
    }
    let t_lo = cfg.t_lo_eps / lambda_shift.max(1.0);
    let t_hi = cfg.t_hi_factor / rho_min;
    let span = (t_hi / t_lo).ln();
    let n_panels = ((span * cfg.panels_per_unit).ceil() as usize).max(6);
    let edges: Vec<f64> = (0..=n_panels)
        .map(|i| t_lo * (t_hi / t_lo).powf(i as f64 / n_panels as f64))
        .collect();
    let t_rule = panel_rule(&edges, cfg.n_per_panel);
    let heat_nodes = collapse_nodes(&pieces, &t_rule);

    let terms = f
        .terms
        .iter()
        .map(|t| Term {
            coeff: t.coeff,
            axial: AxialProfile::new(HeatComb {
                bc,
                nodes: heat_nodes.clone(),
                src: t.axial.clone(),
                cfg: cfg.conv,
            }),
            tangential: Vec::new(),
        })
        .collect();
    let mut out = Field { d: 1, terms };
    if phi_inf.norm() > 1e-15 {
        out = out.add_scaled(f, phi_inf);
    }
    if phi_1.norm() > 1e-12 {
        // (lambda_shift + A)^{-1} = (2 lambda_shift - Lap)^{-1}
        let comp = crate::resolvent::resolvent_apply(
            bc,
            c(2.0 * lambda_shift),
            f,
            &crate::resolvent::LaplaceCfg::fine(),
        )?;
        out = out.add_scaled(&comp, phi_1);
    }
    Ok(out)
}

/// Richardson estimates of phi at infinity and its 1/z coefficient from
/// paired ray samples at r_max and r_max/2.
fn ray_end_expansion(phi: &HolomorphicSymbol, spec: &ContourSpec) -> (Complex64, Complex64) {
    let mean = |r: f64| {
        0.5 * ((phi.eval)(Complex64::from_polar(r, spec.nu))
            + (phi.eval)(Complex64::from_polar(r, -spec.nu)))
    };
    let p1 = mean(spec.r_max);
    let p2 = mean(spec.r_max / 2.0);
    let phi_1 = (p2 - p1) * spec.r_max / spec.nu.cos();
    let phi_inf = 2.0 * p1 - p2;
    (phi_inf, phi_1)
}

/// Scalar collapse: for each time node, sum the contour prefactors of each
/// piece; the heat evolution times carry the piece rotation.
fn collapse_nodes(pieces: &[Piece], t_rule: &Rule) -> Vec<(Complex64, Complex64)> {
    let mut out = Vec::with_capacity(t_rule.len() * pieces.len());
    for (&t, &wt) in t_rule.nodes.iter().zip(&t_rule.weights) {
        for p in pieces {
            let rot = Complex64::from_polar(1.0, p.delta);
            let mut m = Complex64::new(0.0, 0.0);
            for &(w, mu) in &p.nodes {
                let decay = -(mu * rot).re * t;
                if decay < -700.0 {
                    continue;
                }
                // R(z, A) = -(mu - Lap)^{-1} = -e^{i delta} int e^{-mu e^{i delta} t} T(t e^{i delta}) dt
                m += w * (-rot) * (-mu * rot * t).exp();
            }
            if m.norm() > 0.0 {
                out.push((m * wt, c(t) * rot));
            }
        }
    }
    out
}

/// Scalar model of the collapsed contour calculus: the heat semigroup is
/// replaced by its action e^{-xi^2 s} on a spectral mode, so the result
/// should be phi(lambda_shift + xi^2). Debug/validation hook.
pub fn scalar_calculus_debug(
    phi: &HolomorphicSymbol,
    spec: &ContourSpec,
    lambda_shift: f64,
    xi2: f64,
    cfg: &HinfCfg,
) -> Complex64 {
    let (phi_inf, phi_1) = ray_end_expansion(phi, spec);
    let base = phi.eval.clone();
    let ls = lambda_shift;
    let phi = &HolomorphicSymbol {
        name: phi.name.clone(),
        eval: Arc::new(move |z| base(z) - phi_inf - phi_1 / (c(ls) + z)),
        decays_at_infinity: true,
    };
    let pieces = build_pieces(spec, lambda_shift, phi, cfg.symbol_cap).unwrap();
    let mut rho_min = f64::INFINITY;
    for p in &pieces {
        let rot = Complex64::from_polar(1.0, p.delta);
        for &(_, mu) in &p.nodes {
            rho_min = rho_min.min((mu * rot).re);
        }
    }
    let t_lo = cfg.t_lo_eps / lambda_shift.max(1.0);
    let t_hi = cfg.t_hi_factor / rho_min;
    let span = (t_hi / t_lo).ln();
    let n_panels = ((span * cfg.panels_per_unit).ceil() as usize).max(6);
    let edges: Vec<f64> = (0..=n_panels)
        .map(|i| t_lo * (t_hi / t_lo).powf(i as f64 / n_panels as f64))
        .collect();
    let t_rule = panel_rule(&edges, cfg.n_per_panel);
    let nodes = collapse_nodes(&pieces, &t_rule);
    let main: Complex64 = nodes.iter().map(|&(w, s)| w * (-xi2 * s).exp()).sum();
    main + phi_inf + phi_1 / (2.0 * lambda_shift + xi2)
}

/// Observed bound-probe entry.
#[derive(Debug, Clone)]
pub struct BoundProbeEntry {
    pub symbol: String,
    pub field: String,
    pub ratio: f64,
}

/// max ||phi(A) f|| / (||phi||_{H-inf} ||f||) over symbols and battery, in
/// the weighted L^p norm of the declared context.
pub fn hinf_bound_probe(
    bc: Bc,
    p: f64,
    gamma_weight: f64,
    lambda_shift: f64,
    symbols: &[HolomorphicSymbol],
    battery: &[(String, Field)],
    omega: f64,
    cfg: &HinfCfg,
    quad: &crate::quad::QuadratureSpec,
) -> Result<Vec<BoundProbeEntry>> {
    let spec = ContourSpec::standard(lambda_shift);
    let mut out = Vec::new();
    for phi in symbols {
        let hn = phi.hinf_norm_estimate(omega);
        for (fname, f) in battery {
            let nf = crate::norms::weighted_lp_norm(f, p, gamma_weight, quad)?;
            let g = hinf_apply(bc, phi, &spec, lambda_shift, f, cfg)?;
            let ng = crate::norms::weighted_lp_norm(&g, p, gamma_weight, quad)?;
            out.push(BoundProbeEntry {
                symbol: phi.name.clone(),
                field: fname.clone(),
                ratio: ng / (hn * nf),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::ExpPoly;
    use crate::resolvent::{resolvent_apply, resolvent_power_apply, LaplaceCfg};
    use crate::semigroup::{apply_semigroup, sample_grid};
    use crate::kernel::SectorTime;

    fn gaussian_field() -> Field {
        Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 1.0)], 1.0)))
    }

    fn grid_rel_err(a: &Field, b: &Field, xs: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for &x in xs {
            worst = worst.max((a.eval(&[x]) - b.eval(&[x])).norm());
            scale = scale.max(b.eval(&[x]).norm());
        }
        worst / scale.max(1e-300)
    }

    #[test]
    fn identity_symbol_reproduces_field() {
        let f = gaussian_field();
        let phi = HolomorphicSymbol::new("one", false, |_| c(1.0));
        let spec = ContourSpec::standard(1.0);
        let g = hinf_apply(Bc::Dirichlet, &phi, &spec, 1.0, &f, &HinfCfg::fine()).unwrap();
        let xs = sample_grid(5.0, 7);
        let err = grid_rel_err(&g, &f, &xs);
        assert!(err <= 1e-5, "identity symbol error {err:.3e}");
    }

    #[test]
    fn rational_symbol_matches_resolvent_composition() {
        // phi(z) = z/(1+z)^2, A = 1 - Lap: phi(A) f = v - w with
        // v = (1+A)^{-1} f and w = (1+A)^{-2} f
        let f = gaussian_field();
        let lshift = 1.0;
        let phi = HolomorphicSymbol::new("z/(1+z)^2", true, |z| z / ((c(1.0) + z) * (c(1.0) + z)));
        let spec = ContourSpec::standard(lshift);
        let g = hinf_apply(Bc::Dirichlet, &phi, &spec, lshift, &f, &HinfCfg::fine()).unwrap();

        let lcfg = LaplaceCfg::fine();
        let v = resolvent_apply(Bc::Dirichlet, c(1.0 + lshift), &f, &lcfg).unwrap();
        let w = resolvent_power_apply(Bc::Dirichlet, c(1.0 + lshift), 2, &f, &lcfg).unwrap();
        let reference = v.add_scaled(&w, c(-1.0));
        let xs = sample_grid(5.0, 7);
        let err = grid_rel_err(&g, &reference, &xs);
        assert!(err <= 1e-5, "rational composition error {err:.3e}");
    }

    #[test]
    fn distinct_pole_rational_via_two_solves() {
        // phi(z) = z/((1+z)(2+z)) = -1/(1+z) + 2/(2+z): two sequentialless
        // resolvent solves and a partial-fraction combination
        let f = gaussian_field();
        let lshift = 1.0;
        let phi = HolomorphicSymbol::new("z/((1+z)(2+z))", true, move |z| {
            z / ((c(1.0) + z) * (c(2.0) + z))
        });
        let spec = ContourSpec::standard(lshift);
        let g = hinf_apply(Bc::Dirichlet, &phi, &spec, lshift, &f, &HinfCfg::fine()).unwrap();
        let lcfg = LaplaceCfg::fine();
        let v1 = resolvent_apply(Bc::Dirichlet, c(1.0 + lshift), &f, &lcfg).unwrap();
        let v2 = resolvent_apply(Bc::Dirichlet, c(2.0 + lshift), &f, &lcfg).unwrap();
        let reference = v2.scaled(c(2.0)).add_scaled(&v1, c(-1.0));
        let xs = sample_grid(5.0, 7);
        let err = grid_rel_err(&g, &reference, &xs);
        assert!(err <= 1e-5, "partial fraction error {err:.3e}");
    }

    #[test]
    fn exponential_symbol_matches_semigroup() {
        // phi(z) = z e^{-z}, A = 1 - Lap: phi(A) f = e^{-1} (1 - Lap) T(1) f
        let f = gaussian_field();
        let phi = HolomorphicSymbol::new("z*exp(-z)", true, |z| z * (-z).exp());
        let spec = ContourSpec::standard(1.0);
        let g = hinf_apply(Bc::Dirichlet, &phi, &spec, 1.0, &f, &HinfCfg::fine()).unwrap();

        let tf = apply_semigroup(Bc::Dirichlet, SectorTime::real(1.0), &f, &ConvCfg::fine())
            .unwrap();
        let reference = tf
            .add_scaled(&tf.laplacian().unwrap(), c(-1.0))
            .scaled(c((-1.0f64).exp()));
        let xs = sample_grid(5.0, 7);
        let err = grid_rel_err(&g, &reference, &xs);
        assert!(err <= 1e-5, "semigroup composition error {err:.3e}");
    }

    #[test]
    fn oracle_match_for_difference_of_exponentials() {
        // phi(z) = e^{-z} - e^{-2z} against the sine-transform oracle
        let f = gaussian_field();
        let lshift = 1.0;
        let phi = HolomorphicSymbol::new("e^-z - e^-2z", true, |z| (-z).exp() - (-2.0 * z).exp());
        let spec = ContourSpec::standard(lshift);
        let g = hinf_apply(Bc::Dirichlet, &phi, &spec, lshift, &f, &HinfCfg::fine()).unwrap();
        let oracle = crate::spectral::oracle_function_calculus(
            Bc::Dirichlet,
            |s| c((-s).exp()) - c((-2.0 * s).exp()),
            lshift,
            &f,
            1e9,
        )
        .unwrap();
        let xs = sample_grid(5.0, 7);
        let err = grid_rel_err(&g, &oracle, &xs);
        assert!(err <= 1e-5, "oracle match error {err:.3e}");
    }

    #[test]
    fn contour_invariance() {
        // nu -> 1.2 nu and arc_radius -> arc_radius/2 leave the value fixed
        let f = gaussian_field();
        let phi = HolomorphicSymbol::new("z/(1+z)^2", true, |z| z / ((c(1.0) + z) * (c(1.0) + z)));
        let base = ContourSpec::standard(1.0);
        let cfg = HinfCfg::fine();
        let g0 = hinf_apply(Bc::Dirichlet, &phi, &base, 1.0, &f, &cfg).unwrap();
        let mut pert = base.clone();
        pert.nu *= 1.2;
        pert.arc_radius /= 2.0;
        let g1 = hinf_apply(Bc::Dirichlet, &phi, &pert, 1.0, &f, &cfg).unwrap();
        let xs = sample_grid(5.0, 7);
        let err = grid_rel_err(&g1, &g0, &xs);
        assert!(err <= 1e-5, "contour invariance {err:.3e}");
    }

    #[test]
    fn scaling_leaves_ratio_invariant() {
        // 3 phi has exactly 3x the output: the bound-probe ratio is invariant
        let f = gaussian_field();
        let phi = HolomorphicSymbol::new("p", true, |z| z / ((c(1.0) + z) * (c(1.0) + z)));
        let phi3 = HolomorphicSymbol::new("3p", true, |z| 3.0 * z / ((c(1.0) + z) * (c(1.0) + z)));
        let spec = ContourSpec::standard(1.0);
        let cfg = HinfCfg::fine();
        let g = hinf_apply(Bc::Dirichlet, &phi, &spec, 1.0, &f, &cfg).unwrap();
        let g3 = hinf_apply(Bc::Dirichlet, &phi3, &spec, 1.0, &f, &cfg).unwrap();
        let xs = sample_grid(4.0, 5);
        for &x in &xs {
            assert!((g3.eval(&[x]) - 3.0 * g.eval(&[x])).norm() <= 1e-9);
        }
    }

    #[test]
    fn symbol_cap_enforced() {
        let f = gaussian_field();
        let phi = HolomorphicSymbol::new("exp(z)", false, |z| z.exp());
        let spec = ContourSpec::standard(1.0);
        assert!(matches!(
            hinf_apply(Bc::Dirichlet, &phi, &spec, 1.0, &f, &HinfCfg::fine()),
            Err(LabError::SymbolUnboundedOnContour { .. })
        ));
    }

    #[test]
    fn contour_requires_arc_inside_resolvent_set() {
        let spec = ContourSpec::standard(1.0);
        assert!(spec.validate(0.3).is_err());
    }
}
