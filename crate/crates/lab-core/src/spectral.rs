//! Independent half-line ground truth (d = 1): sine/cosine-transform
//! diagonalization and method-of-images Green's functions.
//!
//! Everything here is oracle machinery: it never touches the heat-kernel
//! quadrature it is used to cross-check.

use num_complex::Complex64;

use crate::axial::{AxialFn, AxialProfile, Decay};
use crate::cx::c;
use crate::error::{LabError, Result};
use crate::field::Field;
use crate::quad::{panel_rule, Rule};
use crate::space::Bc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    Sine,
    Cosine,
}

impl TransformMode {
    pub fn for_bc(bc: Bc) -> TransformMode {
        match bc {
            Bc::Dirichlet => TransformMode::Sine,
            Bc::Neumann => TransformMode::Cosine,
        }
    }

    fn kernel(&self, u: f64) -> f64 {
        match self {
            TransformMode::Sine => u.sin(),
            TransformMode::Cosine => u.cos(),
        }
    }

    /// d^n/dx^n of trig(xi x) as (sign, use_other) on the (sin, cos) pair.
    fn kernel_deriv(&self, n: usize, xi: f64, x: f64) -> f64 {
        // derivative cycles with period 4
        let base = match self {
            TransformMode::Sine => 0usize,
            TransformMode::Cosine => 1usize,
        };
        let phase = (base + n) % 4;
        let v = match phase {
            0 => (xi * x).sin(),
            1 => (xi * x).cos(),
            2 => -(xi * x).sin(),
            _ => -(xi * x).cos(),
        };
        xi.powi(n as i32) * v
    }
}

/// Frequency grid sized from the field's decay class and the spatial range
/// of later evaluations.
#[derive(Debug, Clone)]
pub struct TransformGrid {
    pub mode: TransformMode,
    pub xi_rule: Rule,
    pub xi_max: f64,
    pub alias_tol: f64,
}

impl TransformGrid {
    pub fn for_field(f: &Field, mode: TransformMode, x_max: f64) -> TransformGrid {
        let xi_max = match f.worst_decay() {
            // spectrum of exp(-x^2/(4s)) decays like exp(-s xi^2)
            Decay::Gaussian { scale } => (44.0 / scale.max(1e-3)).sqrt() + 4.0,
            _ => 60.0,
        };
        Self::with_bounds(mode, xi_max, x_max)
    }

    pub fn with_bounds(mode: TransformMode, xi_max: f64, x_max: f64) -> TransformGrid {
        // resolve oscillation against the largest spatial argument
        let per_panel_phase = 5.0;
        let n_panels = ((xi_max * x_max / per_panel_phase).ceil() as usize).clamp(16, 4000);
        let edges: Vec<f64> = (0..=n_panels)
            .map(|i| xi_max * i as f64 / n_panels as f64)
            .collect();
        TransformGrid { mode, xi_rule: panel_rule(&edges, 10), xi_max, alias_tol: 1e-6 }
    }
}

/// Frequency profile: transform values on the grid.
#[derive(Debug, Clone)]
pub struct FrequencyProfile {
    pub grid: TransformGrid,
    pub values: Vec<Complex64>,
}

impl FrequencyProfile {
    /// L^2(R_+) norm via Parseval: (2/pi) int |F|^2 dxi.
    pub fn parseval_norm(&self) -> f64 {
        let sq: f64 = self
            .grid
            .xi_rule
            .weights
            .iter()
            .zip(&self.values)
            .map(|(&w, v)| w * v.norm_sqr())
            .sum();
        (sq * 2.0 / std::f64::consts::PI).sqrt()
    }
}

fn spatial_rule_for(f: &Field, xi_max: f64) -> Result<Rule> {
    if f.boundary_power() < 0.0 {
        return Err(LabError::InvalidParameter(
            "transform oracle requires fields bounded at the boundary".into(),
        ));
    }
    let support = f.axial_support_radius();
    let dx = (5.0 / xi_max).min(0.5);
    let n = ((support / dx).ceil() as usize).clamp(8, 6000);
    let edges: Vec<f64> = (0..=n).map(|i| support * i as f64 / n as f64).collect();
    Ok(panel_rule(&edges, 10))
}

/// F_s f(xi) = int_0^inf f(x) sin(xi x) dx (or cosine); linear, with the
/// aliasing guard on the truncated spectral tail.
pub fn oracle_transform(
    f: &Field,
    mode: TransformMode,
    grid: &TransformGrid,
) -> Result<FrequencyProfile> {
    assert_eq!(f.d, 1, "oracle is one-dimensional");
    assert_eq!(mode, grid.mode, "grid built for the other transform");
    if f.is_zero() {
        return Ok(FrequencyProfile {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); grid.xi_rule.len()],
        });
    }
    let rule = spatial_rule_for(f, grid.xi_max)?;
    let values: Vec<Complex64> = grid
        .xi_rule
        .nodes
        .iter()
        .map(|&xi| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                acc += w * f.eval(&[x]) * mode.kernel(xi * x);
            }
            acc
        })
        .collect();
    // aliasing guard: energy in the last 2% of the grid against the total
    let total: f64 = grid
        .xi_rule
        .weights
        .iter()
        .zip(&values)
        .map(|(&w, v)| w * v.norm_sqr())
        .sum();
    let cut = grid.xi_max * 0.98;
    let tail: f64 = grid
        .xi_rule
        .nodes
        .iter()
        .zip(grid.xi_rule.weights.iter().zip(&values))
        .filter(|(&xi, _)| xi >= cut)
        .map(|(_, (&w, v))| w * v.norm_sqr())
        .sum();
    let tail_fraction = tail / total.max(1e-300);
    if tail_fraction > grid.alias_tol {
        return Err(LabError::AliasWarning { tail_fraction, tol: grid.alias_tol });
    }
    Ok(FrequencyProfile { grid: grid.clone(), values })
}

/// Spectral multiplier phi(lambda_shift + xi^2) applied through the
/// transform; evaluation is the inverse transform with derivative closures.
#[derive(Debug, Clone)]
pub struct MultiplierAxial {
    mode: TransformMode,
    xi_rule: Rule,
    /// Premultiplied (2/pi) w_xi phi(lambda + xi^2) F(xi).
    coeffs: Vec<Complex64>,
    /// Decay inherited from the source field (bounded multipliers do not
    /// spread supports on this battery).
    src_decay: Decay,
}

impl AxialFn for MultiplierAxial {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&xi, co) in self.xi_rule.nodes.iter().zip(&self.coeffs) {
            acc += co * self.mode.kernel_deriv(n, xi, x);
        }
        acc
    }

    fn max_order(&self) -> Option<usize> {
        None
    }

    fn boundary_power(&self) -> f64 {
        match self.mode {
            TransformMode::Sine => 1.0,
            TransformMode::Cosine => 0.0,
        }
    }

    fn decay(&self) -> Decay {
        self.src_decay
    }
}

/// phi(lambda_shift - Lap) f on the half-line by diagonalization:
/// Transform^-1 [ phi(lambda_shift + xi^2) Transform f ].
pub fn oracle_function_calculus(
    bc: Bc,
    phi: impl Fn(f64) -> Complex64,
    lambda_shift: f64,
    f: &Field,
    symbol_cap: f64,
) -> Result<Field> {
    assert_eq!(f.d, 1);
    let mode = TransformMode::for_bc(bc);
    let grid = TransformGrid::for_field(f, mode, 24.0);
    let profile = oracle_transform(f, mode, &grid)?;
    let mut worst: f64 = 0.0;
    let coeffs: Vec<Complex64> = grid
        .xi_rule
        .nodes
        .iter()
        .zip(grid.xi_rule.weights.iter().zip(&profile.values))
        .map(|(&xi, (&w, fv))| {
            let m = phi(lambda_shift + xi * xi);
            worst = worst.max(m.norm());
            (2.0 / std::f64::consts::PI) * w * m * fv
        })
        .collect();
    if worst > symbol_cap {
        return Err(LabError::UnboundedSymbol { max_abs: worst, cap: symbol_cap });
    }
    Ok(Field::axial(AxialProfile::new(MultiplierAxial {
        mode,
        xi_rule: grid.xi_rule,
        coeffs,
        src_decay: f.worst_decay(),
    })))
}

// ---------------------------------------------------------------------------
// Method-of-images Green's function for the resolvent
// ---------------------------------------------------------------------------

/// (lambda - Lap)^{-1} f via the explicit half-line Green's function
/// (2 sqrt(lambda))^{-1} (e^{-sqrt(lambda)|x-y|} -/+ e^{-sqrt(lambda)(x+y)}).
#[derive(Debug, Clone)]
pub struct GreenAxial {
    bc: Bc,
    lambda: Complex64,
    root: Complex64,
    src: AxialProfile,
}

impl GreenAxial {
    fn kernel_rule(&self, x: f64) -> Rule {
        // panels split at the |x-y| kink; resolution against exp(-Re root y)
        let rate = self.root.re.max(1e-3);
        let src_radius = self.src.support_radius();
        let hi = (x + 45.0 / rate).min(src_radius.max(x + 1.0));
        let mut edges: Vec<f64> = Vec::new();
        let scale = (1.0 / rate).min(1.0);
        let mut t = 0.0;
        while t < x {
            edges.push(t);
            t += scale.min((x - t).max(scale * 0.25));
        }
        edges.push(x);
        let mut t = x;
        while t < hi {
            t = (t + scale).min(hi);
            edges.push(t);
        }
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        panel_rule(&edges, 12)
    }

    fn green(&self, x: f64, y: f64) -> Complex64 {
        let r = self.root;
        let direct = (-r * (x - y).abs()).exp();
        let image = (-r * (x + y)).exp();
        match self.bc {
            Bc::Dirichlet => (direct - image) / (2.0 * r),
            Bc::Neumann => (direct + image) / (2.0 * r),
        }
    }

    fn green_dx(&self, x: f64, y: f64) -> Complex64 {
        let r = self.root;
        let direct = -r * (x - y).signum() * (-r * (x - y).abs()).exp();
        let image = -r * (-r * (x + y)).exp();
        match self.bc {
            Bc::Dirichlet => (direct - image) / (2.0 * r),
            Bc::Neumann => (direct + image) / (2.0 * r),
        }
    }
}

impl AxialFn for GreenAxial {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        match n {
            0 | 1 => {
                let rule = self.kernel_rule(x);
                let mut acc = Complex64::new(0.0, 0.0);
                for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
                    if y <= 0.0 {
                        continue;
                    }
                    let k = if n == 0 { self.green(x, y) } else { self.green_dx(x, y) };
                    acc += w * k * self.src.eval(y);
                }
                acc
            }
            // u'' = lambda u - f away from the diagonal, differentiated on
            _ => self.lambda * self.eval_deriv(n - 2, x) - self.src.eval_deriv(n - 2, x),
        }
    }

    fn max_order(&self) -> Option<usize> {
        None
    }

    fn boundary_power(&self) -> f64 {
        match self.bc {
            Bc::Dirichlet => 1.0,
            Bc::Neumann => 0.0,
        }
    }

    fn decay(&self) -> Decay {
        let rate = self.root.re.max(1e-3);
        let src_r = self.src.support_radius();
        Decay::Compact { radius: src_r + 45.0 / rate }
    }
}

/// Oracle resolvent (lambda - Lap_bc)^{-1} f on the half-line.
pub fn oracle_resolvent(bc: Bc, lambda: Complex64, f: &Field) -> Result<Field> {
    assert_eq!(f.d, 1);
    if lambda.im == 0.0 && lambda.re <= 0.0 {
        return Err(LabError::BranchCut { lambda });
    }
    let root = lambda.sqrt();
    let terms = f
        .terms
        .iter()
        .map(|t| crate::field::Term {
            coeff: t.coeff,
            axial: AxialProfile::new(GreenAxial {
                bc,
                lambda,
                root,
                src: t.axial.clone(),
            }),
            tangential: Vec::new(),
        })
        .collect();
    Ok(Field { d: 1, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::ExpPoly;
    use crate::field::battery_1d;

    fn exp_field() -> Field {
        Field::axial(AxialProfile::new(ExpPoly::exp_decay(&[(1.0, 0.0)], 1.0)))
    }

    #[test]
    fn sine_transform_of_exponential() {
        // F_s e^{-x}(xi) = xi / (1 + xi^2); at xi = 1 -> 1/2
        let f = exp_field();
        let mut grid = TransformGrid::with_bounds(TransformMode::Sine, 40.0, 20.0);
        // exponential decay leaves ~xi^-2 spectral mass; the default alias
        // guard flags it, pointwise values are still fine
        assert!(matches!(
            oracle_transform(&f, TransformMode::Sine, &grid),
            Err(LabError::AliasWarning { .. })
        ));
        grid.alias_tol = 1e-2;
        let prof = oracle_transform(&f, TransformMode::Sine, &grid).unwrap();
        // locate node nearest xi = 1 and compare against the closed form
        let mut worst: f64 = 0.0;
        for (&xi, v) in grid.xi_rule.nodes.iter().zip(&prof.values) {
            let exact = xi / (1.0 + xi * xi);
            worst = worst.max((v.re - exact).abs());
        }
        assert!(worst < 1e-9, "max err {worst:.3e}");
    }

    #[test]
    fn cosine_transform_at_zero() {
        // F_c e^{-x}(0) = 1
        let f = exp_field();
        let mut grid = TransformGrid::with_bounds(TransformMode::Cosine, 40.0, 20.0);
        grid.alias_tol = 1e-2;
        let prof = oracle_transform(&f, TransformMode::Cosine, &grid).unwrap();
        let v0 = prof.values[0];
        let xi0 = grid.xi_rule.nodes[0];
        let exact = 1.0 / (1.0 + xi0 * xi0);
        assert!((v0.re - exact).abs() < 1e-9);
    }

    #[test]
    fn zero_field_transforms_to_zero() {
        let grid = TransformGrid::with_bounds(TransformMode::Sine, 10.0, 10.0);
        let prof = oracle_transform(&Field::zero(1), TransformMode::Sine, &grid).unwrap();
        assert!(prof.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn round_trip_on_parity_pure_battery() {
        // odd-smooth fields through the sine transform
        let odd = [
            Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 1.0)], 1.0))),
            Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(0.5, 1.0), (1.0, 3.0)], 2.0))),
        ];
        for (i, f) in odd.iter().enumerate() {
            let g = oracle_function_calculus(Bc::Dirichlet, |_| c(1.0), 0.0, f, 1e9).unwrap();
            let mut worst: f64 = 0.0;
            for &x in &[0.2, 0.9, 2.1, 4.5] {
                worst = worst.max((g.eval(&[x]) - f.eval(&[x])).norm());
            }
            assert!(worst <= 1e-8, "odd field {i}: {worst:.3e}");
        }
        // even-smooth fields through the cosine transform
        let even = [
            Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 0.0)], 1.0))),
            Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 0.0), (0.5, 2.0)], 1.0))),
        ];
        for (i, f) in even.iter().enumerate() {
            let g = oracle_function_calculus(Bc::Neumann, |_| c(1.0), 0.0, f, 1e9).unwrap();
            let mut worst: f64 = 0.0;
            for &x in &[0.2, 0.9, 2.1, 4.5] {
                worst = worst.max((g.eval(&[x]) - f.eval(&[x])).norm());
            }
            assert!(worst <= 1e-8, "even field {i}: {worst:.3e}");
        }
    }

    #[test]
    fn parseval_on_battery() {
        use crate::norms::weighted_lp_norm;
        use crate::quad::QuadratureSpec;
        let quad = QuadratureSpec::default();
        for (name, f) in battery_1d().into_iter().take(4) {
            let grid = TransformGrid::for_field(&f, TransformMode::Sine, 12.0);
            let prof = oracle_transform(&f, TransformMode::Sine, &grid).unwrap();
            let lhs = prof.parseval_norm();
            let rhs = weighted_lp_norm(&f, 2.0, 0.0, &quad).unwrap();
            assert!(
                ((lhs - rhs) / rhs).abs() < 1e-6,
                "{name}: parseval {lhs} vs norm {rhs}"
            );
        }
    }

    #[test]
    fn oracle_resolvent_closed_forms() {
        // Dirichlet: u = (x/2) e^{-x}; Neumann: u = ((x+1)/2) e^{-x}
        let f = exp_field();
        let u = oracle_resolvent(Bc::Dirichlet, c(1.0), &f).unwrap();
        let mut worst: f64 = 0.0;
        for &x in &[0.25f64, 0.8, 1.7, 3.2] {
            let exact = 0.5 * x * (-x).exp();
            worst = worst.max(((u.eval(&[x]).re - exact) / exact).abs());
        }
        assert!(worst <= 1e-8, "dirichlet rel err {worst:.3e}");

        let u = oracle_resolvent(Bc::Neumann, c(1.0), &f).unwrap();
        let mut worst: f64 = 0.0;
        for &x in &[0.0f64, 0.5, 1.4, 2.8] {
            let exact = 0.5 * (x + 1.0) * (-x).exp();
            worst = worst.max(((u.eval(&[x.max(1e-10)]).re - exact) / exact).abs());
        }
        assert!(worst <= 1e-8, "neumann rel err {worst:.3e}");
    }

    #[test]
    fn oracle_resolvent_identity() {
        // R(2)f - R(1)f = (1-2) R(2) R(1) f
        let f = exp_field();
        let r1 = oracle_resolvent(Bc::Dirichlet, c(1.0), &f).unwrap();
        let r2 = oracle_resolvent(Bc::Dirichlet, c(2.0), &f).unwrap();
        let r21 = oracle_resolvent(Bc::Dirichlet, c(2.0), &r1).unwrap();
        let mut worst: f64 = 0.0;
        for &x in &[0.3, 1.0, 2.5] {
            let lhs = r2.eval(&[x]) - r1.eval(&[x]);
            let rhs = -r21.eval(&[x]);
            worst = worst.max((lhs - rhs).norm());
        }
        assert!(worst <= 1e-8, "resolvent identity residual {worst:.3e}");
    }

    #[test]
    fn oracle_resolvent_branch_cut() {
        let f = exp_field();
        assert!(matches!(
            oracle_resolvent(Bc::Dirichlet, c(-0.5), &f),
            Err(LabError::BranchCut { .. })
        ));
    }

    #[test]
    fn oracle_resolvent_pde_residual_and_bc() {
        let f = exp_field();
        let lam = Complex64::new(1.3, 0.6);
        let u = oracle_resolvent(Bc::Dirichlet, lam, &f).unwrap();
        // independent second derivative: finite difference of the kernel u'
        let mut worst: f64 = 0.0;
        for &x in &[0.4, 1.1, 2.3] {
            let central = |h: f64| {
                (u.eval_deriv(&[1], &[x + h]) - u.eval_deriv(&[1], &[x - h])) / (2.0 * h)
            };
            let (d0, d1, d2) = (central(0.08), central(0.04), central(0.02));
            let r0 = (4.0 * d1 - d0) / 3.0;
            let r1 = (4.0 * d2 - d1) / 3.0;
            let d2r = (16.0 * r1 - r0) / 15.0;
            let res = lam * u.eval(&[x]) - d2r - f.eval(&[x]);
            worst = worst.max(res.norm());
        }
        assert!(worst <= 1e-8, "pde residual {worst:.3e}");
        let tr = crate::ops::trace(&u, 0, 1e-6).unwrap();
        assert!(tr.value.norm() <= 1e-8);
        let un = oracle_resolvent(Bc::Neumann, lam, &f).unwrap();
        let trn = crate::ops::trace(&un, 1, 1e-4).unwrap();
        assert!(trn.value.norm() <= 1e-6, "neumann bc {:.3e}", trn.value.norm());
    }

    #[test]
    fn multiplier_multiplicativity() {
        // phi psi applied at once vs sequentially
        let f = Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 1.0)], 1.0)));
        let phi = |s: f64| c(1.0) / (1.0 + s);
        let psi = |s: f64| c((-0.5 * s).exp());
        let both = oracle_function_calculus(Bc::Dirichlet, |s| phi(s) * psi(s), 0.0, &f, 1e9)
            .unwrap();
        let first = oracle_function_calculus(Bc::Dirichlet, psi, 0.0, &f, 1e9).unwrap();
        let seq = oracle_function_calculus(Bc::Dirichlet, phi, 0.0, &first, 1e9).unwrap();
        let mut worst: f64 = 0.0;
        for &x in &[0.3, 1.2, 3.0] {
            worst = worst.max((both.eval(&[x]) - seq.eval(&[x])).norm());
        }
        assert!(worst <= 1e-8, "multiplicativity {worst:.3e}");
    }

    #[test]
    fn unbounded_symbol_rejected() {
        let f = Field::axial(AxialProfile::new(ExpPoly::gaussian(&[(1.0, 1.0)], 1.0)));
        let res = oracle_function_calculus(Bc::Dirichlet, |s| c(s.exp()), 0.0, &f, 1e3);
        assert!(matches!(res, Err(LabError::UnboundedSymbol { .. })));
    }
}
