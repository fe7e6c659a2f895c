//! Axial (x_1) factors of separable fields.
//!
//! Every factor carries analytic derivative closures; numerical
//! differentiation appears only in self-check tests. The closed families:
//!
//!   * `ExpPoly`  -- sums of c x^sigma exp(-b x - a x^2),
//!   * `Cutoff`   -- septic-smoothstep plateaus and bumps (C^3),
//!   * `LogPow`   -- sums of c x^sigma (-log x)^beta times the cutoff,
//!
//! all closed under differentiation and multiplication by x^theta. Operator
//! outputs (semigroup, resolvent, contour integrals) enter through the same
//! trait with quadrature-backed closures.

use std::sync::Arc;

use num_complex::Complex64;

use crate::cx::c;
use crate::space::Bc;

/// Decay class of an axial factor, used to size truncation radii and
/// frequency grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// |f| ~ exp(-x^2 / (4 scale)).
    Gaussian { scale: f64 },
    /// |f| ~ exp(-rate x).
    Exponential { rate: f64 },
    /// Supported in [0, radius].
    Compact { radius: f64 },
}

impl Decay {
    /// Radius beyond which the factor is negligible at ~1e-17 relative.
    pub fn support_radius(&self) -> f64 {
        match *self {
            Decay::Gaussian { scale } => (160.0 * scale).sqrt(),
            Decay::Exponential { rate } => 40.0 / rate,
            Decay::Compact { radius } => radius,
        }
    }

    fn widen_by_heat(self, z_abs_total: f64) -> Decay {
        let r = self.support_radius();
        Decay::Gaussian { scale: z_abs_total + r * r / 160.0 }
    }
}

pub trait AxialFn: Send + Sync + std::fmt::Debug {
    /// n-th derivative at x > 0.
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64;

    /// Highest derivative order available; None means unlimited.
    fn max_order(&self) -> Option<usize>;

    /// Leading power sigma_0 with f ~ x^sigma_0 as x -> 0+.
    fn boundary_power(&self) -> f64;

    fn decay(&self) -> Decay;

    /// Exact semigroup composition hook (Chapman-Kolmogorov): a heat
    /// evolution applied to an already-evolved profile extends its times.
    fn compose_heat(&self, _bc: Bc, _z: Complex64) -> Option<AxialProfile> {
        None
    }

    /// Exact multiplication by x^theta where the family is closed under it.
    fn power_scaled_exact(&self, _theta: f64) -> Option<AxialProfile> {
        None
    }

    /// Exact single differentiation where the family is closed under it.
    fn derivative_exact(&self) -> Option<AxialProfile> {
        None
    }

    /// Breakpoints of limited smoothness (piecewise definitions); quadrature
    /// panels are aligned with these.
    fn knots(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Expose (nodes, source) when self is a weighted sum of heat evolutions
    /// of the given boundary condition, enabling exact flattening of nested
    /// Laplace quadratures.
    fn as_heat_comb(
        &self,
        _bc: Bc,
    ) -> Option<(Vec<(num_complex::Complex64, num_complex::Complex64)>, AxialProfile)> {
        None
    }
}

/// Shared handle to an axial factor.
#[derive(Clone, Debug)]
pub struct AxialProfile(pub Arc<dyn AxialFn>);

impl AxialProfile {
    pub fn new(f: impl AxialFn + 'static) -> Self {
        AxialProfile(Arc::new(f))
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.0.eval_deriv(0, x)
    }

    pub fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        self.0.eval_deriv(n, x)
    }

    pub fn max_order(&self) -> Option<usize> {
        self.0.max_order()
    }

    pub fn boundary_power(&self) -> f64 {
        self.0.boundary_power()
    }

    pub fn decay(&self) -> Decay {
        self.0.decay()
    }

    pub fn support_radius(&self) -> f64 {
        self.0.decay().support_radius()
    }

    pub fn knots(&self) -> Vec<f64> {
        self.0.knots()
    }

    /// k-th derivative as a profile.
    pub fn derivative(&self, k: usize) -> AxialProfile {
        if k == 0 {
            return self.clone();
        }
        if let Some(d) = self.0.derivative_exact() {
            return d.derivative(k - 1);
        }
        AxialProfile::new(DerivShift { base: self.clone(), shift: k })
    }

    /// x^theta * f, exact within the family when possible.
    pub fn power_scaled(&self, theta: f64) -> AxialProfile {
        if theta == 0.0 {
            return self.clone();
        }
        self.0
            .power_scaled_exact(theta)
            .unwrap_or_else(|| AxialProfile::new(PowerScaled { base: self.clone(), theta }))
    }

    /// f(r x) as a profile.
    pub fn scaled_arg(&self, r: f64) -> AxialProfile {
        assert!(r > 0.0);
        AxialProfile::new(ScaledArg { base: self.clone(), r })
    }
}

/// Falling factorial theta (theta-1) ... (theta-j+1).
pub(crate) fn falling(theta: f64, j: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..j {
        acc *= theta - i as f64;
    }
    acc
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (n - i) as f64 / (k - i) as f64;
    }
    acc
}

// ---------------------------------------------------------------------------
// ExpPoly: sum of c x^sigma exp(-b x - a x^2)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ExpPoly {
    /// (coefficient, power) pairs of the prefactor.
    terms: Vec<(Complex64, f64)>,
    lin: f64,
    quadratic: f64,
    /// Term lists for derivatives 0..=PRECOMP, built at construction.
    derivs: Vec<Vec<(Complex64, f64)>>,
}

const PRECOMP_ORDERS: usize = 9;

impl ExpPoly {
    pub fn new(terms: &[(f64, f64)], lin: f64, quadratic: f64) -> ExpPoly {
        let t: Vec<(Complex64, f64)> = terms.iter().map(|&(co, s)| (c(co), s)).collect();
        Self::new_complex(t, lin, quadratic)
    }

    pub fn new_complex(terms: Vec<(Complex64, f64)>, lin: f64, quadratic: f64) -> ExpPoly {
        assert!(quadratic >= 0.0 && (quadratic > 0.0 || lin > 0.0), "profile must decay");
        let mut derivs = Vec::with_capacity(PRECOMP_ORDERS + 1);
        derivs.push(consolidate(terms.clone()));
        for n in 0..PRECOMP_ORDERS {
            let next = differentiate_terms(&derivs[n], lin, quadratic);
            derivs.push(next);
        }
        ExpPoly { terms: derivs[0].clone(), lin, quadratic, derivs }
    }

    /// exp(-b x) times a polynomial given as (coeff, integer power).
    pub fn exp_decay(terms: &[(f64, f64)], b: f64) -> ExpPoly {
        Self::new(terms, b, 0.0)
    }

    /// exp(-x^2/(4 s)) times a polynomial.
    pub fn gaussian(terms: &[(f64, f64)], s: f64) -> ExpPoly {
        Self::new(terms, 0.0, 1.0 / (4.0 * s))
    }

    fn term_list(&self, n: usize) -> std::borrow::Cow<'_, Vec<(Complex64, f64)>> {
        if n < self.derivs.len() {
            std::borrow::Cow::Borrowed(&self.derivs[n])
        } else {
            let mut cur = self.derivs.last().unwrap().clone();
            for _ in self.derivs.len() - 1..n {
                cur = differentiate_terms(&cur, self.lin, self.quadratic);
            }
            std::borrow::Cow::Owned(cur)
        }
    }
}

fn consolidate(mut terms: Vec<(Complex64, f64)>) -> Vec<(Complex64, f64)> {
    terms.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let mut out: Vec<(Complex64, f64)> = Vec::with_capacity(terms.len());
    for (co, s) in terms {
        match out.last_mut() {
            Some(last) if (last.1 - s).abs() < 1e-12 => last.0 += co,
            _ => out.push((co, s)),
        }
    }
    out.retain(|(co, _)| co.norm() > 0.0);
    out
}

fn differentiate_terms(
    terms: &[(Complex64, f64)],
    lin: f64,
    quadratic: f64,
) -> Vec<(Complex64, f64)> {
    let mut next = Vec::with_capacity(terms.len() * 3);
    for &(co, s) in terms {
        if s != 0.0 {
            next.push((co * s, s - 1.0));
        }
        if lin != 0.0 {
            next.push((-co * lin, s));
        }
        if quadratic != 0.0 {
            next.push((-co * 2.0 * quadratic, s + 1.0));
        }
    }
    consolidate(next)
}

impl AxialFn for ExpPoly {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        let list = self.term_list(n);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(co, s) in list.iter() {
            acc += co * x.powf(s);
        }
        acc * (-self.lin * x - self.quadratic * x * x).exp()
    }

    fn max_order(&self) -> Option<usize> {
        None
    }

    fn boundary_power(&self) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        self.terms.iter().map(|&(_, s)| s).fold(f64::INFINITY, f64::min)
    }

    fn decay(&self) -> Decay {
        if self.quadratic > 0.0 {
            Decay::Gaussian { scale: 1.0 / (4.0 * self.quadratic) }
        } else {
            Decay::Exponential { rate: self.lin }
        }
    }

    fn power_scaled_exact(&self, theta: f64) -> Option<AxialProfile> {
        let shifted: Vec<(Complex64, f64)> =
            self.terms.iter().map(|&(co, s)| (co, s + theta)).collect();
        Some(AxialProfile::new(ExpPoly::new_complex(shifted, self.lin, self.quadratic)))
    }

    fn derivative_exact(&self) -> Option<AxialProfile> {
        let list = differentiate_terms(&self.terms, self.lin, self.quadratic);
        Some(AxialProfile::new(ExpPoly::new_complex(list, self.lin, self.quadratic)))
    }
}

// ---------------------------------------------------------------------------
// Cutoff: septic smoothstep plateau / bump, C^3 at the joints
// ---------------------------------------------------------------------------

/// S(u) = 35u^4 - 84u^5 + 70u^6 - 20u^7 rises 0 -> 1 on [0,1] with three
/// vanishing derivatives at both ends.
fn smoothstep(n: usize, u: f64) -> f64 {
    const CO: [f64; 8] = [0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0];
    let mut acc = 0.0;
    for (m, &co) in CO.iter().enumerate() {
        if co == 0.0 || m < n {
            continue;
        }
        acc += co * falling(m as f64, n) * u.powi((m - n) as i32);
    }
    acc
}

/// Plateau/bump built from smoothsteps: 0 before `rise`, 1 between, 0 after
/// `fall`. `rise: None` starts at 1 from the boundary (the witness cutoff).
#[derive(Debug, Clone)]
pub struct Cutoff {
    rise: Option<(f64, f64)>,
    fall: (f64, f64),
}

impl Cutoff {
    /// The boundary witness: 1 on [0, 1/2], smoothstep down, 0 from 3/4.
    pub fn witness() -> Cutoff {
        Cutoff { rise: None, fall: (0.5, 0.75) }
    }

    /// witness(x / r).
    pub fn witness_scaled(r: f64) -> Cutoff {
        Cutoff { rise: None, fall: (0.5 * r, 0.75 * r) }
    }

    /// Interior bump: 0 outside (a, d), 1 on [b, c].
    pub fn bump(a: f64, b: f64, cc: f64, d: f64) -> Cutoff {
        assert!(0.0 <= a && a < b && b <= cc && cc < d);
        Cutoff { rise: Some((a, b)), fall: (cc, d) }
    }

    pub fn support_end(&self) -> f64 {
        self.fall.1
    }
}

impl AxialFn for Cutoff {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        if let Some((a, b)) = self.rise {
            if x <= a {
                return c(0.0);
            }
            if x < b {
                let w = b - a;
                return c(smoothstep(n, (x - a) / w) / w.powi(n as i32));
            }
        }
        let (lo, hi) = self.fall;
        if x <= lo {
            return c(if n == 0 { 1.0 } else { 0.0 });
        }
        if x >= hi {
            return c(0.0);
        }
        let w = hi - lo;
        let v = smoothstep(n, (x - lo) / w) / w.powi(n as i32);
        c(if n == 0 { 1.0 - v } else { -v })
    }

    fn max_order(&self) -> Option<usize> {
        Some(3)
    }

    fn boundary_power(&self) -> f64 {
        0.0
    }

    fn decay(&self) -> Decay {
        Decay::Compact { radius: self.fall.1 }
    }

    fn knots(&self) -> Vec<f64> {
        let mut k = vec![self.fall.0, self.fall.1];
        if let Some((a, b)) = self.rise {
            k.push(a);
            k.push(b);
        }
        k
    }
}

// ---------------------------------------------------------------------------
// LogPow: sum of c x^sigma (-log x)^beta times the witness cutoff
// ---------------------------------------------------------------------------

/// Log-singular profiles for the blow-up probes, supported in (0, 3/4].
#[derive(Debug, Clone)]
pub struct LogPow {
    terms: Vec<(f64, f64, f64)>, // (c, sigma, beta)
    cutoff: Cutoff,
}

impl LogPow {
    pub fn new(terms: &[(f64, f64, f64)]) -> LogPow {
        LogPow { terms: terms.to_vec(), cutoff: Cutoff::witness() }
    }

    /// The paper's blow-up input x^sigma |log x|^(-(p+1)/(2p)) zeta(x).
    pub fn blowup_input(sigma: f64, p: f64) -> LogPow {
        LogPow::new(&[(1.0, sigma, -(p + 1.0) / (2.0 * p))])
    }

    fn bare_deriv(&self, n: usize, x: f64) -> f64 {
        // derivative term lists of sum c x^s (-ln x)^b
        let mut cur = self.terms.clone();
        for _ in 0..n {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for &(co, s, b) in &cur {
                if s != 0.0 {
                    next.push((co * s, s - 1.0, b));
                }
                if b != 0.0 {
                    next.push((-co * b, s - 1.0, b - 1.0));
                }
            }
            cur = next;
        }
        let l = -x.ln();
        cur.iter().map(|&(co, s, b)| co * x.powf(s) * l.powf(b)).sum()
    }
}

impl AxialFn for LogPow {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        if x >= self.cutoff.support_end() || x <= 0.0 {
            return c(0.0);
        }
        // product rule against the cutoff
        let mut acc = 0.0;
        for j in 0..=n {
            let zeta_j = self.cutoff.eval_deriv(j, x).re;
            if zeta_j != 0.0 {
                acc += binomial(n, j) * zeta_j * self.bare_deriv(n - j, x);
            }
        }
        c(acc)
    }

    fn max_order(&self) -> Option<usize> {
        Some(3)
    }

    fn boundary_power(&self) -> f64 {
        self.terms.iter().map(|&(_, s, _)| s).fold(f64::INFINITY, f64::min)
    }

    fn decay(&self) -> Decay {
        Decay::Compact { radius: self.cutoff.support_end() }
    }

    fn knots(&self) -> Vec<f64> {
        self.cutoff.knots()
    }
}

// ---------------------------------------------------------------------------
// Wrappers
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct DerivShift {
    base: AxialProfile,
    shift: usize,
}

impl AxialFn for DerivShift {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        self.base.eval_deriv(n + self.shift, x)
    }

    fn max_order(&self) -> Option<usize> {
        self.base.max_order().map(|m| m.saturating_sub(self.shift))
    }

    fn boundary_power(&self) -> f64 {
        let s = self.base.boundary_power();
        if (s - s.round()).abs() < 1e-12 && s >= 0.0 {
            // polynomial scale: derivatives lower the power but leave constants
            (s - self.shift as f64).max(0.0)
        } else {
            s - self.shift as f64
        }
    }

    fn decay(&self) -> Decay {
        self.base.decay()
    }

    fn knots(&self) -> Vec<f64> {
        self.base.knots()
    }
}

#[derive(Debug)]
struct PowerScaled {
    base: AxialProfile,
    theta: f64,
}

impl AxialFn for PowerScaled {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=n {
            let co = binomial(n, j) * falling(self.theta, j);
            if co != 0.0 {
                acc += co * x.powf(self.theta - j as f64) * self.base.eval_deriv(n - j, x);
            }
        }
        acc
    }

    fn max_order(&self) -> Option<usize> {
        self.base.max_order()
    }

    fn boundary_power(&self) -> f64 {
        self.base.boundary_power() + self.theta
    }

    fn decay(&self) -> Decay {
        self.base.decay()
    }

    fn knots(&self) -> Vec<f64> {
        self.base.knots()
    }

    fn power_scaled_exact(&self, theta: f64) -> Option<AxialProfile> {
        let total = self.theta + theta;
        if total == 0.0 {
            Some(self.base.clone())
        } else {
            Some(AxialProfile::new(PowerScaled { base: self.base.clone(), theta: total }))
        }
    }
}

#[derive(Debug)]
struct ScaledArg {
    base: AxialProfile,
    r: f64,
}

impl AxialFn for ScaledArg {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        self.r.powi(n as i32) * self.base.eval_deriv(n, self.r * x)
    }

    fn max_order(&self) -> Option<usize> {
        self.base.max_order()
    }

    fn boundary_power(&self) -> f64 {
        self.base.boundary_power()
    }

    fn decay(&self) -> Decay {
        match self.base.decay() {
            Decay::Gaussian { scale } => Decay::Gaussian { scale: scale / (self.r * self.r) },
            Decay::Exponential { rate } => Decay::Exponential { rate: rate * self.r },
            Decay::Compact { radius } => Decay::Compact { radius: radius / self.r },
        }
    }

    fn knots(&self) -> Vec<f64> {
        self.base.knots().into_iter().map(|k| k / self.r).collect()
    }
}

/// Heat-widened decay of an evolved profile.
pub(crate) fn evolved_decay(src: Decay, z_abs: f64) -> Decay {
    src.widen_by_heat(z_abs)
}
