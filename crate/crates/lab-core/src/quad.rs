//! Quadrature for boundary-weighted half-line integrals.
//!
//! The half-line rule splits at x = 1: a Gauss-Jacobi rule matched to the
//! power weight handles (0, 1), dyadic panels of Gauss-Legendre nodes cover
//! (1, r_max). Rule weights absorb the power factor, so callers integrate
//! the smooth remainder only.

use crate::error::{LabError, Result};

/// Description of a boundary-weighted quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    /// Power matched by the Gauss-Jacobi rule at the boundary.
    pub jacobi_exponent: f64,
    /// Node count of the boundary rule on (0, 1).
    pub n_boundary: usize,
    /// Node count per dyadic panel on (1, r_max).
    pub n_bulk: usize,
    /// Truncation radius.
    pub r_max: f64,
    /// Bound on the discarded tail mass (relative).
    pub tail_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            jacobi_exponent: 0.0,
            n_boundary: 48,
            n_bulk: 16,
            r_max: 40.0,
            tail_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn with_exponent(&self, alpha: f64) -> Self {
        QuadratureSpec { jacobi_exponent: alpha, ..self.clone() }
    }

    /// Coarse variant for parameter scans where 1e-3 relative accuracy is enough.
    pub fn coarse() -> Self {
        QuadratureSpec { n_boundary: 24, n_bulk: 10, ..Default::default() }
    }
}

/// Nodes and weights of a one-dimensional rule; integrates sum w_i f(x_i).
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Affine image of this rule on [a, b], assuming self lives on [-1, 1].
    fn mapped(&self, a: f64, b: f64) -> Rule {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        Rule {
            nodes: self.nodes.iter().map(|&t| c + h * t).collect(),
            weights: self.weights.iter().map(|&w| w * h).collect(),
        }
    }
}

/// Symmetric tridiagonal eigensolver tracking first eigenvector components
/// (implicit QL with Wilkinson shifts). Returns (eigenvalues, first rows).
fn symtri_eigen_first(mut d: Vec<f64>, mut e: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 60, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if r == 0.0 && i > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    (idx.iter().map(|&i| d[i]).collect(), idx.iter().map(|&i| z[i]).collect())
}

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b.
fn gauss_jacobi_sym(n: usize, a: f64, b: f64) -> Rule {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    diag.push((b - a) / (a + b + 2.0));
    for k in 1..n {
        let kf = k as f64;
        let den = 2.0 * kf + a + b;
        diag.push((b * b - a * a) / (den * (den + 2.0)));
        let num = 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b);
        off.push((num / (den * den * (den + 1.0) * (den - 1.0))).sqrt());
    }
    // total mass 2^(a+b+1) B(a+1, b+1)
    let mu0 = ((a + b + 1.0) * std::f64::consts::LN_2 + crate::special::ln_gamma(a + 1.0)
        + crate::special::ln_gamma(b + 1.0)
        - crate::special::ln_gamma(a + b + 2.0))
    .exp();
    let (nodes, first) = symtri_eigen_first(diag, off);
    let weights = first.iter().map(|&v| mu0 * v * v).collect();
    Rule { nodes, weights }
}

/// Gauss-Legendre rule on [-1, 1] (cached per node count; panel rules are
/// rebuilt constantly inside kernel quadratures).
pub fn gauss_legendre(n: usize) -> Rule {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| gauss_jacobi_sym(n, 0.0, 0.0))
        .clone()
}

/// Rule for integral over (0, 1) of x^alpha f(x): weights absorb x^alpha.
pub fn gauss_jacobi01(n: usize, alpha: f64) -> Result<Rule> {
    if alpha <= -1.0 {
        return Err(LabError::NonIntegrableWeight { gamma: alpha });
    }
    // x = (1+u)/2 turns the weight into (1+u)^alpha with total factor 2^-(alpha+1)
    let base = gauss_jacobi_sym(n, 0.0, alpha);
    let scale = 0.5f64.powf(alpha + 1.0);
    Ok(Rule {
        nodes: base.nodes.iter().map(|&u| 0.5 * (1.0 + u)).collect(),
        weights: base.weights.iter().map(|&w| w * scale).collect(),
    })
}

/// Composite Gauss-Legendre over explicit panel edges.
pub fn panel_rule(edges: &[f64], n_per_panel: usize) -> Rule {
    let base = gauss_legendre(n_per_panel);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for w in edges.windows(2) {
        let sub = base.mapped(w[0], w[1]);
        nodes.extend(sub.nodes);
        weights.extend(sub.weights);
    }
    Rule { nodes, weights }
}

/// Dyadic panel edges covering [a, b] (a > 0), roughly doubling width.
pub fn dyadic_edges(a: f64, b: f64) -> Vec<f64> {
    assert!(a > 0.0 && b > a);
    let mut edges = vec![a];
    let mut x = a;
    while x < b {
        x = (2.0 * x).min(b);
        edges.push(x);
    }
    edges
}

/// Half-line rule integrating x^alpha f(x) over (0, r_max); the power factor
/// is absorbed into the weights on both segments.
#[derive(Debug, Clone)]
pub struct HalfLineRule {
    pub rule: Rule,
    /// Index of the first node beyond spec.r_max (nodes up to 2 r_max are
    /// kept for the tail certificate).
    split: usize,
    tail_tol: f64,
}

impl HalfLineRule {
    pub fn build(spec: &QuadratureSpec) -> Result<HalfLineRule> {
        Self::build_with(spec, spec.jacobi_exponent, spec.r_max)
    }

    /// Rule with an overridden boundary exponent and truncation radius.
    pub fn build_with(spec: &QuadratureSpec, alpha: f64, r_max: f64) -> Result<HalfLineRule> {
        Self::build_aligned(spec, alpha, r_max, &[])
    }

    /// As [`Self::build_with`], with panel edges aligned to breakpoints of
    /// limited integrand smoothness.
    pub fn build_aligned(
        spec: &QuadratureSpec,
        alpha: f64,
        r_max: f64,
        knots: &[f64],
    ) -> Result<HalfLineRule> {
        if alpha <= -1.0 {
            return Err(LabError::NonIntegrableWeight { gamma: alpha });
        }
        let r_max = r_max.max(2.0);
        let mut boundary = gauss_jacobi01(spec.n_boundary, alpha)?;
        let inner_knots: Vec<f64> =
            knots.iter().cloned().filter(|&k| k > 1e-12 && k < 1.0 - 1e-12).collect();
        if !inner_knots.is_empty() {
            // composite rule on (0,1): Jacobi head below the first knot,
            // Gauss panels between knots
            let head = inner_knots[0];
            let hj = gauss_jacobi01(spec.n_boundary, alpha)?;
            let mut nodes: Vec<f64> = hj.nodes.iter().map(|&t| t * head).collect();
            let mut weights: Vec<f64> = hj
                .weights
                .iter()
                .map(|&w| w * head.powf(alpha + 1.0))
                .collect();
            let mut edges = inner_knots.clone();
            edges.push(1.0);
            let tail = panel_rule(&edges, spec.n_bulk.max(12));
            for (&x, &w) in tail.nodes.iter().zip(&tail.weights) {
                nodes.push(x);
                weights.push(w * x.powf(alpha));
            }
            boundary = Rule { nodes, weights };
        }
        let mut nodes = boundary.nodes;
        let mut weights = boundary.weights;
        let mut edges = dyadic_edges(1.0, 2.0 * r_max);
        for &k in knots {
            if k > 1.0 + 1e-12 && k < 2.0 * r_max - 1e-12 {
                edges.push(k);
            }
        }
        edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        let bulk = panel_rule(&edges, spec.n_bulk);
        let mut split = nodes.len();
        let mut seen_split = false;
        for (&x, &w) in bulk.nodes.iter().zip(&bulk.weights) {
            if !seen_split && x > r_max {
                split = nodes.len();
                seen_split = true;
            }
            nodes.push(x);
            weights.push(w * x.powf(alpha));
        }
        if !seen_split {
            split = nodes.len();
        }
        Ok(HalfLineRule { rule: Rule { nodes, weights }, split, tail_tol: spec.tail_tol })
    }

    /// Integrate with the tail certificate: errors if the doubled radius
    /// moves the result by more than 10 * tail_tol relatively.
    pub fn integrate_checked(&self, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
        let mut inner = 0.0;
        let mut outer = 0.0;
        for (i, (&x, &w)) in self.rule.nodes.iter().zip(&self.rule.weights).enumerate() {
            let v = w * f(x);
            if i < self.split {
                inner += v;
            } else {
                outer += v;
            }
        }
        let total = inner + outer;
        let scale = total.abs().max(1e-300);
        if outer.abs() > 10.0 * self.tail_tol * scale {
            return Err(LabError::TailNotConverged {
                delta: outer.abs() / scale,
                tol: 10.0 * self.tail_tol,
            });
        }
        Ok(total)
    }

    pub fn integrate(&self, f: impl FnMut(f64) -> f64) -> f64 {
        let mut f = f;
        self.rule.integrate(|x| f(x))
    }
}

/// Truncation radius for integrands decaying beyond `support` against a
/// weight ~ x^alpha: the polynomial growth pushes the tail out.
pub fn effective_r_max(base: f64, support: f64, alpha: f64) -> f64 {
    base.max(support + 5.0 * alpha.max(0.0) + 10.0)
}

/// Symmetric panel rule over [c - half, c + half] for tangential directions.
pub fn line_rule(center: f64, half: f64, panels: usize, n_per_panel: usize) -> Rule {
    let mut edges = Vec::with_capacity(panels + 1);
    for i in 0..=panels {
        edges.push(center - half + 2.0 * half * i as f64 / panels as f64);
    }
    panel_rule(&edges, n_per_panel)
}
