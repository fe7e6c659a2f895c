//! Test functions on the half-space: finite sums of separable terms.
//!
//! Each term is (coefficient) x (axial factor of x_1) x (tangential
//! Gaussian-polynomial factors of the remaining coordinates). Sums of
//! separable terms are closed under derivatives, the Laplacian, power
//! multiplication and argument scaling, and the semigroup acts term-wise.

use num_complex::Complex64;

use crate::axial::{AxialProfile, Decay, ExpPoly};
use crate::error::{LabError, Result};
use crate::tangential::GaussFactor;

#[derive(Debug, Clone)]
pub struct Term {
    pub coeff: Complex64,
    pub axial: AxialProfile,
    /// One factor per tangential coordinate; empty in d = 1.
    pub tangential: Vec<GaussFactor>,
}

impl Term {
    fn eval_deriv(&self, alpha: &[usize], x: &[f64]) -> Complex64 {
        let mut acc = self.coeff * self.axial.eval_deriv(alpha[0], x[0]);
        for (j, g) in self.tangential.iter().enumerate() {
            acc *= g.eval_deriv(alpha[j + 1], x[j + 1]);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct Field {
    pub d: usize,
    pub terms: Vec<Term>,
}

impl Field {
    pub fn zero(d: usize) -> Field {
        Field { d, terms: Vec::new() }
    }

    /// One-dimensional field from an axial profile.
    pub fn axial(profile: AxialProfile) -> Field {
        Field {
            d: 1,
            terms: vec![Term {
                coeff: Complex64::new(1.0, 0.0),
                axial: profile,
                tangential: Vec::new(),
            }],
        }
    }

    /// Separable field: axial profile times tangential factors.
    pub fn separable(profile: AxialProfile, tangential: Vec<GaussFactor>) -> Field {
        Field {
            d: 1 + tangential.len(),
            terms: vec![Term {
                coeff: Complex64::new(1.0, 0.0),
                axial: profile,
                tangential,
            }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let alpha = vec![0; self.d];
        self.eval_deriv(&alpha, x)
    }

    /// Pointwise derivative d^alpha f(x).
    pub fn eval_deriv(&self, alpha: &[usize], x: &[f64]) -> Complex64 {
        assert_eq!(alpha.len(), self.d);
        assert_eq!(x.len(), self.d);
        self.terms.iter().map(|t| t.eval_deriv(alpha, x)).sum()
    }

    /// Maximal derivative order available on every term (None = unlimited;
    /// tangential factors are always smooth).
    pub fn max_order(&self) -> Option<usize> {
        let mut out: Option<usize> = None;
        for t in &self.terms {
            if let Some(m) = t.axial.max_order() {
                out = Some(out.map_or(m, |cur| cur.min(m)));
            }
        }
        out
    }

    pub fn require_order(&self, k: usize) -> Result<()> {
        match self.max_order() {
            Some(m) if m < k => {
                Err(LabError::InsufficientDerivatives { requested: k, available: m })
            }
            _ => Ok(()),
        }
    }

    /// d^alpha f as a new field (exact term-wise differentiation).
    pub fn derivative(&self, alpha: &[usize]) -> Result<Field> {
        assert_eq!(alpha.len(), self.d);
        self.require_order(alpha[0])?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut tang = Vec::with_capacity(t.tangential.len());
                for (j, g) in t.tangential.iter().enumerate() {
                    tang.push(tangential_derivative(g, alpha[j + 1]));
                }
                Term {
                    coeff: t.coeff,
                    axial: t.axial.derivative(alpha[0]),
                    tangential: tang,
                }
            })
            .collect();
        Ok(Field { d: self.d, terms })
    }

    /// Laplacian as a field (sum of per-coordinate second derivatives).
    pub fn laplacian(&self) -> Result<Field> {
        let mut out = Field::zero(self.d);
        for j in 0..self.d {
            let mut alpha = vec![0; self.d];
            alpha[j] = 2;
            out = out.add(&self.derivative(&alpha)?);
        }
        Ok(out)
    }

    pub fn scaled(&self, co: Complex64) -> Field {
        if co.norm() == 0.0 {
            return Field::zero(self.d);
        }
        Field {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff * co, ..t.clone() })
                .collect(),
        }
    }

    pub fn add(&self, other: &Field) -> Field {
        assert_eq!(self.d, other.d);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Field { d: self.d, terms }
    }

    pub fn add_scaled(&self, other: &Field, co: Complex64) -> Field {
        self.add(&other.scaled(co))
    }

    /// x_1^theta f (spec operation M^theta).
    pub fn multiply_power(&self, theta: f64) -> Field {
        Field {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|t| Term { axial: t.axial.power_scaled(theta), ..t.clone() })
                .collect(),
        }
    }

    /// f(r x) in all coordinates.
    pub fn scaled_arg(&self, r: f64) -> Field {
        Field {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff,
                    axial: t.axial.scaled_arg(r),
                    tangential: t.tangential.iter().map(|g| g.scaled_arg(r)).collect(),
                })
                .collect(),
        }
    }

    /// Leading boundary power over all terms (quadrature hint).
    pub fn boundary_power(&self) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        self.terms
            .iter()
            .map(|t| t.axial.boundary_power())
            .fold(f64::INFINITY, f64::min)
    }

    /// Union of the axial smoothness breakpoints over the terms.
    pub fn axial_knots(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.terms.iter().flat_map(|t| t.axial.knots()).collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }

    /// Axial radius beyond which the field is negligible.
    pub fn axial_support_radius(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.axial.support_radius())
            .fold(2.0f64, f64::max)
    }

    /// Tangential integration window [lo, hi] per tangential coordinate.
    pub fn tangential_windows(&self) -> Vec<(f64, f64)> {
        let mut out = vec![(f64::INFINITY, f64::NEG_INFINITY); self.d - 1];
        for t in &self.terms {
            for (j, g) in t.tangential.iter().enumerate() {
                let w = g.support_half_width();
                out[j].0 = out[j].0.min(g.center() - w);
                out[j].1 = out[j].1.max(g.center() + w);
            }
        }
        out
    }

    /// Decay class with the largest support radius over the terms.
    pub fn worst_decay(&self) -> Decay {
        let mut out = Decay::Compact { radius: 2.0 };
        for t in &self.terms {
            if t.axial.support_radius() >= out.support_radius() {
                out = t.axial.decay();
            }
        }
        out
    }
}

/// n-th derivative of a tangential factor as a factor (index shift in the
/// derivative-of-Gaussian basis is exact; realized via a small rebuild).
fn tangential_derivative(g: &GaussFactor, n: usize) -> GaussFactor {
    let mut out = g.clone();
    for _ in 0..n {
        out = out.differentiate();
    }
    out
}

// --- standard battery -------------------------------------------------------

/// Gaussian-class battery on the half-line; Dirichlet-compatible entries
/// (vanishing trace) come first.
pub fn battery_1d() -> Vec<(String, Field)> {
    let mk = |name: &str, terms: &[(f64, f64)], s: f64| {
        (name.to_string(), Field::axial(AxialProfile::new(ExpPoly::gaussian(terms, s))))
    };
    vec![
        mk("x*exp(-x^2/4)", &[(1.0, 1.0)], 1.0),
        mk("x*exp(-x^2/8)", &[(1.0, 1.0)], 2.0),
        mk("x^2*exp(-x^2/4)", &[(1.0, 2.0)], 1.0),
        mk("(x+x^2)*exp(-x^2/4)", &[(1.0, 1.0), (1.0, 2.0)], 1.0),
        mk("exp(-x^2/4)", &[(1.0, 0.0)], 1.0),
        mk("(1+x)*exp(-x^2/8)", &[(1.0, 0.0), (1.0, 1.0)], 2.0),
    ]
}

/// Entries of the battery with vanishing trace (Dirichlet-compatible).
pub fn battery_dirichlet_1d() -> Vec<(String, Field)> {
    battery_1d().into_iter().take(4).collect()
}
