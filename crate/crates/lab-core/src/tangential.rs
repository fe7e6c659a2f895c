//! Tangential factors: Gaussian-polynomial functions of one tangential
//! coordinate with closed-form derivatives and closed-form heat evolution.
//!
//! A factor is stored in the derivative-of-Gaussian basis
//! `B_m(s) = d^m/dc^m exp(-a (s-c)^2)`, on which both d/ds (index shift with
//! a sign) and the heat flow act exactly: the free evolution of the width-a
//! Gaussian is `(1+4az)^(-1/2) exp(-a(s-c)^2/(1+4az))`, and dc commutes
//! with the convolution.

use num_complex::Complex64;

use crate::cx::{c, gaussian_deriv};

#[derive(Debug, Clone)]
pub struct GaussFactor {
    /// Width parameter, Re > 0. Real at construction, complex after evolution.
    a: Complex64,
    center: f64,
    /// Coefficients on B_m.
    coeffs: Vec<Complex64>,
}

impl GaussFactor {
    /// p(s - center) * exp(-a (s - center)^2) with p given by monomial
    /// coefficients (p[j] multiplies (s-center)^j).
    pub fn from_poly(poly: &[f64], a: f64, center: f64) -> GaussFactor {
        assert!(a > 0.0, "width must be positive");
        // Express p((s-c)) = q(v)/ with v = sqrt(a)(s-c): q(v) = p(v/sqrt(a)).
        let ra = a.sqrt();
        let q: Vec<f64> =
            poly.iter().enumerate().map(|(j, &co)| co / ra.powi(j as i32)).collect();
        // Hermite expansion of q by triangular elimination: H_m = 2^m v^m + ...
        let deg = q.len().saturating_sub(1);
        let mut mono = q;
        let mut hermite_coeffs = vec![0.0; deg + 1];
        let tables = hermite_monomials(deg);
        for m in (0..=deg).rev() {
            let lead = 2f64.powi(m as i32);
            let cm = mono[m] / lead;
            hermite_coeffs[m] = cm;
            for (j, &hj) in tables[m].iter().enumerate() {
                mono[j] -= cm * hj;
            }
        }
        // B_m = a^(m/2) H_m(sqrt(a) u) e^{-a u^2}  =>  beta_m = ĥ_m a^(-m/2)
        let coeffs = hermite_coeffs
            .iter()
            .enumerate()
            .map(|(m, &h)| c(h / ra.powi(m as i32)))
            .collect();
        GaussFactor { a: c(a), center, coeffs }
    }

    /// Plain Gaussian exp(-(s-center)^2 / (4 s0)).
    pub fn gaussian(s0: f64, center: f64) -> GaussFactor {
        GaussFactor::from_poly(&[1.0], 1.0 / (4.0 * s0), center)
    }

    pub fn eval_deriv(&self, n: usize, s: f64) -> Complex64 {
        let u = c(s - self.center);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, &beta) in self.coeffs.iter().enumerate() {
            if beta.norm() == 0.0 {
                continue;
            }
            // B_{m+n}(s) = (-1)^(m+n) g^(m+n)(u); d/ds^n B_m = (-1)^n B_{m+n}
            let k = m + n;
            let b = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += beta * b * gaussian_deriv(k, u, self.a);
        }
        sign * acc
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        self.eval_deriv(0, s)
    }

    /// Free heat evolution by complex time z (Re of accumulated width stays
    /// positive for Re z > 0).
    pub fn evolve(&self, z: Complex64) -> GaussFactor {
        let denom = c(1.0) + 4.0 * self.a * z;
        let scale = denom.sqrt().inv();
        GaussFactor {
            a: self.a / denom,
            center: self.center,
            coeffs: self.coeffs.iter().map(|&b| b * scale).collect(),
        }
    }

    /// Integral over the whole line; only the m = 0 basis element carries mass.
    pub fn integral(&self) -> Complex64 {
        self.coeffs
            .first()
            .map(|&b| b * (std::f64::consts::PI / self.a).sqrt())
            .unwrap_or_default()
    }

    /// d/ds in the same representation: index shift with a sign.
    pub fn differentiate(&self) -> GaussFactor {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend(self.coeffs.iter().map(|&b| -b));
        GaussFactor { a: self.a, center: self.center, coeffs }
    }

    /// f(r s) in the same representation.
    pub fn scaled_arg(&self, r: f64) -> GaussFactor {
        assert!(r > 0.0);
        GaussFactor {
            a: self.a * r * r,
            center: self.center / r,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, &b)| b / r.powi(m as i32))
                .collect(),
        }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Half-width of the numerically relevant support.
    pub fn support_half_width(&self) -> f64 {
        let re_a = self.a.re.max(1e-12);
        (44.0 / re_a).sqrt() + 2.0 * self.coeffs.len() as f64 / re_a.sqrt().max(1e-6)
    }
}

/// Monomial coefficient tables of H_0..H_deg (physicists').
fn hermite_monomials(deg: usize) -> Vec<Vec<f64>> {
    let mut tables: Vec<Vec<f64>> = vec![vec![1.0]];
    if deg >= 1 {
        tables.push(vec![0.0, 2.0]);
    }
    for m in 2..=deg {
        let mut next = vec![0.0; m + 1];
        for (j, &co) in tables[m - 1].iter().enumerate() {
            next[j + 1] += 2.0 * co;
        }
        for (j, &co) in tables[m - 2].iter().enumerate() {
            next[j] -= 2.0 * (m as f64 - 1.0) * co;
        }
        tables.push(next);
    }
    tables
}
