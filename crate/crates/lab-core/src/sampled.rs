//! Spline sampling of axial profiles.
//!
//! Nested operator compositions (resolvent of a derivative of a resolvent)
//! would multiply quadrature costs; sampling the inner profile once on a
//! uniform grid and interpolating keeps the outer quadrature cheap. Each
//! requested derivative order is sampled as its own spline.

use num_complex::Complex64;

use crate::axial::{AxialFn, AxialProfile, Decay};

#[derive(Debug)]
struct Spline {
    x0: f64,
    h: f64,
    vals: Vec<Complex64>,
    second: Vec<Complex64>,
}

impl Spline {
    /// Clamped cubic spline on a uniform grid (first derivatives prescribed
    /// at both ends; avoids the natural-spline O(h^2) endpoint bias).
    fn new(x0: f64, h: f64, vals: Vec<Complex64>, dp0: Complex64, dpn: Complex64) -> Spline {
        let n = vals.len();
        assert!(n >= 3);
        let zero = Complex64::new(0.0, 0.0);
        let mut second = vec![zero; n];
        let mut u = vec![zero; n];
        second[0] = Complex64::new(-0.5, 0.0);
        u[0] = (3.0 / h) * ((vals[1] - vals[0]) / h - dp0);
        for i in 1..n - 1 {
            let sig = 0.5;
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) * (3.0 / (h * h));
            u[i] = (d - sig * u[i - 1]) / p;
        }
        let qn = Complex64::new(0.5, 0.0);
        let un = (3.0 / h) * (dpn - (vals[n - 1] - vals[n - 2]) / h);
        second[n - 1] = (un - qn * u[n - 2]) / (qn * second[n - 2] + 1.0);
        for i in (0..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + u[i];
        }
        Spline { x0, h, vals, second }
    }

    fn eval(&self, x: f64) -> Complex64 {
        let n = self.vals.len();
        let t = (x - self.x0) / self.h;
        if t <= 0.0 {
            return self.vals[0];
        }
        let i = (t.floor() as usize).min(n - 2);
        let a = (i as f64 + 1.0) - t;
        let b = t - i as f64;
        a * self.vals[i]
            + b * self.vals[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1])
                * (self.h * self.h / 6.0)
    }
}

/// Profile interpolating sampled derivative orders; zero beyond the grid.
#[derive(Debug)]
pub struct SampledAxial {
    splines: Vec<Spline>,
    x_max: f64,
    boundary_power: f64,
    decay: Decay,
}

impl AxialFn for SampledAxial {
    fn eval_deriv(&self, n: usize, x: f64) -> Complex64 {
        if x >= self.x_max {
            return Complex64::new(0.0, 0.0);
        }
        self.splines
            .get(n)
            .map(|s| s.eval(x))
            .unwrap_or_else(|| panic!("order {n} not sampled"))
    }

    fn max_order(&self) -> Option<usize> {
        Some(self.splines.len() - 1)
    }

    fn boundary_power(&self) -> f64 {
        self.boundary_power
    }

    fn decay(&self) -> Decay {
        self.decay
    }
}

/// Sample orders 0..=max_order of a profile on [0, x_max] with n points.
pub fn sample_profile(
    src: &AxialProfile,
    max_order: usize,
    x_max: f64,
    n: usize,
) -> AxialProfile {
    assert!(n >= 8);
    let h = x_max / (n - 1) as f64;
    let splines = (0..=max_order)
        .map(|order| {
            let vals: Vec<Complex64> = (0..n)
                .map(|i| {
                    let x = (i as f64 * h).max(1e-12);
                    src.eval_deriv(order, x)
                })
                .collect();
            let dp0 = src.eval_deriv(order + 1, 1e-12);
            let dpn = src.eval_deriv(order + 1, x_max);
            Spline::new(0.0, h, vals, dp0, dpn)
        })
        .collect();
    AxialProfile::new(SampledAxial {
        splines,
        x_max,
        boundary_power: 0.0,
        decay: Decay::Compact { radius: x_max },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axial::ExpPoly;

    #[test]
    fn spline_accuracy() {
        let f = AxialProfile::new(ExpPoly::gaussian(&[(1.0, 1.0)], 1.0));
        let s = sample_profile(&f, 2, 30.0, 2400);
        for &x in &[0.3, 1.0, 2.5, 7.7] {
            for n in 0..=2usize {
                let err = (s.eval_deriv(n, x) - f.eval_deriv(n, x)).norm();
                assert!(err < 2e-9, "order {n} at {x}: err {err:.2e}");
            }
        }
        assert_eq!(s.eval(40.0).norm(), 0.0);
    }
}
