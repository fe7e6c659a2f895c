//! Free and half-space heat kernels for complex time in a sector.

use num_complex::Complex64;

use crate::cx::{c, gaussian_deriv, one_minus_exp_neg};
use crate::error::{LabError, Result};
use crate::space::Bc;

/// Complex time tagged with the sector it is asserted to lie in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorTime {
    pub z: Complex64,
    /// Sector half-angle, |arg z| < sigma < pi/2.
    pub sigma: f64,
}

impl SectorTime {
    pub fn new(z: Complex64, sigma: f64) -> Result<SectorTime> {
        if !(sigma > 0.0 && sigma < std::f64::consts::FRAC_PI_2) {
            return Err(LabError::InvalidParameter(format!(
                "sector half-angle {sigma} outside (0, pi/2)"
            )));
        }
        if z.re <= 0.0 || z.arg().abs() >= sigma {
            return Err(LabError::SectorViolation { arg: z.arg().abs(), sigma });
        }
        Ok(SectorTime { z, sigma })
    }

    pub fn real(t: f64) -> SectorTime {
        assert!(t > 0.0);
        SectorTime { z: c(t), sigma: std::f64::consts::FRAC_PI_4 }
    }
}

/// Standard heat kernel G^d_z(x) = (4 pi z)^(-d/2) exp(-|x|^2 / (4z)).
pub fn heat_kernel_free(z: Complex64, x: &[f64]) -> Complex64 {
    debug_assert!(z.re > 0.0);
    let d = x.len() as f64;
    let norm2: f64 = x.iter().map(|&v| v * v).sum();
    (4.0 * std::f64::consts::PI * z).powf(-d / 2.0) * (-norm2 / (4.0 * z)).exp()
}

/// One-dimensional free kernel.
pub fn g1(z: Complex64, u: f64) -> Complex64 {
    (4.0 * std::f64::consts::PI * z).sqrt().inv() * (-u * u / (4.0 * z)).exp()
}

/// Half-space kernel H^{1,-} (Dirichlet) / H^{1,+} (Neumann) in the
/// cancellation-free factored form G_z(x-y) (1 -/+ e^{-xy/z}).
pub fn heat_kernel_halfspace(z: Complex64, x1: f64, y1: f64, bc: Bc) -> Complex64 {
    debug_assert!(x1 >= 0.0 && y1 >= 0.0);
    let g = g1(z, x1 - y1);
    let w = x1 * y1 / z;
    match bc {
        Bc::Dirichlet => g * one_minus_exp_neg(w),
        Bc::Neumann => g * (c(2.0) - one_minus_exp_neg(w)),
    }
}

/// d^n/dx^n of the half-space kernel: (d^n G)(x-y) -/+ (d^n G)(x+y).
pub fn heat_kernel_halfspace_dx(
    n: usize,
    z: Complex64,
    x1: f64,
    y1: f64,
    bc: Bc,
) -> Complex64 {
    if n == 0 {
        return heat_kernel_halfspace(z, x1, y1, bc);
    }
    let a = (4.0 * z).inv();
    let pref = (4.0 * std::f64::consts::PI * z).sqrt().inv();
    let direct = gaussian_deriv(n, c(x1 - y1), a);
    let image = gaussian_deriv(n, c(x1 + y1), a);
    match bc {
        Bc::Dirichlet => pref * (direct - image),
        Bc::Neumann => pref * (direct + image),
    }
}

/// Real comparison kernel for the rotated-time bound: keeps the
/// (4 pi t)^(-1/2) prefactor of |G_{t e^{i delta}}| and takes real parts in
/// the exponentials, i.e. (cos delta)^(-1/2) H_{t/cos delta}.
pub fn comparison_kernel(t: f64, delta: f64, x1: f64, y1: f64, bc: Bc) -> f64 {
    let cd = delta.cos();
    let g = (4.0 * std::f64::consts::PI * t).sqrt().recip()
        * (-cd * (x1 - y1) * (x1 - y1) / (4.0 * t)).exp();
    let img = (-cd * x1 * y1 / t).exp();
    match bc {
        Bc::Dirichlet => g * (1.0 - img),
        Bc::Neumann => g * (1.0 + img),
    }
}

/// Max over the grid of |H_{t e^{i delta}}| over the comparison kernel;
/// bounded by 1/cos(delta) for Dirichlet and equal to 1 for Neumann.
pub fn kernel_sector_bound_check(bc: Bc, delta: f64, t_grid: &[f64], xy_grid: &[f64]) -> f64 {
    assert!((0.0..std::f64::consts::FRAC_PI_2).contains(&delta));
    let rot = Complex64::from_polar(1.0, delta);
    let mut worst: f64 = 0.0;
    for &t in t_grid {
        let zr = t * rot;
        for &x in xy_grid {
            for &y in xy_grid {
                let num = heat_kernel_halfspace(zr, x, y, bc).norm();
                let den = comparison_kernel(t, delta, x, y, bc);
                if den > 1e-280 {
                    worst = worst.max(num / den);
                }
            }
        }
    }
    worst
}
