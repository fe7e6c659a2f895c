//! Complex scalar helpers shared by the kernel and transform code.

use num_complex::Complex64;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// 1 - e^-w without cancellation for small |w|.
pub fn one_minus_exp_neg(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        // w (1 - w/2 + w^2/6 - w^3/24 + w^4/120)
        let w2 = w * w;
        w * (c(1.0) - w / 2.0 + w2 / 6.0 - w2 * w / 24.0 + w2 * w2 / 120.0)
    } else {
        c(1.0) - (-w).exp()
    }
}

/// Physicists' Hermite polynomial H_n at a complex argument.
pub fn hermite(n: usize, x: Complex64) -> Complex64 {
    match n {
        0 => c(1.0),
        1 => 2.0 * x,
        _ => {
            let mut hm1 = c(1.0);
            let mut h = 2.0 * x;
            for k in 1..n {
                let next = 2.0 * x * h - 2.0 * k as f64 * hm1;
                hm1 = h;
                h = next;
            }
            h
        }
    }
}

/// d^n/du^n of exp(-a u^2) for complex a with Re a > 0:
/// (-1)^n a^(n/2) H_n(sqrt(a) u) exp(-a u^2).
pub fn gaussian_deriv(n: usize, u: Complex64, a: Complex64) -> Complex64 {
    let g = (-a * u * u).exp();
    if n == 0 {
        return g;
    }
    let ra = a.sqrt();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * ra.powu(n as u32) * hermite(n, ra * u) * g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_small_and_large() {
        let w = Complex64::new(1e-9, 2e-9);
        let got = one_minus_exp_neg(w);
        // leading order w - w^2/2
        let expect = w - w * w / 2.0;
        assert!((got - expect).norm() < 1e-24);
        let w = Complex64::new(2.0, 1.0);
        assert!((one_minus_exp_neg(w) - (c(1.0) - (-w).exp())).norm() < 1e-15);
    }

    #[test]
    fn gaussian_derivatives_match_finite_differences() {
        let a = Complex64::new(0.7, 0.2);
        let u = Complex64::new(1.3, 0.0);
        let h = 1e-5;
        for n in 1..=4usize {
            let fd = (gaussian_deriv(n - 1, u + c(h), a) - gaussian_deriv(n - 1, u - c(h), a))
                / (2.0 * h);
            let an = gaussian_deriv(n, u, a);
            assert!((fd - an).norm() < 1e-8 * an.norm().max(1.0), "n = {n}");
        }
    }
}
