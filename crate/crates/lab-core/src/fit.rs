//! Least-squares fitting of scaling exponents on log-log data.

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Fit interval in the original (not log) variable.
    pub t_window: (f64, f64),
}

/// Fit log(y) = intercept + slope * log(t).
///
/// Requires at least 8 samples spanning at least two decades. The r^2 uses
/// a small variance floor so that genuinely flat series (bounded regimes)
/// count as well-fitted rather than as degenerate fits.
pub fn fit_log_log(ts: &[f64], ys: &[f64]) -> Result<ExponentFit> {
    if ts.len() != ys.len() || ts.len() < 8 {
        return Err(LabError::InvalidParameter(format!(
            "log-log fit needs >= 8 samples, got {}",
            ts.len()
        )));
    }
    let t_min = ts.iter().cloned().fold(f64::INFINITY, f64::min);
    let t_max = ts.iter().cloned().fold(0.0f64, f64::max);
    if t_max / t_min < 99.0 {
        return Err(LabError::InvalidParameter(format!(
            "fit window [{t_min}, {t_max}] spans fewer than two decades"
        )));
    }
    if ys.iter().any(|&y| !(y > 0.0) || !y.is_finite()) {
        return Err(LabError::InvalidParameter("fit requires positive finite values".into()));
    }
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ls.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ls).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ls)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let ss_tot: f64 = ls.iter().map(|y| (y - my) * (y - my)).sum();
    // variance floor: 2% log-variation counts as flat
    let floor = n * 0.02 * 0.02;
    let r_squared = if ss_tot <= floor { 1.0 } else { (1.0 - ss_res / ss_tot).max(0.0) };
    Ok(ExponentFit { slope, intercept, r_squared, t_window: (t_min, t_max) })
}

/// As [`fit_log_log`] but rejecting fits with r^2 < 0.98.
pub fn fit_log_log_checked(ts: &[f64], ys: &[f64]) -> Result<ExponentFit> {
    let fit = fit_log_log(ts, ys)?;
    if fit.r_squared < 0.98 {
        return Err(LabError::FitRejected { r_squared: fit.r_squared });
    }
    Ok(fit)
}

/// Log-spaced grid of n points over [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let ts = log_grid(10.0, 1e4, 12);
        let ys: Vec<f64> = ts.iter().map(|t| 3.0 * t.powf(0.375)).collect();
        let fit = fit_log_log_checked(&ts, &ys).unwrap();
        assert!((fit.slope - 0.375).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_series_is_well_fitted() {
        let ts = log_grid(10.0, 1e4, 12);
        let ys: Vec<f64> = ts.iter().enumerate().map(|(i, _)| 2.0 + 1e-3 * (i % 3) as f64).collect();
        let fit = fit_log_log_checked(&ts, &ys).unwrap();
        assert!(fit.slope.abs() < 1e-3);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn noisy_data_rejected() {
        let ts = log_grid(1.0, 1e3, 10);
        let ys: Vec<f64> = ts.iter().enumerate().map(|(i, t)| t.powf(0.5) * (1.0 + 0.8 * ((i % 2) as f64))).collect();
        assert!(matches!(
            fit_log_log_checked(&ts, &ys),
            Err(LabError::FitRejected { .. })
        ));
    }

    #[test]
    fn guards() {
        let ts = [1.0, 2.0, 3.0];
        let ys = [1.0, 2.0, 3.0];
        assert!(fit_log_log(&ts, &ys).is_err());
        let ts = log_grid(1.0, 10.0, 8);
        let ys = vec![1.0; 8];
        assert!(fit_log_log(&ts, &ys).is_err());
    }
}
