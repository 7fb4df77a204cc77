/// Least-squares fit of `Phi = 2 l alpha + delta_phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    pub alpha_hat: f64,
    pub delta_phi_hat: f64,
    /// Coefficient of determination, in `[0, 1]`.
    pub r_square: f64,
}

use crate::error::{Error, Result};

/// Ordinary least squares of mean demodulated phase against `2 l`.
/// Needs at least three distinct OAM values.
pub fn fit_oam_series(measurements: &[(u32, f64)]) -> Result<FitReport> {
    let mut distinct: Vec<u32> = measurements.iter().map(|m| m.0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::DegenerateFit { distinct: distinct.len() });
    }
    if measurements.iter().any(|m| !m.1.is_finite()) {
        return Err(Error::invalid("measurements", "non-finite phase"));
    }

    let n = measurements.len() as f64;
    let x_mean = measurements.iter().map(|m| 2.0 * m.0 as f64).sum::<f64>() / n;
    let y_mean = measurements.iter().map(|m| m.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(l, y) in measurements {
        let dx = 2.0 * l as f64 - x_mean;
        let dy = y - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_res: f64 = measurements
        .iter()
        .map(|&(l, y)| (y - intercept - slope * 2.0 * l as f64).powi(2))
        .sum();
    let r_square = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(FitReport { alpha_hat: slope, delta_phi_hat: intercept, r_square })
}
