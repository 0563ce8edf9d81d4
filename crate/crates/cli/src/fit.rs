//! Log-log convergence-rate fits.

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const NOISE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFit {
    pub slope: f64,
    /// Root-mean-square residual of the fit in `ln(error)`.
    pub residual: f64,
}

/// Least-squares slope of `ln(error)` against `ln(param)`.
pub fn fit_rate(params: &[f64], errors: &[f64]) -> CliResult<RateFit> {
    if params.len() != errors.len() {
        return Err(CliError::validation(format!(
            "{} parameters but {} errors",
            params.len(),
            errors.len()
        )));
    }
    if params.len() < 3 {
        return Err(CliError::validation(format!(
            "rate fit needs at least 3 points, got {}",
            params.len()
        )));
    }
    if params.iter().any(|p| !(*p > 0.0 && p.is_finite())) {
        return Err(CliError::validation("rate fit parameters must be positive"));
    }
    if params.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(CliError::validation(
            "rate fit parameters must be strictly decreasing",
        ));
    }
    if let Some(e) = errors.iter().find(|e| !(**e >= NOISE_FLOOR)) {
        return Err(CliError::DegenerateFit { error: *e });
    }
    let xs: Vec<f64> = params.iter().map(|p| p.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum();
    Ok(RateFit {
        slope,
        residual: (ss / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let p = [1e-1, 5e-2, 2.5e-2];
        let r = fit_rate(&p, &p).unwrap();
        assert!((r.slope - 1.0).abs() < 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn half_order() {
        let e = [1e-2, 1e-2 * 0.5f64.sqrt(), 0.5e-2];
        let r = fit_rate(&[1.0, 0.5, 0.25], &e).unwrap();
        assert!((r.slope - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_error_is_degenerate() {
        let r = fit_rate(&[1.0, 0.5, 0.25], &[1e-3, 0.0, 1e-4]);
        assert!(matches!(r, Err(CliError::DegenerateFit { .. })));
    }

    #[test]
    fn rejects_short_or_unordered() {
        assert!(matches!(
            fit_rate(&[1.0, 0.5], &[1.0, 0.5]),
            Err(CliError::Validation { .. })
        ));
        assert!(matches!(
            fit_rate(&[1.0, 2.0, 0.5], &[1.0, 2.0, 0.5]),
            Err(CliError::Validation { .. })
        ));
    }
}
