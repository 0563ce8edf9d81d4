//! Inner solution at a gradient catastrophe.
//!
//! `Lambda(xi, tau) = int exp(-(z^4 - 2 z^2 tau + 4 z xi) / 8) dz` solves the heat equation and
//! `w10 = -2 Lambda_xi / (phi'' Lambda)` solves `w_tau + phi'' w w_xi = w_xi xi`.

use crate::error::{Error, Result};
use crate::flux::FluxFunction;
use crate::limit::{LocalData, SingularPoint};
use crate::quadrature::{integrate_peaked, DeOptions, ScaledIntegral};
use crate::scaling::InnerScaling;

const TOL: f64 = 1e-12;

/// Real roots of `z^3 + p z + q = 0`, ascending, polished by Newton.
pub(crate) fn real_cubic_roots(p: f64, q: f64) -> Vec<f64> {
    let disc = -(4.0 * p * p * p + 27.0 * q * q);
    let mut roots = if disc > 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
            .collect::<Vec<_>>()
    } else {
        // one real root (Cardano), written to avoid cancellation
        let d = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        let a = (-q / 2.0 - q.signum() * d).cbrt();
        let r = if a == 0.0 { 0.0 } else { a - p / (3.0 * a) };
        vec![r]
    };
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let f = *r * *r * *r + p * *r + q;
            let df = 3.0 * *r * *r + p;
            if df == 0.0 {
                break;
            }
            let step = f / df;
            *r -= step;
            if step.abs() <= 1e-16 * (1.0 + r.abs()) {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots
}

/// `Lambda` and `Lambda_xi` as `exp(log_scale) * values`.
pub fn lambda_scaled(xi: f64, tau: f64) -> Result<ScaledIntegral<2>> {
    let a = xi.abs();
    let g = |z: f64| -(z * z * (z * z - 2.0 * tau) + 4.0 * z * a) / 8.0;
    let splits = real_cubic_roots(-tau, a);
    let mut r = integrate_peaked(
        g,
        |z| [1.0, -0.5 * z],
        f64::NEG_INFINITY,
        f64::INFINITY,
        &splits,
        &DeOptions::with_tol(TOL),
    )?;
    // Lambda is even in xi
    if xi == 0.0 {
        r.values[1] = 0.0;
    } else if xi < 0.0 {
        r.values[1] = -r.values[1];
    }
    Ok(r)
}

/// `(Lambda, Lambda_xi)`; overflows to infinity only for `tau` beyond a few hundred.
pub fn lambda_integral(xi: f64, tau: f64) -> Result<(f64, f64)> {
    let r = lambda_scaled(xi, tau)?;
    let s = r.log_scale.exp();
    Ok((s * r.values[0], s * r.values[1]))
}

/// `w10 = -(2 / phi2) Lambda_xi / Lambda`.
pub fn w10(xi: f64, tau: f64, phi2: f64) -> Result<f64> {
    if !(phi2 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "phi''(0) must be positive, got {phi2}"
        )));
    }
    let r = lambda_scaled(xi, tau)?;
    Ok(-2.0 * r.values[1] / (phi2 * r.values[0]))
}

/// Central-difference residual of `w_tau + phi2 w w_xi - w_xi xi` with step `h`.
pub fn w10_residual(xi: f64, tau: f64, phi2: f64, h: f64) -> Result<f64> {
    if !(1e-4..=1e-1).contains(&h) {
        return Err(Error::InvalidInput(format!(
            "difference step {h} outside [1e-4, 1e-1]"
        )));
    }
    let w = |a: f64, b: f64| w10(a, b, phi2);
    let c = w(xi, tau)?;
    let (xp, xm) = (w(xi + h, tau)?, w(xi - h, tau)?);
    let (tp, tm) = (w(xi, tau + h)?, w(xi, tau - h)?);
    Ok((tp - tm) / (2.0 * h) + phi2 * c * (xp - xm) / (2.0 * h) - (xp - 2.0 * c + xm) / (h * h))
}

/// Relative heat residual `(Lambda_tau - Lambda_xi xi) / Lambda` by central differences.
pub fn lambda_heat_residual(xi: f64, tau: f64, h: f64) -> Result<f64> {
    let base = lambda_scaled(xi, tau)?;
    let at = |a: f64, b: f64| -> Result<f64> {
        let r = lambda_scaled(a, b)?;
        Ok(r.values[0] * (r.log_scale - base.log_scale).exp())
    };
    let c = base.values[0];
    let lt = (at(xi, tau + h)? - at(xi, tau - h)?) / (2.0 * h);
    let lxx = (at(xi + h, tau)? - 2.0 * c + at(xi - h, tau)?) / (h * h);
    Ok((lt - lxx) / c)
}

/// Whether `(xi, tau)` lies strictly inside the cusp `27 xi^2 < 4 tau^3`.
pub fn inside_cusp(xi: f64, tau: f64) -> bool {
    tau > 0.0 && 27.0 * xi * xi < 4.0 * tau.powi(3)
}

/// Real root of the Whitney fold `H^3 - tau H + xi = 0` outside the cusp.
pub fn whitney_fold_root(xi: f64, tau: f64) -> Result<f64> {
    if inside_cusp(xi, tau) {
        return Err(Error::InsideCusp { xi, tau });
    }
    let roots = real_cubic_roots(-tau, xi);
    // on the cusp boundary keep the simple root
    Ok(if roots.len() == 1 || xi > 0.0 {
        roots[0]
    } else {
        roots[roots.len() - 1]
    })
}

/// `|phi'' w10 - H|` in the far field `3 H^2 - tau >= 4`.
pub fn fold_far_field_defect(xi: f64, tau: f64) -> Result<f64> {
    let h = whitney_fold_root(xi, tau)?;
    if 3.0 * h * h - tau < 4.0 {
        return Err(Error::WindowViolation(format!(
            "3H^2 - tau = {} < 4 at ({xi}, {tau})",
            3.0 * h * h - tau
        )));
    }
    Ok((w10(xi, tau, 1.0)? - h).abs())
}

/// `sqrt(tau) (-tanh z) / phi''` with `z = xi sqrt(tau) / 2`, inside `|xi| sqrt(tau) < tau^0.4`.
pub fn tau_plus_comparator(xi: f64, tau: f64, phi2: f64) -> Result<f64> {
    if tau < 4.0 {
        return Err(Error::WindowViolation(format!("tau = {tau} < 4")));
    }
    let r = tau.sqrt();
    if xi.abs() * r >= tau.powf(0.4) {
        return Err(Error::WindowViolation(format!(
            "|xi| sqrt(tau) = {} >= tau^0.4 = {}",
            xi.abs() * r,
            tau.powf(0.4)
        )));
    }
    Ok(-r * (0.5 * xi * r).tanh() / phi2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfSimilarCheck {
    pub theta: f64,
    pub taus: Vec<f64>,
    /// `w10(theta |tau|^{3/2}, tau) / |tau|^{1/2}`.
    pub values: Vec<f64>,
    /// `|values[k+1] - values[k]|`.
    pub spreads: Vec<f64>,
    /// The fold-cubic limit `Z0(theta)`, the real root of `Z^3 + Z + theta = 0`.
    pub limit: f64,
}

/// Collapse of `w10` onto `|tau|^{1/2} Z0(theta)` as `tau -> -inf`.
pub fn tau_minus_selfsimilar_check(theta: f64, taus: &[f64]) -> Result<SelfSimilarCheck> {
    if taus.len() < 3 || taus.iter().any(|t| *t > -4.0) {
        return Err(Error::InvalidInput(
            "need at least three tau values, all <= -4".into(),
        ));
    }
    let values = taus
        .iter()
        .map(|&t| {
            let a = t.abs();
            Ok(w10(theta * a.powf(1.5), t, 1.0)? / a.sqrt())
        })
        .collect::<Result<Vec<f64>>>()?;
    let spreads = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    Ok(SelfSimilarCheck {
        theta,
        taus: taus.to_vec(),
        values,
        spreads,
        limit: whitney_fold_root(theta, -1.0)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldRegime {
    Core,
    FoldFarField,
    TauMinus,
    TauPlus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldEvaluation {
    pub xi: f64,
    pub tau: f64,
    pub lambda_value: f64,
    pub lambda_xi: f64,
    pub w10: f64,
    pub regime: FoldRegime,
}

pub fn evaluate(xi: f64, tau: f64, phi2: f64) -> Result<FoldEvaluation> {
    let (lambda_value, lambda_xi) = lambda_integral(xi, tau)?;
    let w = w10(xi, tau, phi2)?;
    let regime = if tau <= -4.0 {
        FoldRegime::TauMinus
    } else if tau >= 4.0 && xi.abs() * tau.sqrt() < tau.powf(0.4) {
        FoldRegime::TauPlus
    } else if whitney_fold_root(xi, tau).is_ok_and(|h| 3.0 * h * h - tau >= 4.0) {
        FoldRegime::FoldFarField
    } else {
        FoldRegime::Core
    };
    Ok(FoldEvaluation {
        xi,
        tau,
        lambda_value,
        lambda_xi,
        w10: w,
        regime,
    })
}

/// Affine and amplitude normalisation of a catastrophe to the fold normal form.
///
/// Near the catastrophe the outer solution obeys `X = phi'' T v - K v^3` with
/// `X = x - x* - c* (t - t*)`, `T = t - t*`, `v = u - u*`; rescaling by `kappa^4 = phi''^3 / K`
/// brings it to `xi = tau H - H^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldNormalForm {
    pub x_star: f64,
    pub t_star: f64,
    pub u_star: f64,
    pub c_star: f64,
    pub phi2: f64,
    pub kappa: f64,
}

impl FoldNormalForm {
    /// `point` from [`crate::limit::catastrophe_point`] for data given at `t0`.
    pub fn from_catastrophe(point: &SingularPoint, flux: &FluxFunction, t0: f64) -> Result<Self> {
        let LocalData::Catastrophe {
            u_star,
            c_star,
            c3,
            phi2,
            ..
        } = point.local
        else {
            return Err(Error::InvalidInput(
                "fold normal form needs a catastrophe point".into(),
            ));
        };
        let elapsed = point.t_star;
        let k = c3 * elapsed.powi(4) * phi2.powi(3) / 6.0;
        if !(k > 0.0) {
            return Err(Error::InvalidInput(format!(
                "degenerate catastrophe: cubic coefficient {k}"
            )));
        }
        let _ = flux;
        Ok(FoldNormalForm {
            x_star: point.x_star,
            t_star: t0 + elapsed,
            u_star,
            c_star,
            phi2,
            kappa: (phi2.powi(3) / k).powf(0.25),
        })
    }

    pub fn scaling(&self, eps: f64) -> InnerScaling {
        InnerScaling::fold(eps, self.x_star, self.t_star, self.c_star)
    }

    /// `u* + eps^{1/4} kappa w10(kappa xi, kappa^2 tau)` at inner point `(xi, tau)`.
    pub fn leading_inner(&self, xi: f64, tau: f64, eps: f64) -> Result<f64> {
        let k = self.kappa;
        Ok(self.u_star + eps.powf(0.25) * k * w10(k * xi, k * k * tau, self.phi2)?)
    }

    pub fn leading_u(&self, x: f64, t: f64, eps: f64) -> Result<f64> {
        let (xi, tau) = self.scaling(eps).to_inner(x, t);
        self.leading_inner(xi, tau, eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots() {
        assert_eq!(real_cubic_roots(-4.0, 0.0).len(), 3);
        let r = real_cubic_roots(-1.0, 6.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_at_origin() {
        let (v, d) = lambda_integral(0.0, 0.0).unwrap();
        assert!((v - 3.048_762_374_932_151_7).abs() < 1e-12, "{v}");
        assert!(d.abs() < 1e-14);
    }

    #[test]
    fn lambda_is_even() {
        let (a, da) = lambda_integral(1.3, -0.7).unwrap();
        let (b, db) = lambda_integral(-1.3, -0.7).unwrap();
        assert!((a - b).abs() < 1e-12 * a);
        assert!((da + db).abs() < 1e-12 * a);
    }

    #[test]
    fn lambda_heat_residual_at_one_one() {
        let r = lambda_heat_residual(1.0, 1.0, 1e-3).unwrap();
        assert!(r.abs() < 1e-6, "{r}");
    }

    #[test]
    fn w10_symmetry_and_prefactor() {
        for tau in [-3.0, 0.0, 2.5] {
            assert_eq!(w10(0.0, tau, 1.0).unwrap().abs(), 0.0);
        }
        let a = w10(2.0, -3.0, 2.0).unwrap();
        let b = w10(2.0, -3.0, 1.0).unwrap();
        assert!((a - b / 2.0).abs() < 1e-13);
    }

    #[test]
    fn w10_near_fold_root() {
        let w = w10(10.0, -10.0, 1.0).unwrap();
        let h = whitney_fold_root(10.0, -10.0).unwrap();
        assert!((h + 0.921).abs() < 1e-3, "{h}");
        // independent 30-digit quadrature of the defining ratio
        assert!((w + 0.888_716_290_256_400).abs() < 1e-10, "{w}");
    }

    #[test]
    fn w10_residual_small_and_symmetric() {
        assert!(w10_residual(0.0, 0.0, 1.0, 1e-2).unwrap().abs() < 1e-5);
        for tau in [-2.0, 0.5, 3.0] {
            assert!(w10_residual(0.0, tau, 1.0, 1e-2).unwrap().abs() < 1e-12);
        }
        let r1 = w10_residual(1.0, -1.0, 1.0, 2e-2).unwrap();
        let r2 = w10_residual(1.0, -1.0, 1.0, 1e-2).unwrap();
        assert!(((r1 / r2) - 4.0).abs() < 0.2, "{r1} {r2}");
    }

    #[test]
    fn fold_roots() {
        assert_eq!(whitney_fold_root(0.0, -1.0).unwrap(), 0.0);
        assert!((whitney_fold_root(6.0, 1.0).unwrap() + 2.0).abs() < 1e-14);
        assert_eq!(
            whitney_fold_root(0.0, 4.0).unwrap_err(),
            Error::InsideCusp { xi: 0.0, tau: 4.0 }
        );
    }

    #[test]
    fn far_field_defect_examples() {
        assert!(fold_far_field_defect(0.0, -25.0).unwrap() < 1e-14);
        let d = fold_far_field_defect(6.0, 1.0).unwrap();
        assert!(d.is_finite() && d < 2.0 / 3.0, "{d}");
    }

    #[test]
    fn tau_plus_window() {
        assert_eq!(tau_plus_comparator(0.0, 9.0, 1.0).unwrap(), 0.0);
        assert!(tau_plus_comparator(0.0, 3.0, 1.0).is_err());
        assert!(tau_plus_comparator(2.0, 9.0, 1.0).is_err());
        let tau: f64 = 25.0;
        let xi = 2.0 / tau.sqrt();
        let d = (w10(xi, tau, 1.0).unwrap() - tau_plus_comparator(xi, tau, 1.0).unwrap()).abs()
            / tau.sqrt();
        assert!(d <= 2e-2, "{d}");
    }

    #[test]
    fn selfsimilar_zero_theta() {
        let c = tau_minus_selfsimilar_check(0.0, &[-9.0, -16.0, -25.0]).unwrap();
        assert!(c.values.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn normal_form_of_neg_tanh() {
        let q = crate::InitialData::neg_tanh();
        let f = FluxFunction::burgers();
        let p = crate::limit::catastrophe_point(&q, &f).unwrap();
        let nf = FoldNormalForm::from_catastrophe(&p, &f, 0.0).unwrap();
        assert!((nf.kappa - 3f64.powf(0.25)).abs() < 1e-8);
        assert!(nf.leading_u(0.0, 1.0, 1e-3).unwrap().abs() < 1e-12);
    }
}
