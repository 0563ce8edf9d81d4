//! Inner solution where a weak discontinuity steepens into a shock.
//!
//! `Phi(xi, tau) = int_0^inf exp(-(4b/3) s^3 + tau s^2 - xi s) ds` solves the heat equation,
//! `w20 = -2 Phi_xi / Phi` solves the inner Burgers equation and
//! `w30 = sqrt(pi) Phi_xi / Phi^2` its linearization about `w20`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flux::FluxFunction;
use crate::initial::InitialData;
use crate::problem::ProblemConfig;
use crate::quadrature::{integrate_peaked, DeOptions, ScaledIntegral};
use crate::scaling::InnerScaling;

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakShockParams {
    pub a: f64,
    pub b: f64,
    pub phi3_at_0: f64,
}

impl WeakShockParams {
    /// `b = a - phi'''(0) / 2` for a normalized flux.
    pub fn new(a: f64, flux: &FluxFunction) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::InvalidInput(format!("a must be positive, got {a}")));
        }
        if !flux.is_normalized() {
            return Err(Error::NotNormalized(format!(
                "need phi(0) = phi'(0) = 0, phi''(0) = 1; got {}, {}, {}",
                flux.value(0.0),
                flux.d1(0.0),
                flux.d2(0.0)
            )));
        }
        let phi3_at_0 = flux.d3(0.0);
        let b = a - 0.5 * phi3_at_0;
        if !(b > 0.0) {
            return Err(Error::BNonPositive(b));
        }
        Ok(WeakShockParams { a, b, phi3_at_0 })
    }

    /// `theta = xi / (2 sqrt(-tau))` for `tau < 0`.
    pub fn theta(xi: f64, tau: f64) -> Option<f64> {
        (tau < 0.0).then(|| xi / (2.0 * (-tau).sqrt()))
    }

    pub fn scaling(eps: f64) -> InnerScaling {
        InnerScaling::weak_shock(eps, 0.0, 0.0)
    }
}

fn check_b(b: f64) -> Result<()> {
    if b > 0.0 {
        Ok(())
    } else {
        Err(Error::BNonPositive(b))
    }
}

/// `Phi` and `Phi_xi` as `exp(log_scale) * values`.
pub fn phi_scaled(xi: f64, tau: f64, b: f64) -> Result<ScaledIntegral<2>> {
    check_b(b)?;
    let c = 4.0 * b / 3.0;
    let g = |s: f64| s * (tau * s - xi - c * s * s);
    // g'(s) = -4b s^2 + 2 tau s - xi
    let mut splits = vec![0.0];
    let disc = tau * tau - 4.0 * b * xi;
    if disc >= 0.0 {
        let r = disc.sqrt();
        splits.extend(
            [(tau - r) / (4.0 * b), (tau + r) / (4.0 * b)]
                .into_iter()
                .filter(|s| *s > 0.0),
        );
    }
    integrate_peaked(
        g,
        |s| [1.0, -s],
        0.0,
        f64::INFINITY,
        &splits,
        &DeOptions::with_tol(TOL),
    )
}

/// `(Phi, Phi_xi)`.
pub fn phi_integral(xi: f64, tau: f64, b: f64) -> Result<(f64, f64)> {
    let r = phi_scaled(xi, tau, b)?;
    let s = r.log_scale.exp();
    Ok((s * r.values[0], s * r.values[1]))
}

/// `-2 Phi_xi / Phi`.
pub fn w20(xi: f64, tau: f64, b: f64) -> Result<f64> {
    let r = phi_scaled(xi, tau, b)?;
    Ok(-2.0 * r.values[1] / r.values[0])
}

/// `sqrt(pi) Phi_xi / Phi^2`.
pub fn w30(xi: f64, tau: f64, b: f64) -> Result<f64> {
    let r = phi_scaled(xi, tau, b)?;
    Ok(
        std::f64::consts::PI.sqrt() * r.values[1] / (r.values[0] * r.values[0])
            * (-r.log_scale).exp(),
    )
}

fn check_step(h: f64) -> Result<()> {
    if (1e-4..=1e-1).contains(&h) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "difference step {h} outside [1e-4, 1e-1]"
        )))
    }
}

/// Relative heat residual `(Phi_tau - Phi_xi xi) / Phi`.
pub fn phi_heat_residual(xi: f64, tau: f64, b: f64, h: f64) -> Result<f64> {
    check_step(h)?;
    let base = phi_scaled(xi, tau, b)?;
    let at = |x: f64, t: f64| -> Result<f64> {
        let r = phi_scaled(x, t, b)?;
        Ok(r.values[0] * (r.log_scale - base.log_scale).exp())
    };
    let c = base.values[0];
    let pt = (at(xi, tau + h)? - at(xi, tau - h)?) / (2.0 * h);
    let pxx = (at(xi + h, tau)? - 2.0 * c + at(xi - h, tau)?) / (h * h);
    Ok((pt - pxx) / c)
}

/// As [`phi_heat_residual`] with fourth-order five-point differences in both variables.
pub fn phi_heat_residual_fourth_order(xi: f64, tau: f64, b: f64, h: f64) -> Result<f64> {
    check_step(h)?;
    let base = phi_scaled(xi, tau, b)?;
    let at = |x: f64, t: f64| -> Result<f64> {
        let r = phi_scaled(x, t, b)?;
        Ok(r.values[0] * (r.log_scale - base.log_scale).exp())
    };
    let c = base.values[0];
    let (t1, t2) = (
        at(xi, tau + h)? - at(xi, tau - h)?,
        at(xi, tau + 2.0 * h)? - at(xi, tau - 2.0 * h)?,
    );
    let pt = (8.0 * t1 - t2) / (12.0 * h);
    let (x1, x2) = (
        at(xi + h, tau)? + at(xi - h, tau)?,
        at(xi + 2.0 * h, tau)? + at(xi - 2.0 * h, tau)?,
    );
    let pxx = (16.0 * x1 - x2 - 30.0 * c) / (12.0 * h * h);
    Ok((pt - pxx) / c)
}

/// Central-difference residual of `w_tau + w w_xi - w_xi xi` for `w20`.
pub fn w20_residual(xi: f64, tau: f64, b: f64, h: f64) -> Result<f64> {
    check_step(h)?;
    let w = |x: f64, t: f64| w20(x, t, b);
    let c = w(xi, tau)?;
    let (xp, xm) = (w(xi + h, tau)?, w(xi - h, tau)?);
    let (tp, tm) = (w(xi, tau + h)?, w(xi, tau - h)?);
    Ok((tp - tm) / (2.0 * h) + c * (xp - xm) / (2.0 * h) - (xp - 2.0 * c + xm) / (h * h))
}

/// Central-difference residual of `v_tau + (w20 v)_xi - v_xi xi` for `v = w30`.
pub fn w30_residual(xi: f64, tau: f64, b: f64, h: f64) -> Result<f64> {
    check_step(h)?;
    let v = |x: f64, t: f64| w30(x, t, b);
    let flux = |x: f64| -> Result<f64> { Ok(w20(x, tau, b)? * w30(x, tau, b)?) };
    let c = v(xi, tau)?;
    let (xp, xm) = (v(xi + h, tau)?, v(xi - h, tau)?);
    let (tp, tm) = (v(xi, tau + h)?, v(xi, tau - h)?);
    Ok(
        (tp - tm) / (2.0 * h) + (flux(xi + h)? - flux(xi - h)?) / (2.0 * h)
            - (xp - 2.0 * c + xm) / (h * h),
    )
}

/// `eps^{1/3} w20(xi, tau)`.
pub fn leading_inner(xi: f64, tau: f64, b: f64, eps: f64) -> Result<f64> {
    Ok(eps.cbrt() * w20(xi, tau, b)?)
}

/// `eps^{1/3} w20 + eps^{1/2} w30`.
pub fn two_term_inner(xi: f64, tau: f64, b: f64, eps: f64) -> Result<f64> {
    Ok(eps.cbrt() * w20(xi, tau, b)? + eps.sqrt() * w30(xi, tau, b)?)
}

/// Data `-(x + a x^2)` for `x < 0`, zero for `x > 0`, given at `t = -1` so the shock is born at the origin at `t = 0`.
///
/// The data is unbounded to the left; use it with the Hopf integral. For finite-volume reference
/// solves use [`weakshock_scenario_with_cutoff`].
pub fn weakshock_scenario(a: f64, flux: &FluxFunction, eps: f64) -> Result<ProblemConfig> {
    WeakShockParams::new(a, flux)?;
    ProblemConfig::new(
        flux.clone(),
        InitialData::weak_discontinuity(a),
        eps,
        -1.0,
        1.0,
        2.0 / a + 4.0,
    )
}

/// As [`weakshock_scenario`] with the factor `1 + q0(x) = exp(-(x / width)^8)`, so the data vanishes at both ends.
pub fn weakshock_scenario_with_cutoff(
    a: f64,
    flux: &FluxFunction,
    eps: f64,
    width: f64,
) -> Result<ProblemConfig> {
    WeakShockParams::new(a, flux)?;
    if !(width > 0.0) {
        return Err(Error::InvalidInput(format!(
            "cutoff width must be positive, got {width}"
        )));
    }
    let q0 = Arc::new(move |x: f64| (-(x / width).powi(8)).exp_m1());
    let half_width = 4.0 * width + 4.0;
    ProblemConfig::new(
        flux.clone(),
        InitialData::WeakDiscontinuity { a, q0: Some(q0) },
        eps,
        -1.0,
        1.0,
        half_width,
    )
}
