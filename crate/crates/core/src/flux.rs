//! Convex flux functions `phi(u)` with exact derivatives.

use crate::error::{Error, Result};

/// Description of a flux before validation.
#[derive(Debug, Clone, PartialEq)]
pub enum FluxSpec {
    /// `phi(u) = u^2 / 2`.
    Burgers,
    /// `phi(u) = sum_k c_k u^k`, coefficients in increasing degree.
    Polynomial { coefficients: Vec<f64> },
    /// `phi(u) = e^u - 1 - u`.
    Exponential,
    /// `phi(u) = s^2 ln cosh(u / s)`.
    LogCosh { scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    Burgers,
    Polynomial,
    Exponential,
    LogCosh,
}

pub const DEFAULT_MAX_DERIVATIVE_ORDER: usize = 8;

/// A validated, strictly convex flux on an operating interval.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxFunction {
    kind: FluxKind,
    coefficients: Vec<f64>,
    max_derivative_order: usize,
    interval: (f64, f64),
    // LogCosh only: coefficients of P_k(T) with phi^{(k+1)} = s^{1-k} P_k(tanh(u/s)).
    tanh_polys: Vec<Vec<f64>>,
}

/// Validates `spec` and checks `phi'' > 0` on the open interval `(lo, hi)`.
pub fn make_flux(
    spec: &FluxSpec,
    interval: (f64, f64),
    max_derivative_order: usize,
) -> Result<FluxFunction> {
    if max_derivative_order < 4 {
        return Err(Error::OrderTooLow(max_derivative_order));
    }
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInput(format!(
            "operating interval [{lo}, {hi}] is empty or infinite"
        )));
    }
    let (kind, coefficients) = match spec {
        FluxSpec::Burgers => (FluxKind::Burgers, vec![0.0, 0.0, 0.5]),
        FluxSpec::Polynomial { coefficients } => {
            if coefficients.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(
                    "polynomial coefficients must be finite".into(),
                ));
            }
            let mut c = coefficients.clone();
            while c.len() > 1 && c.last() == Some(&0.0) {
                c.pop();
            }
            (FluxKind::Polynomial, c)
        }
        FluxSpec::Exponential => (FluxKind::Exponential, Vec::new()),
        FluxSpec::LogCosh { scale } => {
            if !(scale.is_finite() && *scale > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "log-cosh scale must be positive, got {scale}"
                )));
            }
            (FluxKind::LogCosh, vec![*scale])
        }
    };
    let tanh_polys = if kind == FluxKind::LogCosh {
        tanh_derivative_polys(max_derivative_order)
    } else {
        Vec::new()
    };
    let flux = FluxFunction {
        kind,
        coefficients,
        max_derivative_order,
        interval,
        tanh_polys,
    };

    const SAMPLES: usize = 1000;
    for i in 0..SAMPLES {
        let u = lo + (hi - lo) * (i as f64 + 0.5) / SAMPLES as f64;
        let v = flux.d2(u);
        if !(v > 0.0) {
            return Err(Error::ConvexityViolation { at: u, value: v });
        }
    }
    Ok(flux)
}

// P_0 = T, P_{k+1} = P_k'(T) (1 - T^2)
fn tanh_derivative_polys(max_order: usize) -> Vec<Vec<f64>> {
    let mut polys = vec![vec![0.0, 1.0]];
    for _ in 1..max_order {
        let p = polys.last().unwrap();
        let dp: Vec<f64> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        let mut next = vec![0.0; dp.len() + 2];
        for (k, c) in dp.iter().enumerate() {
            next[k] += c;
            next[k + 2] -= c;
        }
        polys.push(next);
    }
    polys
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

pub(crate) fn log_cosh(v: f64) -> f64 {
    let a = v.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

impl FluxFunction {
    /// Burgers flux `u^2/2` on a wide default interval.
    pub fn burgers() -> Self {
        make_flux(
            &FluxSpec::Burgers,
            (-1e6, 1e6),
            DEFAULT_MAX_DERIVATIVE_ORDER,
        )
        .expect("burgers flux is convex")
    }

    pub fn kind(&self) -> FluxKind {
        self.kind
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn max_derivative_order(&self) -> usize {
        self.max_derivative_order
    }

    pub fn operating_interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn value(&self, u: f64) -> f64 {
        self.nth(0, u)
    }

    pub fn d1(&self, u: f64) -> f64 {
        self.nth(1, u)
    }

    pub fn d2(&self, u: f64) -> f64 {
        self.nth(2, u)
    }

    pub fn d3(&self, u: f64) -> f64 {
        self.nth(3, u)
    }

    /// `phi^{(order)}(u)`, bounded by the declared maximum order.
    pub fn derivative(&self, order: usize, u: f64) -> Result<f64> {
        if order > self.max_derivative_order {
            return Err(Error::OrderTooHigh {
                requested: order,
                max: self.max_derivative_order,
            });
        }
        Ok(self.nth(order, u))
    }

    fn nth(&self, order: usize, u: f64) -> f64 {
        match self.kind {
            FluxKind::Burgers => match order {
                0 => 0.5 * u * u,
                1 => u,
                2 => 1.0,
                _ => 0.0,
            },
            FluxKind::Polynomial => {
                let c = &self.coefficients;
                if order >= c.len() {
                    return 0.0;
                }
                // sum_{k>=n} c_k k!/(k-n)! u^{k-n}
                let mut acc = 0.0;
                for k in (order..c.len()).rev() {
                    let falling: f64 = ((k - order + 1)..=k).map(|j| j as f64).product();
                    acc = acc * u + c[k] * falling;
                }
                acc
            }
            FluxKind::Exponential => match order {
                0 => u.exp_m1() - u,
                1 => u.exp_m1(),
                _ => u.exp(),
            },
            FluxKind::LogCosh => {
                let s = self.coefficients[0];
                let v = u / s;
                if order == 0 {
                    return s * s * log_cosh(v);
                }
                let Some(p) = self.tanh_polys.get(order - 1) else {
                    return f64::NAN;
                };
                let t = v.tanh();
                s.powi(2 - order as i32) * horner(p, t)
            }
        }
    }

    /// True when `phi(0) = phi'(0) = 0` and `phi''(0) = 1`.
    pub fn is_normalized(&self) -> bool {
        self.value(0.0).abs() < 1e-12
            && self.d1(0.0).abs() < 1e-12
            && (self.d2(0.0) - 1.0).abs() < 1e-12
    }

    /// Rankine-Hugoniot speed `(phi(b) - phi(a)) / (b - a)`, continuous as `a -> b`.
    pub fn rh_speed(&self, a: f64, b: f64) -> f64 {
        let d = b - a;
        if d.abs() <= 1e-7 * (1.0 + a.abs().max(b.abs())) {
            let m = 0.5 * (a + b);
            return self.d1(m) + self.d3(m) * d * d / 24.0;
        }
        (self.value(b) - self.value(a)) / d
    }

    /// Maximum characteristic speed magnitude over `[lo, hi]`, exact for convex flux.
    pub fn max_wave_speed(&self, lo: f64, hi: f64) -> f64 {
        self.d1(lo).abs().max(self.d1(hi).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn burgers_identities() {
        let f = FluxFunction::burgers();
        assert_eq!(f.value(2.0), 2.0);
        assert_eq!(f.d1(2.0), 2.0);
        assert_eq!(f.d2(2.0), 1.0);
        assert_eq!(f.d3(2.0), 0.0);
        assert_eq!((f.value(0.0), f.d1(0.0), f.d2(0.0)), (0.0, 0.0, 1.0));
        assert!(f.is_normalized());
    }

    #[test]
    fn cubic_polynomial_accepted_on_unit_interval() {
        let f = make_flux(
            &FluxSpec::Polynomial {
                coefficients: vec![0.0, 0.0, 0.5, 1.0 / 6.0],
            },
            (-1.0, 1.0),
            6,
        )
        .unwrap();
        for u in [-0.9, 0.0, 0.5] {
            assert!((f.d2(u) - (1.0 + u)).abs() < 1e-15);
        }
        assert!((f.d3(0.3) - 1.0).abs() < 1e-15);
        assert_eq!(f.derivative(4, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn concave_polynomial_rejected() {
        let err = make_flux(
            &FluxSpec::Polynomial {
                coefficients: vec![0.0, 0.0, -0.5],
            },
            (-1.0, 1.0),
            4,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConvexityViolation { .. }));
    }

    #[test]
    fn order_too_low() {
        assert_eq!(
            make_flux(&FluxSpec::Burgers, (-1.0, 1.0), 3).unwrap_err(),
            Error::OrderTooLow(3)
        );
        let f = make_flux(&FluxSpec::Burgers, (-1.0, 1.0), 4).unwrap();
        assert!(matches!(
            f.derivative(5, 0.0),
            Err(Error::OrderTooHigh { .. })
        ));
    }

    #[test]
    fn logcosh_derivatives_match_closed_forms() {
        let s = 1.5;
        let f = make_flux(&FluxSpec::LogCosh { scale: s }, (-3.0, 3.0), 6).unwrap();
        let u = 0.7;
        let t = (u / s).tanh();
        assert!((f.d1(u) - s * t).abs() < 1e-14);
        assert!((f.d2(u) - (1.0 - t * t)).abs() < 1e-14);
        assert!((f.d3(u) - (-2.0 * t * (1.0 - t * t) / s)).abs() < 1e-14);
        let d4 = (1.0 - t * t) * (6.0 * t * t - 2.0) / (s * s);
        assert!((f.derivative(4, u).unwrap() - d4).abs() < 1e-14);
        assert!(f.is_normalized());
    }

    #[test]
    fn exponential_is_normalized() {
        let f = make_flux(&FluxSpec::Exponential, (-2.0, 2.0), 6).unwrap();
        assert!(f.is_normalized());
        assert!((f.derivative(5, 1.0).unwrap() - 1f64.exp()).abs() < 1e-14);
    }

    // Central difference of phi against phi' converges at second order.
    #[test]
    fn central_difference_slope_is_two() {
        let fluxes = [
            make_flux(
                &FluxSpec::Polynomial {
                    coefficients: vec![0.0, 0.3, 0.5, 0.2, 0.05],
                },
                (-1.0, 1.0),
                6,
            )
            .unwrap(),
            make_flux(&FluxSpec::Exponential, (-1.0, 1.0), 6).unwrap(),
            make_flux(&FluxSpec::LogCosh { scale: 0.8 }, (-1.0, 1.0), 6).unwrap(),
        ];
        for f in &fluxes {
            let u = 0.4;
            let err = |h: f64| ((f.value(u + h) - f.value(u - h)) / (2.0 * h) - f.d1(u)).abs();
            let slope = (err(0.02) / err(0.01)).log2();
            assert!(
                (1.9..=2.1).contains(&slope),
                "{:?}: slope {slope}",
                f.kind()
            );
        }
    }

    #[test]
    fn rh_speed_is_continuous() {
        let f = make_flux(&FluxSpec::Exponential, (-2.0, 2.0), 6).unwrap();
        let exact = f.rh_speed(0.3, 0.3 + 1e-3);
        let near = f.rh_speed(0.3, 0.3 + 1e-9);
        assert!((near - f.d1(0.3)).abs() < 1e-9);
        assert!((exact - f.d1(0.3005)).abs() < 1e-6);
    }
}
