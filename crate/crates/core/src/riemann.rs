//! Leading inner terms at an initial jump and at a shock collision.

use crate::error::{Error, Result};
use crate::flux::FluxFunction;
use crate::initial::InitialData;
use crate::problem::ProblemConfig;
use crate::quadrature::log_half_erfc;
use crate::viscous::{solve_viscous_with, SolverOptions, SpaceTimeField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerScenario {
    InitialJump,
    Collision,
}

/// Grid for a numerical inner solve on `zeta in [-half_width, half_width]`, `tau in [0, tau_end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerGrid {
    pub half_width: f64,
    pub nx: usize,
    pub tau_end: f64,
    pub nt: usize,
    pub save_every: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerField {
    pub field: SpaceTimeField,
    pub frame_speed: f64,
    pub scenario: InnerScenario,
    pub states: (f64, f64),
}

impl InnerField {
    /// Whether all values lie in the state band within `1e-8`.
    pub fn within_band(&self) -> bool {
        let (a, b) = self.states;
        let (lo, hi) = (a.min(b) - 1e-8, a.max(b) + 1e-8);
        self.field.values.iter().all(|v| (lo..=hi).contains(v))
    }
}

/// Numerical `w0` for a general flux: `w_tau + (phi(w) - s w)_zeta = w_zeta zeta` with step data.
pub fn step_inner_w0(
    flux: &FluxFunction,
    u_minus: f64,
    u_plus: f64,
    frame_speed: f64,
    grid: &InnerGrid,
) -> Result<InnerField> {
    if !(u_minus > u_plus) {
        return Err(Error::InvalidInput(format!(
            "entropy needs u- > u+, got {u_minus} <= {u_plus}"
        )));
    }
    let q = InitialData::Step {
        at: 0.0,
        left: vec![u_minus],
        right: vec![u_plus],
    };
    let cfg = ProblemConfig::new(flux.clone(), q, 1.0, 0.0, grid.tau_end, grid.half_width)?;
    let opts = SolverOptions {
        frame_speed,
        save_every: grid.save_every,
    };
    let field = solve_viscous_with(&cfg, grid.nx, grid.nt, &opts)?;
    Ok(InnerField {
        field,
        frame_speed,
        scenario: InnerScenario::InitialJump,
        states: (u_minus, u_plus),
    })
}

/// Exact solution of `w_tau + (w^2/2)_zeta = w_zeta zeta` with data `u-` for `zeta < 0`, `u+` for `zeta > 0`.
pub fn burgers_step_exact(u_minus: f64, u_plus: f64, zeta: f64, tau: f64) -> f64 {
    if tau <= 0.0 {
        return if zeta < 0.0 { u_minus } else { u_plus };
    }
    let r = 2.0 * tau.sqrt();
    let la = -u_minus * zeta / 2.0
        + u_minus * u_minus * tau / 4.0
        + log_half_erfc((zeta - u_minus * tau) / r);
    let lb = -u_plus * zeta / 2.0
        + u_plus * u_plus * tau / 4.0
        + log_half_erfc(-(zeta - u_plus * tau) / r);
    let m = la.max(lb);
    let (a, b) = ((la - m).exp(), (lb - m).exp());
    (u_minus * a + u_plus * b) / (a + b)
}

/// Travelling wave joining `ul` to `ur` (`ul > ur`), centred at `zeta = c tau + offset`.
pub fn burgers_traveling_wave(ul: f64, ur: f64, zeta: f64, tau: f64, offset: f64) -> f64 {
    let c = 0.5 * (ul + ur);
    let arg = (ul - ur) * (zeta - c * tau - offset) / 4.0;
    c - 0.5 * (ul - ur) * arg.tanh()
}

/// Three-state Cole-Hopf solution of the inner Burgers equation: two shocks merging into one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergingShocks {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub b1: f64,
    pub b2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    /// `w12 + w23 - u2`, valid for `tau -> -inf`.
    TwoShock,
    /// `w13`, valid for `tau -> +inf`.
    OneShock,
}

impl MergingShocks {
    pub fn new(u1: f64, u2: f64, u3: f64, b1: f64, b2: f64) -> Result<Self> {
        if !(u1 > u2 && u2 > u3) {
            return Err(Error::InvalidInput(format!(
                "states must satisfy u1 > u2 > u3, got {u1}, {u2}, {u3}"
            )));
        }
        Ok(MergingShocks { u1, u2, u3, b1, b2 })
    }

    fn log_weights(&self, zeta: f64, tau: f64) -> [f64; 3] {
        let e = |u: f64, b: f64| -u * (zeta - b) / 2.0 + u * u * tau / 4.0;
        [e(self.u1, self.b1), e(self.u2, 0.0), e(self.u3, self.b2)]
    }

    fn mix(states: &[f64], logs: &[f64]) -> f64 {
        let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (mut num, mut den) = (0.0, 0.0);
        for (u, l) in states.iter().zip(logs) {
            let w = (l - m).exp();
            num += u * w;
            den += w;
        }
        num / den
    }

    pub fn value(&self, zeta: f64, tau: f64) -> f64 {
        Self::mix(&[self.u1, self.u2, self.u3], &self.log_weights(zeta, tau))
    }

    pub fn comparator(&self, kind: Comparator, zeta: f64, tau: f64) -> f64 {
        let l = self.log_weights(zeta, tau);
        match kind {
            Comparator::TwoShock => {
                Self::mix(&[self.u1, self.u2], &l[..2]) + Self::mix(&[self.u2, self.u3], &l[1..])
                    - self.u2
            }
            Comparator::OneShock => Self::mix(&[self.u1, self.u3], &[l[0], l[2]]),
        }
    }

    /// `sup_zeta |w - comparator|` at `tau` over `n` points of `[-half_width, half_width]`.
    pub fn defect(&self, kind: Comparator, tau: f64, half_width: f64, n: usize) -> f64 {
        matching_defect(
            |z| self.value(z, tau),
            |z| self.comparator(kind, z, tau),
            -half_width,
            half_width,
            n,
        )
    }
}

/// `merging_shocks_exact(u1, u2, u3, b1, b2, zeta, tau)`.
pub fn merging_shocks_exact(
    u1: f64,
    u2: f64,
    u3: f64,
    b1: f64,
    b2: f64,
    zeta: f64,
    tau: f64,
) -> f64 {
    MergingShocks { u1, u2, u3, b1, b2 }.value(zeta, tau)
}

/// Sup-distance between two profiles sampled at `n` points of `[lo, hi]`.
pub fn matching_defect<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(
    w: F,
    comparator: G,
    lo: f64,
    hi: f64,
    n: usize,
) -> f64 {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            let z = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            (w(z) - comparator(z)).abs()
        })
        .fold(0.0, f64::max)
}

/// Fits `ln d = a - rate |tau|`; returns `(rate, a)`.
pub fn fit_exponential_rate(taus: &[f64], defects: &[f64]) -> Result<(f64, f64)> {
    if taus.len() < 2 || taus.len() != defects.len() {
        return Err(Error::InvalidInput(
            "exponential fit needs at least two (tau, defect) pairs".into(),
        ));
    }
    if defects.iter().any(|d| !(*d > 0.0)) {
        return Err(Error::InvalidInput(
            "exponential fit needs positive defects".into(),
        ));
    }
    let xs: Vec<f64> = taus.iter().map(|t| t.abs()).collect();
    let ys: Vec<f64> = defects.iter().map(|d| d.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok((-slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_exact_symmetry_and_limits() {
        for tau in [0.1, 1.0, 10.0] {
            assert!(burgers_step_exact(1.0, -1.0, 0.0, tau).abs() < 1e-15);
        }
        assert!((burgers_step_exact(1.0, -1.0, -200.0, 1.0) - 1.0).abs() < 1e-14);
        assert!((burgers_step_exact(1.0, -1.0, 200.0, 1.0) + 1.0).abs() < 1e-14);
        for z in [-5.0, -1.0, 0.5, 3.0] {
            let d = (burgers_step_exact(1.0, -1.0, z, 50.0) + (z / 2.0).tanh()).abs();
            assert!(d < 1e-6, "{z}: {d}");
        }
    }

    #[test]
    fn step_exact_moving_shock() {
        // (1, 0): travelling wave with speed 1/2 at late times
        let w = burgers_step_exact(1.0, 0.0, 20.0 + 0.3, 40.0);
        assert!((w - burgers_traveling_wave(1.0, 0.0, 20.3, 40.0, 0.0)).abs() < 1e-3);
    }

    #[test]
    fn merging_symmetry_and_limits() {
        let m = MergingShocks::new(1.0, 0.0, -1.0, 0.0, 0.0).unwrap();
        for tau in [-20.0, -1.0, 0.0, 3.0, 20.0] {
            assert!(m.value(0.0, tau).abs() < 1e-15);
            assert!((m.value(-60.0, tau) - 1.0).abs() < 1e-10);
            assert!((m.value(60.0, tau) + 1.0).abs() < 1e-10);
        }
        assert!(MergingShocks::new(0.0, 1.0, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn self_comparison_is_zero() {
        let m = MergingShocks::new(2.0, 0.5, -1.0, 1.0, -2.0).unwrap();
        assert_eq!(
            matching_defect(|z| m.value(z, 3.0), |z| m.value(z, 3.0), -10.0, 10.0, 101),
            0.0
        );
    }

    #[test]
    fn exponential_fit_recovers_rate() {
        let taus = [-10.0, -20.0, -40.0];
        let d: Vec<f64> = taus.iter().map(|t: &f64| 3.0 * (0.25 * t).exp()).collect();
        let (rate, a) = fit_exponential_rate(&taus, &d).unwrap();
        assert!((rate - 0.25).abs() < 1e-12 && (a - 3f64.ln()).abs() < 1e-10);
    }
}
