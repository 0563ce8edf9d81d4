//! Two-parameter singularity: data `nu(x / rho)` with a jump of width `rho` and viscosity `eps`,
//! both small with `mu = rho / eps -> 0`.
//!
//! In `sigma = x / rho`, `omega = eps t / rho^2` the solution is `H = h0 + mu h1 + mu^2 h2 + ...`
//! with `h0` the heat evolution of `nu`; in `eta = x / eps`, `theta = t / eps` it is the
//! inner Riemann solution `Gamma`.

use std::num::NonZeroUsize;

use gauss_quad::{GaussHermite, GaussLegendre};

use crate::error::{Error, Result};
use crate::flux::{FluxFunction, FluxKind};
use crate::initial::{Profile, TailExpansion};
use crate::quadrature::{half_erfc, integrate_interval, integrate_peaked, DeOptions};
use crate::riemann::{burgers_step_exact, step_inner_w0, InnerGrid};
use crate::scaling::InnerScaling;
use crate::viscous::SpaceTimeField;

pub const MAX_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParamState {
    pub eps: f64,
    pub rho: f64,
    pub mu: f64,
}

impl TwoParamState {
    pub fn new(eps: f64, rho: f64) -> Result<Self> {
        if !(eps > 0.0 && rho > 0.0 && eps.is_finite() && rho.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "eps and rho must be positive, got {eps}, {rho}"
            )));
        }
        Ok(TwoParamState {
            eps,
            rho,
            mu: rho / eps,
        })
    }

    pub fn from_mu(eps: f64, mu: f64) -> Result<Self> {
        Self::new(eps, mu * eps)
    }

    pub fn is_asymptotic(&self) -> bool {
        self.mu < 1.0
    }

    pub fn sigma(&self, x: f64) -> f64 {
        x / self.rho
    }

    pub fn omega(&self, t: f64) -> f64 {
        self.eps * t / (self.rho * self.rho)
    }

    pub fn eta(&self, x: f64) -> f64 {
        x / self.eps
    }

    pub fn theta(&self, t: f64) -> f64 {
        t / self.eps
    }

    /// `z = x / (2 sqrt(eps t))`.
    pub fn z(&self, x: f64, t: f64) -> f64 {
        x / (2.0 * (self.eps * t).sqrt())
    }

    pub fn outer_scaling(&self) -> InnerScaling {
        InnerScaling::large_gradient_outer(self.eps, self.rho)
    }

    pub fn inner_scaling(&self) -> InnerScaling {
        InnerScaling::large_gradient_inner(self.eps)
    }
}

/// `h0(sigma, omega) = (4 pi omega)^{-1/2} int nu(s) exp(-(sigma - s)^2 / 4 omega) ds`.
pub fn h0<F: Fn(f64) -> f64>(nu: F, sigma: f64, omega: f64) -> Result<f64> {
    if omega.is_nan() || omega < 0.0 {
        return Err(Error::InvalidInput(format!(
            "omega must be non-negative, got {omega}"
        )));
    }
    if omega <= 1e-14 {
        return Ok(nu(sigma));
    }
    let g = |s: f64| -(sigma - s) * (sigma - s) / (4.0 * omega);
    // the profile varies near the origin; the Gaussian peaks at sigma
    let mut splits = vec![sigma];
    if sigma.abs() < 60.0 * omega.sqrt() {
        splits.push(0.0);
    }
    let r = integrate_peaked(
        g,
        |s| [nu(s)],
        f64::NEG_INFINITY,
        f64::INFINITY,
        &splits,
        &DeOptions::with_tol(1e-12),
    )?;
    Ok(r.values[0] * r.log_scale.exp() / (4.0 * std::f64::consts::PI * omega).sqrt())
}

/// Product Gauss rule for the Duhamel integrals of [`hn`].
///
/// With `omega - v = omega w^2` and `s = sigma + 2 sqrt(omega) w y` the kernel singularity
/// disappears and `h_n = -(2 sqrt(omega / pi)) int_0^1 int y e^{-y^2} E_n dy dw`.
#[derive(Debug, Clone)]
pub struct DuhamelRule {
    w: Vec<(f64, f64)>,
    // positive Hermite nodes; each stands for the pair (y, -y)
    y: Vec<(f64, f64)>,
}

impl DuhamelRule {
    pub fn new(legendre: usize, hermite: usize) -> Result<Self> {
        let (Some(nl), Some(nh)) = (NonZeroUsize::new(legendre), NonZeroUsize::new(hermite)) else {
            return Err(Error::InvalidInput(
                "Duhamel rule needs at least one node in each direction".into(),
            ));
        };
        let w = GaussLegendre::new(nl)
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, wt)| (0.5 * (x + 1.0), 0.5 * wt))
            .collect();
        let mut pairs: Vec<(f64, f64)> = GaussHermite::new(nh).as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = pairs.len();
        let y = (0..n / 2)
            .map(|i| {
                let (lo, hi) = (pairs[i], pairs[n - 1 - i]);
                (0.5 * (hi.0 - lo.0), 0.5 * (hi.1 + lo.1))
            })
            .collect();
        Ok(DuhamelRule { w, y })
    }

    pub fn nodes(&self) -> usize {
        2 * self.w.len() * self.y.len()
    }
}

impl Default for DuhamelRule {
    fn default() -> Self {
        DuhamelRule::new(16, 24).expect("nonzero rule sizes")
    }
}

/// Coefficient of `mu^{n-1}` in `phi(h0 + mu h1 + mu^2 h2 + ...)`: the source of `h_n`.
pub fn source_e(flux: &FluxFunction, n: usize, h: &[f64]) -> Result<f64> {
    if n == 0 || h.len() < n {
        return Err(Error::InvalidInput(format!(
            "source E_{n} needs h_0..h_{}",
            n.saturating_sub(1)
        )));
    }
    if n == 1 {
        return flux.derivative(0, h[0]);
    }
    let m = n - 1;
    // delta = sum_{k>=1} mu^k h_k as a truncated series; power[j] = coefficient of mu^j in delta^q
    let delta: Vec<f64> = (0..=m).map(|j| if j == 0 { 0.0 } else { h[j] }).collect();
    let mut power = delta.clone();
    let mut total = 0.0;
    let mut fact = 1.0;
    for q in 1..=m {
        fact *= q as f64;
        total += flux.derivative(q, h[0])? / fact * power[m];
        let mut next = vec![0.0; m + 1];
        for (i, a) in power.iter().enumerate() {
            for (j, b) in delta.iter().enumerate().take(m + 1 - i) {
                next[i + j] += a * b;
            }
        }
        power = next;
    }
    Ok(total)
}

/// `[h_0, ..., h_n]` at `(sigma, omega)`.
pub fn h_orders<F: Fn(f64) -> f64 + Copy>(
    nu: F,
    flux: &FluxFunction,
    n: usize,
    sigma: f64,
    omega: f64,
    rule: &DuhamelRule,
) -> Result<Vec<f64>> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooHigh {
            requested: n,
            max: MAX_ORDER,
        });
    }
    let mut out = vec![h0(nu, sigma, omega)?];
    for k in 1..=n {
        out.push(duhamel(nu, flux, k, sigma, omega, rule)?);
    }
    Ok(out)
}

fn duhamel<F: Fn(f64) -> f64 + Copy>(
    nu: F,
    flux: &FluxFunction,
    n: usize,
    sigma: f64,
    omega: f64,
    rule: &DuhamelRule,
) -> Result<f64> {
    if omega <= 1e-14 {
        return Ok(0.0);
    }
    let r = omega.sqrt();
    let source = |s: f64, v: f64| -> Result<f64> {
        let h = h_orders(nu, flux, n - 1, s, v, rule)?;
        source_e(flux, n, &h)
    };
    let mut acc = 0.0;
    for &(w, ww) in &rule.w {
        let v = omega * (1.0 - w * w);
        let c = 2.0 * r * w;
        let mut inner = 0.0;
        for &(y, wy) in &rule.y {
            inner += wy * y * (source(sigma + c * y, v)? - source(sigma - c * y, v)?);
        }
        acc += ww * inner;
    }
    Ok(-2.0 * (omega / std::f64::consts::PI).sqrt() * acc)
}

/// `h_n(sigma, omega)` for `1 <= n <= 3` with the default rule.
pub fn hn<F: Fn(f64) -> f64 + Copy>(
    nu: F,
    flux: &FluxFunction,
    n: usize,
    sigma: f64,
    omega: f64,
) -> Result<f64> {
    hn_with(nu, flux, n, sigma, omega, &DuhamelRule::default())
}

pub fn hn_with<F: Fn(f64) -> f64 + Copy>(
    nu: F,
    flux: &FluxFunction,
    n: usize,
    sigma: f64,
    omega: f64,
    rule: &DuhamelRule,
) -> Result<f64> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooHigh {
            requested: n,
            max: MAX_ORDER,
        });
    }
    if n == 0 {
        return h0(nu, sigma, omega);
    }
    if omega.is_nan() || omega < 0.0 {
        return Err(Error::InvalidInput(format!(
            "omega must be non-negative, got {omega}"
        )));
    }
    duhamel(nu, flux, n, sigma, omega, rule)
}

/// `R000(z) = nu0- erfc(z) + nu0+ erfc(-z)` with the one-sided `erfc` normalization.
pub fn r000(tails: &TailExpansion, z: f64) -> f64 {
    tails.nu0_minus * half_erfc(z) + tails.nu0_plus * half_erfc(-z)
}

/// Tabulated numerical `Gamma` in the frame `zeta = eta - s theta`, interpolated bicubically.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTable {
    pub field: SpaceTimeField,
    pub speed: f64,
    pub states: (f64, f64),
}

/// Keys cubic convolution weights for fractional offset `t` in `[0, 1)`.
fn keys_weights(t: f64) -> [f64; 4] {
    let a = -0.5;
    let w = |x: f64| {
        let x = x.abs();
        if x <= 1.0 {
            (a + 2.0) * x.powi(3) - (a + 3.0) * x * x + 1.0
        } else if x < 2.0 {
            a * x.powi(3) - 5.0 * a * x * x + 8.0 * a * x - 4.0 * a
        } else {
            0.0
        }
    };
    [w(1.0 + t), w(t), w(1.0 - t), w(2.0 - t)]
}

impl GammaTable {
    pub fn value(&self, eta: f64, theta: f64) -> Result<f64> {
        let f = &self.field;
        if !(theta > 0.0 && theta <= f.t_end * (1.0 + 1e-12)) {
            return Err(Error::InvalidInput(format!(
                "theta = {theta} outside the table (0, {}]",
                f.t_end
            )));
        }
        let zeta = eta - self.speed * theta;
        if zeta <= f.x_min {
            return Ok(self.states.0);
        }
        if zeta >= f.x_max {
            return Ok(self.states.1);
        }
        let sx = (zeta - f.x_min) / f.dx();
        let st = ((theta - f.t_start) / f.dt()).min(f.nt as f64);
        let (i, k) = (
            sx.floor() as isize,
            (st.floor() as isize).min(f.nt as isize - 1),
        );
        let (wx, wt) = (keys_weights(sx - i as f64), keys_weights(st - k as f64));
        let mut acc = 0.0;
        for (a, wa) in wt.iter().enumerate() {
            let kk = (k - 1 + a as isize).clamp(0, f.nt as isize) as usize;
            let mut row = 0.0;
            for (b, wb) in wx.iter().enumerate() {
                let ii = (i - 1 + b as isize).clamp(0, f.nx as isize - 1) as usize;
                row += wb * f.at(ii, kk);
            }
            acc += wa * row;
        }
        Ok(acc)
    }
}

/// Inner Riemann solution `Gamma_theta + phi(Gamma)_eta = Gamma_eta eta` with step data `nu0-`, `nu0+`.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaRiemann {
    Constant(f64),
    BurgersExact { nu0_minus: f64, nu0_plus: f64 },
    Table(GammaTable),
}

impl GammaRiemann {
    /// Closed form for Burgers, otherwise a table on `theta in (0, theta_max]`.
    pub fn new(flux: &FluxFunction, tails: &TailExpansion, theta_max: f64) -> Result<Self> {
        if tails.nu0_minus == tails.nu0_plus {
            return Ok(GammaRiemann::Constant(tails.nu0_minus));
        }
        if flux.kind() == FluxKind::Burgers {
            return Ok(GammaRiemann::BurgersExact {
                nu0_minus: tails.nu0_minus,
                nu0_plus: tails.nu0_plus,
            });
        }
        let (lo, hi) = (
            tails.nu0_plus.min(tails.nu0_minus),
            tails.nu0_plus.max(tails.nu0_minus),
        );
        let speed = flux.rh_speed(tails.nu0_minus, tails.nu0_plus);
        let a = (flux.max_wave_speed(lo, hi) - speed)
            .abs()
            .max(speed.abs())
            .max(1e-3);
        let half_width = 40.0 + a * theta_max.min(10.0);
        let nx = 1600;
        let dx = 2.0 * half_width / nx as f64;
        let save_every = 4;
        let steps = ((theta_max * a / (0.4 * dx)).ceil() as usize).max(64);
        let nt = steps.div_ceil(save_every) * save_every;
        Self::tabulated(
            flux,
            tails,
            &InnerGrid {
                half_width,
                nx,
                tau_end: theta_max,
                nt,
                save_every,
            },
        )
    }

    pub fn tabulated(flux: &FluxFunction, tails: &TailExpansion, grid: &InnerGrid) -> Result<Self> {
        let speed = flux.rh_speed(tails.nu0_minus, tails.nu0_plus);
        let inner = step_inner_w0(flux, tails.nu0_minus, tails.nu0_plus, speed, grid)?;
        Ok(GammaRiemann::Table(GammaTable {
            field: inner.field,
            speed,
            states: (tails.nu0_minus, tails.nu0_plus),
        }))
    }

    pub fn value(&self, eta: f64, theta: f64) -> Result<f64> {
        if !(theta > 0.0) {
            return Err(Error::InvalidInput(format!(
                "theta must be positive, got {theta}"
            )));
        }
        match self {
            GammaRiemann::Constant(c) => Ok(*c),
            GammaRiemann::BurgersExact {
                nu0_minus,
                nu0_plus,
            } => Ok(burgers_step_exact(*nu0_minus, *nu0_plus, eta, theta)),
            GammaRiemann::Table(t) => t.value(eta, theta),
        }
    }
}

/// One-off `Gamma(eta, theta)`; builds a table for non-Burgers fluxes, so prefer [`GammaRiemann`] for repeated use.
pub fn gamma_riemann(
    flux: &FluxFunction,
    tails: &TailExpansion,
    eta: f64,
    theta: f64,
) -> Result<f64> {
    GammaRiemann::new(flux, tails, theta)?.value(eta, theta)
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("t must be positive, got {t}")))
    }
}

/// `h0(x / rho, eps t / rho^2) - R000(x / 2 sqrt(eps t)) + Gamma(x / eps, t / eps)`.
pub fn composite_u(
    x: f64,
    t: f64,
    state: &TwoParamState,
    nu: &Profile,
    tails: &TailExpansion,
    gamma: &GammaRiemann,
) -> Result<f64> {
    check_time(t)?;
    if !state.is_asymptotic() {
        return Err(Error::InvalidInput(format!(
            "composite formula needs mu < 1, got {}",
            state.mu
        )));
    }
    let outer = h0(|s| nu.value(s), state.sigma(x), state.omega(t))?;
    Ok(outer - r000(tails, state.z(x, t)) + gamma.value(state.eta(x), state.theta(t))?)
}

/// Interval outside which `|nu'| <= 1e-16`.
fn derivative_support(nu: &Profile) -> (f64, f64) {
    let edge = |dir: f64| {
        let mut s = dir;
        while nu.derivative(s).abs() > 1e-16 && s.abs() < 1e6 {
            s *= 2.0;
        }
        let (mut a, mut b) = (0.0f64, s);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if nu.derivative(m).abs() > 1e-16 {
                a = m;
            } else {
                b = m;
            }
        }
        b
    };
    (edge(-1.0), edge(1.0))
}

/// `(nu0+ - nu0-)^{-1} int gamma((x - rho s) / eps, t / eps) nu'(s) ds` for any inner profile `gamma`.
pub fn renormalized_u_with<G: Fn(f64, f64) -> Result<f64>>(
    x: f64,
    t: f64,
    state: &TwoParamState,
    nu: &Profile,
    tails: &TailExpansion,
    gamma: G,
) -> Result<f64> {
    check_time(t)?;
    let jump = tails.nu0_plus - tails.nu0_minus;
    if jump.abs() < 1e-12 {
        return Err(Error::DegenerateJump(jump));
    }
    let (lo, hi) = derivative_support(nu);
    let theta = state.theta(t);
    let err = std::cell::RefCell::new(None);
    let r = integrate_interval(
        |s| match gamma((x - state.rho * s) / state.eps, theta) {
            Ok(g) => g * nu.derivative(s),
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        lo,
        hi,
        1e-11,
    );
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(r?.value / jump)
}

/// The renormalized formula with the inner Riemann solution `gamma`.
pub fn renormalized_u(
    x: f64,
    t: f64,
    state: &TwoParamState,
    nu: &Profile,
    tails: &TailExpansion,
    gamma: &GammaRiemann,
) -> Result<f64> {
    renormalized_u_with(x, t, state, nu, tails, |e, th| gamma.value(e, th))
}
