//! Double-exponential quadrature on finite, half-infinite and infinite
//! intervals, and the complementary error function in the normalization
//! `erfc(z) = (1/sqrt(pi)) * int_z^inf exp(-y^2) dy`.
//!
//! All rules use the same dyadic scheme: level `l` uses step `h = 2^-l` in
//! the transformed variable, each level reuses the previous sum and adds the
//! odd nodes. The level-to-level difference is reported as the error
//! estimate; for analytic integrands the true error of the accepted level is
//! roughly the square of that estimate.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Result for a vector-valued integrand sharing one node set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecQuadrature<const N: usize> {
    pub values: [f64; N],
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeOptions {
    pub tol: f64,
    pub max_evaluations: usize,
    pub min_levels: usize,
}

impl DeOptions {
    pub fn with_tol(tol: f64) -> Self {
        DeOptions {
            tol,
            ..Default::default()
        }
    }
}

impl Default for DeOptions {
    fn default() -> Self {
        DeOptions {
            tol: 1e-12,
            max_evaluations: 200_000,
            min_levels: 3,
        }
    }
}

/// Integration domain in original coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `(-inf, inf)`, nodes `center + scale * sinh(pi/2 sinh t)`.
    RealLine { center: f64, scale: f64 },
    /// `[start, inf)` for `scale > 0`, `(-inf, start]` for `scale < 0`.
    HalfLine { start: f64, scale: f64 },
    /// `[a, b]`, tanh-sinh nodes.
    Interval { a: f64, b: f64 },
}

// Tail cut relative to the largest term seen so far.
const TAIL_CUTOFF: f64 = 1e-16;

impl Domain {
    fn t_range(&self) -> (f64, f64) {
        match self {
            Domain::RealLine { .. } => (-4.5, 4.5),
            Domain::HalfLine { .. } => (-4.5, 4.0),
            Domain::Interval { .. } => (-3.5, 3.5),
        }
    }

    /// Node and weight (including the Jacobian) at transformed coordinate `t`.
    fn node(&self, t: f64) -> (f64, f64) {
        match *self {
            Domain::RealLine { center, scale } => {
                let u = FRAC_PI_2 * t.sinh();
                (
                    center + scale * u.sinh(),
                    scale * FRAC_PI_2 * t.cosh() * u.cosh(),
                )
            }
            Domain::HalfLine { start, scale } => {
                let x = (FRAC_PI_2 * t.sinh()).exp();
                (start + scale * x, scale.abs() * FRAC_PI_2 * t.cosh() * x)
            }
            Domain::Interval { a, b } => {
                let d = 0.5 * (b - a);
                let u = FRAC_PI_2 * t.sinh();
                let e = (-2.0 * u.abs()).exp();
                // distance from the nearer endpoint in units of d: 1 - tanh|u|
                let delta = 2.0 * e / (1.0 + e);
                let x = if u >= 0.0 {
                    b - d * delta
                } else {
                    a + d * delta
                };
                let sech = 2.0 * (-u.abs()).exp() / (1.0 + e);
                (x, d * FRAC_PI_2 * t.cosh() * sech * sech)
            }
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(1e-15..=1e-3).contains(&tol) {
        return Err(Error::InvalidInput(format!(
            "quadrature tolerance {tol:e} outside [1e-15, 1e-3]"
        )));
    }
    Ok(())
}

/// Accumulates `sum w f` over the nodes `t = k h` for the given `k` sequence
/// in one direction, stopping once two consecutive terms are negligible.
fn sweep_direction<const N: usize, F: FnMut(f64) -> [f64; N]>(
    domain: &Domain,
    f: &mut F,
    ks: impl Iterator<Item = i64>,
    h: f64,
    max_term: &mut f64,
    sum: &mut [f64; N],
    abs_sum: &mut [f64; N],
    evaluations: &mut usize,
) -> Result<()> {
    let (t_lo, t_hi) = domain.t_range();
    let mut small_run = 0;
    for k in ks {
        let t = k as f64 * h;
        if t < t_lo || t > t_hi {
            break;
        }
        let (x, w) = domain.node(t);
        if !x.is_finite() || w == 0.0 || !w.is_finite() {
            break;
        }
        let fx = f(x);
        *evaluations += 1;
        let mut mag = 0.0f64;
        let mut finite = true;
        for c in 0..N {
            let term = w * fx[c];
            if !term.is_finite() {
                finite = false;
                break;
            }
            mag = mag.max(term.abs());
        }
        if !finite {
            if t.abs() > 1.0 {
                break;
            }
            return Err(Error::NoConvergence {
                estimate: f64::INFINITY,
                evaluations: *evaluations,
            });
        }
        for c in 0..N {
            let term = w * fx[c];
            sum[c] += term;
            abs_sum[c] += term.abs();
        }
        *max_term = max_term.max(mag);
        if t.abs() > 1.0 && mag <= TAIL_CUTOFF * *max_term {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    Ok(())
}

/// Integrates a vector-valued integrand over `domain` with a shared node set.
///
/// Converged when every component satisfies
/// `|S_l - S_{l-1}| <= tol * max(|S_l|, int |f|)`.
pub fn integrate_vec<const N: usize, F: FnMut(f64) -> [f64; N]>(
    domain: Domain,
    mut f: F,
    opts: &DeOptions,
) -> Result<VecQuadrature<N>> {
    check_tol(opts.tol)?;
    match domain {
        Domain::RealLine { scale, .. } | Domain::HalfLine { scale, .. }
            if !(scale.is_finite() && scale != 0.0) =>
        {
            return Err(Error::InvalidInput(format!(
                "quadrature scale must be finite and nonzero, got {scale}"
            )));
        }
        Domain::Interval { a, b } if !(a.is_finite() && b.is_finite()) => {
            return Err(Error::InvalidInput(
                "interval endpoints must be finite".into(),
            ));
        }
        Domain::Interval { a, b } if a == b => {
            return Ok(VecQuadrature {
                values: [0.0; N],
                error_estimate: 0.0,
                evaluations: 0,
            });
        }
        _ => {}
    }

    let mut h = 1.0;
    let mut evaluations = 0usize;
    let mut max_term = 0.0f64;
    let mut raw = [0.0; N];
    let mut raw_abs = [0.0; N];

    // level 0: every integer k
    sweep_direction(
        &domain,
        &mut f,
        0..,
        h,
        &mut max_term,
        &mut raw,
        &mut raw_abs,
        &mut evaluations,
    )?;
    sweep_direction(
        &domain,
        &mut f,
        (1..).map(|k: i64| -k),
        h,
        &mut max_term,
        &mut raw,
        &mut raw_abs,
        &mut evaluations,
    )?;
    let mut prev: [f64; N] = std::array::from_fn(|c| raw[c] * h);
    let mut prev_abs: [f64; N] = std::array::from_fn(|c| raw_abs[c] * h);

    let mut level = 0;
    loop {
        level += 1;
        h *= 0.5;
        let mut new = [0.0; N];
        let mut new_abs = [0.0; N];
        sweep_direction(
            &domain,
            &mut f,
            (0..).map(|k: i64| 2 * k + 1),
            h,
            &mut max_term,
            &mut new,
            &mut new_abs,
            &mut evaluations,
        )?;
        sweep_direction(
            &domain,
            &mut f,
            (0..).map(|k: i64| -(2 * k + 1)),
            h,
            &mut max_term,
            &mut new,
            &mut new_abs,
            &mut evaluations,
        )?;
        let cur: [f64; N] = std::array::from_fn(|c| 0.5 * prev[c] + h * new[c]);
        let cur_abs: [f64; N] = std::array::from_fn(|c| 0.5 * prev_abs[c] + h * new_abs[c]);

        let mut err = 0.0f64;
        let mut converged = true;
        for c in 0..N {
            let d = (cur[c] - prev[c]).abs();
            err = err.max(d);
            if d > opts.tol * cur[c].abs().max(cur_abs[c]) {
                converged = false;
            }
        }
        if converged && level >= opts.min_levels {
            return Ok(VecQuadrature {
                values: cur,
                error_estimate: err,
                evaluations,
            });
        }
        if evaluations >= opts.max_evaluations || level >= 30 {
            return Err(Error::NoConvergence {
                estimate: err,
                evaluations,
            });
        }
        prev = cur;
        prev_abs = cur_abs;
    }
}

fn scalar(r: VecQuadrature<1>) -> QuadratureResult {
    QuadratureResult {
        value: r.values[0],
        error_estimate: r.error_estimate,
        evaluations: r.evaluations,
    }
}

/// `int_{-inf}^{inf} f`, for integrands decaying at least exponentially.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadratureResult> {
    integrate_real_line_scaled(f, 0.0, 1.0, tol)
}

/// Real-line integral with nodes centred at `center` and spread by `scale`.
pub fn integrate_real_line_scaled<F: Fn(f64) -> f64>(
    f: F,
    center: f64,
    scale: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    integrate_vec(
        Domain::RealLine { center, scale },
        |x| [f(x)],
        &DeOptions::with_tol(tol),
    )
    .map(scalar)
}

/// `int_0^inf f`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<QuadratureResult> {
    integrate_vec(
        Domain::HalfLine {
            start: 0.0,
            scale: 1.0,
        },
        |x| [f(x)],
        &DeOptions::with_tol(tol),
    )
    .map(scalar)
}

/// `int_a^b f` by tanh-sinh.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if b < a {
        return integrate_interval(f, b, a, tol).map(|r| QuadratureResult {
            value: -r.value,
            ..r
        });
    }
    integrate_vec(
        Domain::Interval { a, b },
        |x| [f(x)],
        &DeOptions::with_tol(tol),
    )
    .map(scalar)
}

/// Result of a log-scaled integral: the integral equals `exp(log_scale) * values`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledIntegral<const N: usize> {
    pub log_scale: f64,
    pub values: [f64; N],
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Distance over which `g` falls by one unit from `x0` moving in `dir`.
fn decay_width<G: Fn(f64) -> f64>(g: &G, x0: f64, dir: f64) -> f64 {
    let g0 = g(x0);
    let mut d = 1e-8 * (1.0 + x0.abs());
    for _ in 0..200 {
        let v = g(x0 + dir * d);
        if !(v > g0 - 1.0) {
            return d;
        }
        d *= 2.0;
    }
    d
}

/// `int_lo^hi p(x) exp(g(x)) dx` for a log-integrand `g` that is monotone on
/// each piece between consecutive `splits`.
///
/// Callers put every local extremum of `g` (and every kink) into `splits`, so
/// peaks sit on piece endpoints where the double-exponential nodes cluster.
/// Infinite ends are handled by half-line rules scaled to the local decay
/// width. The exponent is recentred by its largest value at the splits.
pub fn integrate_peaked<const N: usize, G, P>(
    g: G,
    p: P,
    lo: f64,
    hi: f64,
    splits: &[f64],
    opts: &DeOptions,
) -> Result<ScaledIntegral<N>>
where
    G: Fn(f64) -> f64,
    P: Fn(f64) -> [f64; N],
{
    let mut pts: Vec<f64> = splits
        .iter()
        .copied()
        .filter(|s| s.is_finite() && *s >= lo && *s <= hi)
        .collect();
    if lo.is_finite() {
        pts.push(lo);
    }
    if hi.is_finite() {
        pts.push(hi);
    }
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * (1.0 + a.abs()));
    if pts.is_empty() {
        return Err(Error::InvalidInput(
            "peaked integral needs at least one finite split point".into(),
        ));
    }
    let log_scale = pts.iter().map(|&x| g(x)).fold(f64::NEG_INFINITY, f64::max);
    if !log_scale.is_finite() {
        return Err(Error::InvalidInput(
            "log-integrand is not finite at the split points".into(),
        ));
    }
    let integrand = |x: f64| {
        let e = (g(x) - log_scale).exp();
        let pv = p(x);
        std::array::from_fn(|c| if e == 0.0 { 0.0 } else { pv[c] * e })
    };

    let mut values = [0.0; N];
    let mut error_estimate = 0.0;
    let mut evaluations = 0;
    let mut add = |r: VecQuadrature<N>| {
        for c in 0..N {
            values[c] += r.values[c];
        }
        error_estimate += r.error_estimate;
        evaluations += r.evaluations;
    };

    if lo == f64::NEG_INFINITY {
        let start = pts[0];
        let w = decay_width(&g, start, -1.0);
        add(integrate_vec(
            Domain::HalfLine { start, scale: -w },
            integrand,
            opts,
        )?);
    }
    for pair in pts.windows(2) {
        add(integrate_vec(
            Domain::Interval {
                a: pair[0],
                b: pair[1],
            },
            integrand,
            opts,
        )?);
    }
    if hi == f64::INFINITY {
        let start = *pts.last().unwrap();
        let w = decay_width(&g, start, 1.0);
        add(integrate_vec(
            Domain::HalfLine { start, scale: w },
            integrand,
            opts,
        )?);
    }
    Ok(ScaledIntegral {
        log_scale,
        values,
        error_estimate,
        evaluations,
    })
}

/// `(1/sqrt(pi)) int_z^inf exp(-y^2) dy`, one half of the conventional erfc.
pub fn half_erfc(z: f64) -> f64 {
    0.5 * libm::erfc(z)
}

/// `ln half_erfc(z)`, finite for all finite `z`.
pub fn log_half_erfc(z: f64) -> f64 {
    if z < 5.0 {
        return half_erfc(z).ln();
    }
    // erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    let mut frac = z;
    for k in (1..=60).rev() {
        frac = z + 0.5 * k as f64 / frac;
    }
    -z * z - 0.5 * PI.ln() - frac.ln() - std::f64::consts::LN_2
}
