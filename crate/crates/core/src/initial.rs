//! Initial data `u(x, t0) = q(x)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flux::log_cosh;
use crate::quadrature::integrate_interval;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Far-field expansion `nu(sigma) ~ sum nu_n^± / sigma^n` of a scaled profile.
#[derive(Debug, Clone, PartialEq)]
pub struct TailExpansion {
    pub nu0_minus: f64,
    pub nu0_plus: f64,
    /// `nu_n^-` for n >= 1; stored for completeness.
    pub higher_minus: Vec<f64>,
    pub higher_plus: Vec<f64>,
}

impl TailExpansion {
    pub fn new(nu0_minus: f64, nu0_plus: f64) -> Result<Self> {
        if !(nu0_minus > nu0_plus) {
            return Err(Error::InvalidInput(format!(
                "tails need nu0- > nu0+, got {nu0_minus} <= {nu0_plus}"
            )));
        }
        Ok(Self::unchecked(nu0_minus, nu0_plus))
    }

    /// Tails without the ordering check (degenerate constant profiles).
    pub fn unchecked(nu0_minus: f64, nu0_plus: f64) -> Self {
        TailExpansion {
            nu0_minus,
            nu0_plus,
            higher_minus: Vec::new(),
            higher_plus: Vec::new(),
        }
    }

    pub fn jump(&self) -> f64 {
        self.nu0_plus - self.nu0_minus
    }
}

/// Profile `nu(sigma)` of a scaled initial function `nu(x / rho)`.
#[derive(Clone)]
pub enum Profile {
    /// `amplitude * tanh(sigma)`; the default is amplitude -1.
    Tanh { amplitude: f64 },
    Custom {
        value: ScalarFn,
        derivative: ScalarFn,
    },
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Tanh { amplitude } => f
                .debug_struct("Tanh")
                .field("amplitude", amplitude)
                .finish(),
            Profile::Custom { .. } => f.write_str("Custom(..)"),
        }
    }
}

impl Profile {
    pub fn value(&self, s: f64) -> f64 {
        match self {
            Profile::Tanh { amplitude } => amplitude * s.tanh(),
            Profile::Custom { value, .. } => value(s),
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        match self {
            Profile::Tanh { amplitude } => {
                let c = s.cosh();
                amplitude / (c * c)
            }
            Profile::Custom { derivative, .. } => derivative(s),
        }
    }
}

#[derive(Clone)]
pub enum InitialData {
    Constant(f64),
    Linear {
        slope: f64,
        intercept: f64,
    },
    /// `amplitude * tanh((x - center) / width)`.
    Tanh {
        amplitude: f64,
        width: f64,
        center: f64,
    },
    /// Jump at `at`; `left[n]` / `right[n]` are `d^n u0(at -/+ 0) / dx^n`, so each
    /// side is the Taylor polynomial built from them.
    Step {
        at: f64,
        left: Vec<f64>,
        right: Vec<f64>,
    },
    /// Piecewise constant: `values[i]` on `(breaks[i-1], breaks[i])`.
    Piecewise {
        breaks: Vec<f64>,
        values: Vec<f64>,
    },
    /// `-(x + a x^2) Theta(-x) (1 + q0(x))`.
    WeakDiscontinuity {
        a: f64,
        q0: Option<ScalarFn>,
    },
    /// `nu(x / rho)`.
    Scaled {
        profile: Profile,
        rho: f64,
        tails: TailExpansion,
    },
    /// Smooth user function; `support` brackets where it varies.
    Custom {
        value: ScalarFn,
        support: (f64, f64),
    },
}

impl fmt::Debug for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialData::Constant(c) => write!(f, "Constant({c})"),
            InitialData::Linear { slope, intercept } => {
                write!(f, "Linear {{ slope: {slope}, intercept: {intercept} }}")
            }
            InitialData::Tanh {
                amplitude,
                width,
                center,
            } => {
                write!(
                    f,
                    "Tanh {{ amplitude: {amplitude}, width: {width}, center: {center} }}"
                )
            }
            InitialData::Step { at, left, right } => {
                write!(f, "Step {{ at: {at}, left: {left:?}, right: {right:?} }}")
            }
            InitialData::Piecewise { breaks, values } => {
                write!(f, "Piecewise {{ breaks: {breaks:?}, values: {values:?} }}")
            }
            InitialData::WeakDiscontinuity { a, q0 } => {
                write!(
                    f,
                    "WeakDiscontinuity {{ a: {a}, q0: {} }}",
                    if q0.is_some() { "Some(..)" } else { "None" }
                )
            }
            InitialData::Scaled {
                profile,
                rho,
                tails,
            } => {
                write!(
                    f,
                    "Scaled {{ profile: {profile:?}, rho: {rho}, tails: {tails:?} }}"
                )
            }
            InitialData::Custom { support, .. } => write!(f, "Custom {{ support: {support:?} }}"),
        }
    }
}

fn taylor(coeffs: &[f64], dx: f64) -> f64 {
    // sum c_n dx^n / n!
    let mut acc = 0.0;
    for (n, c) in coeffs.iter().enumerate().rev() {
        acc = acc * dx / (n as f64 + 1.0) + c;
    }
    acc
}

fn taylor_derivative(coeffs: &[f64], k: usize, dx: f64) -> f64 {
    if k >= coeffs.len() {
        0.0
    } else {
        taylor(&coeffs[k..], dx)
    }
}

fn taylor_antiderivative(coeffs: &[f64], dx: f64) -> f64 {
    // sum c_n dx^{n+1} / (n+1)!
    let mut shifted = Vec::with_capacity(coeffs.len() + 1);
    shifted.push(0.0);
    shifted.extend_from_slice(coeffs);
    taylor(&shifted, dx)
}

fn tanh_derivs(amplitude: f64, width: f64, v: f64) -> [f64; 4] {
    let t = v.tanh();
    let s2 = 1.0 - t * t;
    [
        amplitude * t,
        amplitude * s2 / width,
        amplitude * (-2.0 * t * s2) / (width * width),
        amplitude * s2 * (6.0 * t * t - 2.0) / width.powi(3),
    ]
}

fn fd_derivs<F: Fn(f64) -> f64>(f: F, x: f64) -> [f64; 4] {
    let h = 1e-3 * (1.0 + x.abs());
    let (m2, m1, p1, p2) = (f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h));
    let f0 = f(x);
    [
        f0,
        (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h),
        (-m2 + 16.0 * m1 - 30.0 * f0 + 16.0 * p1 - p2) / (12.0 * h * h),
        (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * h.powi(3)),
    ]
}

const NUMERIC_TOL: f64 = 1e-13;

impl InitialData {
    /// Default scaled profile `-tanh(x / rho)`.
    pub fn scaled_neg_tanh(rho: f64) -> Self {
        InitialData::Scaled {
            profile: Profile::Tanh { amplitude: -1.0 },
            rho,
            tails: TailExpansion::unchecked(1.0, -1.0),
        }
    }

    pub fn weak_discontinuity(a: f64) -> Self {
        InitialData::WeakDiscontinuity { a, q0: None }
    }

    pub fn neg_tanh() -> Self {
        InitialData::Tanh {
            amplitude: -1.0,
            width: 1.0,
            center: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        match self {
            InitialData::Tanh { width, .. } if !(*width > 0.0) => {
                bad(format!("tanh width must be positive, got {width}"))
            }
            InitialData::Step { left, right, .. } if left.is_empty() || right.is_empty() => {
                bad("step data needs at least the zeroth one-sided value on each side".into())
            }
            InitialData::Piecewise { breaks, values } => {
                if values.len() != breaks.len() + 1 {
                    return bad(format!(
                        "piecewise data needs {} values, got {}",
                        breaks.len() + 1,
                        values.len()
                    ));
                }
                if breaks.windows(2).any(|w| !(w[0] < w[1])) {
                    return bad("piecewise breaks must be strictly increasing".into());
                }
                Ok(())
            }
            InitialData::WeakDiscontinuity { a, .. } if !(*a > 0.0) => {
                bad(format!("weak discontinuity needs a > 0, got {a}"))
            }
            InitialData::Scaled { rho, tails, .. } => {
                if !(*rho > 0.0) {
                    return bad(format!("scale rho must be positive, got {rho}"));
                }
                if !(tails.nu0_minus > tails.nu0_plus) {
                    return bad(format!(
                        "scaled data needs nu0- > nu0+, got {} <= {}",
                        tails.nu0_minus, tails.nu0_plus
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.eval(x, Side::Right)
    }

    /// Value with an explicit side at a jump; identical to `value` elsewhere.
    pub fn eval(&self, x: f64, side: Side) -> f64 {
        self.derivatives_side(x, side)[0]
    }

    /// One-sided limits `(q(x - 0), q(x + 0))`.
    pub fn one_sided(&self, x: f64) -> (f64, f64) {
        (self.eval(x, Side::Left), self.eval(x, Side::Right))
    }

    /// `[q, q', q'', q''']` at `x` (right-sided at a jump).
    pub fn derivatives(&self, x: f64) -> [f64; 4] {
        self.derivatives_side(x, Side::Right)
    }

    pub fn derivatives_side(&self, x: f64, side: Side) -> [f64; 4] {
        let left_of = |at: f64| x < at || (x == at && side == Side::Left);
        match self {
            InitialData::Constant(c) => [*c, 0.0, 0.0, 0.0],
            InitialData::Linear { slope, intercept } => [slope * x + intercept, *slope, 0.0, 0.0],
            InitialData::Tanh {
                amplitude,
                width,
                center,
            } => tanh_derivs(*amplitude, *width, (x - center) / width),
            InitialData::Step { at, left, right } => {
                let coeffs = if left_of(*at) { left } else { right };
                let dx = x - at;
                std::array::from_fn(|k| taylor_derivative(coeffs, k, dx))
            }
            InitialData::Piecewise { breaks, values } => {
                let idx = breaks.iter().take_while(|&&b| !left_of(b)).count();
                [values[idx], 0.0, 0.0, 0.0]
            }
            InitialData::WeakDiscontinuity { a, q0 } => {
                if !left_of(0.0) {
                    return [0.0; 4];
                }
                let base = [-(x + a * x * x), -1.0 - 2.0 * a * x, -2.0 * a, 0.0];
                match q0 {
                    None => base,
                    Some(q0) => {
                        let m = fd_derivs(|s| q0(s), x);
                        // product rule for base * (1 + q0)
                        let g = [1.0 + m[0], m[1], m[2], m[3]];
                        [
                            base[0] * g[0],
                            base[1] * g[0] + base[0] * g[1],
                            base[2] * g[0] + 2.0 * base[1] * g[1] + base[0] * g[2],
                            base[3] * g[0]
                                + 3.0 * base[2] * g[1]
                                + 3.0 * base[1] * g[2]
                                + base[0] * g[3],
                        ]
                    }
                }
            }
            InitialData::Scaled { profile, rho, .. } => match profile {
                Profile::Tanh { amplitude } => tanh_derivs(*amplitude, *rho, x / rho),
                Profile::Custom { .. } => {
                    let s = x / rho;
                    let d = fd_derivs(|v| profile.derivative(v), s);
                    [
                        profile.value(s),
                        d[0] / rho,
                        d[1] / (rho * rho),
                        d[2] / rho.powi(3),
                    ]
                }
            },
            InitialData::Custom { value, .. } => fd_derivs(|s| value(s), x),
        }
    }

    /// `int_0^x q(s) ds`: the potential entering the Hopf representation.
    pub fn antiderivative(&self, x: f64) -> f64 {
        match self {
            InitialData::Constant(c) => c * x,
            InitialData::Linear { slope, intercept } => 0.5 * slope * x * x + intercept * x,
            InitialData::Tanh {
                amplitude,
                width,
                center,
            } => amplitude * width * (log_cosh((x - center) / width) - log_cosh(-center / width)),
            InitialData::Step { at, left, right } => {
                let p = |y: f64| {
                    let coeffs = if y < *at { left } else { right };
                    taylor_antiderivative(coeffs, y - at)
                };
                p(x) - p(0.0)
            }
            InitialData::Piecewise { breaks, values } => {
                // continuous piecewise-linear primitive anchored at the first break (or 0)
                let anchor = breaks.first().copied().unwrap_or(0.0);
                let p = |y: f64| {
                    let mut acc = 0.0;
                    if y <= anchor {
                        return values[0] * (y - anchor);
                    }
                    let mut prev = anchor;
                    for (i, &b) in breaks.iter().enumerate().skip(1) {
                        if y <= b {
                            return acc + values[i] * (y - prev);
                        }
                        acc += values[i] * (b - prev);
                        prev = b;
                    }
                    acc + values[values.len() - 1] * (y - prev)
                };
                p(x) - p(0.0)
            }
            InitialData::WeakDiscontinuity { a, q0 } => {
                if x >= 0.0 {
                    return 0.0;
                }
                match q0 {
                    None => -0.5 * x * x - a * x.powi(3) / 3.0,
                    Some(_) => -numeric_integral(|s| self.value(s), x, 0.0),
                }
            }
            InitialData::Scaled { profile, rho, .. } => match profile {
                Profile::Tanh { amplitude } => amplitude * rho * log_cosh(x / rho),
                Profile::Custom { .. } => numeric_integral(|s| self.value(s), 0.0, x),
            },
            InitialData::Custom { .. } => numeric_integral(|s| self.value(s), 0.0, x),
        }
    }

    /// Points where the data has a jump or a narrow feature.
    pub fn feature_points(&self) -> Vec<f64> {
        match self {
            InitialData::Tanh { center, .. } => vec![*center],
            InitialData::Step { at, .. } => vec![*at],
            InitialData::Piecewise { breaks, .. } => breaks.clone(),
            InitialData::WeakDiscontinuity { .. } | InitialData::Scaled { .. } => vec![0.0],
            _ => Vec::new(),
        }
    }

    /// Jump locations (subset of `feature_points`).
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            InitialData::Step { at, .. } => vec![*at],
            InitialData::Piecewise { breaks, .. } => breaks.clone(),
            _ => Vec::new(),
        }
    }

    /// Interval outside of which the data is (numerically) at its far-field state.
    pub fn support_hint(&self) -> (f64, f64) {
        match self {
            InitialData::Constant(_) | InitialData::Linear { .. } => (-1.0, 1.0),
            InitialData::Tanh { width, center, .. } => {
                (center - 40.0 * width, center + 40.0 * width)
            }
            InitialData::Step { at, .. } => (at - 1.0, at + 1.0),
            InitialData::Piecewise { breaks, .. } => {
                (breaks[0] - 1.0, breaks[breaks.len() - 1] + 1.0)
            }
            InitialData::WeakDiscontinuity { a, .. } => (-2.0 / a - 1.0, 1.0),
            InitialData::Scaled { rho, .. } => (-40.0 * rho, 40.0 * rho),
            InitialData::Custom { support, .. } => *support,
        }
    }

    /// Limits at `-inf` and `+inf` when the data is bounded.
    pub fn limits(&self) -> Option<(f64, f64)> {
        match self {
            InitialData::Constant(c) => Some((*c, *c)),
            InitialData::Tanh { amplitude, .. } => Some((-amplitude, *amplitude)),
            InitialData::Step { left, right, .. } if left.len() == 1 && right.len() == 1 => {
                Some((left[0], right[0]))
            }
            InitialData::Piecewise { values, .. } => Some((values[0], values[values.len() - 1])),
            InitialData::Scaled { tails, .. } => Some((tails.nu0_minus, tails.nu0_plus)),
            _ => None,
        }
    }

    /// Sampled `(min, max)` of the data over `[lo, hi]`, including one-sided values at jumps.
    pub fn range_on(&self, lo: f64, hi: f64) -> (f64, f64) {
        const N: usize = 4096;
        let mut mn = f64::INFINITY;
        let mut mx = f64::NEG_INFINITY;
        let mut push = |v: f64| {
            mn = mn.min(v);
            mx = mx.max(v);
        };
        for i in 0..=N {
            push(self.value(lo + (hi - lo) * i as f64 / N as f64));
        }
        for b in self.breakpoints().into_iter().chain(self.feature_points()) {
            if (lo..=hi).contains(&b) {
                let (l, r) = self.one_sided(b);
                push(l);
                push(r);
            }
        }
        (mn, mx)
    }

    /// Returns the data translated by `delta`: `q(x - delta)`.
    pub fn shifted(&self, delta: f64) -> InitialData {
        match self {
            InitialData::Tanh {
                amplitude,
                width,
                center,
            } => InitialData::Tanh {
                amplitude: *amplitude,
                width: *width,
                center: center + delta,
            },
            InitialData::Step { at, left, right } => InitialData::Step {
                at: at + delta,
                left: left.clone(),
                right: right.clone(),
            },
            InitialData::Piecewise { breaks, values } => InitialData::Piecewise {
                breaks: breaks.iter().map(|b| b + delta).collect(),
                values: values.clone(),
            },
            other => {
                let inner = other.clone();
                let (lo, hi) = other.support_hint();
                InitialData::Custom {
                    value: Arc::new(move |x| inner.value(x - delta)),
                    support: (lo + delta, hi + delta),
                }
            }
        }
    }
}

fn numeric_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    integrate_interval(f, a, b, NUMERIC_TOL)
        .map(|r| r.value)
        .unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_discontinuity_values() {
        let q = InitialData::weak_discontinuity(1.0);
        assert_eq!(q.value(1.0), 0.0);
        assert!((q.value(-0.5) - 0.25).abs() < 1e-16);
        // continuous at 0, one-sided slopes -1 and 0
        assert_eq!(q.one_sided(0.0), (0.0, 0.0));
        assert_eq!(q.derivatives_side(0.0, Side::Left)[1], -1.0);
        assert_eq!(q.derivatives_side(0.0, Side::Right)[1], 0.0);
    }

    #[test]
    fn scaled_tanh_is_odd() {
        let q = InitialData::scaled_neg_tanh(0.1);
        assert_eq!(q.value(0.0), 0.0);
        assert!((q.value(0.05) + q.value(-0.05)).abs() < 1e-16);
        q.validate().unwrap();
    }

    #[test]
    fn scaled_requires_ordered_tails() {
        let q = InitialData::Scaled {
            profile: Profile::Tanh { amplitude: 1.0 },
            rho: 0.1,
            tails: TailExpansion::unchecked(-1.0, 1.0),
        };
        assert!(q.validate().is_err());
        assert!(TailExpansion::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn step_sides_and_taylor_tails() {
        let q = InitialData::Step {
            at: 0.0,
            left: vec![1.0, -0.25],
            right: vec![-1.0, -0.25, 2.0],
        };
        assert_eq!(q.one_sided(0.0), (1.0, -1.0));
        assert!((q.value(-2.0) - 1.5).abs() < 1e-15);
        assert!((q.value(0.5) - (-1.0 - 0.125 + 0.25)).abs() < 1e-15);
        assert_eq!(q.derivatives_side(0.0, Side::Left)[1], -0.25);
        assert_eq!(q.derivatives(0.0)[2], 2.0);
    }

    fn check_antiderivative(q: &InitialData, xs: &[f64]) {
        for &x in xs {
            let mut pts = vec![0.0, x];
            pts.extend(
                q.breakpoints()
                    .into_iter()
                    .filter(|b| x.min(0.0) < *b && *b < x.max(0.0)),
            );
            pts.sort_by(|a, b| a.total_cmp(b));
            let mut total = 0.0;
            for w in pts.windows(2) {
                total += integrate_interval(|s| q.value(s), w[0], w[1], 1e-13)
                    .unwrap()
                    .value;
            }
            if x < 0.0 {
                total = -total;
            }
            assert!(
                (q.antiderivative(x) - total).abs() < 1e-11 * (1.0 + total.abs()),
                "{q:?} at {x}: {} vs {total}",
                q.antiderivative(x)
            );
        }
    }

    #[test]
    fn antiderivatives_match_quadrature() {
        let xs = [-2.3, -0.4, 0.0, 0.7, 3.1];
        check_antiderivative(&InitialData::neg_tanh(), &xs);
        check_antiderivative(
            &InitialData::Tanh {
                amplitude: 2.0,
                width: 0.5,
                center: 0.3,
            },
            &xs,
        );
        check_antiderivative(
            &InitialData::Linear {
                slope: 1.5,
                intercept: -0.2,
            },
            &xs,
        );
        check_antiderivative(&InitialData::weak_discontinuity(1.3), &xs);
        check_antiderivative(&InitialData::scaled_neg_tanh(0.05), &xs);
        check_antiderivative(
            &InitialData::Step {
                at: 0.0,
                left: vec![1.0, -0.25],
                right: vec![-1.0, -0.25],
            },
            &xs,
        );
        check_antiderivative(
            &InitialData::Step {
                at: 0.5,
                left: vec![2.0],
                right: vec![0.0, 1.0],
            },
            &xs,
        );
        check_antiderivative(
            &InitialData::Piecewise {
                breaks: vec![-1.0, 1.0],
                values: vec![2.0, 0.0, -2.0],
            },
            &xs,
        );
    }

    #[test]
    fn tanh_derivatives_match_finite_differences() {
        let q = InitialData::Tanh {
            amplitude: -1.3,
            width: 0.7,
            center: 0.2,
        };
        let x = 0.45;
        let a = q.derivatives(x);
        let b = fd_derivs(|s| q.value(s), x);
        for k in 0..4 {
            assert!((a[k] - b[k]).abs() < 1e-4, "k = {k}: {} vs {}", a[k], b[k]);
        }
    }

    #[test]
    fn piecewise_lookup() {
        let q = InitialData::Piecewise {
            breaks: vec![-1.0, 1.0],
            values: vec![2.0, 0.0, -2.0],
        };
        assert_eq!(q.value(-3.0), 2.0);
        assert_eq!(q.value(0.0), 0.0);
        assert_eq!(q.value(5.0), -2.0);
        assert_eq!(q.one_sided(-1.0), (2.0, 0.0));
        assert_eq!(q.limits(), Some((2.0, -2.0)));
    }
}
