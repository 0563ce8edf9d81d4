//! The inviscid limit: characteristics, gradient catastrophe, shock tracking, collisions.
//!
//! Times are measured from the instant the initial data is given.

use crate::error::{Error, Result};
use crate::flux::FluxFunction;
use crate::initial::{InitialData, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularKind {
    InitialJump,
    Catastrophe,
    Collision,
    WeakToShock,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalData {
    Jump {
        u_minus: f64,
        u_plus: f64,
    },
    /// `c(x0) = phi'(q(x0))`; `c1 = c'(x0*) < 0`, `c3 = c'''(x0*)`.
    Catastrophe {
        x0: f64,
        u_star: f64,
        c_star: f64,
        c1: f64,
        c3: f64,
        phi2: f64,
    },
    Collision {
        u1: f64,
        u2: f64,
        u3: f64,
        s1_speed: f64,
        s2_speed: f64,
        s3_speed: f64,
    },
    WeakToShock {
        u_star: f64,
        left_slope: f64,
        phi2: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPoint {
    pub kind: SingularKind,
    pub x_star: f64,
    pub t_star: f64,
    pub local: LocalData,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockCurve {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub left_states: Vec<f64>,
    pub right_states: Vec<f64>,
    pub birth_time: f64,
}

impl ShockCurve {
    pub fn from_samples(
        times: Vec<f64>,
        positions: Vec<f64>,
        left_states: Vec<f64>,
        right_states: Vec<f64>,
    ) -> Self {
        let birth_time = times.first().copied().unwrap_or(0.0);
        ShockCurve {
            times,
            positions,
            left_states,
            right_states,
            birth_time,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `s'(t_k)` by centered differences (one-sided at the ends), exact for quadratics on uneven samples.
    pub fn speeds(&self) -> Vec<f64> {
        let n = self.len();
        let (t, s) = (&self.times, &self.positions);
        (0..n)
            .map(|k| {
                if k == 0 || k == n - 1 {
                    let (a, b) = if k == 0 { (0, 1) } else { (n - 2, n - 1) };
                    return (s[b] - s[a]) / (t[b] - t[a]);
                }
                let (hm, hp) = (t[k] - t[k - 1], t[k + 1] - t[k]);
                (hm * hm * (s[k + 1] - s[k]) + hp * hp * (s[k] - s[k - 1])) / (hm * hp * (hm + hp))
            })
            .collect()
    }

    /// Largest `|s'(t_k) - RH(u-, u+)|` over interior samples.
    pub fn rh_defect(&self, flux: &FluxFunction) -> f64 {
        let v = self.speeds();
        (1..self.len().saturating_sub(1))
            .map(|k| (v[k] - flux.rh_speed(self.left_states[k], self.right_states[k])).abs())
            .fold(0.0, f64::max)
    }

    /// Whether `u- > u+` at every sample after birth (a catastrophe is born with zero jump).
    pub fn satisfies_entropy(&self) -> bool {
        let born = self
            .left_states
            .first()
            .zip(self.right_states.first())
            .is_none_or(|(l, r)| l >= r);
        born && self
            .left_states
            .iter()
            .zip(&self.right_states)
            .skip(1)
            .all(|(l, r)| l > r)
    }

    /// Position by cubic Hermite interpolation of the samples.
    pub fn position_at(&self, t: f64) -> f64 {
        let v = self.speeds();
        let k = self
            .times
            .partition_point(|&s| s <= t)
            .clamp(1, self.len() - 1)
            - 1;
        hermite(
            self.times[k],
            self.times[k + 1],
            self.positions[k],
            self.positions[k + 1],
            v[k],
            v[k + 1],
            t,
        )
    }
}

fn hermite(t0: f64, t1: f64, p0: f64, p1: f64, v0: f64, v1: f64, t: f64) -> f64 {
    let h = t1 - t0;
    let s = (t - t0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * p0
        + (s3 - 2.0 * s2 + s) * h * v0
        + (-2.0 * s3 + 3.0 * s2) * p1
        + (s3 - s2) * h * v1
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Foot {
    x0: f64,
    u: f64,
    increasing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Crossing {
    Foot(Foot),
    /// `x` lies inside the rarefaction fan of the jump at `at`.
    Fan {
        at: f64,
        u: f64,
    },
    /// `x` lies inside the overlap of a compressive jump.
    Overlap,
}

fn inverse_speed(flux: &FluxFunction, target: f64, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if flux.d1(m) < target {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

// Every way the point (x, t) is reached from the data.
fn crossings(q: &InitialData, flux: &FluxFunction, x: f64, t: f64, hints: &[f64]) -> Vec<Crossing> {
    let h = |x0: f64, side: Side| x0 + flux.d1(q.eval(x0, side)) * t - x;
    let (slo, shi) = q.support_hint();
    let (qlo, qhi) = q.range_on(slo, shi);
    let (vlo, vhi) = (flux.d1(qlo), flux.d1(qhi));
    let mut lo = (x - vhi * t).min(slo) - 1.0;
    let mut hi = (x - vlo * t).max(shi) + 1.0;
    // unbounded data: widen until h brackets
    for _ in 0..60 {
        if h(lo, Side::Right) < 0.0 && h(hi, Side::Left) > 0.0 {
            break;
        }
        let w = hi - lo;
        lo -= w;
        hi += w;
    }

    let breaks = q.breakpoints();
    let mut pts: Vec<f64> = (0..=4000)
        .map(|i| lo + (hi - lo) * i as f64 / 4000.0)
        .collect();
    for &c in hints.iter().chain(&q.feature_points()) {
        if c > lo && c < hi {
            pts.extend((-100..=100).map(|k| c + 5e-4 * k as f64));
            pts.extend((0..=120).flat_map(|j| {
                let d = 1e-9 * 2f64.powf(j as f64 / 4.0);
                [c - d, c + d]
            }));
        }
    }
    pts.extend(breaks.iter().copied());
    pts.retain(|p| *p >= lo && *p <= hi);
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();

    let mut out = Vec::new();
    let mut prev = (pts[0], h(pts[0], Side::Right));
    for &p in &pts[1..] {
        let is_break = breaks.contains(&p);
        let hl = h(p, Side::Left);
        if prev.1 == 0.0 {
            push_root(&mut out, q, flux, t, prev.0);
        } else if (prev.1 < 0.0) != (hl < 0.0) && hl != 0.0 {
            let f = |s: f64| h(s, Side::Right);
            let r = bisect(f, prev.0, p, prev.1);
            push_root(&mut out, q, flux, t, r);
        }
        let hr = if is_break { h(p, Side::Right) } else { hl };
        if is_break && (hl < 0.0) != (hr < 0.0) {
            let (ul, ur) = q.one_sided(p);
            if hl < hr {
                out.push(Crossing::Fan {
                    at: p,
                    u: inverse_speed(flux, (x - p) / t, ul.min(ur), ul.max(ur)),
                });
            } else {
                out.push(Crossing::Overlap);
            }
        }
        prev = (p, hr);
    }
    out
}

fn push_root(out: &mut Vec<Crossing>, q: &InitialData, flux: &FluxFunction, t: f64, x0: f64) {
    let d = q.derivatives(x0);
    let slope = 1.0 + flux.d2(d[0]) * d[1] * t;
    out.push(Crossing::Foot(Foot {
        x0,
        u: d[0],
        increasing: slope >= 0.0,
    }));
}

/// `q(x0)` where `x = x0 + phi'(q(x0)) t`, including rarefaction fans from expansive jumps.
pub fn characteristic_solution(
    q: &InitialData,
    flux: &FluxFunction,
    x: f64,
    t: f64,
) -> Result<f64> {
    if t <= 0.0 {
        return Ok(q.value(x));
    }
    let c = crossings(q, flux, x, t, &[]);
    match c.as_slice() {
        [Crossing::Foot(f)] => Ok(f.u),
        [Crossing::Fan { u, .. }] => Ok(*u),
        [] => Err(Error::NoConvergence {
            estimate: f64::NAN,
            evaluations: 0,
        }),
        _ => Err(Error::MultivaluedRegion {
            x,
            t,
            roots: c.len(),
        }),
    }
}

/// First gradient catastrophe of smooth data given at time 0.
pub fn catastrophe_point(q: &InitialData, flux: &FluxFunction) -> Result<SingularPoint> {
    if let InitialData::WeakDiscontinuity { .. } = q {
        return weak_to_shock_point(q, flux);
    }
    let dc = |x0: f64| {
        let d = q.derivatives(x0);
        flux.d2(d[0]) * d[1]
    };
    let (lo, hi) = q.support_hint();
    const N: usize = 10_000;
    let h = (hi - lo) / N as f64;
    let (mut best, mut at) = (f64::INFINITY, 0);
    for i in 0..=N {
        let v = dc(lo + h * i as f64);
        if v < best {
            best = v;
            at = i;
        }
    }
    if !(best < 0.0) {
        return Err(Error::NoCatastrophe);
    }
    // golden section on c' over the neighbouring samples
    let (mut a, mut b) = (
        lo + h * at.saturating_sub(1) as f64,
        lo + h * (at + 1).min(N) as f64,
    );
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (dc(x1), dc(x2));
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = dc(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = dc(x2);
        }
    }
    let mut x0 = 0.5 * (a + b);
    // Newton on c'' = 0
    for _ in 0..20 {
        let (c2, c3) = c_higher(q, flux, x0);
        if c3 == 0.0 {
            break;
        }
        let step = c2 / c3;
        x0 -= step;
        if step.abs() < 1e-15 * (1.0 + x0.abs()) {
            break;
        }
    }
    let d = q.derivatives(x0);
    let c1 = flux.d2(d[0]) * d[1];
    if !(c1 < 0.0) {
        return Err(Error::NoCatastrophe);
    }
    let (_, c3) = c_higher(q, flux, x0);
    let t_star = -1.0 / c1;
    let c_star = flux.d1(d[0]);
    Ok(SingularPoint {
        kind: SingularKind::Catastrophe,
        x_star: x0 + c_star * t_star,
        t_star,
        local: LocalData::Catastrophe {
            x0,
            u_star: d[0],
            c_star,
            c1,
            c3,
            phi2: flux.d2(d[0]),
        },
    })
}

// (c'', c''') of c = phi'(q)
fn c_higher(q: &InitialData, flux: &FluxFunction, x0: f64) -> (f64, f64) {
    let [u, q1, q2, q3] = q.derivatives(x0);
    let (p2, p3) = (flux.d2(u), flux.d3(u));
    let p4 = flux.derivative(4, u).unwrap_or(0.0);
    (
        p3 * q1 * q1 + p2 * q2,
        p4 * q1.powi(3) + 3.0 * p3 * q1 * q2 + p2 * q3,
    )
}

/// Weak discontinuity at 0 steepening into a shock: `t* = 1 / (phi''(0) |q'(0-)|)`.
pub fn weak_to_shock_point(q: &InitialData, flux: &FluxFunction) -> Result<SingularPoint> {
    let d = q.derivatives_side(0.0, Side::Left);
    let c1 = flux.d2(d[0]) * d[1];
    if !(c1 < 0.0) {
        return Err(Error::NoCatastrophe);
    }
    let t_star = -1.0 / c1;
    Ok(SingularPoint {
        kind: SingularKind::WeakToShock,
        x_star: flux.d1(d[0]) * t_star,
        t_star,
        local: LocalData::WeakToShock {
            u_star: d[0],
            left_slope: d[1],
            phi2: flux.d2(d[0]),
        },
    })
}

/// The jump of step-like data as a singular point at time 0.
pub fn initial_jump_point(q: &InitialData, at: f64) -> SingularPoint {
    let (u_minus, u_plus) = q.one_sided(at);
    SingularPoint {
        kind: SingularKind::InitialJump,
        x_star: at,
        t_star: 0.0,
        local: LocalData::Jump { u_minus, u_plus },
    }
}

#[derive(Debug, Clone, Copy)]
struct Feet {
    left: f64,
    right: f64,
}

fn shock_states(
    q: &InitialData,
    flux: &FluxFunction,
    x: f64,
    t: f64,
    feet: Feet,
) -> Option<(f64, f64, Feet)> {
    let c = crossings(q, flux, x, t, &[feet.left, feet.right]);
    let tol = 1e-9 * (1.0 + feet.left.abs().max(feet.right.abs()));
    let mut left: Option<Foot> = None;
    let mut right: Option<Foot> = None;
    for cr in &c {
        if let Crossing::Foot(f) = cr {
            if !f.increasing {
                continue;
            }
            if f.x0 <= feet.left + tol && left.is_none_or(|l| f.x0 > l.x0) {
                left = Some(*f);
            }
            if f.x0 >= feet.right - tol && right.is_none_or(|r| f.x0 < r.x0) {
                right = Some(*f);
            }
        }
    }
    let (l, r) = (left?, right?);
    Some((
        l.u,
        r.u,
        Feet {
            left: l.x0,
            right: r.x0,
        },
    ))
}

/// Integrates `s' = RH(u-, u+)` with classic RK4 from `birth` to `t_end`, 1600 steps per unit time.
pub fn track_shock(
    q: &InitialData,
    flux: &FluxFunction,
    birth: &SingularPoint,
    t_end: f64,
) -> Result<ShockCurve> {
    let steps = ((t_end - birth.t_star) * 1600.0).ceil().clamp(400.0, 1e6) as usize;
    track_shock_steps(q, flux, birth, t_end, steps)
}

pub fn track_shock_steps(
    q: &InitialData,
    flux: &FluxFunction,
    birth: &SingularPoint,
    t_end: f64,
    steps: usize,
) -> Result<ShockCurve> {
    let (mut feet, u0) = match birth.local {
        LocalData::Catastrophe { x0, u_star, .. } => (
            Feet {
                left: x0,
                right: x0,
            },
            (u_star, u_star),
        ),
        LocalData::Jump { u_minus, u_plus } => (
            Feet {
                left: birth.x_star,
                right: birth.x_star,
            },
            (u_minus, u_plus),
        ),
        LocalData::WeakToShock { u_star, .. } => (
            // skip the degenerate foot x0 = 0 on the left
            Feet {
                left: -1e-8,
                right: 0.0,
            },
            (u_star, u_star),
        ),
        LocalData::Collision { u1, u3, .. } => {
            return Err(Error::InvalidInput(format!(
                "tracking from a collision ({u1} | {u3}) is not supported"
            )))
        }
    };
    if !(t_end > birth.t_star) || steps == 0 {
        return Err(Error::InvalidInput(format!(
            "t_end = {t_end} must follow the birth time {}",
            birth.t_star
        )));
    }
    let dt = (t_end - birth.t_star) / steps as f64;
    let mut t = birth.t_star;
    let mut s = birth.x_star;
    let mut curve = ShockCurve::from_samples(vec![t], vec![s], vec![u0.0], vec![u0.1]);
    let lost = |t: f64| Error::NoConvergence {
        estimate: t,
        evaluations: 0,
    };

    let speed = |t: f64, s: f64, feet: Feet| -> Result<(f64, Feet)> {
        if t <= birth.t_star {
            return Ok((flux.rh_speed(u0.0, u0.1), feet));
        }
        let (ul, ur, f) = shock_states(q, flux, s, t, feet).ok_or_else(|| lost(t))?;
        Ok((flux.rh_speed(ul, ur), f))
    };
    let rk4 = |t: f64, s: f64, h: f64, feet: Feet| -> Result<f64> {
        let (k1, _) = speed(t, s, feet)?;
        let (k2, _) = speed(t + 0.5 * h, s + 0.5 * h * k1, feet)?;
        let (k3, _) = speed(t + 0.5 * h, s + 0.5 * h * k2, feet)?;
        let (k4, _) = speed(t + h, s + h * k3, feet)?;
        Ok(s + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0)
    };
    let mut first = 0;
    if u0.0 == u0.1 {
        // zero-strength birth: implicit trapezoid over a tiny step, then geometric steps
        let k0 = speed(t, s, feet)?.0;
        let h0 = 1e-2 * dt;
        let t1 = t + h0;
        let mut s1 = s + h0 * flux.d1(u0.0);
        let mut f1 = feet;
        for _ in 0..200 {
            let (k1, f) = speed(t1, s1, feet)?;
            let next = 0.5 * s1 + 0.5 * (s + 0.5 * h0 * (k0 + k1));
            f1 = f;
            let done = (next - s1).abs() <= 1e-15 * (1.0 + s1.abs());
            s1 = next;
            if done {
                break;
            }
        }
        first = steps.min(10);
        let target = if first == steps {
            t_end
        } else {
            birth.t_star + first as f64 * dt
        };
        let (mut tk, mut sk, mut fk) = (t1, s1, f1);
        loop {
            let (ul, ur, f) = shock_states(q, flux, sk, tk, fk).ok_or_else(|| lost(tk))?;
            fk = f;
            curve.times.push(tk);
            curve.positions.push(sk);
            curve.left_states.push(ul);
            curve.right_states.push(ur);
            if tk >= target {
                break;
            }
            let h = (0.1 * (tk - birth.t_star)).min(target - tk);
            sk = rk4(tk, sk, h, fk)?;
            tk = if target - tk - h < 1e-3 * h {
                target
            } else {
                tk + h
            };
        }
        t = tk;
        s = sk;
        feet = fk;
    }
    for step in first..steps {
        s = rk4(t, s, dt, feet)?;
        t = if step + 1 == steps {
            t_end
        } else {
            birth.t_star + (step + 1) as f64 * dt
        };
        let (ul, ur, f) = shock_states(q, flux, s, t, feet).ok_or_else(|| lost(t))?;
        if (ul - ur).abs() < 1e-10 {
            return Err(Error::StatesCollapsed(t));
        }
        feet = f;
        curve.times.push(t);
        curve.positions.push(s);
        curve.left_states.push(ul);
        curve.right_states.push(ur);
    }
    Ok(curve)
}

/// Meeting point of `s1` (left) and `s2` (right) on their common time interval.
pub fn detect_collision(
    s1: &ShockCurve,
    s2: &ShockCurve,
    flux: &FluxFunction,
) -> Result<SingularPoint> {
    let t_lo = s1.times[0].max(s2.times[0]);
    let t_hi = s1.times[s1.len() - 1].min(s2.times[s2.len() - 1]);
    if !(t_hi > t_lo) {
        return Err(Error::NoCollision);
    }
    let gap = |t: f64| s2.position_at(t) - s1.position_at(t);
    let mut ts: Vec<f64> = s1
        .times
        .iter()
        .chain(&s2.times)
        .copied()
        .filter(|t| *t >= t_lo && *t <= t_hi)
        .collect();
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup();

    let scale = 1e-12
        * (1.0
            + s1.positions
                .iter()
                .chain(&s2.positions)
                .fold(0.0f64, |m, p| m.max(p.abs())));
    let mut bracket = None;
    for w in ts.windows(2) {
        let (ga, gb) = (gap(w[0]), gap(w[1]));
        if ga.abs() <= scale {
            bracket = Some((w[0], w[0]));
            break;
        }
        if gb.abs() <= scale || (ga > 0.0) != (gb > 0.0) {
            bracket = Some((w[0], w[1]));
            break;
        }
    }
    let (mut a, mut b) = bracket.ok_or(Error::NoCollision)?;
    // bracketed secant (Illinois)
    let mut t_star = b;
    if a != b {
        let (mut fa, mut fb) = (gap(a), gap(b));
        let mut side = 0;
        for _ in 0..100 {
            let c = (a * fb - b * fa) / (fb - fa);
            let fc = gap(c);
            t_star = c;
            if fc.abs() <= 1e-15 || (b - a).abs() < 1e-15 * (1.0 + c.abs()) {
                break;
            }
            if (fc > 0.0) == (fb > 0.0) {
                b = c;
                fb = fc;
                if side == -1 {
                    fa *= 0.5;
                }
                side = -1;
            } else {
                a = c;
                fa = fc;
                if side == 1 {
                    fb *= 0.5;
                }
                side = 1;
            }
        }
    }

    let speed_at = |c: &ShockCurve, t: f64| {
        let h = 1e-6 * (1.0 + t.abs());
        let (lo, hi) = ((t - h).max(c.times[0]), (t + h).min(c.times[c.len() - 1]));
        (c.position_at(hi) - c.position_at(lo)) / (hi - lo)
    };
    let state_at = |v: &[f64], c: &ShockCurve, t: f64| {
        let k = c.times.partition_point(|&s| s < t).min(c.len() - 1);
        v[k]
    };
    let (v1, v2) = (speed_at(s1, t_star), speed_at(s2, t_star));
    if (v1 - v2).abs() <= 1e-6 {
        return Err(Error::DegenerateMerge((v1 - v2).abs()));
    }
    let u1 = state_at(&s1.left_states, s1, t_star);
    let u2 = state_at(&s1.right_states, s1, t_star);
    let u3 = state_at(&s2.right_states, s2, t_star);
    Ok(SingularPoint {
        kind: SingularKind::Collision,
        x_star: s1.position_at(t_star),
        t_star,
        local: LocalData::Collision {
            u1,
            u2,
            u3,
            s1_speed: v1,
            s2_speed: v2,
            s3_speed: flux.rh_speed(u1, u3),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn burgers() -> FluxFunction {
        FluxFunction::burgers()
    }

    #[test]
    fn characteristics_of_constant_and_linear_data() {
        assert_eq!(
            characteristic_solution(&InitialData::Constant(0.4), &burgers(), 2.0, 3.0).unwrap(),
            0.4
        );
        let q = InitialData::Linear {
            slope: 1.0,
            intercept: 0.0,
        };
        for &(x, t) in &[(1.0, 1.0), (-3.0, 0.5), (0.2, 4.0)] {
            let u = characteristic_solution(&q, &burgers(), x, t).unwrap();
            assert!((u - x / (1.0 + t)).abs() < 1e-12, "{u}");
        }
    }

    #[test]
    fn post_catastrophe_query_is_multivalued() {
        let e =
            characteristic_solution(&InitialData::neg_tanh(), &burgers(), 0.0, 2.0).unwrap_err();
        assert!(
            matches!(e, Error::MultivaluedRegion { roots: 3, .. }),
            "{e:?}"
        );
    }

    #[test]
    fn rarefaction_fan() {
        let q = InitialData::Step {
            at: 0.0,
            left: vec![-1.0],
            right: vec![1.0],
        };
        let u = characteristic_solution(&q, &burgers(), 0.25, 1.0).unwrap();
        assert!((u - 0.25).abs() < 1e-12);
        assert_eq!(
            characteristic_solution(&q, &burgers(), 3.0, 1.0).unwrap(),
            1.0
        );
    }

    #[test]
    fn catastrophe_of_tanh_profiles() {
        let p = catastrophe_point(&InitialData::neg_tanh(), &burgers()).unwrap();
        assert!((p.t_star - 1.0).abs() < 1e-10 && p.x_star.abs() < 1e-10);
        let LocalData::Catastrophe { c3, .. } = p.local else {
            panic!()
        };
        assert!((c3 - 2.0).abs() < 1e-8);
        let q2 = InitialData::Tanh {
            amplitude: -2.0,
            width: 1.0,
            center: 0.0,
        };
        assert!((catastrophe_point(&q2, &burgers()).unwrap().t_star - 0.5).abs() < 1e-10);
        let q3 = InitialData::Tanh {
            amplitude: 1.0,
            width: 1.0,
            center: 0.0,
        };
        assert_eq!(
            catastrophe_point(&q3, &burgers()).unwrap_err(),
            Error::NoCatastrophe
        );
    }

    #[test]
    fn weak_discontinuity_turns_at_unit_time() {
        let p = catastrophe_point(&InitialData::weak_discontinuity(1.0), &burgers()).unwrap();
        assert_eq!(p.kind, SingularKind::WeakToShock);
        assert_eq!((p.x_star, p.t_star), (0.0, 1.0));
    }

    #[test]
    fn step_shocks() {
        let sym = InitialData::Step {
            at: 0.0,
            left: vec![1.0],
            right: vec![-1.0],
        };
        let c = track_shock(&sym, &burgers(), &initial_jump_point(&sym, 0.0), 2.0).unwrap();
        assert!(c.positions.iter().all(|s| s.abs() < 1e-14));
        let half = InitialData::Step {
            at: 0.0,
            left: vec![1.0],
            right: vec![0.0],
        };
        let c = track_shock(&half, &burgers(), &initial_jump_point(&half, 0.0), 2.0).unwrap();
        for (t, s) in c.times.iter().zip(&c.positions) {
            assert!((s - t / 2.0).abs() < 1e-12);
        }
        assert!(c.rh_defect(&burgers()) < 1e-6 && c.satisfies_entropy());
    }

    #[test]
    fn synthetic_linear_crossing() {
        let ts: Vec<f64> = (0..=20).map(|k| k as f64 * 0.1).collect();
        let s1 = ShockCurve::from_samples(
            ts.clone(),
            ts.iter().map(|t| -1.0 + t).collect(),
            vec![2.0; 21],
            vec![0.0; 21],
        );
        let s2 = ShockCurve::from_samples(
            ts.clone(),
            ts.iter().map(|t| 1.0 - t).collect(),
            vec![0.0; 21],
            vec![-2.0; 21],
        );
        let p = detect_collision(&s1, &s2, &burgers()).unwrap();
        assert!((p.t_star - 1.0).abs() < 1e-12 && p.x_star.abs() < 1e-12);
        let s3 = ShockCurve::from_samples(
            ts.clone(),
            ts.iter().map(|t| 1.0 + t).collect(),
            vec![0.0; 21],
            vec![-2.0; 21],
        );
        assert_eq!(
            detect_collision(&s1, &s3, &burgers()).unwrap_err(),
            Error::NoCollision
        );
    }
}
