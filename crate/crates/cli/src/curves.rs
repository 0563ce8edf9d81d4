//! Inviscid-limit singular points and shock curves for a scenario.

use asymlab::limit::{
    catastrophe_point, detect_collision, initial_jump_point, track_shock, weak_to_shock_point,
    LocalData, ShockCurve, SingularPoint,
};
use asymlab::InitialData;
use serde::Serialize;

use crate::config::{InitialConfig, ScenarioConfig};
use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub curve: usize,
    pub t: f64,
    pub x: f64,
    pub u_minus: f64,
    pub u_plus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRecord {
    pub kind: String,
    pub x_star: f64,
    pub t_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitOutput {
    pub points: Vec<PointRecord>,
    pub rows: Vec<CurveRow>,
    /// Largest Rankine-Hugoniot defect over the tracked curves.
    pub rh_defect: f64,
}

/// Singular points and shock curves; times are absolute (weak-shock data sits at `t = -1`).
pub fn limit_curves(cfg: &ScenarioConfig) -> CliResult<LimitOutput> {
    let flux = cfg.flux.build()?;
    let t_horizon = 1.0;
    let mut points = Vec::new();
    let mut curves: Vec<(ShockCurve, f64)> = Vec::new();
    let record = |p: &SingularPoint, t0: f64| PointRecord {
        kind: format!("{:?}", p.kind),
        x_star: p.x_star,
        t_star: p.t_star + t0,
    };
    match cfg.initial() {
        InitialConfig::Constant { .. } => {}
        InitialConfig::Tanh { .. } => {
            let q = cfg.initial().build(None)?;
            let p = catastrophe_point(&q, &flux)?;
            points.push(record(&p, 0.0));
            curves.push((track_shock(&q, &flux, &p, p.t_star + t_horizon)?, 0.0));
        }
        InitialConfig::Step { at, .. } => {
            let q = cfg.initial().build(None)?;
            let p = initial_jump_point(&q, *at);
            points.push(record(&p, 0.0));
            curves.push((track_shock(&q, &flux, &p, t_horizon)?, 0.0));
        }
        InitialConfig::Piecewise { breaks, .. } => {
            let q = cfg.initial().build(None)?;
            let mut tracked = Vec::new();
            for &b in breaks {
                let p = initial_jump_point(&q, b);
                points.push(record(&p, 0.0));
                tracked.push(track_shock(&q, &flux, &p, 2.0 * t_horizon)?);
            }
            let mut merged = None;
            if let [s1, s2] = tracked.as_slice() {
                if let Ok(p) = detect_collision(s1, s2, &flux) {
                    points.push(record(&p, 0.0));
                    tracked = tracked.iter().map(|c| truncate(c, p.t_star)).collect();
                    merged = Some(merged_shock(&p, 2.0 * t_horizon));
                }
            }
            curves.extend(tracked.into_iter().chain(merged).map(|c| (c, 0.0)));
        }
        InitialConfig::WeakDiscontinuity { .. } => {
            let q = cfg.initial().build(None)?;
            let p = weak_to_shock_point(&q, &flux)?;
            points.push(record(&p, -1.0));
            curves.push((track_shock(&q, &flux, &p, p.t_star + t_horizon)?, -1.0));
        }
        InitialConfig::ScaledTanh { .. } => {
            let (_, tails) = cfg.initial().profile()?;
            let q = InitialData::Step {
                at: 0.0,
                left: vec![tails.nu0_minus],
                right: vec![tails.nu0_plus],
            };
            let p = initial_jump_point(&q, 0.0);
            points.push(record(&p, 0.0));
            let t_end = cfg.window().tau_max.max(t_horizon);
            curves.push((track_shock(&q, &flux, &p, t_end)?, 0.0));
        }
    }
    let mut rows = Vec::new();
    let mut rh_defect = 0.0f64;
    for (i, (c, t0)) in curves.iter().enumerate() {
        rh_defect = rh_defect.max(c.rh_defect(&flux));
        for k in 0..c.len() {
            rows.push(CurveRow {
                curve: i,
                t: c.times[k] + t0,
                x: c.positions[k],
                u_minus: c.left_states[k],
                u_plus: c.right_states[k],
            });
        }
    }
    Ok(LimitOutput {
        points,
        rows,
        rh_defect,
    })
}

// Samples strictly before `t_end`, closed by the interpolated sample at `t_end`.
fn truncate(c: &ShockCurve, t_end: f64) -> ShockCurve {
    let k = c.times.partition_point(|&t| t < t_end);
    let mut times = c.times[..k].to_vec();
    let mut positions = c.positions[..k].to_vec();
    let mut left = c.left_states[..k].to_vec();
    let mut right = c.right_states[..k].to_vec();
    if k < c.len() {
        times.push(t_end);
        positions.push(c.position_at(t_end));
        left.push(c.left_states[k]);
        right.push(c.right_states[k]);
    }
    ShockCurve::from_samples(times, positions, left, right)
}

// The shock leaving a collision of piecewise-constant data moves at constant speed.
fn merged_shock(p: &SingularPoint, t_end: f64) -> ShockCurve {
    let LocalData::Collision {
        u1, u3, s3_speed, ..
    } = p.local
    else {
        unreachable!("collision point without collision data")
    };
    let n = 400;
    let times: Vec<f64> = (0..=n)
        .map(|i| p.t_star + (t_end - p.t_star) * i as f64 / n as f64)
        .collect();
    let positions = times
        .iter()
        .map(|t| p.x_star + s3_speed * (t - p.t_star))
        .collect();
    ShockCurve::from_samples(times, positions, vec![u1; n + 1], vec![u3; n + 1])
}
