//! Per-parameter legs: reference solve, asymptotic evaluation on the window, sup-norm error.

use std::time::Instant;

use asymlab::fold::FoldNormalForm;
use asymlab::large_gradient::{composite_u, renormalized_u, GammaRiemann, TwoParamState};
use asymlab::limit::{catastrophe_point, detect_collision, initial_jump_point, track_shock};
use asymlab::riemann::{burgers_step_exact, merging_shocks_exact, step_inner_w0, InnerGrid};
use asymlab::viscous::{cole_hopf_burgers, solve_viscous, SpaceTimeField};
use asymlab::weakshock::{
    leading_inner, two_term_inner, weakshock_scenario_with_cutoff, WeakShockParams,
};
use asymlab::{
    ExecMode, FluxFunction, InitialData, InnerScaling, ProblemConfig, Profile, TailExpansion,
};
use serde::Serialize;

use crate::config::{
    Approximation, InitialConfig, ReferenceMethod, ScenarioConfig, ScenarioKind, Window,
};
use crate::error::{CliError, CliResult, EXIT_OUT_OF_BAND, EXIT_PASS};
use crate::fit::fit_rate;

/// One line of an error-field CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorRow {
    pub inner_x: f64,
    pub inner_t: f64,
    pub u_reference: f64,
    pub u_asymptotic: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportRow {
    pub param: f64,
    pub sup_error: f64,
    pub runtime_s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub scenario: String,
    pub resolved_config: ScenarioConfig,
    pub param_name: &'static str,
    pub rows: Vec<ReportRow>,
    pub slope: Option<f64>,
    pub residual: Option<f64>,
    /// Set when an error fell below the noise floor and no slope was fitted.
    pub degenerate: bool,
    pub slope_band: [f64; 2],
    pub pass: bool,
}

impl SweepReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_OUT_OF_BAND
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub report: SweepReport,
    /// Error field of each leg, in sweep order.
    pub fields: Vec<Vec<ErrorRow>>,
}

/// Fixed data of one sweep leg.
#[derive(Debug, Clone)]
pub struct LegContext {
    pub param: f64,
    pub eps: f64,
    pub rho: Option<f64>,
    pub flux: FluxFunction,
    pub initial: InitialData,
    /// Time at which the initial data is given.
    pub t0: f64,
    pub scaling: InnerScaling,
}

impl LegContext {
    pub fn new(cfg: &ScenarioConfig, index: usize) -> CliResult<Self> {
        let kind = cfg.kind();
        let params = cfg.params();
        let param = *params.get(index).ok_or_else(|| {
            CliError::validation(format!("leg {index} out of range ({} legs)", params.len()))
        })?;
        let (eps, rho) = match kind {
            ScenarioKind::LargeGradient => {
                (cfg.sweep.epsilon[0], Some(param * cfg.sweep.epsilon[0]))
            }
            _ => (param, None),
        };
        let flux = cfg.flux.build()?;
        let initial = cfg.initial().build(rho)?;
        let t0 = if kind == ScenarioKind::Weakshock {
            -1.0
        } else {
            0.0
        };
        let scaling = match (kind, cfg.initial()) {
            (ScenarioKind::LargeGradient, _) => InnerScaling::power(1.0, 1.0, 1.0, 0.0, 0.0, 0.0),
            (ScenarioKind::Weakshock, _) => WeakShockParams::scaling(eps),
            (_, InitialConfig::Constant { value }) => {
                let c = flux.d1(*value);
                match kind {
                    ScenarioKind::InitialJump => InnerScaling::jump(eps, 0.0, 0.0, c),
                    ScenarioKind::Collision => InnerScaling::jump(eps, 0.0, 1.0, c),
                    _ => InnerScaling::fold(eps, 0.0, 1.0, c),
                }
            }
            (ScenarioKind::InitialJump, InitialConfig::Step { at, .. }) => {
                let (um, up) = initial.one_sided(*at);
                InnerScaling::jump(eps, *at, 0.0, flux.rh_speed(um, up))
            }
            (ScenarioKind::Collision, _) => {
                let p = collision_point(&initial, &flux)?;
                let s3 = flux.rh_speed(p.1[0], p.1[2]);
                InnerScaling::jump(eps, p.0 .0, p.0 .1, s3)
            }
            (ScenarioKind::Fold, _) => fold_form(&initial, &flux)?.scaling(eps),
            _ => {
                return Err(CliError::validation(
                    "initial data does not fit the scenario",
                ))
            }
        };
        Ok(LegContext {
            param,
            eps,
            rho,
            flux,
            initial,
            t0,
            scaling,
        })
    }

    /// Outer `(x, t)` of window point `n`.
    pub fn outer(&self, window: &Window, n: usize) -> (f64, f64) {
        let (xi, tau) = window.point(n);
        self.scaling.from_inner(xi, tau)
    }

    fn t_max(&self, window: &Window) -> f64 {
        let (_, a) = self.scaling.from_inner(0.0, window.tau_min);
        let (_, b) = self.scaling.from_inner(0.0, window.tau_max);
        a.max(b)
    }
}

fn fold_form(q: &InitialData, flux: &FluxFunction) -> CliResult<FoldNormalForm> {
    let p = catastrophe_point(q, flux)?;
    Ok(FoldNormalForm::from_catastrophe(&p, flux, 0.0)?)
}

/// `((x*, t*), [u1, u2, u3])` where the two initial shocks of three-state data meet.
fn collision_point(q: &InitialData, flux: &FluxFunction) -> CliResult<((f64, f64), [f64; 3])> {
    let InitialData::Piecewise { breaks, values } = q else {
        return Err(CliError::validation("collision needs piecewise data"));
    };
    let horizon = collision_horizon(flux, breaks, values);
    let s1 = track_shock(q, flux, &initial_jump_point(q, breaks[0]), horizon)?;
    let s2 = track_shock(q, flux, &initial_jump_point(q, breaks[1]), horizon)?;
    let p = detect_collision(&s1, &s2, flux)?;
    Ok(((p.x_star, p.t_star), [values[0], values[1], values[2]]))
}

fn collision_horizon(flux: &FluxFunction, breaks: &[f64], values: &[f64]) -> f64 {
    let closing = flux.rh_speed(values[0], values[1]) - flux.rh_speed(values[1], values[2]);
    if closing > 0.0 {
        2.0 * (breaks[1] - breaks[0]) / closing
    } else {
        1.0
    }
}

/// Reference solution `u(x, t)` of the viscous problem.
pub enum Reference {
    Hopf {
        q: InitialData,
        t0: f64,
        eps: f64,
    },
    Solver {
        field: SpaceTimeField,
        q: InitialData,
    },
}

impl Reference {
    pub fn build(cfg: &ScenarioConfig, ctx: &LegContext) -> CliResult<Self> {
        match cfg.reference() {
            ReferenceMethod::Hopf => Ok(Reference::Hopf {
                q: ctx.initial.clone(),
                t0: ctx.t0,
                eps: ctx.eps,
            }),
            ReferenceMethod::Solver => {
                let window = cfg.window();
                let t_end = ctx.t_max(&window);
                let q = match cfg.initial() {
                    InitialConfig::WeakDiscontinuity { a, cutoff_width } => {
                        weakshock_scenario_with_cutoff(
                            *a,
                            &ctx.flux,
                            ctx.eps,
                            cutoff_width.unwrap_or(0.5),
                        )?
                        .initial
                    }
                    _ => ctx.initial.clone(),
                };
                if !(t_end > ctx.t0) {
                    return Ok(Reference::Hopf {
                        q,
                        t0: ctx.t0,
                        eps: ctx.eps,
                    });
                }
                let half_width = cfg.grid.half_width.unwrap_or(16.0);
                let problem = ProblemConfig::new(
                    ctx.flux.clone(),
                    q.clone(),
                    ctx.eps,
                    ctx.t0,
                    t_end,
                    half_width,
                )?;
                let field = solve_viscous(
                    &problem,
                    cfg.grid.nx.unwrap_or(4096),
                    cfg.grid.nt.unwrap_or(2048),
                )?;
                Ok(Reference::Solver { field, q })
            }
        }
    }

    pub fn value(&self, x: f64, t: f64) -> CliResult<f64> {
        match self {
            Reference::Hopf { q, t0, eps } => {
                if t <= *t0 {
                    Ok(q.value(x))
                } else {
                    Ok(cole_hopf_burgers(q, x, t - t0, *eps)?)
                }
            }
            Reference::Solver { field, q } => {
                if t <= field.t_start {
                    return Ok(q.value(x));
                }
                Ok(bilinear(field, x, t))
            }
        }
    }
}

/// Bilinear interpolation on a saved field; clamps outside the grid.
fn bilinear(field: &SpaceTimeField, x: f64, t: f64) -> f64 {
    let s = ((t - field.t_start) / field.dt()).clamp(0.0, field.nt as f64);
    let k = (s.floor() as usize).min(field.nt.saturating_sub(1));
    let w = s - k as f64;
    field.interpolate(k, x) * (1.0 - w) + field.interpolate(k + 1, x) * w
}

/// Leading-order inner approximation of a scenario.
pub enum Asymptotic {
    Constant(f64),
    Jump {
        speed: f64,
        states: (f64, f64),
        numeric: Option<SpaceTimeField>,
    },
    Collision {
        speed: f64,
        states: [f64; 3],
    },
    Fold {
        form: FoldNormalForm,
        eps: f64,
    },
    Weakshock {
        b: f64,
        eps: f64,
        two_term: bool,
    },
    LargeGradient {
        state: TwoParamState,
        profile: Profile,
        tails: TailExpansion,
        gamma: GammaRiemann,
        renormalized: bool,
    },
}

impl Asymptotic {
    pub fn build(cfg: &ScenarioConfig, ctx: &LegContext) -> CliResult<Self> {
        let kind = cfg.kind();
        let init = cfg.initial();
        if let InitialConfig::Constant { value } = init {
            return Ok(Asymptotic::Constant(*value));
        }
        let window = cfg.window();
        Ok(match kind {
            ScenarioKind::InitialJump => {
                let InitialConfig::Step { at, .. } = init else {
                    unreachable!("validated")
                };
                let (um, up) = ctx.initial.one_sided(*at);
                let speed = ctx.flux.rh_speed(um, up);
                let numeric = if cfg.flux.is_burgers() {
                    None
                } else {
                    let half_width = window.xi_min.abs().max(window.xi_max.abs()) + 20.0;
                    let nt = ((window.tau_max / 0.01).ceil() as usize).max(16);
                    let grid = InnerGrid {
                        half_width,
                        nx: (40.0 * half_width) as usize,
                        tau_end: window.tau_max,
                        nt,
                        save_every: 1,
                    };
                    Some(step_inner_w0(&ctx.flux, um, up, speed, &grid)?.field)
                };
                Asymptotic::Jump {
                    speed,
                    states: (um, up),
                    numeric,
                }
            }
            ScenarioKind::Collision => {
                let (_, states) = collision_point(&ctx.initial, &ctx.flux)?;
                Asymptotic::Collision {
                    speed: ctx.flux.rh_speed(states[0], states[2]),
                    states,
                }
            }
            ScenarioKind::Fold => Asymptotic::Fold {
                form: fold_form(&ctx.initial, &ctx.flux)?,
                eps: ctx.eps,
            },
            ScenarioKind::Weakshock => {
                let InitialConfig::WeakDiscontinuity { a, .. } = init else {
                    unreachable!("validated")
                };
                Asymptotic::Weakshock {
                    b: WeakShockParams::new(*a, &ctx.flux)?.b,
                    eps: ctx.eps,
                    two_term: cfg.approximation() == Approximation::TwoTerm,
                }
            }
            ScenarioKind::LargeGradient => {
                let state =
                    TwoParamState::new(ctx.eps, ctx.rho.expect("large-gradient leg has rho"))?;
                let (profile, tails) = init.profile()?;
                let theta_max = ctx.t_max(&window) / ctx.eps;
                let gamma = GammaRiemann::new(&ctx.flux, &tails, theta_max)?;
                Asymptotic::LargeGradient {
                    state,
                    profile,
                    tails,
                    gamma,
                    renormalized: cfg.approximation() == Approximation::Renormalized,
                }
            }
        })
    }

    /// Value at inner point `(xi, tau)` with outer coordinates `(x, t)`.
    pub fn value(&self, xi: f64, tau: f64, x: f64, t: f64) -> CliResult<f64> {
        Ok(match self {
            Asymptotic::Constant(c) => *c,
            Asymptotic::Jump {
                speed,
                states,
                numeric: None,
            } => speed + burgers_step_exact(states.0 - speed, states.1 - speed, xi, tau),
            Asymptotic::Jump {
                numeric: Some(field),
                ..
            } => bilinear(field, xi, tau),
            Asymptotic::Collision { speed, states } => {
                let [u1, u2, u3] = states.map(|u| u - speed);
                speed + merging_shocks_exact(u1, u2, u3, 0.0, 0.0, xi, tau)
            }
            Asymptotic::Fold { form, eps } => form.leading_inner(xi, tau, *eps)?,
            Asymptotic::Weakshock { b, eps, two_term } => {
                if *two_term {
                    two_term_inner(xi, tau, *b, *eps)?
                } else {
                    leading_inner(xi, tau, *b, *eps)?
                }
            }
            Asymptotic::LargeGradient {
                state,
                profile,
                tails,
                gamma,
                renormalized,
            } => {
                if *renormalized {
                    renormalized_u(x, t, state, profile, tails, gamma)?
                } else {
                    composite_u(x, t, state, profile, tails, gamma)?
                }
            }
        })
    }
}

/// Reference values on the window of leg `index`, as `(xi, tau, x, t, u)`.
pub fn reference_field(
    cfg: &ScenarioConfig,
    index: usize,
    mode: ExecMode,
) -> CliResult<Vec<[f64; 5]>> {
    let ctx = LegContext::new(cfg, index)?;
    let reference = Reference::build(cfg, &ctx)?;
    let window = cfg.window();
    collect(mode, window.len(), |n| {
        let (xi, tau) = window.point(n);
        let (x, t) = ctx.outer(&window, n);
        Ok([xi, tau, x, t, reference.value(x, t)?])
    })
}

/// Asymptotic values on the window of leg `index`, as `(xi, tau, u)`.
pub fn asymptotic_field(
    cfg: &ScenarioConfig,
    index: usize,
    mode: ExecMode,
) -> CliResult<Vec<[f64; 3]>> {
    let ctx = LegContext::new(cfg, index)?;
    let asym = Asymptotic::build(cfg, &ctx)?;
    let window = cfg.window();
    collect(mode, window.len(), |n| {
        let (xi, tau) = window.point(n);
        let (x, t) = ctx.outer(&window, n);
        Ok([xi, tau, asym.value(xi, tau, x, t)?])
    })
}

fn collect<T: Send, F: Fn(usize) -> CliResult<T> + Sync + Send>(
    mode: ExecMode,
    n: usize,
    f: F,
) -> CliResult<Vec<T>> {
    asymlab::par::map_indexed(mode, n, f).into_iter().collect()
}

/// Error field and sup-norm of one leg.
pub fn run_leg(
    cfg: &ScenarioConfig,
    index: usize,
    mode: ExecMode,
) -> CliResult<(ReportRow, Vec<ErrorRow>)> {
    let start = Instant::now();
    let ctx = LegContext::new(cfg, index)?;
    let reference = Reference::build(cfg, &ctx)?;
    let asym = Asymptotic::build(cfg, &ctx)?;
    let window = cfg.window();
    let rows = collect(mode, window.len(), |n| {
        let (xi, tau) = window.point(n);
        let (x, t) = ctx.outer(&window, n);
        let u_reference = reference.value(x, t)?;
        let u_asymptotic = asym.value(xi, tau, x, t)?;
        let abs_error = (u_reference - u_asymptotic).abs();
        if !abs_error.is_finite() {
            return Err(CliError::Numerical(asymlab::Error::InvalidInput(format!(
                "non-finite error at inner point ({xi}, {tau})"
            ))));
        }
        Ok(ErrorRow {
            inner_x: xi,
            inner_t: tau,
            u_reference,
            u_asymptotic,
            abs_error,
        })
    })?;
    let sup_error = rows.iter().fold(0.0f64, |m, r| m.max(r.abs_error));
    let row = ReportRow {
        param: ctx.param,
        sup_error,
        runtime_s: start.elapsed().as_secs_f64(),
    };
    Ok((row, rows))
}

/// Runs every leg (in parallel under [`ExecMode::Parallel`]) and fits the rate.
pub fn run_scenario(cfg: &ScenarioConfig, mode: ExecMode) -> CliResult<SweepOutcome> {
    cfg.validate()?;
    let n = cfg.params().len();
    let legs = collect(mode, n, |i| run_leg(cfg, i, mode))?;
    let (rows, fields): (Vec<ReportRow>, Vec<Vec<ErrorRow>>) = legs.into_iter().unzip();
    let params: Vec<f64> = rows.iter().map(|r| r.param).collect();
    let errors: Vec<f64> = rows.iter().map(|r| r.sup_error).collect();
    let band = cfg.slope_band();
    let (slope, residual, degenerate, pass) = match fit_rate(&params, &errors) {
        Ok(fit) => {
            let pass = (band[0]..=band[1]).contains(&fit.slope);
            (Some(fit.slope), Some(fit.residual), false, pass)
        }
        Err(CliError::DegenerateFit { .. }) => (None, None, true, true),
        Err(e) => return Err(e),
    };
    let report = SweepReport {
        scenario: cfg.kind().name().to_string(),
        resolved_config: cfg.clone(),
        param_name: if cfg.kind() == ScenarioKind::LargeGradient {
            "mu"
        } else {
            "epsilon"
        },
        rows,
        slope,
        residual,
        degenerate,
        slope_band: band,
        pass,
    };
    Ok(SweepOutcome { report, fields })
}
