//! Reference solver for `u_t + phi(u)_x = eps u_xx` and the Hopf integral for Burgers.

use crate::error::{Error, Result};
use crate::flux::FluxFunction;
use crate::initial::InitialData;
use crate::par::{try_map_indexed, ExecMode};
use crate::problem::ProblemConfig;
use crate::quadrature::{integrate_peaked, DeOptions};

/// Field on a uniform grid: `x_i = x_min + i dx` (i < nx), `t_k = t_start + k dt` (k <= nt).
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    pub x_min: f64,
    pub x_max: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub nx: usize,
    pub nt: usize,
    /// Level-major: `values[k * nx + i]`.
    pub values: Vec<f64>,
    pub left_boundary: Vec<f64>,
    pub right_boundary: Vec<f64>,
    /// Cumulative mass entering through the boundaries up to each level.
    pub boundary_inflow: Vec<f64>,
}

impl SpaceTimeField {
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / self.nt as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn t(&self, k: usize) -> f64 {
        if k == self.nt {
            self.t_end
        } else {
            self.t_start + k as f64 * self.dt()
        }
    }

    pub fn at(&self, i: usize, k: usize) -> f64 {
        self.values[k * self.nx + i]
    }

    pub fn level(&self, k: usize) -> &[f64] {
        &self.values[k * self.nx..(k + 1) * self.nx]
    }

    pub fn last_level(&self) -> &[f64] {
        self.level(self.nt)
    }

    /// Linear interpolation in `x` on level `k`; clamps outside the grid.
    pub fn interpolate(&self, k: usize, x: f64) -> f64 {
        let row = self.level(k);
        let s = ((x - self.x_min) / self.dx()).clamp(0.0, (self.nx - 1) as f64);
        let i = (s.floor() as usize).min(self.nx - 2);
        let w = s - i as f64;
        row[i] * (1.0 - w) + row[i + 1] * w
    }

    /// `sum_i u_i dx` on level `k`.
    pub fn mass(&self, k: usize) -> f64 {
        self.level(k).iter().sum::<f64>() * self.dx()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Samples `f(x, t)` on the grid, one level per task.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fn<F>(
        x_min: f64,
        x_max: f64,
        nx: usize,
        t_start: f64,
        t_end: f64,
        nt: usize,
        mode: ExecMode,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(f64, f64) -> Result<f64> + Sync + Send,
    {
        if nx < 2 || nt < 1 {
            return Err(Error::InvalidInput(format!(
                "grid needs nx >= 2 and nt >= 1, got {nx} x {nt}"
            )));
        }
        let mut field = SpaceTimeField {
            x_min,
            x_max,
            t_start,
            t_end,
            nx,
            nt,
            values: Vec::new(),
            left_boundary: Vec::new(),
            right_boundary: Vec::new(),
            boundary_inflow: vec![0.0; nt + 1],
        };
        let xs: Vec<f64> = (0..nx).map(|i| field.x(i)).collect();
        let ts: Vec<f64> = (0..=nt).map(|k| field.t(k)).collect();
        let points = try_map_indexed(mode, nx * (nt + 1), |j| f(xs[j % nx], ts[j / nx]))?;
        field.values = points;
        field.left_boundary = (0..=nt).map(|k| field.at(0, k)).collect();
        field.right_boundary = (0..=nt).map(|k| field.at(nx - 1, k)).collect();
        Ok(field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Solve in a frame moving at this speed (effective flux `phi(u) - c u`).
    pub frame_speed: f64,
    /// Keep every `save_every`-th time level.
    pub save_every: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            frame_speed: 0.0,
            save_every: 1,
        }
    }
}

pub fn solve_viscous(cfg: &ProblemConfig, nx: usize, nt: usize) -> Result<SpaceTimeField> {
    solve_viscous_with(cfg, nx, nt, &SolverOptions::default())
}

/// Finite-volume solve on `nx` cells of `[-L, L]` with `nt` Strang-split steps:
/// MUSCL/local Lax-Friedrichs convection with SSP-RK2, Crank-Nicolson diffusion.
pub fn solve_viscous_with(
    cfg: &ProblemConfig,
    nx: usize,
    nt: usize,
    opts: &SolverOptions,
) -> Result<SpaceTimeField> {
    cfg.validate()?;
    if nx < 16 || nt < 16 {
        return Err(Error::InvalidInput(format!(
            "solver needs nx >= 16 and nt >= 16, got {nx} x {nt}"
        )));
    }
    if opts.save_every == 0 || nt % opts.save_every != 0 {
        return Err(Error::InvalidInput(format!(
            "save_every = {} must divide nt = {nt}",
            opts.save_every
        )));
    }
    let l = cfg.half_width;
    let dx = 2.0 * l / nx as f64;
    let dt = (cfg.t_end - cfg.t0) / nt as f64;
    let eps = cfg.epsilon;
    let c = opts.frame_speed;
    let (ul, ur) = cfg.boundary_values();

    let mut u: Vec<f64> = (0..nx)
        .map(|i| cfg.initial.value(-l + (i as f64 + 0.5) * dx))
        .collect();
    let (mut lo, mut hi) = u
        .iter()
        .fold((ul.min(ur), ul.max(ur)), |(a, b), &v| (a.min(v), b.max(v)));
    for b in cfg.initial.breakpoints() {
        let (a1, a2) = cfg.initial.one_sided(b);
        lo = lo.min(a1.min(a2));
        hi = hi.max(a1.max(a2));
    }

    let speed = (cfg.flux.d1(lo) - c).abs().max((cfg.flux.d1(hi) - c).abs());
    let cfl = speed * dt / dx;
    if cfl > 1.0 {
        return Err(Error::Instability {
            step: 0,
            value: cfl,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let r = eps * dt / (dx * dx);
    if r > 1e3 {
        return Err(Error::InvalidInput(format!(
            "diffusion number eps dt / dx^2 = {r:.3e} exceeds 1e3"
        )));
    }

    let saved = nt / opts.save_every;
    let mut values = Vec::with_capacity(nx * (saved + 1));
    values.extend_from_slice(&u);
    let mut inflow = 0.0;
    let mut inflows = vec![0.0];

    let mut stepper = Stepper::new(&cfg.flux, c, nx, dx, ul, ur);
    for step in 0..nt {
        inflow += stepper.convect(&mut u, 0.5 * dt);
        if step < 2 {
            // damp the start-up transient of non-smooth data
            inflow += stepper.diffuse(&mut u, eps, 0.5 * dt, 1.0);
            inflow += stepper.diffuse(&mut u, eps, 0.5 * dt, 1.0);
        } else {
            inflow += stepper.diffuse(&mut u, eps, dt, 0.5);
        }
        inflow += stepper.convect(&mut u, 0.5 * dt);

        for &v in &u {
            if !v.is_finite() || v < lo - 1e-3 || v > hi + 1e-3 {
                return Err(Error::Instability {
                    step: step + 1,
                    value: v,
                    lo,
                    hi,
                });
            }
        }
        if (step + 1) % opts.save_every == 0 {
            let drift = (u[0] - ul).abs().max((u[nx - 1] - ur).abs());
            if drift > 1e-6 {
                return Err(Error::DomainTooSmall { drift });
            }
            values.extend_from_slice(&u);
            inflows.push(inflow);
        }
    }

    Ok(SpaceTimeField {
        x_min: -l + 0.5 * dx,
        x_max: l - 0.5 * dx,
        t_start: cfg.t0,
        t_end: cfg.t_end,
        nx,
        nt: saved,
        values,
        left_boundary: vec![ul; saved + 1],
        right_boundary: vec![ur; saved + 1],
        boundary_inflow: inflows,
    })
}

struct Stepper<'a> {
    flux: &'a FluxFunction,
    c: f64,
    dx: f64,
    ul: f64,
    ur: f64,
    ext: Vec<f64>,
    faces: Vec<f64>,
    stage: Vec<f64>,
    sub: Vec<f64>,
    diag: Vec<f64>,
    rhs: Vec<f64>,
}

impl<'a> Stepper<'a> {
    fn new(flux: &'a FluxFunction, c: f64, nx: usize, dx: f64, ul: f64, ur: f64) -> Self {
        Stepper {
            flux,
            c,
            dx,
            ul,
            ur,
            ext: vec![0.0; nx + 4],
            faces: vec![0.0; nx + 1],
            stage: vec![0.0; nx],
            sub: vec![0.0; nx],
            diag: vec![0.0; nx],
            rhs: vec![0.0; nx],
        }
    }

    fn f(&self, u: f64) -> f64 {
        self.flux.value(u) - self.c * u
    }

    fn fp(&self, u: f64) -> f64 {
        self.flux.d1(u) - self.c
    }

    // Fills `faces` with numerical fluxes at the nx + 1 cell faces.
    fn face_fluxes(&mut self, u: &[f64]) {
        let n = u.len();
        self.ext[0] = self.ul;
        self.ext[1] = self.ul;
        self.ext[2..n + 2].copy_from_slice(u);
        self.ext[n + 2] = self.ur;
        self.ext[n + 3] = self.ur;
        let slope = |e: &[f64], j: usize| {
            let a = e[j] - e[j - 1];
            let b = e[j + 1] - e[j];
            if a * b > 0.0 {
                2.0 * a * b / (a + b)
            } else {
                0.0
            }
        };
        for k in 0..=n {
            // face between ext[k + 1] and ext[k + 2]
            let jl = k + 1;
            let jr = k + 2;
            let left = self.ext[jl] + 0.5 * slope(&self.ext, jl);
            let right = self.ext[jr] - 0.5 * slope(&self.ext, jr);
            let alpha = self.fp(left).abs().max(self.fp(right).abs());
            self.faces[k] = 0.5 * (self.f(left) + self.f(right)) - 0.5 * alpha * (right - left);
        }
    }

    // SSP-RK2 convection over `dt`; returns the mass that entered.
    fn convect(&mut self, u: &mut [f64], dt: f64) -> f64 {
        let n = u.len();
        let lam = dt / self.dx;
        self.face_fluxes(u);
        let in1 = self.faces[0] - self.faces[n];
        for i in 0..n {
            self.stage[i] = u[i] - lam * (self.faces[i + 1] - self.faces[i]);
        }
        let stage = std::mem::take(&mut self.stage);
        self.face_fluxes(&stage);
        let in2 = self.faces[0] - self.faces[n];
        for i in 0..n {
            u[i] = 0.5 * u[i] + 0.5 * (stage[i] - lam * (self.faces[i + 1] - self.faces[i]));
        }
        self.stage = stage;
        0.5 * (in1 + in2) * dt
    }

    // theta-scheme diffusion over `dt` (theta = 1/2 Crank-Nicolson, 1 backward Euler).
    fn diffuse(&mut self, u: &mut [f64], eps: f64, dt: f64, theta: f64) -> f64 {
        let n = u.len();
        let r = eps * dt / (self.dx * self.dx);
        let explicit = (1.0 - theta) * r;
        let implicit = theta * r;
        let old_left = u[0];
        let old_right = u[n - 1];
        for i in 0..n {
            let um = if i == 0 { self.ul } else { u[i - 1] };
            let up = if i == n - 1 { self.ur } else { u[i + 1] };
            self.rhs[i] = u[i] + explicit * (um - 2.0 * u[i] + up);
        }
        self.rhs[0] += implicit * self.ul;
        self.rhs[n - 1] += implicit * self.ur;
        // constant tridiagonal (-implicit, 1 + 2 implicit, -implicit)
        let b = 1.0 + 2.0 * implicit;
        let a = -implicit;
        self.diag[0] = b;
        for i in 1..n {
            let m = a / self.diag[i - 1];
            self.sub[i] = m;
            self.diag[i] = b - m * a;
            self.rhs[i] -= m * self.rhs[i - 1];
        }
        u[n - 1] = self.rhs[n - 1] / self.diag[n - 1];
        for i in (0..n - 1).rev() {
            u[i] = (self.rhs[i] - a * u[i + 1]) / self.diag[i];
        }
        let g = eps * dt / self.dx;
        let left = theta * (self.ul - u[0]) + (1.0 - theta) * (self.ul - old_left);
        let right = theta * (self.ur - u[n - 1]) + (1.0 - theta) * (self.ur - old_right);
        g * (left + right)
    }
}

/// Exact Burgers solution through the Hopf integral; `t` is the time elapsed since the data.
///
/// `u = int ((x - y)/t) e^{-G/2eps} dy / int e^{-G/2eps} dy`, `G = int_0^y q + (x - y)^2 / 2t`.
pub fn cole_hopf_burgers(q: &InitialData, x: f64, t: f64, eps: f64) -> Result<f64> {
    if t < 1e-12 {
        return Err(Error::SmallTimeBlowup(t));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    let g = |y: f64| -(q.antiderivative(y) + (x - y) * (x - y) / (2.0 * t)) / (2.0 * eps);
    // G' = q(y) - (x - y)/t, evaluated on the requested side at jumps
    let dg = |y: f64, side| -(q.eval(y, side) - (x - y) / t);

    let width = (eps * t).sqrt();
    let center = x - t * q.value(x);
    let mut half = 2.0 * (1.0 + x.abs() + t) + 20.0 * width;
    let (lo, hi, samples) = loop {
        let lo = center - half;
        let hi = center + half;
        let n = (((hi - lo) / (0.25 * width)).ceil() as usize).clamp(4000, 400_000);
        let ys: Vec<f64> = (0..=n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .collect();
        let gs: Vec<f64> = ys.iter().map(|&y| g(y)).collect();
        let gmax = gs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if gs[0] < gmax - 90.0 && gs[n] < gmax - 90.0 {
            break (lo, hi, (ys, gs, gmax));
        }
        half *= 2.0;
        if half > 1e8 {
            return Err(Error::NoConvergence {
                estimate: f64::NAN,
                evaluations: n,
            });
        }
    };
    let (ys, gs, gmax) = samples;
    let keep = |i: &usize| gs[*i] >= gmax - 80.0;
    let first = (0..ys.len()).find(keep).unwrap_or(0).saturating_sub(1);
    let last = ((0..ys.len()).rev().find(keep).unwrap_or(ys.len() - 1) + 1).min(ys.len() - 1);
    let (a, b) = (ys[first].max(lo), ys[last].min(hi));

    let mut splits = Vec::new();
    for i in (first + 1)..last {
        let d0 = gs[i] - gs[i - 1];
        let d1 = gs[i + 1] - gs[i];
        if d0 * d1 <= 0.0 {
            splits.push(refine_extremum(&dg, ys[i - 1], ys[i + 1]));
        }
    }
    splits.extend(q.breakpoints().into_iter().filter(|p| *p > a && *p < b));

    let opts = DeOptions::with_tol(1e-12);
    let r = integrate_peaked(g, |y| [(x - y) / t, 1.0], a, b, &splits, &opts)?;
    Ok(r.values[0] / r.values[1])
}

fn refine_extremum<D: Fn(f64, crate::initial::Side) -> f64>(dg: &D, mut a: f64, mut b: f64) -> f64 {
    use crate::initial::Side;
    let fa = dg(a, Side::Right);
    let fb = dg(b, Side::Left);
    if fa * fb > 0.0 {
        return 0.5 * (a + b);
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = dg(m, Side::Right);
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

/// Hopf-integral field on a grid; `t` measured from the data time.
#[allow(clippy::too_many_arguments)]
pub fn cole_hopf_field(
    q: &InitialData,
    x_range: (f64, f64),
    nx: usize,
    t_range: (f64, f64),
    nt: usize,
    eps: f64,
    mode: ExecMode,
) -> Result<SpaceTimeField> {
    SpaceTimeField::from_fn(
        x_range.0,
        x_range.1,
        nx,
        t_range.0,
        t_range.1,
        nt,
        mode,
        |x, t| cole_hopf_burgers(q, x, t, eps),
    )
}

/// Interior residual `u_t + phi(u)_x - eps u_xx` by second-order central differences.
pub fn pde_residual(
    field: &SpaceTimeField,
    flux: &FluxFunction,
    eps: f64,
) -> Result<SpaceTimeField> {
    let (nx, nt) = (field.nx, field.nt);
    if nx < 5 || nt < 5 {
        return Err(Error::InvalidInput(format!(
            "residual needs nx, nt >= 5, got {nx} x {nt}"
        )));
    }
    let dx = field.dx();
    let dt = field.dt();
    let mut out = field.clone();
    out.values.iter_mut().for_each(|v| *v = 0.0);
    for k in 1..nt {
        for i in 1..nx - 1 {
            let ut = (field.at(i, k + 1) - field.at(i, k - 1)) / (2.0 * dt);
            let fx = (flux.value(field.at(i + 1, k)) - flux.value(field.at(i - 1, k))) / (2.0 * dx);
            let uxx = (field.at(i + 1, k) - 2.0 * field.at(i, k) + field.at(i - 1, k)) / (dx * dx);
            out.values[k * nx + i] = ut + fx - eps * uxx;
        }
    }
    Ok(out)
}
