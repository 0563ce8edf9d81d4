//! Built-in invariant suite run by `asymlab verify`.

use std::time::Instant;

use asymlab::fold::{lambda_heat_residual, lambda_integral, w10};
use asymlab::large_gradient::{composite_u, h0, hn_with, DuhamelRule, GammaRiemann, TwoParamState};
use asymlab::limit::{catastrophe_point, detect_collision, initial_jump_point, track_shock};
use asymlab::quadrature::{half_erfc, integrate_real_line};
use asymlab::riemann::{
    burgers_step_exact, fit_exponential_rate, merging_shocks_exact, Comparator, MergingShocks,
};
use asymlab::viscous::{cole_hopf_burgers, cole_hopf_field, solve_viscous};
use asymlab::weakshock::{phi_integral, w20, w30};
use asymlab::{
    make_flux, Error, ExecMode, FluxFunction, FluxSpec, InitialData, InnerScaling, ProblemConfig,
    Profile, TailExpansion,
};
use serde::Serialize;

use crate::config::parse_config;
use crate::fit::fit_rate;
use crate::output::csv_bytes;
use crate::scenario::run_scenario;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub runtime_s: f64,
}

type CheckResult = Result<(bool, String), String>;

struct Check {
    module: &'static str,
    name: &'static str,
    run: fn() -> CheckResult,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn burgers_derivatives() -> CheckResult {
    let f = FluxFunction::burgers();
    let mut worst = 0.0f64;
    for u in grid(-3.0, 3.0, 13) {
        worst = worst
            .max((f.value(u) - 0.5 * u * u).abs())
            .max((f.d1(u) - u).abs())
            .max((f.d2(u) - 1.0).abs())
            .max(f.d3(u).abs())
            .max(f.derivative(4, u).map_err(err)?.abs());
    }
    Ok((worst == 0.0, format!("max deviation {worst:e}")))
}

fn rh_symmetry() -> CheckResult {
    let f = make_flux(
        &FluxSpec::Polynomial {
            coefficients: vec![0.0, 0.0, 0.5, 0.1],
        },
        (-1.5, 1.5),
        4,
    )
    .map_err(err)?;
    let mut worst = 0.0f64;
    for a in grid(-1.0, 1.0, 7) {
        for b in grid(-0.9, 0.9, 5) {
            worst = worst.max((f.rh_speed(a, b) - f.rh_speed(b, a)).abs());
        }
    }
    Ok((worst <= 1e-14, format!("max asymmetry {worst:e}")))
}

fn nonconvex_rejected() -> CheckResult {
    let r = make_flux(
        &FluxSpec::Polynomial {
            coefficients: vec![0.0, 0.0, 0.0, 1.0],
        },
        (-1.0, 1.0),
        4,
    );
    let ok = matches!(r, Err(Error::ConvexityViolation { .. }));
    Ok((ok, format!("u^3 on (-1, 1): {:?}", r.err())))
}

fn gaussian_integral() -> CheckResult {
    let v = integrate_real_line(|x| (-x * x).exp(), 1e-14)
        .map_err(err)?
        .value;
    let d = (v - std::f64::consts::PI.sqrt()).abs();
    Ok((d <= 1e-13, format!("|I - sqrt(pi)| = {d:e}")))
}

fn erfc_reflection() -> CheckResult {
    let worst = grid(-8.0, 8.0, 161)
        .into_iter()
        .map(|z| (half_erfc(z) + half_erfc(-z) - 1.0).abs())
        .fold(0.0, f64::max);
    Ok((
        worst <= 1e-15,
        format!("max |erfc(z) + erfc(-z) - 1| = {worst:e}"),
    ))
}

fn tanh_solve(center: f64, eps: f64) -> Result<asymlab::viscous::SpaceTimeField, String> {
    let q = InitialData::Tanh {
        amplitude: -1.0,
        width: 1.0,
        center,
    };
    let cfg = ProblemConfig::new(FluxFunction::burgers(), q, eps, 0.0, 2.0, 20.0).map_err(err)?;
    solve_viscous(&cfg, 512, 256).map_err(err)
}

fn conservation() -> CheckResult {
    let f = tanh_solve(0.0, 0.05)?;
    let drift: Vec<f64> = (0..=f.nt)
        .map(|k| f.mass(k) - f.boundary_inflow[k])
        .collect();
    let worst = drift
        .iter()
        .map(|d| (d - drift[0]).abs())
        .fold(0.0, f64::max);
    Ok((
        worst <= 1e-8,
        format!("mass drift net of boundary flux {worst:e}"),
    ))
}

fn maximum_principle() -> CheckResult {
    let f = tanh_solve(0.0, 0.05)?;
    let (lo, hi) = f
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    Ok((
        lo >= -1.0 - 1e-8 && hi <= 1.0 + 1e-8,
        format!("range [{lo}, {hi}]"),
    ))
}

fn comparison_principle() -> CheckResult {
    let (a, b) = (tanh_solve(-0.3, 0.05)?, tanh_solve(0.4, 0.05)?);
    let worst = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x - y)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((
        worst <= 1e-8,
        format!("max (u_lower - u_upper) = {worst:e}"),
    ))
}

fn solver_vs_hopf() -> CheckResult {
    let cfg = ProblemConfig::new(
        FluxFunction::burgers(),
        InitialData::neg_tanh(),
        0.5,
        0.0,
        1.0,
        16.0,
    )
    .map_err(err)?;
    let f = solve_viscous(&cfg, 1024, 64).map_err(err)?;
    let mut worst = 0.0f64;
    for i in (0..f.nx).step_by(8) {
        let u = cole_hopf_burgers(&cfg.initial, f.x(i), 1.0, 0.5).map_err(err)?;
        worst = worst.max((f.at(i, f.nt) - u).abs());
    }
    Ok((
        worst <= 2e-3,
        format!("sup |solver - hopf| at t = 1: {worst:e}"),
    ))
}

fn solver_determinism() -> CheckResult {
    let (a, b) = (tanh_solve(0.1, 0.05)?, tanh_solve(0.1, 0.05)?);
    let q = InitialData::neg_tanh();
    let field = |mode| cole_hopf_field(&q, (-2.0, 2.0), 41, (0.5, 1.5), 8, 0.05, mode);
    let s = field(ExecMode::Sequential).map_err(err)?;
    let p = field(ExecMode::Parallel).map_err(err)?;
    let ok = a == b && s == p;
    Ok((
        ok,
        "repeat solve and sequential/parallel Hopf field bitwise equal".into(),
    ))
}

fn catastrophe() -> CheckResult {
    let p = catastrophe_point(&InitialData::neg_tanh(), &FluxFunction::burgers()).map_err(err)?;
    let d = p.x_star.abs().max((p.t_star - 1.0).abs());
    Ok((
        d <= 1e-10,
        format!("(x*, t*) = ({}, {})", p.x_star, p.t_star),
    ))
}

fn rh_on_curves() -> CheckResult {
    let f = FluxFunction::burgers();
    let q = InitialData::neg_tanh();
    let p = catastrophe_point(&q, &f).map_err(err)?;
    let c = track_shock(&q, &f, &p, 3.0).map_err(err)?;
    let d = c.rh_defect(&f);
    Ok((
        d <= 1e-6 && c.satisfies_entropy(),
        format!("RH defect {d:e}"),
    ))
}

fn collision() -> CheckResult {
    let f = FluxFunction::burgers();
    let q = InitialData::Piecewise {
        breaks: vec![-1.0, 1.0],
        values: vec![2.0, 0.0, -2.0],
    };
    let s1 = track_shock(&q, &f, &initial_jump_point(&q, -1.0), 1.5).map_err(err)?;
    let s2 = track_shock(&q, &f, &initial_jump_point(&q, 1.0), 1.5).map_err(err)?;
    let p = detect_collision(&s1, &s2, &f).map_err(err)?;
    let d = p.x_star.abs().max((p.t_star - 1.0).abs());
    Ok((
        d <= 1e-6,
        format!("collision at ({}, {})", p.x_star, p.t_star),
    ))
}

fn step_symmetry() -> CheckResult {
    let mut worst = 0.0f64;
    let mut in_band = true;
    for z in grid(-10.0, 10.0, 41) {
        for t in [0.1, 1.0, 10.0] {
            let w = burgers_step_exact(1.0, -1.0, z, t);
            worst = worst.max((w + burgers_step_exact(1.0, -1.0, -z, t)).abs());
            in_band &= w.abs() <= 1.0;
        }
    }
    Ok((
        worst <= 1e-14 && in_band,
        format!("max |w(z) + w(-z)| = {worst:e}"),
    ))
}

fn merging_residual() -> CheckResult {
    let h = 5e-3;
    let w = |z: f64, t: f64| merging_shocks_exact(1.0, 0.0, -1.0, 0.0, 0.0, z, t);
    let mut worst = 0.0f64;
    for z in grid(-15.0, 15.0, 31) {
        for t in grid(-15.0, 15.0, 31) {
            let wt = (w(z, t + h) - w(z, t - h)) / (2.0 * h);
            let fz = (w(z + h, t).powi(2) - w(z - h, t).powi(2)) / (4.0 * h);
            let wzz = (w(z + h, t) - 2.0 * w(z, t) + w(z - h, t)) / (h * h);
            worst = worst.max((wt + fz - wzz).abs());
        }
    }
    Ok((worst <= 1e-6, format!("residual at h = 5e-3: {worst:e}")))
}

fn comparator_decay() -> CheckResult {
    let m = MergingShocks::new(1.0, 0.0, -1.0, 0.0, 0.0).map_err(err)?;
    let taus = [10.0, 20.0, 40.0];
    let dp: Vec<f64> = taus
        .iter()
        .map(|&t| m.defect(Comparator::TwoShock, -t, 3.0 * t + 30.0, 4001))
        .collect();
    let df: Vec<f64> = taus
        .iter()
        .map(|&t| m.defect(Comparator::OneShock, t, 3.0 * t + 30.0, 4001))
        .collect();
    let (rp, _) = fit_exponential_rate(&taus, &dp).map_err(err)?;
    let (rf, _) = fit_exponential_rate(&taus, &df).map_err(err)?;
    Ok((
        rp > 0.0 && rf > 0.0,
        format!("decay rates {rp:.3} (two-shock), {rf:.3} (one-shock)"),
    ))
}

fn lambda_positive_even() -> CheckResult {
    let mut ok = true;
    for xi in grid(-5.0, 5.0, 11) {
        for tau in grid(-5.0, 5.0, 11) {
            let (v, d) = lambda_integral(xi, tau).map_err(err)?;
            let (vm, dm) = lambda_integral(-xi, tau).map_err(err)?;
            ok &= v > 0.0 && (v - vm).abs() <= 1e-12 * v && (d + dm).abs() <= 1e-12 * v;
        }
    }
    Ok((ok, "Lambda > 0, even in xi on an 11x11 grid".into()))
}

fn w10_odd() -> CheckResult {
    let mut worst = 0.0f64;
    for xi in grid(0.0, 5.0, 6) {
        for tau in [-3.0, 0.0, 4.0] {
            worst = worst
                .max((w10(xi, tau, 1.0).map_err(err)? + w10(-xi, tau, 1.0).map_err(err)?).abs());
        }
    }
    Ok((
        worst <= 1e-12,
        format!("max |w10(xi) + w10(-xi)| = {worst:e}"),
    ))
}

fn lambda_heat() -> CheckResult {
    let mut worst = 0.0f64;
    for xi in grid(-5.0, 5.0, 5) {
        for tau in grid(-5.0, 5.0, 5) {
            worst = worst.max(lambda_heat_residual(xi, tau, 1e-3).map_err(err)?.abs());
        }
    }
    Ok((worst <= 1e-6, format!("relative heat residual {worst:e}")))
}

fn weakshock_signs() -> CheckResult {
    let mut ok = true;
    for b in [0.5, 1.0] {
        for xi in grid(-3.0, 3.0, 7) {
            for tau in grid(-3.0, 3.0, 7) {
                let (v, d) = phi_integral(xi, tau, b).map_err(err)?;
                ok &= v > 0.0 && d < 0.0;
                ok &= w20(xi, tau, b).map_err(err)? > 0.0 && w30(xi, tau, b).map_err(err)? < 0.0;
            }
        }
    }
    Ok((ok, "Phi > 0, Phi_xi < 0, w20 > 0, w30 < 0".into()))
}

fn weakshock_scaling() -> CheckResult {
    let lam: f64 = 2.0;
    let mut worst = 0.0f64;
    for (xi, tau, b) in [(0.3, -0.5, 0.5), (1.0, 1.0, 1.0), (-2.0, 0.0, 0.75)] {
        let (v, _) = phi_integral(xi, tau, b).map_err(err)?;
        let (w, _) = phi_integral(lam * xi, lam * lam * tau, lam.powi(3) * b).map_err(err)?;
        worst = worst.max((v - lam * w).abs() / v);
    }
    Ok((worst <= 1e-10, format!("relative defect {worst:e}")))
}

fn h0_comparison() -> CheckResult {
    let mut ok = true;
    for sigma in [-3.0, 0.0, 4.0] {
        for omega in [1e-3, 1.0, 10.0] {
            let a = h0(|s: f64| -s.tanh() - 0.1, sigma, omega).map_err(err)?;
            let b = h0(|s: f64| -(s - 0.5).tanh(), sigma, omega).map_err(err)?;
            ok &= a <= b;
        }
    }
    Ok((ok, "ordered profiles give ordered h0".into()))
}

fn constant_corrections() -> CheckResult {
    let f = FluxFunction::burgers();
    let rule = DuhamelRule::new(4, 6).map_err(err)?;
    let mut worst = 0.0f64;
    for n in 1..=3 {
        worst = worst.max(hn_with(|_| 0.3, &f, n, 0.2, 0.5, &rule).map_err(err)?.abs());
    }
    Ok((
        worst <= 1e-12,
        format!("max |h_n| for constant data {worst:e}"),
    ))
}

fn composite_odd() -> CheckResult {
    let t = TailExpansion::new(1.0, -1.0).map_err(err)?;
    let st = TwoParamState::new(0.05, 0.005).map_err(err)?;
    let g = GammaRiemann::new(&FluxFunction::burgers(), &t, 40.0).map_err(err)?;
    let nu = Profile::Tanh { amplitude: -1.0 };
    let mut worst = 0.0f64;
    for x in [0.0, 0.1, 0.3, 0.6] {
        let a = composite_u(x, 0.5, &st, &nu, &t, &g).map_err(err)?;
        let b = composite_u(-x, 0.5, &st, &nu, &t, &g).map_err(err)?;
        worst = worst.max((a + b).abs());
    }
    Ok((worst <= 1e-12, format!("max |u(x) + u(-x)| = {worst:e}")))
}

fn scaling_round_trip() -> CheckResult {
    let mut worst = 0.0f64;
    for eps in [1e-3, 1e-2, 0.3] {
        let maps = [
            InnerScaling::jump(eps, 0.3, 1.2, -0.7),
            InnerScaling::fold(eps, -1.0, 2.0, 0.4),
            InnerScaling::weak_shock(eps, 0.0, 0.0),
            InnerScaling::large_gradient_outer(eps, 0.3 * eps),
            InnerScaling::large_gradient_inner(eps),
        ];
        for s in maps {
            for x in grid(-5.0, 5.0, 11) {
                for t in grid(-5.0, 5.0, 11) {
                    let (xi, tau) = s.to_inner(x, t);
                    let (x2, t2) = s.from_inner(xi, tau);
                    worst = worst.max((x2 - x).abs()).max((t2 - t).abs());
                }
            }
        }
    }
    Ok((worst <= 1e-11, format!("max round-trip error {worst:e}")))
}

fn fit_exact_line() -> CheckResult {
    let p = [1e-1, 5e-2, 2.5e-2];
    let fit = fit_rate(&p, &p).map_err(err)?;
    Ok((
        (fit.slope - 1.0).abs() <= 1e-12,
        format!("slope {}", fit.slope),
    ))
}

const SMALL_JUMP: &str = "[scenario]\nkind = \"initial-jump\"\nwindow = { xi_min = -4.0, xi_max = 4.0, tau_min = 1.0, tau_max = 3.0, nx = 9, ntau = 3 }\n[sweep]\nepsilon = [0.1, 0.05, 0.025]\n";

fn sweep_determinism() -> CheckResult {
    let cfg = parse_config(SMALL_JUMP).map_err(err)?;
    let a = run_scenario(&cfg, ExecMode::Parallel).map_err(err)?;
    let b = run_scenario(&cfg, ExecMode::Sequential).map_err(err)?;
    let mut same = a.report.rows.len() == b.report.rows.len();
    for (x, y) in a.fields.iter().zip(&b.fields) {
        same &= csv_bytes(x).map_err(err)? == csv_bytes(y).map_err(err)?;
    }
    Ok((
        same,
        format!("{} legs, identical CSV bytes", a.fields.len()),
    ))
}

fn constant_is_degenerate() -> CheckResult {
    let text = "[scenario]\nkind = \"fold\"\nwindow = { xi_min = -1.0, xi_max = 1.0, tau_min = -1.0, tau_max = 1.0, nx = 5, ntau = 3 }\n[initial]\nvariant = \"constant\"\nvalue = 0.3\n[sweep]\nepsilon = [1e-2, 5e-3, 2.5e-3]\n";
    let cfg = parse_config(text).map_err(err)?;
    let out = run_scenario(&cfg, ExecMode::Parallel).map_err(err)?;
    let worst = out
        .report
        .rows
        .iter()
        .map(|r| r.sup_error)
        .fold(0.0, f64::max);
    Ok((
        out.report.degenerate && out.report.pass,
        format!(
            "sup error {worst:e}, degenerate = {}",
            out.report.degenerate
        ),
    ))
}

const CHECKS: &[Check] = &[
    Check {
        module: "flux_core",
        name: "burgers derivatives are exact",
        run: burgers_derivatives,
    },
    Check {
        module: "flux_core",
        name: "RH speed is symmetric",
        run: rh_symmetry,
    },
    Check {
        module: "flux_core",
        name: "non-convex flux is rejected",
        run: nonconvex_rejected,
    },
    Check {
        module: "quadrature",
        name: "gaussian integral",
        run: gaussian_integral,
    },
    Check {
        module: "quadrature",
        name: "erfc reflection",
        run: erfc_reflection,
    },
    Check {
        module: "viscous_solver",
        name: "conservation",
        run: conservation,
    },
    Check {
        module: "viscous_solver",
        name: "maximum principle",
        run: maximum_principle,
    },
    Check {
        module: "viscous_solver",
        name: "comparison principle",
        run: comparison_principle,
    },
    Check {
        module: "viscous_solver",
        name: "solver agrees with hopf",
        run: solver_vs_hopf,
    },
    Check {
        module: "viscous_solver",
        name: "determinism",
        run: solver_determinism,
    },
    Check {
        module: "limit_solver",
        name: "catastrophe point",
        run: catastrophe,
    },
    Check {
        module: "limit_solver",
        name: "RH invariant on tracked curves",
        run: rh_on_curves,
    },
    Check {
        module: "limit_solver",
        name: "three-state collision",
        run: collision,
    },
    Check {
        module: "inner_riemann",
        name: "step profile symmetry and band",
        run: step_symmetry,
    },
    Check {
        module: "inner_riemann",
        name: "merging-shock residual",
        run: merging_residual,
    },
    Check {
        module: "inner_riemann",
        name: "comparator defects decay",
        run: comparator_decay,
    },
    Check {
        module: "inner_fold",
        name: "Lambda positivity and symmetry",
        run: lambda_positive_even,
    },
    Check {
        module: "inner_fold",
        name: "w10 is odd",
        run: w10_odd,
    },
    Check {
        module: "inner_fold",
        name: "Lambda heat residual",
        run: lambda_heat,
    },
    Check {
        module: "inner_weakshock",
        name: "signs",
        run: weakshock_signs,
    },
    Check {
        module: "inner_weakshock",
        name: "scale coherence",
        run: weakshock_scaling,
    },
    Check {
        module: "large_gradient",
        name: "h0 comparison principle",
        run: h0_comparison,
    },
    Check {
        module: "large_gradient",
        name: "corrections vanish for constant data",
        run: constant_corrections,
    },
    Check {
        module: "large_gradient",
        name: "composite symmetry",
        run: composite_odd,
    },
    Check {
        module: "scaling",
        name: "round trip",
        run: scaling_round_trip,
    },
    Check {
        module: "asymlab_cli",
        name: "fit_rate exact line",
        run: fit_exact_line,
    },
    Check {
        module: "asymlab_cli",
        name: "sweep determinism",
        run: sweep_determinism,
    },
    Check {
        module: "asymlab_cli",
        name: "constant data gives a degenerate fit",
        run: constant_is_degenerate,
    },
];

/// Runs every check in order; an error inside a check counts as a failure.
pub fn run_verify() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|c| {
            let start = Instant::now();
            let (passed, detail) = match (c.run)() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                module: c.module,
                name: c.name,
                passed,
                detail,
                runtime_s: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

pub fn check_count() -> usize {
    CHECKS.len()
}
