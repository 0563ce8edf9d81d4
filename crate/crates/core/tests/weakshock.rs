use asymlab::viscous::cole_hopf_burgers;
use asymlab::weakshock::{
    phi_heat_residual, phi_heat_residual_fourth_order, phi_integral, two_term_inner, w20,
    w20_residual, w30, w30_residual, weakshock_scenario, weakshock_scenario_with_cutoff,
    WeakShockParams,
};
use asymlab::{ExecMode, FluxFunction};
use proptest::prelude::*;

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn sup_over<F: Fn(f64, f64) -> f64 + Sync>(half: f64, n: usize, f: F) -> f64 {
    let g = grid(-half, half, n);
    asymlab::par::map_indexed(ExecMode::Parallel, n * n, |k| f(g[k / n], g[k % n]).abs())
        .into_iter()
        .fold(0.0, f64::max)
}

fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn heat_identity_on_square() {
    for b in [0.5, 0.75, 1.0] {
        let r = sup_over(3.0, 13, |xi, tau| {
            phi_heat_residual_fourth_order(xi, tau, b, 1e-3).unwrap()
        });
        assert!(r <= 1e-6, "b={b}: {r}");
    }
    assert!(phi_heat_residual(1.0, -1.0, 1.0, 1e-3).unwrap().abs() <= 1e-6);
    let (a, c) = (
        phi_heat_residual(2.0, 2.0, 0.5, 2e-2).unwrap(),
        phi_heat_residual(2.0, 2.0, 0.5, 1e-2).unwrap(),
    );
    assert!(((a / c).log2() - 2.0).abs() < 0.1, "{a} {c}");
}

#[test]
fn w20_and_w30_residuals_on_square() {
    for b in [0.5, 1.0] {
        let r2 = sup_over(3.0, 13, |xi, tau| w20_residual(xi, tau, b, 1e-3).unwrap());
        let r3 = sup_over(3.0, 13, |xi, tau| w30_residual(xi, tau, b, 1e-3).unwrap());
        assert!(r2 <= 1e-5 && r3 <= 1e-5, "b={b}: {r2} {r3}");
    }
    let (a, c) = (
        w20_residual(1.0, -2.0, 1.0, 4e-2).unwrap(),
        w20_residual(1.0, -2.0, 1.0, 2e-2).unwrap(),
    );
    let order = (a / c).abs().log2();
    assert!((1.8..=2.2).contains(&order), "{order}");
}

#[test]
fn scale_coherence() {
    let lam: f64 = 2.0;
    for (xi, tau, b) in [(0.3, -0.5, 0.5), (1.0, 1.0, 1.0), (-2.0, 0.0, 0.75)] {
        let (v, _) = phi_integral(xi, tau, b).unwrap();
        let (w, _) = phi_integral(lam * xi, lam * lam * tau, lam.powi(3) * b).unwrap();
        assert!((v - lam * w).abs() <= 1e-10 * v, "{v} {w}");
    }
}

proptest! {
    #[test]
    fn signs(xi in -3.0f64..3.0, tau in -3.0f64..3.0, b in 0.25f64..2.0) {
        let (v, d) = phi_integral(xi, tau, b).unwrap();
        prop_assert!(v > 0.0 && d < 0.0);
        prop_assert!(w20(xi, tau, b).unwrap() > 0.0);
        prop_assert!(w30(xi, tau, b).unwrap() < 0.0);
    }
}

fn sweep_error(eps: f64, two_term: bool, xi_half: f64, tau_range: (f64, f64)) -> f64 {
    let cfg = weakshock_scenario(1.0, &FluxFunction::burgers(), eps).unwrap();
    let s = WeakShockParams::scaling(eps);
    let (xs, ts) = (
        grid(-xi_half, xi_half, 13),
        grid(tau_range.0, tau_range.1, 9),
    );
    let n = xs.len() * ts.len();
    asymlab::par::map_indexed(ExecMode::Parallel, n, |k| {
        let (xi, tau) = (xs[k % xs.len()], ts[k / xs.len()]);
        let (x, t) = s.from_inner(xi, tau);
        let u = cole_hopf_burgers(&cfg.initial, x, t - cfg.t0, eps).unwrap();
        let a = if two_term {
            two_term_inner(xi, tau, 1.0, eps).unwrap()
        } else {
            eps.cbrt() * w20(xi, tau, 1.0).unwrap()
        };
        (u - a).abs()
    })
    .into_iter()
    .fold(0.0, f64::max)
}

#[test]
fn leading_term_converges_in_eps() {
    let eps = [1e-2, 5e-3, 2.5e-3];
    let e1: Vec<f64> = eps
        .iter()
        .map(|&e| sweep_error(e, false, 3.0, (-2.0, 2.0)))
        .collect();
    let s1 = loglog_slope(&eps, &e1);
    assert!(s1 >= 0.1, "{s1} {e1:?}");
    let near: Vec<f64> = eps
        .iter()
        .map(|&e| sweep_error(e, false, 1.0, (-1.0, 0.0)))
        .collect();
    let two: Vec<f64> = eps
        .iter()
        .map(|&e| sweep_error(e, true, 1.0, (-1.0, 0.0)))
        .collect();
    eprintln!(
        "leading {e1:?}; near {near:?}; two-term {two:?} slope {}",
        loglog_slope(&eps, &two)
    );
    assert!(
        two.iter().zip(&near).all(|(a, b)| a < b),
        "{two:?} {near:?}"
    );
}

#[test]
fn cutoff_scenario_is_bounded_and_matches_near_origin() {
    let eps = 1e-2;
    let f = FluxFunction::burgers();
    let plain = weakshock_scenario(1.0, &f, eps).unwrap();
    let cut = weakshock_scenario_with_cutoff(1.0, &f, eps, 0.5).unwrap();
    let (l, r) = cut.boundary_values();
    assert!(l.abs() < 1e-12 && r == 0.0);
    for x in [-0.1, -0.05, 0.0, 0.1] {
        assert!((plain.initial.value(x) - cut.initial.value(x)).abs() < 1e-4);
    }
}
