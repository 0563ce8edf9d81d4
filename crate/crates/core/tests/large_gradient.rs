use asymlab::large_gradient::{
    composite_u, gamma_riemann, h0, hn, hn_with, renormalized_u, renormalized_u_with, DuhamelRule,
    GammaRiemann, TwoParamState,
};
use asymlab::riemann::{burgers_step_exact, InnerGrid};
use asymlab::viscous::cole_hopf_burgers;
use asymlab::{make_flux, FluxFunction, FluxSpec, InitialData, Profile, TailExpansion};

fn neg_tanh(s: f64) -> f64 {
    -s.tanh()
}

#[test]
fn h0_comparison_principle() {
    let lower = |s: f64| -s.tanh() - 0.1;
    let upper = |s: f64| -(s - 0.5).tanh();
    for sigma in [-3.0, -0.5, 0.0, 1.0, 4.0] {
        for omega in [1e-3, 0.1, 1.0, 10.0] {
            assert!(h0(lower, sigma, omega).unwrap() <= h0(upper, sigma, omega).unwrap());
        }
    }
}

#[test]
fn hn_vanishes_initially_and_grows_like_sqrt_omega() {
    let f = FluxFunction::burgers();
    assert!(hn(neg_tanh, &f, 1, 0.5, 1e-6).unwrap().abs() < 1e-3);
    let small = DuhamelRule::new(8, 12).unwrap();
    assert!(hn_with(neg_tanh, &f, 2, 0.5, 1e-6, &small).unwrap().abs() < 1e-5);
    // a step gives a self-similar boundary layer: h1 = sqrt(omega) F(sigma / sqrt(omega))
    let step = |s: f64| if s < 0.0 { 1.0 } else { -1.0 };
    let r: Vec<f64> = [1e-3, 1e-4]
        .iter()
        .map(|&w: &f64| hn(step, &f, 1, 0.5 * w.sqrt(), w).unwrap() / w.sqrt())
        .collect();
    assert!((r[0] / r[1] - 1.0).abs() < 0.2, "{r:?}");
    // smooth data: h1 ~ -omega d/dsigma phi(nu)
    let r: Vec<f64> = [1e-3, 1e-4]
        .iter()
        .map(|&w: &f64| hn(neg_tanh, &f, 1, 0.5, w).unwrap() / w)
        .collect();
    let expect = -(-0.5f64.tanh()) * -(1.0 / 0.5f64.cosh().powi(2));
    assert!(
        r.iter().all(|v| (v / expect - 1.0).abs() < 0.05),
        "{r:?} vs {expect}"
    );
}

#[test]
fn higher_orders_vanish_for_constant_data() {
    let f = FluxFunction::burgers();
    let rule = DuhamelRule::new(4, 6).unwrap();
    for n in 1..=3 {
        assert!(hn_with(|_| 0.3, &f, n, 0.2, 0.5, &rule).unwrap().abs() < 1e-12);
    }
}

#[test]
fn first_correction_improves_inner_expansion() {
    let f = FluxFunction::burgers();
    let st = TwoParamState::new(0.05, 0.005).unwrap();
    let q = InitialData::scaled_neg_tanh(st.rho);
    let (mut e0, mut e1) = (0.0f64, 0.0f64);
    for sigma in [-1.0, -0.5, 0.25, 0.75, 1.0] {
        for omega in [0.1, 0.5, 1.0] {
            let (x, t) = (st.rho * sigma, st.rho * st.rho * omega / st.eps);
            let u = cole_hopf_burgers(&q, x, t, st.eps).unwrap();
            let a = h0(neg_tanh, sigma, omega).unwrap();
            let b = a + st.mu * hn(neg_tanh, &f, 1, sigma, omega).unwrap();
            e0 = e0.max((u - a).abs());
            e1 = e1.max((u - b).abs());
        }
    }
    assert!(e1 < e0, "{e1} vs {e0}");
}

#[test]
fn renormalized_tends_to_gamma_as_rho_vanishes() {
    let t = TailExpansion::new(1.0, -1.0).unwrap();
    let st = TwoParamState::new(0.05, 1e-6).unwrap();
    let g = GammaRiemann::new(&FluxFunction::burgers(), &t, 40.0).unwrap();
    let nu = Profile::Tanh { amplitude: -1.0 };
    for (x, time) in [(0.03, 0.5), (-0.1, 1.0), (0.2, 0.2)] {
        let r = renormalized_u(x, time, &st, &nu, &t, &g).unwrap();
        assert!((r - g.value(x / st.eps, time / st.eps).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn composite_symmetry_and_reference() {
    let t = TailExpansion::new(1.0, -1.0).unwrap();
    let st = TwoParamState::new(0.05, 0.005).unwrap();
    let g = GammaRiemann::new(&FluxFunction::burgers(), &t, 40.0).unwrap();
    let nu = Profile::Tanh { amplitude: -1.0 };
    assert!(composite_u(0.0, 0.5, &st, &nu, &t, &g).unwrap().abs() < 1e-14);
    assert!(
        cole_hopf_burgers(&InitialData::scaled_neg_tanh(st.rho), 0.0, 0.5, st.eps)
            .unwrap()
            .abs()
            < 1e-6
    );
    for x in [-0.3, 0.1, 0.6] {
        let a = composite_u(x, 0.5, &st, &nu, &t, &g).unwrap();
        let b = composite_u(-x, 0.5, &st, &nu, &t, &g).unwrap();
        assert!((a + b).abs() < 1e-12);
    }
}

#[test]
fn renormalized_normalization_for_asymmetric_tails() {
    let t = TailExpansion::new(2.0, 0.5).unwrap();
    let nu = Profile::Custom {
        value: std::sync::Arc::new(|s: f64| 1.25 - 0.75 * s.tanh()),
        derivative: std::sync::Arc::new(|s: f64| -0.75 / s.cosh().powi(2)),
    };
    let st = TwoParamState::new(0.05, 0.01).unwrap();
    let c = renormalized_u_with(0.4, 0.3, &st, &nu, &t, |_, _| Ok(-1.5)).unwrap();
    assert!((c + 1.5).abs() < 1e-12);
}

#[test]
fn tabulated_gamma_matches_burgers_closed_form() {
    let f = FluxFunction::burgers();
    let t = TailExpansion::new(1.0, -0.5).unwrap();
    let grid = InnerGrid {
        half_width: 40.0,
        nx: 1600,
        tau_end: 10.0,
        nt: 2000,
        save_every: 4,
    };
    let table = GammaRiemann::tabulated(&f, &t, &grid).unwrap();
    let mut worst = 0.0f64;
    for theta in [2.0, 5.0, 10.0] {
        for eta in [-6.0, -1.0, 0.3, 2.0, 8.0] {
            let d = table.value(eta, theta).unwrap() - burgers_step_exact(1.0, -0.5, eta, theta);
            worst = worst.max(d.abs());
        }
    }
    assert!(worst < 2e-3, "{worst}");
}

#[test]
fn gamma_for_general_flux_stays_in_band() {
    let f = make_flux(
        &FluxSpec::Polynomial {
            coefficients: vec![0.0, 0.0, 0.5, 0.1],
        },
        (-1.5, 1.5),
        4,
    )
    .unwrap();
    let t = TailExpansion::new(1.0, -1.0).unwrap();
    let g = GammaRiemann::new(&f, &t, 5.0).unwrap();
    for eta in [-30.0, -2.0, 0.0, 2.0, 30.0] {
        let v = g.value(eta, 5.0).unwrap();
        assert!((-1.0 - 1e-8..=1.0 + 1e-8).contains(&v), "{v}");
    }
    assert!((g.value(-100.0, 5.0).unwrap() - 1.0).abs() < 1e-12);
    assert!(gamma_riemann(&f, &t, 0.0, 0.0).is_err());
}
