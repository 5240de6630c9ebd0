//! Structural invariants: order-function bounds, branch mirror symmetry,
//! norm homogeneity, solver linearity, and frequency-limit extrapolation.

use conic_resolvent::experiments::euclid_integral;
use conic_resolvent::geometry::{ModeSpec, PotentialSpec, RadialGrid};
use conic_resolvent::mellin::{
    b_norm, flow_derivative, order_value, ModeFunction, WeightOrderSpec,
};
use conic_resolvent::positivity::{theta_total, PositivityParams};
use conic_resolvent::radial::{green_pair, Rk45Options};
use conic_resolvent::specfun::bessel_jy;
use conic_resolvent::Sign;
use num_complex::Complex64;
use proptest::prelude::*;

fn order_family() -> WeightOrderSpec {
    WeightOrderSpec {
        n: 3,
        l: -1.0,
        beta: 1.0,
        sign: Sign::Plus,
    }
}

fn multiplier_family(sign: Sign) -> PositivityParams {
    PositivityParams {
        n: 3,
        l: -0.6,
        beta: 1.0,
        sign,
        tilde_beta: 5.0 * std::f64::consts::PI,
        reg_low: 10.0,
        reg_mid: 10.0,
        reg_high: 10.0,
    }
}

proptest! {
    #[test]
    fn order_stays_within_its_band(tau in -100.0f64..100.0, mu in 0.01f64..100.0) {
        let w = order_family();
        let v = order_value(&w, tau, mu * mu).unwrap();
        prop_assert!(v >= w.base_order() - w.beta - 1e-12);
        prop_assert!(v <= w.base_order() + w.beta + 1e-12);
    }

    #[test]
    fn flow_derivative_sign_follows_the_branch(tau in -100.0f64..100.0, mu in 0.0f64..100.0) {
        prop_assume!(tau != 0.0 || mu != 0.0);
        let w = order_family();
        let d = flow_derivative(&w, tau, mu).unwrap();
        // Outgoing branch: the order is monotone along the flow, with
        // derivative between 0 and 2 beta; the incoming branch mirrors it.
        prop_assert!((0.0..=2.0 * w.beta + 1e-12).contains(&d));
        let wm = WeightOrderSpec { sign: Sign::Minus, ..w };
        let dm = flow_derivative(&wm, tau, mu).unwrap();
        prop_assert!((dm + d).abs() <= 1e-12 * (1.0 + d.abs()));
    }

    #[test]
    fn theta_mirrors_across_branches(tau in -50.0f64..50.0, nu in 0.0f64..50.0) {
        // Theta_-(tau, nu) = -Theta_+(-tau, nu): the incoming multiplier
        // is the frequency reflection of the outgoing one.
        let minus = theta_total(tau, nu, &multiplier_family(Sign::Minus)).unwrap();
        let plus = theta_total(-tau, nu, &multiplier_family(Sign::Plus)).unwrap();
        prop_assert!(
            (minus + plus).abs() <= 1e-12 * (1.0 + plus.abs()),
            "Theta_- = {minus}, -Theta_+ mirrored = {}", -plus
        );
    }

    #[test]
    fn wronskian_identity_at_random_orders(nu in 0.0f64..60.0, lx in -6.0f64..3.95) {
        let x = 10f64.powf(lx);
        // Pairs whose components leave f64 range (Y overflows at tiny x
        // and large order) carry no meaningful identity; all comfortably
        // representable pairs must satisfy it.
        if let Ok(b) = bessel_jy(nu, x) {
            let representable =
                |v: f64| v.is_finite() && v != 0.0 && (1e-280..=1e280).contains(&v.abs());
            if [b.j, b.y, b.jp, b.yp].iter().all(|&v| representable(v)) {
                let defect =
                    ((b.j * b.yp - b.jp * b.y) * std::f64::consts::PI * x / 2.0 - 1.0).abs();
                prop_assert!(defect < 1e-9, "Wronskian defect {defect:.2e} at nu = {nu}, x = {x}");
            }
        }
    }
}

fn gaussian_mode(j: u32, center: f64, width: f64, amp: Complex64) -> ModeFunction {
    let mode = ModeSpec::new(3, j).unwrap();
    ModeFunction::from_fn(mode, RadialGrid::default(), |r| {
        let x = (r.ln() - center) / width;
        amp * (-0.5 * x * x).exp()
    })
    .unwrap()
}

#[test]
fn b_norm_is_absolutely_homogeneous() {
    let modes = vec![
        gaussian_mode(0, 0.4, 0.7, Complex64::new(1.1, -0.3)),
        gaussian_mode(1, -0.2, 0.5, Complex64::new(-0.4, 0.9)),
    ];
    let w = order_family();
    let base = b_norm(&modes, &w, 0.0, 0.0).unwrap().value;
    let c = Complex64::new(0.37, -1.2);
    let scaled: Vec<ModeFunction> = modes.iter().map(|m| m.scaled(c)).collect();
    let got = b_norm(&scaled, &w, 0.0, 0.0).unwrap().value;
    let want = c.norm() * base;
    assert!(
        (got - want).abs() <= 1e-12 * want,
        "|c u| = {got:.15e} vs |c| |u| = {want:.15e}"
    );
}

#[test]
fn resolvent_application_is_linear() {
    let grid = RadialGrid::default();
    let mode = ModeSpec::new(3, 0).unwrap();
    let gp = green_pair(
        &mode,
        &PotentialSpec::Zero,
        0.5,
        Sign::Plus,
        &grid,
        &Rk45Options::default(),
    )
    .unwrap();
    let f1: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|&r| {
            let x = (r.ln() - 0.5) / 0.6;
            Complex64::new((-0.5 * x * x).exp(), 0.0)
        })
        .collect();
    let f2: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|&r| {
            let x = (r.ln() - 1.5) / 0.8;
            Complex64::new(0.0, (-0.5 * x * x).exp())
        })
        .collect();
    let alpha = Complex64::new(-0.8, 0.45);
    let combo: Vec<Complex64> = f1.iter().zip(&f2).map(|(a, b)| alpha * a + b).collect();

    let (u_combo, _) = gp.apply(&combo).unwrap();
    let (u1, _) = gp.apply(&f1).unwrap();
    let (u2, _) = gp.apply(&f2).unwrap();

    let scale = u_combo.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let worst = u_combo
        .iter()
        .zip(u1.iter().zip(&u2))
        .map(|(uc, (a, b))| (uc - (alpha * a + b)).norm())
        .fold(0.0, f64::max);
    assert!(
        worst <= 1e-12 * scale,
        "linearity defect {worst:.2e} against scale {scale:.2e}"
    );
}

#[test]
fn euclid_integral_extrapolates_to_the_frequency_limit() {
    let eps = [1e-2, 1e-3, 1e-4];
    let reports = eps.map(|e| euclid_integral(Sign::Plus, e).unwrap());
    for r in &reports {
        assert!(
            r.rel_error < 1e-7,
            "quadrature off the closed form by {:.2e} at eps = {}",
            r.rel_error,
            r.epsilon
        );
    }
    // The distance to the limit is dominated by eps itself...
    assert!(reports[2].limit_rel_error < reports[1].limit_rel_error);
    assert!(reports[1].limit_rel_error < reports[0].limit_rel_error);
    // ...and polynomial extrapolation in eps removes it.
    let mut extrapolated = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        let mut weight = 1.0;
        for j in 0..3 {
            if j != i {
                weight *= (0.0 - eps[j]) / (eps[i] - eps[j]);
            }
        }
        extrapolated += weight * reports[i].value;
    }
    let limit = reports[0].limit;
    let err = (extrapolated - limit).norm();
    assert!(
        err <= 1e-5,
        "extrapolated {extrapolated:.9e} vs limit {limit:.9e}, error {err:.2e}"
    );
}
