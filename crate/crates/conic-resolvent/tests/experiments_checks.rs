//! End-to-end behavior of the randomized sweeps and the block study.

use conic_resolvent::experiments::{
    block_structure, constant_weight_sweep, uniform_sweep, BlockConfig, SweepConfig,
};
use conic_resolvent::geometry::{ModeSpec, PotentialSpec, RadialGrid};
use conic_resolvent::numerics::logspace;
use conic_resolvent::radial::{find_critical_coupling, Rk45Options};
use conic_resolvent::Sign;

#[test]
fn resonant_coupling_drives_ratio_blowup() {
    // At the critical s-wave coupling the zero-energy resonance forces the
    // low-frequency ratios to blow up like 1/sigma; the fitted slope over
    // the low-frequency window must reflect that.
    let grid = RadialGrid::new(1e-4, 1e3, 2048).unwrap();
    let opts = Rk45Options::default();
    let mode = ModeSpec::new(3, 0).unwrap();
    let family = PotentialSpec::SquareWell { depth: 1.0, radius: 1.0 };
    let g_star = find_critical_coupling(&mode, &family, (0.2, 8.0), &grid, &opts).unwrap();

    let mut cfg = SweepConfig::new(3, 2, -1.0, 1.0, Sign::Plus);
    cfg.potential = PotentialSpec::SquareWell { depth: g_star, radius: 1.0 };
    cfg.grid = grid;
    cfg.sigmas = logspace(1e-3, 1e-1, 10);
    cfg.n_seeds = 2;
    let report = uniform_sweep(&cfg).unwrap();
    assert!(
        report.slope <= -0.85,
        "blow-up slope {:.3} too shallow at a zero-energy resonance",
        report.slope
    );
    assert!(
        report.variation > 10.0,
        "ratio variation {:.2} too small for a resonant family",
        report.variation
    );
    assert!(report.max_drift < 1e-6, "Wronskian drift {:.2e}", report.max_drift);
}

#[test]
fn constant_weight_ratios_decrease_in_the_weight_exponent() {
    // Enlarging beta strengthens the source weight and weakens the target
    // weight, so every (sigma, seed) ratio can only go down.
    let mut base = SweepConfig::new(3, 2, -1.0, 0.5, Sign::Plus);
    base.grid = RadialGrid::new(1e-4, 1e3, 2048).unwrap();
    base.sigmas = logspace(1e-3, 1e-2, 4);
    base.n_seeds = 2;
    let lo = constant_weight_sweep(&base).unwrap();

    let mut stronger = base.clone();
    stronger.beta = 0.9;
    let hi = constant_weight_sweep(&stronger).unwrap();

    assert_eq!(lo.points.len(), hi.points.len());
    for (a, b) in lo.points.iter().zip(hi.points.iter()) {
        assert_eq!(a.sigma, b.sigma);
        assert_eq!(a.seed, b.seed);
        assert!(a.ratio > 0.0 && b.ratio > 0.0);
        assert!(
            b.ratio <= a.ratio * (1.0 + 1e-10),
            "sigma {:.3e}, seed {}: ratio rose from {:.6e} to {:.6e} under a larger exponent",
            a.sigma,
            a.seed,
            a.ratio,
            b.ratio
        );
    }
}

#[test]
fn block_exponents_are_stable_under_grid_refinement() {
    let sigmas = logspace(1e-3, 1e-1, 6);
    let coarse = BlockConfig {
        grid: RadialGrid::new(1e-4, 1e4, 2048).unwrap(),
        sigmas: sigmas.clone(),
        opts: Rk45Options::default(),
    };
    let fine = BlockConfig {
        grid: RadialGrid::new(1e-4, 1e4, 4096).unwrap(),
        sigmas,
        opts: Rk45Options::default(),
    };
    let a = block_structure(&coarse).unwrap();
    let b = block_structure(&fine).unwrap();
    assert!(
        (a.growth_exponent_s - b.growth_exponent_s).abs() <= 0.05,
        "s-wave exponent moved from {:.4} to {:.4} under refinement",
        a.growth_exponent_s,
        b.growth_exponent_s
    );
    assert!(
        (a.growth_exponent_p - b.growth_exponent_p).abs() <= 0.05,
        "p-wave exponent moved from {:.4} to {:.4} under refinement",
        a.growth_exponent_p,
        b.growth_exponent_p
    );
    assert!(b.non_degenerate);
    assert!(b.singular_coeff_rel_err < 0.1);
}
