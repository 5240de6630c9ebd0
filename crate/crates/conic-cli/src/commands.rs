//! Command implementations.
//!
//! Each runner consumes the loaded [`RunConfig`], performs one study, and
//! returns a [`CommandOutput`]: machine-readable results, a `pass` flag,
//! human diagnostics, optional CSV, and a short stdout summary.
//!
//! `pass` certifies the *numerical integrity* of the run (certificates
//! hold, Wronskian drift small, no truncation warnings) — scientific
//! quantities such as norm-ratio variation are reported in `results` and
//! judged by the caller.

use anyhow::{Context, Result};
use num_complex::Complex64;
use std::time::Instant;

use conic_resolvent::experiments::{
    block_structure, constant_weight_sweep, euclid_integral, uniform_sweep, BlockConfig,
    BlockReport, SweepConfig, SweepReport,
};
use conic_resolvent::geometry::{ModeSpec, PotentialSpec, RadialGrid};
use conic_resolvent::mellin::{
    b_norm, flow_derivative, mellin_transform, order_value, threshold_check, ModeFunction,
    WeightOrderSpec,
};
use conic_resolvent::numerics::logspace;
use conic_resolvent::positivity::{
    choose_parameters, commutator_multiplier, verify_positivity, PositivityParams,
    PositivityReport, ThetaGrid,
};
use conic_resolvent::radial::{
    connection_coefficients, find_critical_coupling, green_pair, Rk45Options,
};
use conic_resolvent::specfun::bessel_jy;
use conic_resolvent::Sign;

use crate::config::RunConfig;
use crate::json::{obj, Json};
use crate::report::csv_num;

/// Wronskian-drift budget for a run to count as numerically certified.
pub const DRIFT_BUDGET: f64 = 1e-7;

pub struct CommandOutput {
    pub results: Json,
    pub pass: bool,
    pub diagnostics: Vec<String>,
    pub csv: Option<String>,
    /// Short human summary printed to stdout.
    pub summary: Vec<String>,
}

fn params_json(p: &PositivityParams) -> Json {
    obj([
        ("n", Json::Int(i64::from(p.n))),
        ("l", Json::Num(p.l)),
        ("beta", Json::Num(p.beta)),
        ("sign", Json::str(&p.sign.to_string())),
        ("tilde_beta", Json::Num(p.tilde_beta)),
        ("reg_low", Json::Num(p.reg_low)),
        ("reg_mid", Json::Num(p.reg_mid)),
        ("reg_high", Json::Num(p.reg_high)),
    ])
}

fn theta_report_json(r: &PositivityReport) -> Json {
    obj([
        ("min_theta", Json::Num(r.min_theta)),
        ("max_theta", Json::Num(r.max_theta)),
        (
            "argmin",
            Json::Arr(vec![Json::Num(r.argmin.0), Json::Num(r.argmin.1)]),
        ),
        (
            "argmax",
            Json::Arr(vec![Json::Num(r.argmax.0), Json::Num(r.argmax.1)]),
        ),
        ("tail_constant", Json::Num(r.tail_constant)),
        ("tail_ok", Json::Bool(r.tail_ok)),
        ("interior_ok", Json::Bool(r.interior_ok)),
        ("pass", Json::Bool(r.pass)),
    ])
}

/// Scan outcome of the commutator multiplier over the verification
/// lattice.
pub struct CommutatorScan {
    pub points: usize,
    /// Worst branch-adjusted value `sign * Q` (negative everywhere iff
    /// the sign condition holds on the lattice).
    pub worst: f64,
    pub arg_worst: (f64, f64),
    pub ok: bool,
}

/// Evaluate `sign * commutator_multiplier` on the same `(tau, nu)`
/// lattice as the positivity verification and require it negative
/// everywhere.
pub fn commutator_scan(
    p: &PositivityParams,
    grid: &ThetaGrid,
    r_tail: f64,
) -> Result<CommutatorScan> {
    let half = grid.points_per_axis / 2;
    let pos = logspace(grid.rho_min, r_tail, half);
    let mut taus: Vec<f64> = pos.iter().rev().map(|t| -t).collect();
    taus.push(0.0);
    taus.extend(pos.iter().cloned());
    let mut nus: Vec<f64> = vec![0.0];
    nus.extend(logspace(grid.rho_min, r_tail, grid.points_per_axis - 1));

    let s = p.sign.factor();
    let mut worst = f64::NEG_INFINITY;
    let mut arg_worst = (0.0, 0.0);
    let mut points = 0usize;
    for &tau in &taus {
        for &nu in &nus {
            let q = commutator_multiplier(tau, nu * nu, p)?;
            let signed = s * q;
            if signed > worst {
                worst = signed;
                arg_worst = (tau, nu);
            }
            points += 1;
        }
    }
    Ok(CommutatorScan {
        points,
        worst,
        arg_worst,
        ok: worst < 0.0,
    })
}

pub fn run_positivity_check(cfg: &RunConfig) -> Result<CommandOutput> {
    let params = cfg.positivity_params()?;
    let grid = cfg.theta_grid();
    let report = verify_positivity(&params, &grid, cfg.positivity.r_tail)
        .context("positivity verification")?;
    let scan = commutator_scan(&params, &grid, cfg.positivity.r_tail)
        .context("commutator sign scan")?;

    let pass = report.pass && scan.ok;
    let mut diagnostics = Vec::new();
    if !report.interior_ok {
        diagnostics.push(format!(
            "multiplier argument leaves the branch window: range [{:.6e}, {:.6e}]",
            report.min_theta, report.max_theta
        ));
    }
    if !report.tail_ok {
        diagnostics.push(format!(
            "tail certificate failed at r_tail = {:.3e} (remainder constant {:.3e})",
            report.r_tail, report.tail_constant
        ));
    }
    if !scan.ok {
        diagnostics.push(format!(
            "commutator multiplier has the wrong sign at (tau, nu) = ({:.6e}, {:.6e})",
            scan.arg_worst.0, scan.arg_worst.1
        ));
    }

    let results = obj([
        ("auto", Json::Bool(cfg.positivity.auto)),
        ("params", params_json(&params)),
        (
            "grid",
            obj([
                ("rho_min", Json::Num(report.rho_min)),
                ("points_per_axis", Json::Int(report.points_per_axis as i64)),
                ("r_tail", Json::Num(report.r_tail)),
            ]),
        ),
        ("theta", theta_report_json(&report)),
        (
            "commutator",
            obj([
                ("points", Json::Int(scan.points as i64)),
                ("worst_signed", Json::Num(scan.worst)),
                (
                    "arg_worst",
                    Json::Arr(vec![
                        Json::Num(scan.arg_worst.0),
                        Json::Num(scan.arg_worst.1),
                    ]),
                ),
                ("sign_ok", Json::Bool(scan.ok)),
            ]),
        ),
    ]);

    let window = match params.sign {
        Sign::Plus => "(0, pi)",
        Sign::Minus => "(-pi, 0)",
    };
    let summary = vec![
        format!(
            "multiplier argument range [{:.6}, {:.6}] on the {}^2-point lattice (window {window})",
            report.min_theta, report.max_theta, report.points_per_axis
        ),
        format!(
            "tail certificate: {}, commutator sign condition: {} (worst {:.3e})",
            if report.tail_ok { "ok" } else { "FAILED" },
            if scan.ok { "ok" } else { "VIOLATED" },
            scan.worst
        ),
    ];

    Ok(CommandOutput {
        results,
        pass,
        diagnostics,
        csv: None,
        summary,
    })
}

pub fn run_choose_params(cfg: &RunConfig) -> Result<CommandOutput> {
    let sign = cfg.sign()?;
    let params = choose_parameters(cfg.geometry.n, cfg.weight.l, cfg.weight.beta, sign)
        .context("parameter search")?;
    let report = verify_positivity(&params, &cfg.theta_grid(), cfg.positivity.r_tail)
        .context("certifying the chosen parameters")?;

    let mut diagnostics = Vec::new();
    if !report.pass {
        diagnostics.push(
            "the automatically chosen parameters did not certify on the configured grid".into(),
        );
    }

    let results = obj([
        ("params", params_json(&params)),
        ("theta", theta_report_json(&report)),
    ]);
    let summary = vec![
        format!(
            "chosen: tilde_beta = {:.6}, regulators ({:.3}, {:.3}, {:.3})",
            params.tilde_beta, params.reg_low, params.reg_mid, params.reg_high
        ),
        format!(
            "certificate on the configured grid: argument range [{:.6}, {:.6}]",
            report.min_theta, report.max_theta
        ),
    ];
    Ok(CommandOutput {
        results,
        pass: report.pass,
        diagnostics,
        csv: None,
        summary,
    })
}

fn sweep_config(cfg: &RunConfig) -> Result<SweepConfig> {
    Ok(SweepConfig {
        dim: cfg.geometry.n,
        j_max: cfg.geometry.j_max,
        l: cfg.weight.l,
        beta: cfg.weight.beta,
        sign: cfg.sign()?,
        potential: cfg.potential_spec()?,
        grid: cfg.geometry.grid.resolve(1e3)?,
        sigmas: cfg.sweep_sigmas(),
        n_seeds: cfg.sweep.seeds,
        seed0: cfg.sweep.seed0,
        opts: Rk45Options::default(),
    })
}

fn sweep_results_json(report: &SweepReport) -> Json {
    let points: Vec<Json> = report
        .points
        .iter()
        .map(|p| {
            obj([
                ("sigma", Json::Num(p.sigma)),
                ("seed", Json::Int(p.seed as i64)),
                ("source_norm", Json::Num(p.source_norm)),
                ("target_norm", Json::Num(p.target_norm)),
                ("ratio", Json::Num(p.ratio)),
            ])
        })
        .collect();
    obj([
        ("ratio_min", Json::Num(report.ratio_min)),
        ("ratio_max", Json::Num(report.ratio_max)),
        (
            "envelope_sigmas",
            Json::Arr(
                report
                    .envelope_sigmas
                    .iter()
                    .map(|&s| Json::Num(s))
                    .collect(),
            ),
        ),
        (
            "envelope",
            Json::Arr(report.envelope.iter().map(|&s| Json::Num(s)).collect()),
        ),
        ("variation", Json::Num(report.variation)),
        ("slope", Json::Num(report.slope)),
        (
            "slope_window",
            Json::Arr(report.slope_window.iter().map(|&s| Json::Num(s)).collect()),
        ),
        ("max_drift", Json::Num(report.max_drift)),
        ("points", Json::Arr(points)),
    ])
}

fn sweep_csv(report: &SweepReport) -> String {
    let mut out = String::from("sigma,seed,source_norm,target_norm,ratio\n");
    for p in &report.points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_num(p.sigma),
            p.seed,
            csv_num(p.source_norm),
            csv_num(p.target_norm),
            csv_num(p.ratio)
        ));
    }
    out
}

fn sweep_output(report: &SweepReport, ratio_label: &str) -> CommandOutput {
    // Truncation warnings are advisory (they bound tails far below the
    // factor-level statistics of interest); integrity is gated on the
    // Wronskian drift alone.
    let drift_ok = report.max_drift < DRIFT_BUDGET;
    let mut diagnostics: Vec<String> = report.warnings.clone();
    if !drift_ok {
        diagnostics.push(format!(
            "worst Wronskian drift {:.3e} exceeds the integrity budget {DRIFT_BUDGET:.0e}",
            report.max_drift
        ));
    }
    let summary = vec![
        format!(
            "{} envelope variation {:.4} across {} frequencies (per-point ratio range [{:.6e}, {:.6e}])",
            ratio_label,
            report.variation,
            report.envelope.len(),
            report.ratio_min,
            report.ratio_max
        ),
        format!(
            "low-frequency log-log slope {:.4} over {} frequencies; worst drift {:.3e}; {} warnings",
            report.slope,
            report.slope_window.len(),
            report.max_drift,
            report.warnings.len()
        ),
    ];
    CommandOutput {
        results: sweep_results_json(report),
        pass: drift_ok,
        diagnostics,
        csv: Some(sweep_csv(report)),
        summary,
    }
}

pub fn run_resolvent_sweep(cfg: &RunConfig) -> Result<CommandOutput> {
    let scfg = sweep_config(cfg)?;
    let report = uniform_sweep(&scfg).context("resolvent sweep")?;
    Ok(sweep_output(&report, "variable-order"))
}

pub fn run_constant_weight_sweep(cfg: &RunConfig) -> Result<CommandOutput> {
    let scfg = sweep_config(cfg)?;
    let report = constant_weight_sweep(&scfg).context("constant-weight sweep")?;
    Ok(sweep_output(&report, "constant-weight"))
}

pub fn run_resonance_find(cfg: &RunConfig) -> Result<CommandOutput> {
    let grid = cfg.geometry.grid.resolve(1e4)?;
    let mode = ModeSpec::new(cfg.geometry.n, cfg.resonance.j)?;
    let family = cfg.potential_spec()?;
    let bracket = (cfg.resonance.bracket[0], cfg.resonance.bracket[1]);
    let opts = Rk45Options::default();
    let g_star = find_critical_coupling(&mode, &family, bracket, &grid, &opts)
        .context("critical-coupling search")?;
    let conn = connection_coefficients(&mode, &family.with_coupling(g_star), &grid, &opts)
        .context("connection coefficients at the critical coupling")?;
    let scale = conn.a.norm().max(conn.b.norm()).max(f64::MIN_POSITIVE);
    let residual = conn.a.re.abs() / scale;
    let pass = residual < 1e-6;

    let mut diagnostics = Vec::new();
    if !pass {
        diagnostics.push(format!(
            "growing-component residual {residual:.3e} at the reported coupling exceeds 1e-6"
        ));
    }
    let results = obj([
        ("j", Json::Int(i64::from(cfg.resonance.j))),
        (
            "bracket",
            Json::Arr(vec![Json::Num(bracket.0), Json::Num(bracket.1)]),
        ),
        ("g_star", Json::Num(g_star)),
        (
            "connection",
            obj([
                ("a", Json::complex(conn.a)),
                ("b", Json::complex(conn.b)),
                ("r_fit", Json::Num(conn.r_fit)),
            ]),
        ),
        ("residual", Json::Num(residual)),
    ]);
    let summary = vec![
        format!(
            "critical coupling g* = {g_star:.10} for mode j = {} (bracket [{}, {}])",
            cfg.resonance.j, bracket.0, bracket.1
        ),
        format!("growing-component residual {residual:.3e}"),
    ];
    Ok(CommandOutput {
        results,
        pass,
        diagnostics,
        csv: None,
        summary,
    })
}

fn block_results_json(r: &BlockReport) -> Json {
    let c = &r.curves;
    let curve =
        |vals: &[f64]| -> Json { Json::Arr(vals.iter().map(|&v| Json::Num(v)).collect()) };
    let ccurve =
        |vals: &[Complex64]| -> Json { Json::Arr(vals.iter().map(|&z| Json::complex(z)).collect()) };
    obj([
        ("g_star_s", Json::Num(r.g_star_s)),
        ("g_star_p", Json::Num(r.g_star_p)),
        ("singular_coeff", Json::complex(r.singular_coeff)),
        ("singular_coeff_target", Json::complex(r.singular_coeff_target)),
        ("singular_coeff_rel_err", Json::Num(r.singular_coeff_rel_err)),
        ("p_wave_l2_defect", Json::Num(r.p_wave_l2_defect)),
        ("growth_exponent_s", Json::Num(r.growth_exponent_s)),
        ("growth_exponent_p", Json::Num(r.growth_exponent_p)),
        ("regular_variation", Json::Num(r.regular_variation)),
        ("identity_defect", Json::Num(r.identity_defect)),
        ("non_degenerate", Json::Bool(r.non_degenerate)),
        ("resonance_tail_defect", Json::Num(r.resonance_tail_defect)),
        ("reconstruction_defect", Json::Num(r.reconstruction_defect)),
        ("max_drift", Json::Num(r.max_drift)),
        (
            "curves",
            obj([
                ("sigmas", curve(&c.sigmas)),
                ("pairing_s", ccurve(&c.pairing_s)),
                ("pairing_p", ccurve(&c.pairing_p)),
                ("growth_s", curve(&c.growth_s)),
                ("growth_p", curve(&c.growth_p)),
                ("regular_norm", curve(&c.regular_norm)),
            ]),
        ),
    ])
}

fn block_csv(r: &BlockReport) -> String {
    let c = &r.curves;
    let mut out = String::from(
        "sigma,pairing_s_re,pairing_s_im,pairing_p_re,pairing_p_im,growth_s,growth_p,regular_norm\n",
    );
    for k in 0..c.sigmas.len() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_num(c.sigmas[k]),
            csv_num(c.pairing_s[k].re),
            csv_num(c.pairing_s[k].im),
            csv_num(c.pairing_p[k].re),
            csv_num(c.pairing_p[k].im),
            csv_num(c.growth_s[k]),
            csv_num(c.growth_p[k]),
            csv_num(c.regular_norm[k])
        ));
    }
    out
}

pub fn run_block_structure(cfg: &RunConfig) -> Result<CommandOutput> {
    let bcfg = BlockConfig {
        grid: cfg.geometry.grid.resolve(1e4)?,
        sigmas: cfg.block_sigmas(),
        opts: Rk45Options::default(),
    };
    let report = block_structure(&bcfg).context("threshold block study")?;

    let drift_ok = report.max_drift < DRIFT_BUDGET;
    let identity_ok = report.identity_defect < 1e-4;
    let pass = report.non_degenerate && drift_ok && identity_ok;
    let mut diagnostics: Vec<String> = report.warnings.clone();
    if !report.non_degenerate {
        diagnostics.push("a repaired operator lost its growing zero-energy branch".into());
    }
    if !drift_ok {
        diagnostics.push(format!(
            "worst Wronskian drift {:.3e} exceeds the integrity budget {DRIFT_BUDGET:.0e}",
            report.max_drift
        ));
    }
    if !identity_ok {
        diagnostics.push(format!(
            "second-resolvent identity defect {:.3e} exceeds 1e-4",
            report.identity_defect
        ));
    }

    let summary = vec![
        format!(
            "critical couplings: s-wave {:.10}, p-wave {:.10}",
            report.g_star_s, report.g_star_p
        ),
        format!(
            "singular pairing limit {:.8} {:+.8}i (target {:.8} {:+.8}i, rel err {:.3e})",
            report.singular_coeff.re,
            report.singular_coeff.im,
            report.singular_coeff_target.re,
            report.singular_coeff_target.im,
            report.singular_coeff_rel_err
        ),
        format!(
            "growth exponents: s {:.4}, p {:.4}; regular-mode variation {:.4}",
            report.growth_exponent_s, report.growth_exponent_p, report.regular_variation
        ),
    ];
    Ok(CommandOutput {
        results: block_results_json(&report),
        pass,
        diagnostics,
        csv: Some(block_csv(&report)),
        summary,
    })
}

pub fn run_euclid_integral(cfg: &RunConfig) -> Result<CommandOutput> {
    let report = euclid_integral(cfg.sign()?, cfg.euclid.epsilon).context("contour integral")?;
    let pass = report.rel_error < 1e-6;
    let mut diagnostics = Vec::new();
    if !pass {
        diagnostics.push(format!(
            "quadrature deviates from the closed form by {:.3e} (budget 1e-6)",
            report.rel_error
        ));
    }
    let results = obj([
        ("sign", Json::str(&report.sign.to_string())),
        ("epsilon", Json::Num(report.epsilon)),
        ("value", Json::complex(report.value)),
        ("reference", Json::complex(report.reference)),
        ("rel_error", Json::Num(report.rel_error)),
        ("limit", Json::complex(report.limit)),
        ("limit_rel_error", Json::Num(report.limit_rel_error)),
    ]);
    let summary = vec![
        format!(
            "integral = {:.10} {:+.10}i at epsilon = {:.1e}",
            report.value.re, report.value.im, report.epsilon
        ),
        format!(
            "closed-form deviation {:.3e}; distance to the zero-frequency limit {:.3e}",
            report.rel_error, report.limit_rel_error
        ),
    ];
    Ok(CommandOutput {
        results,
        pass,
        diagnostics,
        csv: None,
        summary,
    })
}

// ---------------------------------------------------------------------------
// Green-kernel residual
// ---------------------------------------------------------------------------

/// Residual of the radial equation `(block operator - sigma^2) u = f` on
/// the window `r in [window.0, window.1]`, evaluated with fourth-order
/// finite differences in `t = log r` on the multiplied-through form
/// `-u_tt + (2 - n) u_t + lambda u + r^2 (V - sigma^2) u = r^2 f`.
///
/// Points within three grid steps of a potential discontinuity are
/// skipped (the second derivative jumps there). Returns the sup of the
/// pointwise defect normalized by the largest term magnitude over the
/// window.
pub fn radial_residual(
    grid: &RadialGrid,
    mode: &ModeSpec,
    v: &PotentialSpec,
    sigma: f64,
    u: &[Complex64],
    f: &[Complex64],
    window: (f64, f64),
) -> Result<f64> {
    grid.validate()?;
    if u.len() != grid.n_points || f.len() != grid.n_points {
        anyhow::bail!(
            "residual samples ({} and {}) do not match the {}-point grid",
            u.len(),
            f.len(),
            grid.n_points
        );
    }
    let rs = grid.points();
    let ts = grid.log_points();
    let h = grid.step();
    let n = grid.n_points;
    let jump_ts: Vec<f64> = v.discontinuities().iter().map(|r| r.ln()).collect();
    let lam = mode.lambda;
    let dim = mode.n as f64;

    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    let mut used = 0usize;
    for k in 2..n.saturating_sub(2) {
        let r = rs[k];
        if r < window.0 || r > window.1 {
            continue;
        }
        if jump_ts.iter().any(|&tj| (ts[k] - tj).abs() <= 3.0 * h) {
            continue;
        }
        let du = (-u[k + 2] + 8.0 * u[k + 1] - 8.0 * u[k - 1] + u[k - 2]) / (12.0 * h);
        let ddu = (-u[k + 2] + 16.0 * u[k + 1] - 30.0 * u[k] + 16.0 * u[k - 1] - u[k - 2])
            / (12.0 * h * h);
        let pot = v.value(r);
        let r2 = r * r;
        let res = -ddu + (2.0 - dim) * du + lam * u[k] + r2 * (pot - sigma * sigma) * u[k]
            - r2 * f[k];
        let terms = ddu.norm()
            + (2.0 - dim).abs() * du.norm()
            + lam * u[k].norm()
            + r2 * (pot.abs() + sigma * sigma) * u[k].norm()
            + r2 * f[k].norm();
        worst = worst.max(res.norm());
        scale = scale.max(terms);
        used += 1;
    }
    if used == 0 || scale == 0.0 {
        anyhow::bail!(
            "residual window [{}, {}] contains no usable grid points",
            window.0,
            window.1
        );
    }
    Ok(worst / scale)
}

// ---------------------------------------------------------------------------
// Selftest
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    pass: bool,
    detail: Vec<(&'static str, Json)>,
}

fn run_check(
    name: &'static str,
    f: impl FnOnce() -> Result<(bool, Vec<(&'static str, Json)>)>,
) -> Check {
    match f() {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(err) => Check {
            name,
            pass: false,
            detail: vec![("error", Json::str(&format!("{err:#}")))],
        },
    }
}

fn selftest_euclid() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let plus = euclid_integral(Sign::Plus, 1e-3)?;
    let minus = euclid_integral(Sign::Minus, 1e-3)?;
    let pass = plus.rel_error < 1e-6
        && minus.rel_error < 1e-6
        && plus.limit_rel_error < 1e-2
        && minus.limit_rel_error < 1e-2
        && plus.value.im > 0.0
        && minus.value.im < 0.0;
    Ok((
        pass,
        vec![
            ("rel_error_plus", Json::Num(plus.rel_error)),
            ("rel_error_minus", Json::Num(minus.rel_error)),
            ("limit_rel_error", Json::Num(plus.limit_rel_error)),
        ],
    ))
}

fn selftest_bessel_wronskian() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let orders = [0.0, 0.5, 1.0, 2.5, 7.25, 20.5, 44.0];
    let xs = logspace(1e-6, 1e3, 19);
    let representable = |v: f64| v.is_finite() && v != 0.0 && (1e-280..=1e280).contains(&v.abs());
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for &nu in &orders {
        for &x in &xs {
            let b = match bessel_jy(nu, x) {
                Ok(b) => b,
                Err(_) => continue,
            };
            if ![b.j, b.y, b.jp, b.yp].iter().all(|&v| representable(v)) {
                continue;
            }
            let defect = ((b.j * b.yp - b.jp * b.y) * std::f64::consts::PI * x / 2.0 - 1.0).abs();
            worst = worst.max(defect);
            checked += 1;
        }
    }
    let pass = checked >= 80 && worst < 1e-10;
    Ok((
        pass,
        vec![
            ("checked", Json::Int(checked as i64)),
            ("worst_defect", Json::Num(worst)),
        ],
    ))
}

fn selftest_order_band() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let w = WeightOrderSpec {
        n: 3,
        l: -1.0,
        beta: 1.0,
        sign: Sign::Plus,
    };
    let base = w.base_order();
    let mut ok = threshold_check(&w);
    let mut worst_excess = 0.0f64;
    for &tau in &[-1e3, -1.0, -1e-3, 1e-3, 1.0, 1e3] {
        for &lam in &[0.0, 0.5, 4.0, 1e4] {
            if tau == 0.0 && lam == 0.0 {
                continue;
            }
            let o = order_value(&w, tau, lam)?;
            let excess = (o - base).abs() - w.beta;
            worst_excess = worst_excess.max(excess);
            ok = ok && excess <= 1e-12;
        }
    }
    // the swing is attained at the radial sets
    let hi = order_value(&w, 1.0, 0.0)?;
    let lo = order_value(&w, -1.0, 0.0)?;
    ok = ok && (hi - (base + w.beta)).abs() < 1e-12 && (lo - (base - w.beta)).abs() < 1e-12;
    Ok((
        ok,
        vec![
            ("band_excess", Json::Num(worst_excess)),
            ("sup_order", Json::Num(hi)),
            ("inf_order", Json::Num(lo)),
        ],
    ))
}

/// Order derivative along the rescaled boundary Hamilton flow through
/// `(tau, mu)`: the lift `tau(s) = mu sinh(asinh(tau/mu) + 2s)` with
/// `mu` frozen projects to the cosphere flow, and the order function is
/// homogeneous of degree zero, so differencing along it is a valid
/// independent check.
fn flow_fd_derivative(w: &WeightOrderSpec, tau: f64, mu: f64, delta: f64) -> Result<f64> {
    let u0 = (tau / mu).asinh();
    let lam = mu * mu;
    let diff = |d: f64| -> Result<f64> {
        let op = order_value(w, mu * (u0 + 2.0 * d).sinh(), lam)?;
        let om = order_value(w, mu * (u0 - 2.0 * d).sinh(), lam)?;
        Ok((op - om) / (2.0 * d))
    };
    // three-level Richardson: O(delta^6) truncation
    let d1 = diff(delta)?;
    let d2 = diff(delta / 2.0)?;
    let d3 = diff(delta / 4.0)?;
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

fn selftest_flow_derivative() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let w = WeightOrderSpec {
        n: 4,
        l: -0.7,
        beta: 0.8,
        sign: Sign::Plus,
    };
    let mut worst = 0.0f64;
    for &tau in &[-30.0, -2.0, -0.5, 0.0, 0.1, 0.5, 2.0, 30.0] {
        for &mu in &[0.05, 0.3, 1.0, 3.0, 20.0] {
            let want = flow_fd_derivative(&w, tau, mu, 1e-2)?;
            let got = flow_derivative(&w, tau, mu)?;
            worst = worst.max((got - want).abs());
        }
    }
    Ok((worst < 1e-10, vec![("worst_defect", Json::Num(worst))]))
}

fn demo_bump(grid: &RadialGrid) -> Result<ModeFunction> {
    let mode = ModeSpec::new(3, 0)?;
    ModeFunction::from_fn(mode, grid.clone(), |r| {
        let t = r.ln();
        Complex64::new(1.1, -0.4) * (-0.5 * ((t - 0.8) / 0.6).powi(2)).exp()
    })
    .map_err(Into::into)
}

fn selftest_mellin_parseval() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let grid = RadialGrid::new(1e-4, 1e3, 2048)?;
    let bump = demo_bump(&grid)?;
    let shift = 0.75;
    let spec = mellin_transform(&grid, &bump.values, shift)?;
    let lhs: f64 = spec.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * spec.delta_tau
        / (2.0 * std::f64::consts::PI);
    let h = grid.step();
    let rhs: f64 = bump
        .values
        .iter()
        .zip(grid.points())
        .map(|(v, r)| v.norm_sqr() * r.powf(2.0 * shift))
        .sum::<f64>()
        * h;
    let defect = (lhs - rhs).abs() / rhs;
    let pass = defect < 1e-11 && spec.warnings.is_empty();
    Ok((pass, vec![("parseval_defect", Json::Num(defect))]))
}

fn selftest_b_norm_homogeneity() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let grid = RadialGrid::new(1e-4, 1e3, 2048)?;
    let bump = demo_bump(&grid)?;
    let w = WeightOrderSpec {
        n: 3,
        l: -1.0,
        beta: 1.0,
        sign: Sign::Plus,
    };
    let c = Complex64::new(0.37, -1.2);
    let base = b_norm(&[bump.clone()], &w, 0.0, 0.0)?;
    let scaled = b_norm(&[bump.scaled(c)], &w, 0.0, 0.0)?;
    let defect = (scaled.value - c.norm() * base.value).abs() / base.value.max(f64::MIN_POSITIVE);
    let pass = base.value > 0.0 && defect < 1e-12;
    Ok((
        pass,
        vec![
            ("norm", Json::Num(base.value)),
            ("homogeneity_defect", Json::Num(defect)),
        ],
    ))
}

fn selftest_positivity_certifies() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let params = choose_parameters(3, -1.0, 1.0, Sign::Plus)?;
    let grid = ThetaGrid {
        rho_min: 1e-2,
        points_per_axis: 64,
    };
    let report = verify_positivity(&params, &grid, 1e3)?;
    let scan = commutator_scan(&params, &grid, 1e3)?;
    Ok((
        report.pass && scan.ok,
        vec![
            ("min_theta", Json::Num(report.min_theta)),
            ("max_theta", Json::Num(report.max_theta)),
            ("commutator_worst", Json::Num(scan.worst)),
        ],
    ))
}

fn selftest_positivity_rejects() -> Result<(bool, Vec<(&'static str, Json)>)> {
    // An uncertifiable configuration: enormous order swing with tiny
    // regulators drives the argument far outside the branch window.
    let params = PositivityParams {
        n: 3,
        l: -1.0,
        beta: 50.0,
        sign: Sign::Plus,
        tilde_beta: 0.0,
        reg_low: 1.01,
        reg_mid: 1.01,
        reg_high: 1.01,
    };
    let grid = ThetaGrid {
        rho_min: 1e-2,
        points_per_axis: 32,
    };
    let report = verify_positivity(&params, &grid, 1e3)?;
    Ok((
        !report.pass,
        vec![
            ("min_theta", Json::Num(report.min_theta)),
            ("rejected", Json::Bool(!report.pass)),
        ],
    ))
}

fn selftest_resonance() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let grid = RadialGrid::new(1e-4, 1e4, 2048)?;
    let mode = ModeSpec::new(3, 0)?;
    let family = PotentialSpec::SquareWell {
        depth: 1.0,
        radius: 1.0,
    };
    let opts = Rk45Options::default();
    let g = find_critical_coupling(&mode, &family, (0.2, 8.0), &grid, &opts)?;
    let target = std::f64::consts::PI * std::f64::consts::PI / 4.0;
    let err = (g - target).abs() / target;
    Ok((
        err < 1e-6,
        vec![("g_star", Json::Num(g)), ("rel_error", Json::Num(err))],
    ))
}

fn selftest_green_residual() -> Result<(bool, Vec<(&'static str, Json)>)> {
    let grid = RadialGrid::new(1e-4, 1e3, 2048)?;
    let mode = ModeSpec::new(3, 1)?;
    let v = PotentialSpec::Zero;
    let sigma = 0.05;
    let pair = green_pair(&mode, &v, sigma, Sign::Plus, &grid, &Rk45Options::default())?;
    let f: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|r| {
            let t = r.ln();
            Complex64::new(0.9, 0.3) * (-0.5 * ((t - 0.5) / 0.7).powi(2)).exp()
        })
        .collect();
    let (u, warnings) = pair.apply(&f)?;
    let residual = radial_residual(&grid, &mode, &v, sigma, &u, &f, (0.05, 20.0))?;
    let pass = residual < 1e-5 && pair.drift < 1e-8 && warnings.is_empty();
    Ok((
        pass,
        vec![
            ("residual", Json::Num(residual)),
            ("drift", Json::Num(pair.drift)),
        ],
    ))
}

pub fn run_selftest(_cfg: &RunConfig) -> Result<CommandOutput> {
    let started = Instant::now();
    let checks = vec![
        run_check("euclid-contour", selftest_euclid),
        run_check("bessel-wronskian", selftest_bessel_wronskian),
        run_check("order-band", selftest_order_band),
        run_check("flow-derivative-fd", selftest_flow_derivative),
        run_check("mellin-parseval", selftest_mellin_parseval),
        run_check("b-norm-homogeneity", selftest_b_norm_homogeneity),
        run_check("positivity-certifies", selftest_positivity_certifies),
        run_check("positivity-rejects", selftest_positivity_rejects),
        run_check("resonance-s-wave", selftest_resonance),
        run_check("green-residual", selftest_green_residual),
    ];
    let elapsed = started.elapsed().as_secs_f64();

    let passed = checks.iter().filter(|c| c.pass).count();
    let total = checks.len();
    let pass = passed == total;
    let mut diagnostics = Vec::new();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for c in &checks {
        let mut fields = vec![
            ("name", Json::str(c.name)),
            ("pass", Json::Bool(c.pass)),
        ];
        fields.extend(c.detail.iter().map(|(k, v)| (*k, v.clone())));
        // assemble with dynamic length
        rows.push(Json::Obj(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        ));
        summary.push(format!(
            "{:<22} {}",
            c.name,
            if c.pass { "ok" } else { "FAILED" }
        ));
        if !c.pass {
            diagnostics.push(format!("selftest check {} failed", c.name));
        }
    }
    summary.push(format!("{passed}/{total} checks passed in {elapsed:.2} s"));

    let results = obj([
        ("checks", Json::Arr(rows)),
        ("passed", Json::Int(passed as i64)),
        ("total", Json::Int(total as i64)),
    ]);
    Ok(CommandOutput {
        results,
        pass,
        diagnostics,
        csv: None,
        summary,
    })
}
