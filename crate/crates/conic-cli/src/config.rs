//! Run configuration: a single TOML artifact per run, with dotted-path
//! flag overrides, validated on load and embedded verbatim in every
//! report.

use anyhow::{anyhow, bail, Context, Result};
use conic_resolvent::geometry::{PotentialSpec, RadialGrid};
use conic_resolvent::mellin::WeightOrderSpec;
use conic_resolvent::numerics::logspace;
use conic_resolvent::positivity::{choose_parameters, PositivityParams, ThetaGrid};
use conic_resolvent::Sign;
use serde::Deserialize;
use std::path::Path;

use crate::json::{obj, Json};

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometryCfg,
    pub potential: PotentialCfg,
    pub weight: WeightCfg,
    pub positivity: PositivityCfg,
    pub sweep: SweepCfg,
    pub resonance: ResonanceCfg,
    pub euclid: EuclidCfg,
    pub block: BlockCfg,
    pub output: OutputCfg,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryCfg {
    /// Ambient dimension `n >= 3`.
    pub n: u32,
    /// Modes `j = 0 ..= j_max` enter mode-sum computations.
    pub j_max: u32,
    pub grid: GridCfg,
}

impl Default for GeometryCfg {
    fn default() -> Self {
        GeometryCfg {
            n: 3,
            j_max: 8,
            grid: GridCfg::default(),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct GridCfg {
    pub r_min: Option<f64>,
    /// Defaults to 1e4, except for the randomized sweeps where the
    /// default stops at 1e3 so the fastest outgoing phase stays well
    /// below the Nyquist rate of the log grid.
    pub r_max: Option<f64>,
    pub points: Option<usize>,
}

impl GridCfg {
    pub fn resolve(&self, default_r_max: f64) -> Result<RadialGrid> {
        let grid = RadialGrid::new(
            self.r_min.unwrap_or(1e-4),
            self.r_max.unwrap_or(default_r_max),
            self.points.unwrap_or(4096),
        )?;
        Ok(grid)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PotentialCfg {
    /// One of `zero`, `square-well`, `inverse-poly`.
    pub kind: String,
    /// Square well: `V = -depth` on `r < radius`.
    pub depth: f64,
    pub radius: f64,
    /// Inverse-polynomial: `V = coupling / (1 + r^2)^(decay/2)`.
    pub coupling: f64,
    pub decay: f64,
}

impl Default for PotentialCfg {
    fn default() -> Self {
        PotentialCfg {
            kind: "zero".into(),
            depth: 1.0,
            radius: 1.0,
            coupling: 1.0,
            decay: 3.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeightCfg {
    /// Spatial weight exponent; admissible iff `|l + 1| < (n - 2)/2`.
    pub l: f64,
    /// Order swing `beta > 0`.
    pub beta: f64,
    /// Resolvent branch: `+` (outgoing) or `-` (incoming).
    pub sign: String,
}

impl Default for WeightCfg {
    fn default() -> Self {
        WeightCfg {
            l: -1.0,
            beta: 1.0,
            sign: "+".into(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PositivityCfg {
    /// Choose multiplier parameters automatically from the weight family;
    /// explicit fields below override individual choices.
    pub auto: bool,
    pub tilde_beta: Option<f64>,
    pub reg_low: Option<f64>,
    pub reg_mid: Option<f64>,
    pub reg_high: Option<f64>,
    /// Verification grid: log-scaled axes from `rho_min` to `r_tail`.
    pub rho_min: f64,
    pub points_per_axis: usize,
    pub r_tail: f64,
}

impl Default for PositivityCfg {
    fn default() -> Self {
        PositivityCfg {
            auto: true,
            tilde_beta: None,
            reg_low: None,
            reg_mid: None,
            reg_high: None,
            rho_min: 1e-2,
            points_per_axis: 400,
            r_tail: 1e3,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepCfg {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub points: usize,
    pub seeds: u32,
    pub seed0: u64,
}

impl Default for SweepCfg {
    fn default() -> Self {
        SweepCfg {
            sigma_min: 1e-3,
            sigma_max: 1e-1,
            points: 12,
            seeds: 5,
            seed0: 17,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResonanceCfg {
    /// Spherical mode of the zero-energy threshold search.
    pub j: u32,
    pub bracket: [f64; 2],
}

impl Default for ResonanceCfg {
    fn default() -> Self {
        ResonanceCfg {
            j: 0,
            bracket: [0.2, 8.0],
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EuclidCfg {
    pub epsilon: f64,
}

impl Default for EuclidCfg {
    fn default() -> Self {
        EuclidCfg { epsilon: 1e-4 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BlockCfg {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub points: usize,
}

impl Default for BlockCfg {
    fn default() -> Self {
        BlockCfg {
            sigma_min: 1e-3,
            sigma_max: 1e-1,
            points: 16,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputCfg {
    pub directory: String,
    /// Report formats: `json` is always written; `csv` adds per-point
    /// tables for the tabular commands.
    pub formats: Vec<String>,
}

impl Default for OutputCfg {
    fn default() -> Self {
        OutputCfg {
            directory: "runs".into(),
            formats: vec!["json".into(), "csv".into()],
        }
    }
}

impl RunConfig {
    /// Load from an optional TOML file, then apply `key.path=value`
    /// overrides, then validate.
    pub fn load(path: Option<&Path>, sets: &[String]) -> Result<RunConfig> {
        let mut root: toml::Value = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                text.parse::<toml::Value>()
                    .with_context(|| format!("parsing config {}", p.display()))?
            }
            None => toml::Value::Table(toml::map::Map::new()),
        };
        for set in sets {
            apply_override(&mut root, set)?;
        }
        let cfg = RunConfig::deserialize(root).context("interpreting configuration")?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if !(self.sweep.sigma_min > 0.0 && self.sweep.sigma_max > self.sweep.sigma_min) {
            bail!(
                "sweep frequencies need 0 < sigma_min < sigma_max, got [{}, {}]",
                self.sweep.sigma_min,
                self.sweep.sigma_max
            );
        }
        if self.sweep.points < 2 {
            bail!("sweep needs at least 2 frequency points");
        }
        if self.sweep.seeds == 0 {
            bail!("sweep needs at least 1 seed");
        }
        if !(self.block.sigma_min > 0.0 && self.block.sigma_max > self.block.sigma_min) {
            bail!(
                "block frequencies need 0 < sigma_min < sigma_max, got [{}, {}]",
                self.block.sigma_min,
                self.block.sigma_max
            );
        }
        if self.block.points < 2 {
            bail!("block study needs at least 2 frequency points");
        }
        if !(self.resonance.bracket[0] < self.resonance.bracket[1]) {
            bail!(
                "resonance bracket must be increasing, got [{}, {}]",
                self.resonance.bracket[0],
                self.resonance.bracket[1]
            );
        }
        for fmt in &self.output.formats {
            if fmt != "json" && fmt != "csv" {
                bail!("unknown output format {fmt:?} (expected json or csv)");
            }
        }
        self.potential_spec()?.validate()?;
        self.sign()?;
        Ok(())
    }

    pub fn sign(&self) -> Result<Sign> {
        match self.weight.sign.as_str() {
            "+" | "plus" | "outgoing" => Ok(Sign::Plus),
            "-" | "minus" | "incoming" => Ok(Sign::Minus),
            other => Err(anyhow!("unknown sign {other:?} (expected + or -)")),
        }
    }

    pub fn potential_spec(&self) -> Result<PotentialSpec> {
        let p = &self.potential;
        match p.kind.as_str() {
            "zero" => Ok(PotentialSpec::Zero),
            "square-well" => Ok(PotentialSpec::SquareWell {
                depth: p.depth,
                radius: p.radius,
            }),
            "inverse-poly" => Ok(PotentialSpec::InversePoly {
                coupling: p.coupling,
                decay: p.decay,
            }),
            other => Err(anyhow!(
                "unknown potential kind {other:?} (expected zero, square-well, or inverse-poly)"
            )),
        }
    }

    pub fn weight_spec(&self) -> Result<WeightOrderSpec> {
        let w = WeightOrderSpec {
            n: self.geometry.n,
            l: self.weight.l,
            beta: self.weight.beta,
            sign: self.sign()?,
        };
        w.validate()?;
        Ok(w)
    }

    /// Multiplier parameters: automatic choice from the weight family,
    /// with explicit config fields overriding individual entries.
    pub fn positivity_params(&self) -> Result<PositivityParams> {
        let sign = self.sign()?;
        let mut params = if self.positivity.auto {
            choose_parameters(self.geometry.n, self.weight.l, self.weight.beta, sign)?
        } else {
            PositivityParams {
                n: self.geometry.n,
                l: self.weight.l,
                beta: self.weight.beta,
                sign,
                tilde_beta: self
                    .positivity
                    .tilde_beta
                    .ok_or_else(|| anyhow!("positivity.auto = false requires tilde_beta"))?,
                reg_low: self
                    .positivity
                    .reg_low
                    .ok_or_else(|| anyhow!("positivity.auto = false requires reg_low"))?,
                reg_mid: self
                    .positivity
                    .reg_mid
                    .ok_or_else(|| anyhow!("positivity.auto = false requires reg_mid"))?,
                reg_high: self
                    .positivity
                    .reg_high
                    .ok_or_else(|| anyhow!("positivity.auto = false requires reg_high"))?,
            }
        };
        if let Some(v) = self.positivity.tilde_beta {
            params.tilde_beta = v;
        }
        if let Some(v) = self.positivity.reg_low {
            params.reg_low = v;
        }
        if let Some(v) = self.positivity.reg_mid {
            params.reg_mid = v;
        }
        if let Some(v) = self.positivity.reg_high {
            params.reg_high = v;
        }
        params.validate()?;
        Ok(params)
    }

    pub fn theta_grid(&self) -> ThetaGrid {
        ThetaGrid {
            rho_min: self.positivity.rho_min,
            points_per_axis: self.positivity.points_per_axis,
        }
    }

    pub fn sweep_sigmas(&self) -> Vec<f64> {
        logspace(self.sweep.sigma_min, self.sweep.sigma_max, self.sweep.points)
    }

    pub fn block_sigmas(&self) -> Vec<f64> {
        logspace(self.block.sigma_min, self.block.sigma_max, self.block.points)
    }

    /// The resolved configuration as embedded in every report. Grids are
    /// reported with the per-command default already applied.
    pub fn as_json(&self, sweep_grid: bool) -> Json {
        let default_r_max = if sweep_grid { 1e3 } else { 1e4 };
        obj([
            (
                "geometry",
                obj([
                    ("n", Json::Int(i64::from(self.geometry.n))),
                    ("j_max", Json::Int(i64::from(self.geometry.j_max))),
                    (
                        "grid",
                        obj([
                            ("r_min", Json::Num(self.geometry.grid.r_min.unwrap_or(1e-4))),
                            (
                                "r_max",
                                Json::Num(self.geometry.grid.r_max.unwrap_or(default_r_max)),
                            ),
                            (
                                "points",
                                Json::Int(self.geometry.grid.points.unwrap_or(4096) as i64),
                            ),
                        ]),
                    ),
                ]),
            ),
            (
                "potential",
                obj([
                    ("kind", Json::str(&self.potential.kind)),
                    ("depth", Json::Num(self.potential.depth)),
                    ("radius", Json::Num(self.potential.radius)),
                    ("coupling", Json::Num(self.potential.coupling)),
                    ("decay", Json::Num(self.potential.decay)),
                ]),
            ),
            (
                "weight",
                obj([
                    ("l", Json::Num(self.weight.l)),
                    ("beta", Json::Num(self.weight.beta)),
                    ("sign", Json::str(&self.weight.sign)),
                ]),
            ),
            (
                "positivity",
                obj([
                    ("auto", Json::Bool(self.positivity.auto)),
                    ("tilde_beta", opt_num(self.positivity.tilde_beta)),
                    ("reg_low", opt_num(self.positivity.reg_low)),
                    ("reg_mid", opt_num(self.positivity.reg_mid)),
                    ("reg_high", opt_num(self.positivity.reg_high)),
                    ("rho_min", Json::Num(self.positivity.rho_min)),
                    (
                        "points_per_axis",
                        Json::Int(self.positivity.points_per_axis as i64),
                    ),
                    ("r_tail", Json::Num(self.positivity.r_tail)),
                ]),
            ),
            (
                "sweep",
                obj([
                    ("sigma_min", Json::Num(self.sweep.sigma_min)),
                    ("sigma_max", Json::Num(self.sweep.sigma_max)),
                    ("points", Json::Int(self.sweep.points as i64)),
                    ("seeds", Json::Int(i64::from(self.sweep.seeds))),
                    ("seed0", Json::Int(self.sweep.seed0 as i64)),
                ]),
            ),
            (
                "resonance",
                obj([
                    ("j", Json::Int(i64::from(self.resonance.j))),
                    (
                        "bracket",
                        Json::Arr(vec![
                            Json::Num(self.resonance.bracket[0]),
                            Json::Num(self.resonance.bracket[1]),
                        ]),
                    ),
                ]),
            ),
            ("euclid", obj([("epsilon", Json::Num(self.euclid.epsilon))])),
            (
                "block",
                obj([
                    ("sigma_min", Json::Num(self.block.sigma_min)),
                    ("sigma_max", Json::Num(self.block.sigma_max)),
                    ("points", Json::Int(self.block.points as i64)),
                ]),
            ),
            (
                "output",
                obj([
                    ("directory", Json::str(&self.output.directory)),
                    (
                        "formats",
                        Json::Arr(self.output.formats.iter().map(Json::str).collect()),
                    ),
                ]),
            ),
        ])
    }
}

fn opt_num(v: Option<f64>) -> Json {
    match v {
        Some(x) => Json::Num(x),
        None => Json::Null,
    }
}

/// Apply one `section.key=value` override onto the raw TOML tree.
fn apply_override(root: &mut toml::Value, set: &str) -> Result<()> {
    let (path, raw) = set
        .split_once('=')
        .ok_or_else(|| anyhow!("override {set:?} is not of the form key.path=value"))?;
    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        bail!("override path {path:?} has an empty segment");
    }
    let mut node = root;
    for key in &keys[..keys.len() - 1] {
        let table = node
            .as_table_mut()
            .ok_or_else(|| anyhow!("override path {path:?} descends into a non-table"))?;
        node = table
            .entry(key.to_string())
            .or_insert_with(|| toml::Value::Table(toml::map::Map::new()));
    }
    let table = node
        .as_table_mut()
        .ok_or_else(|| anyhow!("override path {path:?} descends into a non-table"))?;
    table.insert(keys[keys.len() - 1].to_string(), parse_scalar(raw));
    Ok(())
}

/// Interpret an override value like TOML would: bool, integer, float,
/// array of scalars, then string.
fn parse_scalar(raw: &str) -> toml::Value {
    let trimmed = raw.trim();
    if trimmed == "true" {
        return toml::Value::Boolean(true);
    }
    if trimmed == "false" {
        return toml::Value::Boolean(false);
    }
    if let Ok(i) = trimmed.parse::<i64>() {
        return toml::Value::Integer(i);
    }
    if let Ok(x) = trimmed.parse::<f64>() {
        return toml::Value::Float(x);
    }
    if let Some(body) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let items: Vec<toml::Value> = body
            .split(',')
            .map(|item| parse_scalar(item))
            .collect();
        return toml::Value::Array(items);
    }
    toml::Value::String(trimmed.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_convert() {
        let cfg = RunConfig::load(None, &[]).unwrap();
        assert_eq!(cfg.geometry.n, 3);
        assert_eq!(cfg.geometry.j_max, 8);
        assert_eq!(cfg.potential_spec().unwrap(), PotentialSpec::Zero);
        assert_eq!(cfg.sign().unwrap(), Sign::Plus);
        assert_eq!(cfg.sweep_sigmas().len(), 12);
        let w = cfg.weight_spec().unwrap();
        assert_eq!(w.l, -1.0);
        let params = cfg.positivity_params().unwrap();
        params.validate().unwrap();
    }

    #[test]
    fn overrides_reach_nested_keys() {
        let sets = vec![
            "weight.beta=2.5".to_string(),
            "geometry.grid.points=1024".to_string(),
            "potential.kind=square-well".to_string(),
            "resonance.bracket=[5.0, 20.0]".to_string(),
            "positivity.auto=false".to_string(),
        ];
        let cfg = RunConfig::load(None, &sets).unwrap();
        assert_eq!(cfg.weight.beta, 2.5);
        assert_eq!(cfg.geometry.grid.points, Some(1024));
        assert_eq!(cfg.resonance.bracket, [5.0, 20.0]);
        assert!(!cfg.positivity.auto);
        assert!(matches!(
            cfg.potential_spec().unwrap(),
            PotentialSpec::SquareWell { .. }
        ));
        // auto = false without explicit parameters is a config error
        assert!(cfg.positivity_params().is_err());
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        assert!(RunConfig::load(None, &["weight.swing=1.0".into()]).is_err());
        assert!(RunConfig::load(None, &["sweep.points=1".into()]).is_err());
        assert!(RunConfig::load(None, &["weight.sign=up".into()]).is_err());
        assert!(RunConfig::load(None, &["output.formats=[xml]".into()]).is_err());
        assert!(RunConfig::load(None, &["nonsense".into()]).is_err());
    }
}
