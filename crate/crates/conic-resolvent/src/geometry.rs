//! Spherical-mode bookkeeping, radial potentials, and logarithmic grids.
//!
//! The ambient space is an `n`-dimensional cone over the unit sphere; every
//! operator in this crate is block-diagonalized over spherical harmonics.
//! A mode of degree `j` carries the cross-section eigenvalue
//! `lambda = j (j + n - 2)` with multiplicity
//! `C(n+j-1, j) - C(n+j-3, j-2)`, and the effective one-dimensional
//! problem has Bessel order `nu = sqrt(lambda + (n-2)^2/4)`.

use crate::error::{Error, Result};

/// One spherical-harmonic block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    /// Ambient dimension `n >= 3`.
    pub n: u32,
    /// Harmonic degree.
    pub j: u32,
    /// Cross-section Laplacian eigenvalue `j (j + n - 2)`.
    pub lambda: f64,
    /// Multiplicity of the eigenvalue (dimension of the harmonic space).
    pub mult: u64,
    /// Effective Bessel order `sqrt(lambda + (n-2)^2 / 4)`.
    pub nu: f64,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn harmonic_multiplicity(n: u32, j: u32) -> u64 {
    // dim of degree-j spherical harmonics on S^{n-1}:
    // C(n+j-1, j) - C(n+j-3, j-2), second term absent for j < 2.
    let first = binomial((n + j - 1) as u64, j as u64);
    let second = if j >= 2 {
        binomial((n + j - 3) as u64, (j - 2) as u64)
    } else {
        0
    };
    first - second
}

impl ModeSpec {
    pub fn new(n: u32, j: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("ambient dimension must be >= 3, got {n}")));
        }
        let lambda = (j as f64) * (j as f64 + n as f64 - 2.0);
        let half = (n as f64 - 2.0) / 2.0;
        Ok(ModeSpec {
            n,
            j,
            lambda,
            mult: harmonic_multiplicity(n, j),
            nu: (lambda + half * half).sqrt(),
        })
    }

    /// A synthetic block with prescribed eigenvalue and multiplicity
    /// (for operators whose cross-section is not the round sphere).
    pub fn custom(n: u32, lambda: f64, mult: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("ambient dimension must be >= 3, got {n}")));
        }
        if lambda < 0.0 {
            return Err(Error::Config(format!("cross-section eigenvalue must be >= 0, got {lambda}")));
        }
        let half = (n as f64 - 2.0) / 2.0;
        Ok(ModeSpec {
            n,
            j: 0,
            lambda,
            mult,
            nu: (lambda + half * half).sqrt(),
        })
    }
}

/// All spherical blocks of degree `0..=j_max` in dimension `n`.
pub fn sphere_modes(n: u32, j_max: u32) -> Result<Vec<ModeSpec>> {
    (0..=j_max).map(|j| ModeSpec::new(n, j)).collect()
}

/// Short-range radial potentials.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// `V = 0`.
    Zero,
    /// `V(r) = -depth` for `r < radius`, `0` beyond. `depth >= 0` is
    /// attractive; the coupling sweeps of the resonance experiments scale
    /// `depth`.
    SquareWell { depth: f64, radius: f64 },
    /// `V(r) = coupling / (1 + r^2)^(decay/2)`, with `decay > 2` so the
    /// potential is short range.
    InversePoly { coupling: f64, decay: f64 },
    /// Pointwise sum of potentials. The coupling knob of a sum acts on
    /// its first component only.
    Sum(Vec<PotentialSpec>),
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            PotentialSpec::Zero => Ok(()),
            PotentialSpec::SquareWell { depth, radius } => {
                if !radius.is_finite() || *radius <= 0.0 {
                    return Err(Error::Config(format!("square well radius must be > 0, got {radius}")));
                }
                if !depth.is_finite() {
                    return Err(Error::Config("square well depth must be finite".into()));
                }
                Ok(())
            }
            PotentialSpec::InversePoly { coupling, decay } => {
                if !coupling.is_finite() {
                    return Err(Error::Config("coupling must be finite".into()));
                }
                if !(*decay > 2.0) {
                    return Err(Error::Config(format!(
                        "inverse-polynomial decay must exceed 2 (short range), got {decay}"
                    )));
                }
                Ok(())
            }
            PotentialSpec::Sum(parts) => {
                if parts.is_empty() {
                    return Err(Error::Config("potential sum must have at least one term".into()));
                }
                parts.iter().try_for_each(PotentialSpec::validate)
            }
        }
    }

    /// Pointwise value `V(r)`.
    pub fn value(&self, r: f64) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::SquareWell { depth, radius } => {
                if r < *radius {
                    -depth
                } else {
                    0.0
                }
            }
            PotentialSpec::InversePoly { coupling, decay } => {
                coupling / (1.0 + r * r).powf(0.5 * decay)
            }
            PotentialSpec::Sum(parts) => parts.iter().map(|p| p.value(r)).sum(),
        }
    }

    /// The same family with the coupling strength replaced (used by the
    /// critical-coupling search).
    pub fn with_coupling(&self, g: f64) -> PotentialSpec {
        match self {
            PotentialSpec::Zero => PotentialSpec::SquareWell { depth: g, radius: 1.0 },
            PotentialSpec::SquareWell { radius, .. } => PotentialSpec::SquareWell {
                depth: g,
                radius: *radius,
            },
            PotentialSpec::InversePoly { decay, .. } => PotentialSpec::InversePoly {
                coupling: g,
                decay: *decay,
            },
            PotentialSpec::Sum(parts) => {
                let mut out = parts.clone();
                if let Some(first) = out.first_mut() {
                    *first = first.with_coupling(g);
                }
                PotentialSpec::Sum(out)
            }
        }
    }

    /// Radii where the potential jumps (integration breakpoints).
    pub fn discontinuities(&self) -> Vec<f64> {
        match self {
            PotentialSpec::SquareWell { radius, .. } => vec![*radius],
            PotentialSpec::Sum(parts) => {
                let mut all: Vec<f64> = parts.iter().flat_map(|p| p.discontinuities()).collect();
                all.sort_by(|a, b| a.partial_cmp(b).unwrap());
                all.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs());
                all
            }
            _ => vec![],
        }
    }

    /// A radius beyond which `|V| <= threshold` everywhere (the smallest
    /// such radius for the basic families, a conservative one for sums).
    pub fn negligible_beyond(&self, threshold: f64) -> f64 {
        match self {
            PotentialSpec::Zero => 0.0,
            PotentialSpec::SquareWell { radius, .. } => *radius,
            PotentialSpec::InversePoly { coupling, decay } => {
                if coupling.abs() <= threshold {
                    0.0
                } else {
                    ((coupling.abs() / threshold).powf(2.0 / decay) - 1.0)
                        .max(0.0)
                        .sqrt()
                }
            }
            PotentialSpec::Sum(parts) => {
                let per = threshold / parts.len() as f64;
                parts
                    .iter()
                    .map(|p| p.negligible_beyond(per))
                    .fold(0.0, f64::max)
            }
        }
    }
}

/// `V(r)` with domain checking.
pub fn potential_value(v: &PotentialSpec, r: f64) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("potential evaluated at invalid radius {r}")));
    }
    v.validate()?;
    Ok(v.value(r))
}

/// Uniform grid in `t = log r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl Default for RadialGrid {
    fn default() -> Self {
        RadialGrid {
            r_min: 1e-4,
            r_max: 1e4,
            n_points: 4096,
        }
    }
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        let g = RadialGrid { r_min, r_max, n_points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) || !(self.r_max > self.r_min) {
            return Err(Error::Config(format!(
                "radial grid needs 0 < r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.r_min >= 1.0 || self.r_max <= 1.0 {
            return Err(Error::Config(
                "radial grid must straddle r = 1 (the cone transition region)".into(),
            ));
        }
        if self.n_points < 16 {
            return Err(Error::Config(format!(
                "radial grid needs at least 16 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    /// Log-step `h` in `t = log r`.
    pub fn step(&self) -> f64 {
        (self.r_max.ln() - self.r_min.ln()) / (self.n_points - 1) as f64
    }

    /// `t_k = log r_min + k h`.
    pub fn log_points(&self) -> Vec<f64> {
        let t0 = self.r_min.ln();
        let h = self.step();
        (0..self.n_points).map(|k| t0 + h * k as f64).collect()
    }

    /// `r_k = exp(t_k)`.
    pub fn points(&self) -> Vec<f64> {
        self.log_points().into_iter().map(f64::exp).collect()
    }

    /// Index of the first grid point with `r_k >= r`, clamped to the range.
    pub fn index_at_or_above(&self, r: f64) -> usize {
        let t0 = self.r_min.ln();
        let h = self.step();
        let k = ((r.ln() - t0) / h).ceil();
        (k.max(0.0) as usize).min(self.n_points - 1)
    }
}
