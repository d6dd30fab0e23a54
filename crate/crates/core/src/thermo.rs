//! Vibrational thermodynamics from `ln Z`:
//!
//! ```text
//! F = -ln Z / β      U = -d ln Z/dβ
//! S = ln Z - β d ln Z/dβ      C = β² d² ln Z/dβ²
//! ```
//!
//! Energies are measured from the ground level; `S` and `C` are in units of k_B.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{differentiate, maximize_scalar, DiffConfig};
use crate::partition::{partition_function, MethodKind, PartitionMethod};
use crate::physchem::{kelvin_from_beta, Molecule};
use crate::spectrum::DeformedSpectrum;

/// How the β-derivatives of `ln Z` are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Differentiation {
    /// Boltzmann moments of the level ladder; direct sum only.
    Analytic,
    /// Richardson-extrapolated central differences of `ln Z`.
    Numeric,
}

impl Differentiation {
    pub fn tag(self) -> &'static str {
        match self {
            Differentiation::Analytic => "analytic",
            Differentiation::Numeric => "numeric",
        }
    }
}

impl fmt::Display for Differentiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Differentiation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Differentiation::Analytic),
            "numeric" => Ok(Differentiation::Numeric),
            other => Err(Error::domain(format!("unknown differentiation mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoPoint {
    /// eV⁻¹
    pub beta: f64,
    /// K
    pub temperature: f64,
    pub z: f64,
    pub ln_z: f64,
    /// eV
    pub free_energy: f64,
    /// eV
    pub internal_energy: f64,
    /// k_B
    pub entropy: f64,
    /// k_B
    pub heat_capacity: f64,
    pub method: PartitionMethod,
    pub diff: Differentiation,
}

pub fn thermo_point(
    s: &DeformedSpectrum,
    beta: f64,
    method: &PartitionMethod,
    diff: Differentiation,
) -> Result<ThermoPoint> {
    thermo_point_with(s, beta, method, diff, &DiffConfig::default())
}

pub fn thermo_point_with(
    s: &DeformedSpectrum,
    beta: f64,
    method: &PartitionMethod,
    diff: Differentiation,
    cfg: &DiffConfig,
) -> Result<ThermoPoint> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!("beta must be positive and finite, got {beta}")));
    }
    method.validate()?;
    let (z, ln_z, mean, variance) = match diff {
        Differentiation::Analytic => {
            if method.kind != MethodKind::Direct {
                return Err(Error::MethodMismatch(format!(
                    "analytic derivatives need the direct sum, not {}",
                    method.kind
                )));
            }
            boltzmann_moments(s, beta)?
        }
        Differentiation::Numeric => {
            let ln_z_at = |b: f64| {
                partition_function(s, b, method)
                    .and_then(|r| r.ln_z())
                    .unwrap_or(f64::NAN)
            };
            let centre = partition_function(s, beta, method)?;
            let ln_z = centre.ln_z()?;
            let d1 = differentiate(ln_z_at, beta, 1, cfg)?;
            let d2 = differentiate(ln_z_at, beta, 2, cfg)?;
            (centre.z, ln_z, -d1, d2)
        }
    };
    Ok(ThermoPoint {
        beta,
        temperature: kelvin_from_beta(beta)?,
        z,
        ln_z,
        free_energy: -ln_z / beta,
        internal_energy: mean,
        entropy: ln_z + beta * mean,
        heat_capacity: beta * beta * variance,
        method: *method,
        diff,
    })
}

/// `(Z, ln Z, <ΔE>, Var ΔE)` over the bound levels.
fn boltzmann_moments(s: &DeformedSpectrum, beta: f64) -> Result<(f64, f64, f64, f64)> {
    let de = s.excitation_energies()?;
    let weights: Vec<f64> = de.iter().map(|&e| (-beta * e).exp()).collect();
    let excited: f64 = weights[1..].iter().sum();
    let z = 1.0 + excited;
    let mean = weights.iter().zip(&de).map(|(w, e)| w * e).sum::<f64>() / z;
    let variance = weights.iter().zip(&de).map(|(w, e)| w * (e - mean) * (e - mean)).sum::<f64>() / z;
    Ok((z, excited.ln_1p(), mean, variance))
}

fn check_grid(betas: &[f64]) -> Result<()> {
    if betas.is_empty() {
        return Err(Error::domain("beta grid is empty"));
    }
    if !betas.iter().all(|b| b.is_finite() && *b > 0.0) {
        return Err(Error::domain("beta grid must be positive and finite"));
    }
    if !betas.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::domain("beta grid must be strictly increasing"));
    }
    Ok(())
}

/// `(β, C/k_B)` along a strictly increasing grid.
pub fn specific_heat_curve(
    s: &DeformedSpectrum,
    betas: &[f64],
    method: &PartitionMethod,
    diff: Differentiation,
) -> Result<Vec<(f64, f64)>> {
    check_grid(betas)?;
    betas
        .iter()
        .map(|&b| thermo_point(s, b, method, diff).map(|p| (b, p.heat_capacity)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    /// eV⁻¹
    pub beta_c: f64,
    /// K
    pub t_c: f64,
    /// Peak C in units of k_B.
    pub c_max: f64,
    /// The peak sits at an end of the search bracket.
    pub at_boundary: bool,
}

/// Default search bracket for the specific-heat peak, eV⁻¹.
pub const DEFAULT_BRACKET: (f64, f64) = (0.05, 100.0);
/// Absolute tolerance on beta; C is flat to rounding within ~1e-8 relative of its peak.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

const SCAN_POINTS: usize = 256;

/// Location of the specific-heat maximum.
///
/// A log-spaced scan of the bracket picks the cell around the largest finite
/// `C`; golden-section search then refines within it. Scan points where the
/// partition function cannot be log-transformed are skipped.
pub fn critical_temperature(
    s: &DeformedSpectrum,
    bracket: (f64, f64),
    method: &PartitionMethod,
    diff: Differentiation,
    tol: f64,
) -> Result<CriticalPoint> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(Error::domain(format!("invalid beta bracket ({lo}, {hi})")));
    }
    let heat = |b: f64| {
        thermo_point(s, b, method, diff)
            .map(|p| p.heat_capacity)
            .unwrap_or(f64::NAN)
    };
    let ratio = (hi / lo).ln() / (SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| if i + 1 == SCAN_POINTS { hi } else { lo * (ratio * i as f64).exp() })
        .collect();
    let best = grid
        .iter()
        .enumerate()
        .map(|(i, &b)| (i, heat(b)))
        .filter(|(_, c)| c.is_finite())
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::NonFinite("specific heat is non-finite across the whole bracket".into()))?
        .0;
    let cell = (grid[best.saturating_sub(1)], grid[(best + 1).min(SCAN_POINTS - 1)]);
    let found = maximize_scalar(heat, cell.0, cell.1, tol)?;
    let at_boundary =
        (found.bracket.0 == lo && found.at_boundary) || (found.bracket.1 == hi && found.at_boundary);
    Ok(CriticalPoint {
        beta_c: found.argmax,
        t_c: kelvin_from_beta(found.argmax)?,
        c_max: found.max,
        at_boundary,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub q: f64,
    pub n_max: usize,
    pub point: ThermoPoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub molecule: String,
    /// Sorted by `(q, beta)`.
    pub rows: Vec<SweepRow>,
    /// Deformations with no bound states, for which no rows exist.
    pub empty_qs: Vec<f64>,
}

/// Thermodynamics over the Cartesian product of `qs` and `betas`.
///
/// Rows are evaluated in parallel and returned in `(q, beta)` order.
pub fn sweep(
    molecule: &Molecule,
    qs: &[f64],
    betas: &[f64],
    method: &PartitionMethod,
    diff: Differentiation,
) -> Result<SweepTable> {
    check_grid(betas)?;
    let mut qs = qs.to_vec();
    if qs.is_empty() {
        return Err(Error::domain("no deformation values given"));
    }
    let spectra = qs
        .iter()
        .map(|&q| DeformedSpectrum::new(molecule, q))
        .collect::<Result<Vec<_>>>()?;
    qs.sort_by(f64::total_cmp);
    qs.dedup();
    let mut spectra: Vec<DeformedSpectrum> = qs
        .iter()
        .map(|&q| spectra.iter().find(|s| s.q() == q).expect("built above").clone())
        .collect();

    let empty_qs = spectra.iter().filter(|s| s.is_empty()).map(|s| s.q()).collect();
    spectra.retain(|s| !s.is_empty());

    let jobs: Vec<(&DeformedSpectrum, f64)> =
        spectra.iter().flat_map(|s| betas.iter().map(move |&b| (s, b))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(s, b)| {
            thermo_point(s, b, method, diff).map(|point| SweepRow {
                q: s.q(),
                n_max: s.n_max().expect("empty spectra removed"),
                point,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { molecule: molecule.name().to_string(), rows, empty_qs })
}
