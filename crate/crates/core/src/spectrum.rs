//! Bound-state spectrum of the q-deformed Morse oscillator.
//!
//! With the well capacity `nu = a sqrt(8 m V0) / ħc` and `mu = q nu / 2`,
//! the levels are
//!
//! ```text
//! E_n = -q² V0 (1 - (n + 1/2) / mu)²,   n = 0 ..= n_max
//! n_max = floor(mu - 1/2)
//! ```
//!
//! All level arithmetic goes through the reduced coordinate
//! `u(x) = 1 - (x + 1/2) / mu`, which is 1 at the bottom of the well and 0 at
//! the continuous level-count limit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::physchem::{Molecule, PhysicalConstants, Registry};

pub(crate) fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("deformation q must lie in (0, 1], got {q}")))
    }
}

/// q-deformed Morse potential `V0 (e^{-2 alpha x} - 2 q e^{-alpha x})` in eV at `x` Å.
pub fn potential(x: f64, molecule: &Molecule, q: f64) -> Result<f64> {
    check_q(q)?;
    let e = (-molecule.alpha() * x).exp();
    Ok(molecule.v0() * e * (e - 2.0 * q))
}

/// Position and depth of the potential minimum, `(ln(1/q)/alpha, -q² V0)`.
pub fn potential_minimum(molecule: &Molecule, q: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    Ok((-q.ln() / molecule.alpha(), -q * q * molecule.v0()))
}

/// Dimensionless well capacity `nu`.
pub fn well_capacity(molecule: &Molecule, constants: &PhysicalConstants) -> f64 {
    molecule.a() * (8.0 * constants.mass_energy(molecule.m()) * molecule.v0()).sqrt()
        / constants.hbar_c
}

pub fn nu_table(registry: &Registry) -> BTreeMap<String, f64> {
    registry
        .iter()
        .map(|m| (m.name().to_string(), well_capacity(m, &PhysicalConstants::STANDARD)))
        .collect()
}

/// Levels of one (molecule, q) pair. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedSpectrum {
    molecule: Molecule,
    q: f64,
    nu: f64,
    mu: f64,
    n_max: Option<usize>,
    levels: Vec<f64>,
    boundary_tie: bool,
}

impl DeformedSpectrum {
    pub fn new(molecule: &Molecule, q: f64) -> Result<Self> {
        Self::with_constants(molecule, q, &PhysicalConstants::STANDARD)
    }

    pub fn with_constants(molecule: &Molecule, q: f64, constants: &PhysicalConstants) -> Result<Self> {
        check_q(q)?;
        let nu = well_capacity(molecule, constants);
        let mu = q * nu / 2.0;
        let top = mu - 0.5;
        let n_max = (top >= 0.0).then(|| top.floor() as usize);
        let mut spectrum = DeformedSpectrum {
            molecule: molecule.clone(),
            q,
            nu,
            mu,
            n_max,
            levels: Vec::new(),
            // a level sitting exactly at the dissociation edge is kept
            boundary_tie: top >= 0.0 && top.fract() == 0.0,
        };
        spectrum.levels = (0..spectrum.level_count()).map(|n| spectrum.level_energy(n as f64)).collect();
        Ok(spectrum)
    }

    pub fn molecule(&self) -> &Molecule {
        &self.molecule
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Highest bound quantum number, `None` when `q nu < 1`.
    pub fn n_max(&self) -> Option<usize> {
        self.n_max
    }

    /// The real-valued level-count limit `mu - 1/2`, where `dE/dn` vanishes.
    pub fn continuous_n_max(&self) -> f64 {
        self.mu - 0.5
    }

    pub fn level_count(&self) -> usize {
        self.n_max.map_or(0, |n| n + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.n_max.is_none()
    }

    /// Whether `mu - 1/2` is an exact integer, so the top level sits at E = 0.
    pub fn boundary_tie(&self) -> bool {
        self.boundary_tie
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Effective well depth `q² V0`.
    pub fn depth(&self) -> f64 {
        self.q * self.q * self.molecule.v0()
    }

    /// `u(x) = 1 - (x + 1/2) / mu`.
    pub fn reduced_coordinate(&self, x: f64) -> f64 {
        1.0 - (x + 0.5) / self.mu
    }

    /// `E(x)` for real `x`; equals the level energy at integer `x`.
    pub fn level_energy(&self, x: f64) -> f64 {
        let u = self.reduced_coordinate(x);
        -self.depth() * u * u
    }

    /// `E(x) - E(0)` in factored form, free of cancellation near x = 0.
    pub fn excitation_energy(&self, x: f64) -> f64 {
        let u0 = self.reduced_coordinate(0.0);
        let u = self.reduced_coordinate(x);
        self.depth() * (x / self.mu) * (u0 + u)
    }

    /// `dE/dx` of the continuous level function.
    pub fn level_slope(&self, x: f64) -> f64 {
        2.0 * self.depth() * self.reduced_coordinate(x) / self.mu
    }

    fn require_levels(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySpectrum { molecule: self.molecule.name().to_string(), q: self.q })
        } else {
            Ok(())
        }
    }

    /// `E_n - E_0` for every bound level.
    pub fn excitation_energies(&self) -> Result<Vec<f64>> {
        self.require_levels()?;
        Ok((0..self.level_count()).map(|n| self.excitation_energy(n as f64)).collect())
    }
}

pub fn make_spectrum(molecule: &Molecule, q: f64) -> Result<DeformedSpectrum> {
    DeformedSpectrum::new(molecule, q)
}

pub fn excitation_energies(spectrum: &DeformedSpectrum) -> Result<Vec<f64>> {
    spectrum.excitation_energies()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physchem::builtin_registry;

    fn h2() -> Molecule {
        builtin_registry().get("H2").unwrap().clone()
    }

    #[test]
    fn potential_values() {
        let m = h2();
        assert!((potential(0.0, &m, 1.0).unwrap() + m.v0()).abs() < 1e-15);
        assert!(potential(60.0, &m, 0.7).unwrap().abs() < 1e-30);
        let (x_min, v_min) = potential_minimum(&m, 0.5).unwrap();
        assert!((v_min + 1.18615).abs() < 1e-12);
        assert!((potential(x_min, &m, 0.5).unwrap() + 1.18615).abs() < 1e-12);
        for dx in [-1e-3, 1e-3] {
            assert!(potential(x_min + dx, &m, 0.5).unwrap() > v_min);
        }
    }

    #[test]
    fn rejects_bad_q() {
        let m = h2();
        for q in [0.0, -0.1, 1.01, f64::NAN] {
            assert!(potential(0.0, &m, q).is_err());
            assert!(DeformedSpectrum::new(&m, q).is_err());
        }
    }

    #[test]
    fn h2_levels() {
        let s = DeformedSpectrum::new(&h2(), 1.0).unwrap();
        assert_eq!(s.n_max(), Some(22));
        assert_eq!(s.levels().len(), 23);
        assert!((s.nu() - 46.956).abs() < 1e-3, "{}", s.nu());
        assert!((s.levels()[0] + 4.5447).abs() < 1e-4, "{}", s.levels()[0]);
        assert!(s.levels().windows(2).all(|w| w[0] < w[1]));
        assert!(s.levels().iter().all(|&e| e < 0.0));
    }

    #[test]
    fn empty_spectrum_is_representable() {
        let m = h2();
        let q = 0.9 / well_capacity(&m, &PhysicalConstants::STANDARD);
        let s = DeformedSpectrum::new(&m, q).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.level_count(), 0);
        assert!(matches!(s.excitation_energies(), Err(Error::EmptySpectrum { .. })));
    }

    #[test]
    fn single_level_just_above_threshold() {
        let m = h2();
        let q = 1.0001 / well_capacity(&m, &PhysicalConstants::STANDARD);
        let s = DeformedSpectrum::new(&m, q).unwrap();
        assert_eq!(s.n_max(), Some(0));
        assert!(!s.boundary_tie());
        assert_eq!(s.excitation_energies().unwrap(), vec![0.0]);
    }

    #[test]
    fn excitation_shift() {
        let s = DeformedSpectrum::new(&h2(), 0.7).unwrap();
        let de = s.excitation_energies().unwrap();
        assert_eq!(de[0], 0.0);
        assert!(de.windows(2).all(|w| w[0] < w[1]));
        for (n, (&d, &e)) in de.iter().zip(s.levels()).enumerate() {
            assert!((d - (e - s.levels()[0])).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn nu_per_molecule() {
        let t = nu_table(&builtin_registry());
        assert!((t["H2"] - 46.96).abs() < 0.01);
        assert!((t["HCl"] - 39.10).abs() < 0.01);
        assert!((t["CO"] - 147.98).abs() < 0.01);
        assert!((t["LiH"] - 36.16).abs() < 0.01);
    }

    #[test]
    fn slope_vanishes_at_level_limit() {
        let s = DeformedSpectrum::new(&h2(), 0.9).unwrap();
        assert!(s.level_slope(s.continuous_n_max()).abs() < 1e-12);
        assert!(s.level_energy(s.continuous_n_max()).abs() < 1e-12);
    }
}
