//! Physical constants, unit conversions and the molecule registry.
//!
//! Energies are in eV, lengths in Å, masses in amu and inverse temperatures
//! (`beta`) in eV⁻¹ throughout the crate.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conversion constants used to build the dimensionless well capacity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    /// ħc in eV·Å.
    pub hbar_c: f64,
    /// Rest energy of one atomic mass unit in eV.
    pub amu_to_ev: f64,
    /// Boltzmann constant in eV/K.
    pub k_b: f64,
}

impl PhysicalConstants {
    pub const STANDARD: PhysicalConstants = PhysicalConstants {
        hbar_c: 1973.269,
        amu_to_ev: 931.5e6,
        k_b: 8.617_333_262e-5,
    };

    pub fn mass_energy(&self, amu: f64) -> f64 {
        amu * self.amu_to_ev
    }

    pub fn mass_amu(&self, ev: f64) -> f64 {
        ev / self.amu_to_ev
    }

    /// Temperature in kelvin for an inverse temperature in eV⁻¹.
    pub fn kelvin_from_beta(&self, beta: f64) -> Result<f64> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::domain(format!("beta must be positive and finite, got {beta}")));
        }
        Ok(1.0 / (self.k_b * beta))
    }

    pub fn beta_from_kelvin(&self, kelvin: f64) -> Result<f64> {
        if !(kelvin > 0.0 && kelvin.is_finite()) {
            return Err(Error::domain(format!(
                "temperature must be positive and finite, got {kelvin}"
            )));
        }
        Ok(1.0 / (self.k_b * kelvin))
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// `1 / (k_B beta)` with the standard constants.
pub fn kelvin_from_beta(beta: f64) -> Result<f64> {
    PhysicalConstants::STANDARD.kelvin_from_beta(beta)
}

pub fn beta_from_kelvin(kelvin: f64) -> Result<f64> {
    PhysicalConstants::STANDARD.beta_from_kelvin(kelvin)
}

/// Spectroscopic constants of a diatomic molecule.
///
/// The inverse range `a` is always `1 / alpha`; it is stored so callers that
/// work in the `a` parametrization do not need to recompute it.
#[derive(Clone, Debug, PartialEq)]
pub struct Molecule {
    name: String,
    m: f64,
    v0: f64,
    alpha: f64,
    a: f64,
}

impl Molecule {
    /// `m` in amu, `v0` in eV, `alpha` in Å⁻¹.
    pub fn new(name: impl Into<String>, m: f64, v0: f64, alpha: f64) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::Validation { name, reason: "empty name".into() });
        }
        for (label, value) in [("reduced mass", m), ("dissociation energy", v0), ("alpha", alpha)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Validation {
                    name,
                    reason: format!("{label} must be positive and finite, got {value}"),
                });
            }
        }
        Ok(Molecule { name, m, v0, alpha, a: 1.0 / alpha })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Reduced mass in amu.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Dissociation energy in eV.
    pub fn v0(&self) -> f64 {
        self.v0
    }

    /// Range parameter in Å⁻¹.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Inverse range parameter in Å.
    pub fn a(&self) -> f64 {
        self.a
    }

    fn record(&self) -> MoleculeRecord {
        MoleculeRecord {
            name: self.name.clone(),
            m_amu: self.m,
            v0_ev: self.v0,
            alpha_inv_a: self.alpha,
        }
    }
}

/// One row of the on-disk registry formats.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoleculeRecord {
    name: String,
    m_amu: f64,
    #[serde(rename = "V0_eV")]
    v0_ev: f64,
    #[serde(rename = "alpha_invA")]
    alpha_inv_a: f64,
}

impl TryFrom<MoleculeRecord> for Molecule {
    type Error = Error;

    fn try_from(r: MoleculeRecord) -> Result<Self> {
        Molecule::new(r.name, r.m_amu, r.v0_ev, r.alpha_inv_a)
    }
}

/// Header line of the CSV registry format.
pub const CSV_HEADER: &str = "name,m_amu,V0_eV,alpha_invA";

/// Tabulated constants: name, m (amu), V0 (eV), alpha (Å⁻¹), a (Å) as printed.
pub const BUILTIN_MOLECULES: [(&str, f64, f64, f64, f64); 4] = [
    ("HCl", 0.980_104_5, 4.619_07, 2.380_57, 0.420_067_463),
    ("H2", 0.503_91, 4.744_6, 1.440_558, 0.694_175_451),
    ("CO", 6.860_671_9, 11.225_6, 2.594_41, 0.385_444_089),
    ("LiH", 0.880_122_1, 2.515_287, 1.799_836_8, 0.555_605_93),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegistryFormat {
    Csv,
    Json,
}

impl RegistryFormat {
    /// `.json` selects JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => RegistryFormat::Json,
            _ => RegistryFormat::Csv,
        }
    }
}

impl FromStr for RegistryFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(RegistryFormat::Csv),
            "json" => Ok(RegistryFormat::Json),
            other => Err(Error::Parse(format!("unknown registry format {other:?}"))),
        }
    }
}

/// Ordered collection of molecules with unique, case-sensitive names.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Registry {
    molecules: Vec<Molecule>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_molecules(molecules: impl IntoIterator<Item = Molecule>) -> Result<Self> {
        let mut registry = Registry::new();
        for m in molecules {
            registry.insert(m)?;
        }
        Ok(registry)
    }

    pub fn insert(&mut self, molecule: Molecule) -> Result<()> {
        if self.get(molecule.name()).is_some() {
            return Err(Error::DuplicateName(molecule.name.clone()));
        }
        self.molecules.push(molecule);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Molecule> {
        self.molecules.iter().find(|m| m.name == name)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Molecule> {
        self.molecules.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.molecules.iter().map(|m| m.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.molecules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.molecules.is_empty()
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| Error::Parse(e.to_string()))?;
        if header.is_empty() && text.trim().is_empty() {
            return Err(Error::Parse("missing header line".into()));
        }
        let found: Vec<&str> = header.iter().collect();
        let expected: Vec<&str> = CSV_HEADER.split(',').collect();
        if found != expected {
            return Err(Error::Parse(format!(
                "expected header {CSV_HEADER:?}, found {:?}",
                found.join(",")
            )));
        }
        let mut registry = Registry::new();
        for (i, row) in reader.deserialize::<MoleculeRecord>().enumerate() {
            // header is line 1
            let record = row.map_err(|e| Error::Parse(format!("line {}: {e}", i + 2)))?;
            registry.insert(record.try_into()?)?;
        }
        Ok(registry)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let records: Vec<MoleculeRecord> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut registry = Registry::new();
        for record in records {
            registry.insert(record.try_into()?)?;
        }
        Ok(registry)
    }

    /// CSV serialization using shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for m in &self.molecules {
            let _ = writeln!(out, "{},{},{},{}", m.name, m.m, m.v0, m.alpha);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let records: Vec<MoleculeRecord> = self.molecules.iter().map(Molecule::record).collect();
        serde_json::to_string_pretty(&records).expect("registry records always serialize")
    }
}

impl<'a> IntoIterator for &'a Registry {
    type Item = &'a Molecule;
    type IntoIter = std::slice::Iter<'a, Molecule>;

    fn into_iter(self) -> Self::IntoIter {
        self.molecules.iter()
    }
}

/// The four reference molecules H2, HCl, LiH and CO.
pub fn builtin_registry() -> Registry {
    Registry::from_molecules(BUILTIN_MOLECULES.iter().map(|&(name, m, v0, alpha, _)| {
        Molecule::new(name, m, v0, alpha).expect("builtin constants are valid")
    }))
    .expect("builtin names are unique")
}

pub fn load_registry(path: impl AsRef<Path>, format: RegistryFormat) -> Result<Registry> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    match format {
        RegistryFormat::Csv => Registry::parse_csv(&text),
        RegistryFormat::Json => Registry::parse_json(&text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        let reg = builtin_registry();
        assert_eq!(reg.len(), 4);
        assert_eq!(reg.get("H2").unwrap().m(), 0.50391);
        assert_eq!(reg.get("CO").unwrap().v0(), 11.2256);
        assert!((reg.get("HCl").unwrap().a() - 0.420067463).abs() < 1e-9);
        assert!(reg.get("h2").is_none());
    }

    #[test]
    fn inverse_range_is_consistent() {
        for &(name, _, _, alpha, printed_a) in &BUILTIN_MOLECULES {
            let m = builtin_registry().get(name).unwrap().clone();
            assert!((m.a() * m.alpha() - 1.0).abs() < 1e-12);
            assert!((m.a() - printed_a).abs() / printed_a < 2e-9, "{name}");
            assert_eq!(m.alpha(), alpha);
        }
    }

    #[test]
    fn csv_row_matches_builtin() {
        let reg = Registry::parse_csv("name,m_amu,V0_eV,alpha_invA\nH2,0.50391,4.7446,1.440558\n")
            .unwrap();
        assert_eq!(reg.get("H2"), builtin_registry().get("H2"));
    }

    #[test]
    fn header_only_is_empty() {
        let reg = Registry::parse_csv("name,m_amu,V0_eV,alpha_invA\n").unwrap();
        assert!(reg.is_empty());
    }

    #[test]
    fn rejects_bad_rows() {
        let err = Registry::parse_csv("name,m_amu,V0_eV,alpha_invA\nX,1,-1,1\n").unwrap_err();
        assert!(matches!(err, Error::Validation { .. }), "{err}");
        let err = Registry::parse_csv("name,m_amu,V0_eV,alpha_invA\nX,1,abc,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
        let err = Registry::parse_csv("name,mass,V0_eV,alpha_invA\nX,1,1,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
        let err = Registry::parse_csv("name,m_amu,V0_eV,alpha_invA\nX,1,1,1\nX,2,2,2\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateName(_)), "{err}");
        let err = Registry::parse_csv("").unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
    }

    #[test]
    fn names_are_case_sensitive() {
        let reg = Registry::parse_csv("name,m_amu,V0_eV,alpha_invA\nCO,1,1,1\nco,1,1,1\n").unwrap();
        assert_eq!(reg.len(), 2);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let reg = builtin_registry();
        assert_eq!(Registry::parse_csv(&reg.to_csv()).unwrap(), reg);
        assert_eq!(Registry::parse_json(&reg.to_json()).unwrap(), reg);
        assert!(reg.to_csv().starts_with("name,m_amu,V0_eV,alpha_invA\nHCl,0.9801045,"));
    }

    #[test]
    fn beta_temperature_conversion() {
        let k = PhysicalConstants::STANDARD;
        assert!((kelvin_from_beta(1.0 / k.k_b).unwrap() - 1.0).abs() < 1e-15);
        assert!((kelvin_from_beta(1.3001).unwrap() - 8926.0).abs() < 1.0);
        assert!(kelvin_from_beta(0.0).is_err());
        assert!(kelvin_from_beta(-2.0).is_err());
        assert!(kelvin_from_beta(f64::NAN).is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(RegistryFormat::from_path(Path::new("a/b.JSON")), RegistryFormat::Json);
        assert_eq!(RegistryFormat::from_path(Path::new("a/b.csv")), RegistryFormat::Csv);
        assert_eq!(RegistryFormat::from_path(Path::new("noext")), RegistryFormat::Csv);
    }
}
