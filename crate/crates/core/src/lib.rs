//! Bound-state spectra, vibrational partition functions and thermodynamics
//! of the one-dimensional q-deformed Morse oscillator.
//!
//! ```
//! use qmorse::{builtin_registry, DeformedSpectrum, PartitionMethod, Differentiation};
//!
//! let h2 = builtin_registry().get("H2").unwrap().clone();
//! let s = DeformedSpectrum::new(&h2, 1.0).unwrap();
//! assert_eq!(s.n_max(), Some(22));
//! let p = qmorse::thermo_point(&s, 2.0, &PartitionMethod::direct(), Differentiation::Analytic).unwrap();
//! assert!(p.heat_capacity > 0.0);
//! ```

pub mod error;
pub mod numerics;
pub mod partition;
pub mod physchem;
pub mod reference;
pub mod spectrum;
pub mod thermo;

pub use error::{Error, Result};
pub use partition::{
    em_summand, em_summand_derivative, partition_function, z_closed_form, z_direct, z_euler_maclaurin,
    ClosedFormCoefficients, EndpointMode, MethodKind, PartitionMethod, PartitionResult, UpperLimit,
};
pub use physchem::{
    beta_from_kelvin, builtin_registry, kelvin_from_beta, load_registry, Molecule, PhysicalConstants,
    Registry, RegistryFormat,
};
pub use spectrum::{make_spectrum, nu_table, potential, DeformedSpectrum};
pub use thermo::{
    critical_temperature, specific_heat_curve, sweep, thermo_point, thermo_point_with, CriticalPoint,
    Differentiation, SweepRow, SweepTable, ThermoPoint,
};
