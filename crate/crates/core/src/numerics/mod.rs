//! Numerical kernels: Bernoulli numbers, error/Dawson functions,
//! finite differences and golden-section search.

pub mod bernoulli;
pub mod diff;
pub mod optimize;
pub mod special;

pub use bernoulli::{bernoulli, BernoulliTable, Rational};
pub use diff::{differentiate, DiffConfig};
pub use optimize::{maximize_scalar, Maximum};
pub use special::{dawson, erf, erfi, exp_scaled_erfi_integral, ScaledValue};
