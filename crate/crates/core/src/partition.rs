//! Vibrational partition function referenced to the ground level,
//! `Z(β) = Σ_{n=0}^{n_max} e^{-β (E_n - E_0)}`, by three routes:
//!
//! * `Direct`: the finite Boltzmann sum.
//! * `EulerMaclaurin`: `½ f(0) + ∫_0^N f dx - Σ_p B_2p/(2p)! f^(2p-1)(0)` over
//!   the continuous summand `f(x) = e^{-β (E(x) - E_0)}`, optionally with the
//!   upper-endpoint terms of the full formula.
//! * `ClosedForm`: the same second-order expansion written out analytically,
//!   with the integral expressed through Dawson's function.
//!
//! In the reduced coordinate `u = 1 - (x + ½)/μ` the summand is
//! `e^{c (u² - u0²)}` with `c = β q² V0`, so the integral is an erfi-type
//! integral carried in scaled form and the ground-state reference cancels its
//! growth exactly.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::bernoulli::{bernoulli, to_f64};
use crate::numerics::special::{dawson, exp_scaled_erfi_integral};
use crate::physchem::{Molecule, PhysicalConstants};
use crate::spectrum::DeformedSpectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodKind {
    Direct,
    EulerMaclaurin,
    ClosedForm,
}

impl MethodKind {
    pub fn tag(self) -> &'static str {
        match self {
            MethodKind::Direct => "direct",
            MethodKind::EulerMaclaurin => "euler_maclaurin",
            MethodKind::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(MethodKind::Direct),
            "euler_maclaurin" | "em" => Ok(MethodKind::EulerMaclaurin),
            "closed_form" | "closed" => Ok(MethodKind::ClosedForm),
            other => Err(Error::domain(format!("unknown partition method {other:?}"))),
        }
    }
}

/// Which endpoint corrections of the Euler–MacLaurin formula are kept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EndpointMode {
    /// `½ f(0)` and the lower-limit derivative terms only.
    #[default]
    LowerOnly,
    /// Adds `½ f(N)` and the upper-limit derivative terms.
    Both,
}

/// Upper limit of the Euler–MacLaurin integral.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum UpperLimit {
    /// The integer `n_max`, matching the summation range.
    #[default]
    Floored,
    /// The real-valued `μ - ½` where the level function is flat.
    Continuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartitionMethod {
    pub kind: MethodKind,
    /// Highest `p` in the Bernoulli corrections (1..=3).
    pub em_order: u8,
    pub endpoints: EndpointMode,
    pub upper_limit: UpperLimit,
}

impl PartitionMethod {
    pub const DEFAULT_EM_ORDER: u8 = 2;

    pub fn direct() -> Self {
        PartitionMethod {
            kind: MethodKind::Direct,
            em_order: Self::DEFAULT_EM_ORDER,
            endpoints: EndpointMode::LowerOnly,
            upper_limit: UpperLimit::Floored,
        }
    }

    pub fn euler_maclaurin(em_order: u8, endpoints: EndpointMode) -> Self {
        PartitionMethod { kind: MethodKind::EulerMaclaurin, em_order, endpoints, ..Self::direct() }
    }

    /// Always second order; the analytic expansion is written out for p = 1, 2.
    pub fn closed_form(endpoints: EndpointMode) -> Self {
        PartitionMethod { kind: MethodKind::ClosedForm, endpoints, ..Self::direct() }
    }

    pub fn with_upper_limit(mut self, upper_limit: UpperLimit) -> Self {
        self.upper_limit = upper_limit;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            MethodKind::Direct => Ok(()),
            MethodKind::EulerMaclaurin if (1..=3).contains(&self.em_order) => Ok(()),
            MethodKind::EulerMaclaurin => Err(Error::MethodMismatch(format!(
                "Euler-MacLaurin order must be 1, 2 or 3, got {}",
                self.em_order
            ))),
            MethodKind::ClosedForm if self.em_order == 2 => Ok(()),
            MethodKind::ClosedForm => Err(Error::MethodMismatch(format!(
                "closed form is second order only, got order {}",
                self.em_order
            ))),
        }
    }
}

impl Default for PartitionMethod {
    fn default() -> Self {
        Self::direct()
    }
}

/// Value of `Z` at one `beta`, with the contributing terms in `diagnostics`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionResult {
    pub z: f64,
    pub beta: f64,
    pub method: PartitionMethod,
    pub diagnostics: BTreeMap<String, f64>,
    log_z: f64,
}

impl PartitionResult {
    fn new(z: f64, log_z: f64, beta: f64, method: PartitionMethod, diagnostics: BTreeMap<String, f64>) -> Result<Self> {
        if !z.is_finite() {
            return Err(Error::NonFinite(format!("{} partition value {z} at beta = {beta}", method.kind)));
        }
        Ok(PartitionResult { z, beta, method, diagnostics, log_z })
    }

    /// `ln Z`; fails where a truncated expansion has gone non-positive.
    pub fn ln_z(&self) -> Result<f64> {
        if self.z > 0.0 && self.log_z.is_finite() {
            Ok(self.log_z)
        } else {
            Err(Error::NonPositivePartition { z: self.z, beta: self.beta })
        }
    }
}

fn check_beta(beta: f64, strictly_positive: bool) -> Result<()> {
    let ok = beta.is_finite() && if strictly_positive { beta > 0.0 } else { beta >= 0.0 };
    if ok {
        Ok(())
    } else {
        let bound = if strictly_positive { "> 0" } else { ">= 0" };
        Err(Error::domain(format!("beta must be finite and {bound}, got {beta}")))
    }
}

fn require_levels(s: &DeformedSpectrum) -> Result<usize> {
    s.n_max().ok_or_else(|| Error::EmptySpectrum {
        molecule: s.molecule().name().to_string(),
        q: s.q(),
    })
}

/// Exact finite Boltzmann sum over the bound levels.
pub fn z_direct(s: &DeformedSpectrum, beta: f64) -> Result<PartitionResult> {
    check_beta(beta, false)?;
    let excitations = s.excitation_energies()?;
    let excited: f64 = excitations[1..].iter().map(|&de| (-beta * de).exp()).sum();
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("levels".to_string(), excitations.len() as f64);
    diagnostics.insert("excited_sum".to_string(), excited);
    PartitionResult::new(1.0 + excited, excited.ln_1p(), beta, PartitionMethod::direct(), diagnostics)
}

/// Continuous summand `f(x) = e^{-β (E(x) - E_0)}`, so `f(0) = 1`.
pub fn em_summand(x: f64, s: &DeformedSpectrum, beta: f64) -> f64 {
    (-beta * s.excitation_energy(x)).exp()
}

/// `d^order f / dx^order` of [`em_summand`].
///
/// With `f = e^g` and `g` quadratic in `x`, `f^(n) = H_n(g') f` where the
/// polynomials obey `H_{n+1}(t) = t H_n(t) + g'' H_n'(t)`, `H_0 = 1`.
pub fn em_summand_derivative(x: f64, order: u32, s: &DeformedSpectrum, beta: f64) -> f64 {
    let slope = -beta * s.level_slope(x);
    let curvature = 2.0 * beta * s.depth() / (s.mu() * s.mu());
    em_summand(x, s, beta) * derivative_factor(order, slope, curvature)
}

fn derivative_factor(order: u32, slope: f64, curvature: f64) -> f64 {
    let mut coeffs = vec![1.0];
    for _ in 0..order {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &ck) in coeffs.iter().enumerate() {
            next[k + 1] += ck;
            if k > 0 {
                next[k - 1] += curvature * k as f64 * ck;
            }
        }
        coeffs = next;
    }
    coeffs.iter().rev().fold(0.0, |acc, &ck| acc * slope + ck)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn upper_x(s: &DeformedSpectrum, limit: UpperLimit, n_max: usize) -> f64 {
    match limit {
        UpperLimit::Floored => n_max as f64,
        UpperLimit::Continuous => s.continuous_n_max(),
    }
}

/// Euler–MacLaurin approximation with exact Bernoulli coefficients and the
/// integral evaluated through Dawson's function.
pub fn z_euler_maclaurin(s: &DeformedSpectrum, beta: f64, method: &PartitionMethod) -> Result<PartitionResult> {
    check_beta(beta, true)?;
    if method.kind != MethodKind::EulerMaclaurin {
        return Err(Error::MethodMismatch(format!("expected euler_maclaurin, got {}", method.kind)));
    }
    method.validate()?;
    let n_max = require_levels(s)?;
    let x_top = upper_x(s, method.upper_limit, n_max);

    let mut diagnostics = BTreeMap::new();
    let c = beta * s.depth();
    let u0 = s.reduced_coordinate(0.0);
    let u_top = s.reduced_coordinate(x_top);

    let half_f0 = 0.5 * em_summand(0.0, s, beta);
    // dx = -mu du; the e^{-c u0²} reference is folded into the scale
    let scaled = exp_scaled_erfi_integral(c, u_top, u0)?.scale(s.mu()).rescaled(-c * u0 * u0);
    let integral = scaled.value();
    diagnostics.insert("upper_limit_x".to_string(), x_top);
    diagnostics.insert("half_f0".to_string(), half_f0);
    diagnostics.insert("integral".to_string(), integral);
    diagnostics.insert("integral_log_scale".to_string(), scaled.log_scale);

    let mut z = half_f0 + integral;
    for p in 1..=u32::from(method.em_order) {
        let weight = to_f64(bernoulli(2 * p)?) / factorial(2 * p);
        let lower = -weight * em_summand_derivative(0.0, 2 * p - 1, s, beta);
        diagnostics.insert(format!("lower_correction_p{p}"), lower);
        z += lower;
    }
    if method.endpoints == EndpointMode::Both {
        let half_top = 0.5 * em_summand(x_top, s, beta);
        diagnostics.insert("half_f_upper".to_string(), half_top);
        z += half_top;
        for p in 1..=u32::from(method.em_order) {
            let weight = to_f64(bernoulli(2 * p)?) / factorial(2 * p);
            let upper = weight * em_summand_derivative(x_top, 2 * p - 1, s, beta);
            diagnostics.insert(format!("upper_correction_p{p}"), upper);
            z += upper;
        }
    }
    PartitionResult::new(z, z.ln(), beta, *method, diagnostics)
}

/// Second-order Euler–MacLaurin partition function written out analytically.
///
/// With `t(u) = 4 β q V0 u / ν` (so that `f'(x) = -t f`) and
/// `κ = 8 β V0 / ν²` (`= g''`):
///
/// ```text
/// Z = ½ + t0/12 - (t0³ + 3κ t0)/720
///       + q ν / (2√c) [D(√c u0) - e^{c(uN² - u0²)} D(√c uN)]
///       [+ fN (½ - tN/12 + (tN³ + 3κ tN)/720)]      (both endpoints)
/// ```
pub fn z_closed_form(s: &DeformedSpectrum, beta: f64, method: &PartitionMethod) -> Result<PartitionResult> {
    check_beta(beta, true)?;
    if method.kind != MethodKind::ClosedForm {
        return Err(Error::MethodMismatch(format!("expected closed_form, got {}", method.kind)));
    }
    method.validate()?;
    let n_max = require_levels(s)?;
    let x_top = upper_x(s, method.upper_limit, n_max);

    let (q, nu, v0) = (s.q(), s.nu(), s.molecule().v0());
    let c = beta * q * q * v0;
    let sc = c.sqrt();
    let u0 = 1.0 - 1.0 / (q * nu);
    let u_top = 1.0 - (2.0 * x_top + 1.0) / (q * nu);
    let kappa = 8.0 * beta * v0 / (nu * nu);
    let t = |u: f64| 4.0 * beta * q * v0 * u / nu;

    let t0 = t(u0);
    let lower = t0 / 12.0 - (t0.powi(3) + 3.0 * kappa * t0) / 720.0;
    let f_top = (c * (u_top - u0) * (u_top + u0)).exp();
    let erfi_term = q * nu / (2.0 * sc) * (dawson(sc * u0) - f_top * dawson(sc * u_top));

    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("bernoulli_lower".to_string(), lower);
    diagnostics.insert("erfi_term".to_string(), erfi_term);
    let mut z = 0.5 + lower + erfi_term;
    if method.endpoints == EndpointMode::Both {
        let tn = t(u_top);
        let upper = f_top * (0.5 - tn / 12.0 + (tn.powi(3) + 3.0 * kappa * tn) / 720.0);
        diagnostics.insert("bernoulli_upper".to_string(), upper);
        z += upper;
    }
    PartitionResult::new(z, z.ln(), beta, *method, diagnostics)
}

/// Dispatch on `method.kind`.
pub fn partition_function(s: &DeformedSpectrum, beta: f64, method: &PartitionMethod) -> Result<PartitionResult> {
    match method.kind {
        MethodKind::Direct => z_direct(s, beta),
        MethodKind::EulerMaclaurin => z_euler_maclaurin(s, beta, method),
        MethodKind::ClosedForm => z_closed_form(s, beta, method),
    }
}

/// Molecule-specific constants of the closed form in the inverse-range
/// parametrization `a = 1/alpha`, where `1/(q ν) = inner_length / (a q)`.
///
/// With `u0 = 1 - inner_length/(a q)` and the continuous upper limit, the
/// lower-endpoint closed form reads
///
/// ```text
/// Z = ½ + linear β q u0 / a
///       - (cubic β³ q³ u0³ + quadratic β² q u0) / (720 a³)
///       + erfi_prefactor (a / (inner_length √β)) e^{-V0 β q² u0²} erfi(erf_argument_scale √β q u0)
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormCoefficients {
    /// `ħc / √(8 m V0)` in Å; equals `a / ν`.
    pub inner_length: f64,
    /// `1 / inner_length`.
    pub reciprocal_length: f64,
    /// `V0 inner_length / 3`.
    pub linear: f64,
    /// `64 V0³ inner_length³`.
    pub cubic: f64,
    /// `96 V0² inner_length³`.
    pub quadratic: f64,
    /// Energy in the Gaussian exponent, `V0`.
    pub exponent_energy: f64,
    /// `√V0`, multiplying `√β q u0` inside erfi.
    pub erf_argument_scale: f64,
    /// `√π / (4 √V0)`.
    pub erfi_prefactor: f64,
}

impl ClosedFormCoefficients {
    pub fn new(molecule: &Molecule, constants: &PhysicalConstants) -> Self {
        let v0 = molecule.v0();
        let inner = constants.hbar_c / (8.0 * constants.mass_energy(molecule.m()) * v0).sqrt();
        ClosedFormCoefficients {
            inner_length: inner,
            reciprocal_length: 1.0 / inner,
            linear: v0 * inner / 3.0,
            cubic: 64.0 * v0.powi(3) * inner.powi(3),
            quadratic: 96.0 * v0 * v0 * inner.powi(3),
            exponent_energy: v0,
            erf_argument_scale: v0.sqrt(),
            erfi_prefactor: PI.sqrt() / (4.0 * v0.sqrt()),
        }
    }

    /// The radicand under the erfi denominator, `-(β q² u0²)` times a free
    /// normalisation `scale`, expanded as
    /// `scale · (2 inner q / a - q² - inner² / a²)`; returns the three
    /// coefficients `(scale·2·inner, scale, scale·inner²)` of `q/a`, `q²` and `1/a²`.
    pub fn radicand_terms(&self, scale: f64) -> (f64, f64, f64) {
        (2.0 * scale * self.inner_length, scale, scale * self.inner_length.powi(2))
    }

    /// Evaluate the lower-endpoint, continuous-limit closed form directly in
    /// `(β, q, a)`. Uses the scaled Dawson route for the erfi factor.
    pub fn evaluate(&self, beta: f64, q: f64, a: f64) -> f64 {
        let u0 = 1.0 - self.inner_length / (a * q);
        let a3 = a.powi(3);
        let poly = 0.5 + self.linear * beta * q * u0 / a
            - (self.cubic * beta.powi(3) * q.powi(3) * u0.powi(3) + self.quadratic * beta * beta * q * u0)
                / (720.0 * a3);
        // e^{-x²} erfi(x) = 2 D(x)/√π
        let x = self.erf_argument_scale * beta.sqrt() * q * u0;
        let nu = a * self.reciprocal_length;
        let erfi_term = self.erfi_prefactor * nu / beta.sqrt() * 2.0 / PI.sqrt() * dawson(x);
        poly + erfi_term
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physchem::builtin_registry;

    fn spectrum(name: &str, q: f64) -> DeformedSpectrum {
        DeformedSpectrum::new(builtin_registry().get(name).unwrap(), q).unwrap()
    }

    #[test]
    fn direct_limits() {
        let s = spectrum("H2", 1.0);
        assert_eq!(z_direct(&s, 0.0).unwrap().z, 23.0);
        assert_eq!(z_direct(&s, 1e4).unwrap().z, 1.0);
        assert!(z_direct(&s, -1.0).is_err());
    }

    #[test]
    fn summand_and_derivatives() {
        let s = spectrum("H2", 1.0);
        assert_eq!(em_summand(0.0, &s, 1.0), 1.0);
        for order in [1, 3, 5] {
            assert_eq!(em_summand_derivative(1.3, order, &s, 0.0), 0.0);
        }
        let (q, nu, v0) = (s.q(), s.nu(), s.molecule().v0());
        let expected = -(4.0 * q * v0 / nu) * (1.0 - 1.0 / (q * nu));
        let got = em_summand_derivative(0.0, 1, &s, 1.0);
        assert!((got - expected).abs() / expected.abs() < 1e-14, "{got} {expected}");
        assert!(got < 0.0);
    }

    #[test]
    fn derivative_polynomials() {
        // H_1 = t, H_2 = t² + k, H_3 = t³ + 3kt
        assert_eq!(derivative_factor(0, 2.0, 3.0), 1.0);
        assert_eq!(derivative_factor(1, 2.0, 3.0), 2.0);
        assert_eq!(derivative_factor(2, 2.0, 3.0), 7.0);
        assert_eq!(derivative_factor(3, 2.0, 3.0), 26.0);
    }

    #[test]
    fn method_validation() {
        let s = spectrum("H2", 1.0);
        let bad = PartitionMethod::euler_maclaurin(4, EndpointMode::LowerOnly);
        assert!(matches!(z_euler_maclaurin(&s, 1.0, &bad), Err(Error::MethodMismatch(_))));
        let mut cf = PartitionMethod::closed_form(EndpointMode::LowerOnly);
        cf.em_order = 3;
        assert!(z_closed_form(&s, 1.0, &cf).is_err());
        let em = PartitionMethod::euler_maclaurin(2, EndpointMode::LowerOnly);
        assert!(z_euler_maclaurin(&s, 0.0, &em).is_err());
        assert!(z_closed_form(&s, 1.0, &em).is_err());
    }

    #[test]
    fn em_small_beta_limit() {
        let s = spectrum("H2", 1.0);
        let em = PartitionMethod::euler_maclaurin(2, EndpointMode::LowerOnly);
        let z = z_euler_maclaurin(&s, 1e-9, &em).unwrap().z;
        assert!((z - 22.5).abs() < 1e-6, "{z}");
    }

    #[test]
    fn endpoint_modes_differ_by_upper_terms() {
        let s = spectrum("HCl", 0.7);
        let lower = z_euler_maclaurin(&s, 2.0, &PartitionMethod::euler_maclaurin(3, EndpointMode::LowerOnly)).unwrap();
        let both = z_euler_maclaurin(&s, 2.0, &PartitionMethod::euler_maclaurin(3, EndpointMode::Both)).unwrap();
        let upper: f64 = ["half_f_upper", "upper_correction_p1", "upper_correction_p2", "upper_correction_p3"]
            .iter()
            .map(|k| both.diagnostics[*k])
            .sum();
        assert!((both.z - lower.z - upper).abs() < 1e-13);
    }

    #[test]
    fn non_positive_truncation_is_reported() {
        // the asymptotic corrections swamp Z at large beta
        let s = spectrum("H2", 1.0);
        let r = z_euler_maclaurin(&s, 50.0, &PartitionMethod::euler_maclaurin(2, EndpointMode::LowerOnly)).unwrap();
        assert!(r.z < 0.0);
        assert!(matches!(r.ln_z(), Err(Error::NonPositivePartition { .. })));
    }

    #[test]
    fn coefficient_form_matches_closed_form() {
        let reg = builtin_registry();
        for m in &reg {
            let coeffs = ClosedFormCoefficients::new(m, &PhysicalConstants::STANDARD);
            for q in [0.5, 1.0] {
                let s = DeformedSpectrum::new(m, q).unwrap();
                let method = PartitionMethod::closed_form(EndpointMode::LowerOnly).with_upper_limit(UpperLimit::Continuous);
                for beta in [0.3, 2.0, 9.0] {
                    let z = z_closed_form(&s, beta, &method).unwrap().z;
                    let w = coeffs.evaluate(beta, q, m.a());
                    assert!((z - w).abs() <= 1e-12 * z.abs(), "{} q={q} beta={beta}: {z} {w}", m.name());
                }
            }
        }
    }
}
