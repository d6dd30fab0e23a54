//! Error function, Dawson function and overflow-safe Gaussian-growth integrals.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// The error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

const SERIES_LIMIT: f64 = 4.0;
const CF_DEPTH: usize = 100;

/// Dawson's integral `D(x) = e^{-x²} ∫_0^x e^{t²} dt`.
///
/// Below `|x| = 4` the positive-term series `e^{-x²} Σ x^{2n+1} / (n! (2n+1))`
/// is summed directly; above, the Gauss continued fraction
/// `x / (1 + 2x² - 4x²/(3 + 2x² - 8x²/(5 + 2x² - ...)))` is evaluated bottom-up.
pub fn dawson(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let value = if ax < SERIES_LIMIT {
        dawson_series(ax)
    } else if ax < 1e7 {
        dawson_continued_fraction(ax)
    } else {
        // 0.5/x (1 + 1/(2x²)), exact to rounding here
        0.5 / ax * (1.0 + 0.5 / (ax * ax))
    };
    value.copysign(x)
}

fn dawson_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= x2 / n;
        let t = term / (2.0 * n + 1.0);
        sum += t;
        if t <= f64::EPSILON * 0.25 * sum {
            break;
        }
    }
    (-x2).exp() * sum
}

fn dawson_continued_fraction(x: f64) -> f64 {
    let x2 = x * x;
    let mut tail = 0.0;
    for k in (1..=CF_DEPTH).rev() {
        let k = k as f64;
        tail = 4.0 * k * x2 / ((2.0 * k + 1.0) + 2.0 * x2 - tail);
    }
    x / (1.0 + 2.0 * x2 - tail)
}

/// Imaginary error function `erfi(x) = -i erf(ix)`; overflows to ±inf past |x| ≈ 26.6.
pub fn erfi(x: f64) -> f64 {
    2.0 / PI.sqrt() * (x * x).exp() * dawson(x)
}

/// A positive-range real stored as `mantissa · e^{log_scale}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledValue {
    pub mantissa: f64,
    pub log_scale: f64,
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue { mantissa: 0.0, log_scale: 0.0 };

    pub fn new(mantissa: f64, log_scale: f64) -> Self {
        ScaledValue { mantissa, log_scale }
    }

    /// Plain value; may overflow to infinity or underflow to zero.
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * self.log_scale.exp()
        }
    }

    /// Multiply by `e^{delta}` without touching the mantissa.
    pub fn rescaled(self, delta: f64) -> Self {
        ScaledValue { mantissa: self.mantissa, log_scale: self.log_scale + delta }
    }

    pub fn scale(self, factor: f64) -> Self {
        ScaledValue { mantissa: self.mantissa * factor, log_scale: self.log_scale }
    }

    /// Natural log of the absolute value.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.log_scale
    }

    pub fn add(self, other: ScaledValue) -> ScaledValue {
        if self.mantissa == 0.0 {
            return other;
        }
        if other.mantissa == 0.0 {
            return self;
        }
        let l = self.log_scale.max(other.log_scale);
        ScaledValue {
            mantissa: self.mantissa * (self.log_scale - l).exp()
                + other.mantissa * (other.log_scale - l).exp(),
            log_scale: l,
        }
    }
}

/// `∫_{u_lo}^{u_hi} e^{c u²} du` in scaled form, via
/// `∫_0^x e^{c t²} dt = e^{c x²} D(√c x) / √c`.
///
/// The log-scale is `c · max(u_lo², u_hi²)`, so the mantissa stays O(1/√c)
/// however large the exponent gets.
pub fn exp_scaled_erfi_integral(c: f64, u_lo: f64, u_hi: f64) -> Result<ScaledValue> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::domain(format!("growth rate must be finite and >= 0, got {c}")));
    }
    if !(u_lo <= u_hi) || !u_lo.is_finite() || !u_hi.is_finite() {
        return Err(Error::domain(format!("invalid interval ({u_lo}, {u_hi})")));
    }
    if u_lo == u_hi {
        return Ok(ScaledValue::ZERO);
    }
    if c == 0.0 {
        return Ok(ScaledValue::new(u_hi - u_lo, 0.0));
    }
    let sc = c.sqrt();
    let log_scale = c * u_lo.abs().max(u_hi.abs()).powi(2);
    let part = |u: f64| (c * u * u - log_scale).exp() * dawson(sc * u);
    Ok(ScaledValue::new((part(u_hi) - part(u_lo)) / sc, log_scale))
}
