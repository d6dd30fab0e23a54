//! Central finite differences with Richardson extrapolation.

use crate::error::{Error, Result};

/// Step and extrapolation settings for [`differentiate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiffConfig {
    /// Initial step relative to `|at|` (absolute when `at == 0`).
    pub base_step: f64,
    /// Number of step halvings folded into the Richardson table.
    pub richardson_levels: u32,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig { base_step: 1e-3, richardson_levels: 2 }
    }
}

impl DiffConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.base_step > 0.0 && self.base_step < 1.0) {
            return Err(Error::domain(format!("base_step must lie in (0, 1), got {}", self.base_step)));
        }
        if self.richardson_levels > 8 {
            return Err(Error::domain("richardson_levels above 8 only amplifies roundoff"));
        }
        Ok(())
    }
}

/// Derivative of order 1 or 2 of `f` at `at`.
///
/// Central stencils have error series in even powers of the step, so each
/// Richardson level removes one more power of `h²`.
pub fn differentiate<F>(f: F, at: f64, order: u8, cfg: &DiffConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !at.is_finite() {
        return Err(Error::domain(format!("cannot differentiate at {at}")));
    }
    let centre = match order {
        1 => 0.0,
        2 => eval(&f, at)?,
        _ => return Err(Error::domain(format!("derivative order must be 1 or 2, got {order}"))),
    };
    let mut h = cfg.base_step * if at == 0.0 { 1.0 } else { at.abs() };

    let mut table: Vec<f64> = Vec::with_capacity(cfg.richardson_levels as usize + 1);
    for level in 0..=cfg.richardson_levels {
        let plus = eval(&f, at + h)?;
        let minus = eval(&f, at - h)?;
        let mut estimate = match order {
            1 => (plus - minus) / (2.0 * h),
            _ => (plus - 2.0 * centre + minus) / (h * h),
        };
        // fold into the previous row
        let mut factor = 1.0;
        for prev in table.iter_mut().take(level as usize) {
            factor *= 4.0;
            let improved = (factor * estimate - *prev) / (factor - 1.0);
            *prev = estimate;
            estimate = improved;
        }
        table.push(estimate);
        h *= 0.5;
    }
    Ok(*table.last().expect("at least one level"))
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite(format!("function value {y} at {x} in difference stencil")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let cfg = DiffConfig::default();
        let d = differentiate(|x| x * x, 3.0, 1, &cfg).unwrap();
        assert!((d - 6.0).abs() < 1e-9);
        let d = differentiate(|x| 2.0 * x * x - x + 4.0, -1.5, 1, &cfg).unwrap();
        assert!((d + 7.0).abs() / 7.0 < 1e-9);
        let d = differentiate(|x| x * x * x - 3.0 * x * x, 2.0, 2, &cfg).unwrap();
        assert!((d - 6.0).abs() / 6.0 < 1e-9);
    }

    #[test]
    fn exponential() {
        let d2 = differentiate(f64::exp, 0.0, 2, &DiffConfig::default()).unwrap();
        assert!((d2 - 1.0).abs() < 1e-7);
        let d1 = differentiate(f64::sin, 1.0, 1, &DiffConfig::default()).unwrap();
        assert!((d1 - 1.0f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn richardson_improves_on_plain_stencil() {
        let plain = DiffConfig { base_step: 1e-2, richardson_levels: 0 };
        let rich = DiffConfig { base_step: 1e-2, richardson_levels: 2 };
        let exact = 2.0f64.exp();
        let e0 = (differentiate(f64::exp, 2.0, 2, &plain).unwrap() - exact).abs();
        let e2 = (differentiate(f64::exp, 2.0, 2, &rich).unwrap() - exact).abs();
        assert!(e2 < e0 * 1e-3, "{e0} {e2}");
    }

    #[test]
    fn errors() {
        let cfg = DiffConfig::default();
        assert!(matches!(differentiate(|x| (x - 1.0).ln(), 1.0005, 1, &cfg), Err(Error::NonFinite(_))));
        assert!(differentiate(|x| x, 1.0, 3, &cfg).is_err());
        let bad = DiffConfig { base_step: 0.0, richardson_levels: 1 };
        assert!(differentiate(|x| x, 1.0, 1, &bad).is_err());
    }
}
