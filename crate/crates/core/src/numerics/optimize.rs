//! Bounded scalar maximization by golden-section search.

use crate::error::{Error, Result};

/// 1/φ
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub argmax: f64,
    pub max: f64,
    /// Final bracket; its width is at most the requested tolerance.
    pub bracket: (f64, f64),
    /// The final bracket still touches `lo` or `hi`: the maximum is probably
    /// outside the search interval.
    pub at_boundary: bool,
    pub evaluations: usize,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn maximize_scalar<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Maximum>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("invalid search interval [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut evaluations = 0;
    let mut eval = |x: f64| -> Result<f64> {
        evaluations += 1;
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite(format!("objective is {y} at {x}")))
        }
    };

    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while b - a > tol {
        let width = b - a;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
        if b - a >= width {
            // tolerance below floating resolution of the bracket
            break;
        }
    }
    let (argmax, max) = if fc >= fd { (c, fc) } else { (d, fd) };
    Ok(Maximum { argmax, max, bracket: (a, b), at_boundary: a == lo || b == hi, evaluations })
}
