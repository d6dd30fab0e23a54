//! Exact even-index Bernoulli numbers.

use std::sync::OnceLock;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Largest even index held by the shared table.
pub const MAX_INDEX: u32 = 30;

/// `B_2, B_4, ..., B_{2P}` as exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Builds `B_2 ..= B_{2 max_p}` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
    pub fn new(max_p: u32) -> Result<Self> {
        if max_p == 0 || 2 * max_p > MAX_INDEX {
            return Err(Error::domain(format!(
                "Bernoulli table order must be in 1..={}, got {max_p}",
                MAX_INDEX / 2
            )));
        }
        let top = 2 * max_p as usize;
        let mut b: Vec<Rational> = Vec::with_capacity(top + 1);
        b.push(Rational::from_integer(1));
        for m in 1..=top {
            // row m+1 of Pascal's triangle
            let mut binom: i128 = 1;
            let mut acc = Rational::from_integer(0);
            for (k, bk) in b.iter().enumerate() {
                acc += *bk * binom;
                binom = binom * (m as i128 + 1 - k as i128) / (k as i128 + 1);
            }
            // binom is now C(m+1, m)
            b.push(-acc / binom);
        }
        Ok(BernoulliTable { values: b.into_iter().skip(2).step_by(2).collect() })
    }

    pub fn max_p(&self) -> u32 {
        self.values.len() as u32
    }

    /// `B_{two_p}` for even `two_p` in `2 ..= 2P`.
    pub fn get(&self, two_p: u32) -> Result<Rational> {
        if two_p < 2 || two_p % 2 != 0 || two_p / 2 > self.max_p() {
            return Err(Error::domain(format!(
                "Bernoulli index must be even in 2..={}, got {two_p}",
                2 * self.max_p()
            )));
        }
        Ok(self.values[(two_p / 2 - 1) as usize])
    }
}

fn shared() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(MAX_INDEX / 2).expect("table order is in range"))
}

/// Exact `B_{two_p}` from the shared table.
pub fn bernoulli(two_p: u32) -> Result<Rational> {
    shared().get(two_p)
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
