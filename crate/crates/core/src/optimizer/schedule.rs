use alloc::vec::Vec;

use crate::error::invalid;
use crate::Result;

/// Layer fractions `alpha_{k,d}` for `k in 1..=K`, `d in 1..=D`.
///
/// Each column is strictly increasing in `k` and lies in `(0, 1/2)`; level
/// `K+1` is the middle layer with `alpha_{K+1,d} = 1/2`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AlphaSchedule {
    /// `rows[k-1][d-1]`.
    rows: Vec<Vec<f64>>,
}

impl AlphaSchedule {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(invalid!(InvalidSchedule, "need at least one level"));
        };
        let d = first.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(invalid!(InvalidSchedule, "every level needs the same number D >= 1 of entries"));
        }
        for col in 0..d {
            let mut prev = 0.0;
            for (k, row) in rows.iter().enumerate() {
                let a = row[col];
                if !(a > prev && a < 0.5) {
                    return Err(invalid!(
                        InvalidSchedule,
                        "alpha_({},{}) = {a} breaks 0 < alpha_(1,d) < ... < alpha_(K,d) < 1/2",
                        k + 1,
                        col + 1
                    ));
                }
                prev = a;
            }
        }
        Ok(Self { rows })
    }

    /// Single level with the given `alpha_{1,d}`.
    pub fn single(alpha: Vec<f64>) -> Result<Self> {
        Self::new(alloc::vec![alpha])
    }

    /// Every digit shares the level fractions `levels[k-1]`.
    pub fn uniform(d: usize, levels: &[f64]) -> Result<Self> {
        Self::new(levels.iter().map(|&a| alloc::vec![a; d]).collect())
    }

    /// Number of search levels `K`.
    pub fn layers(&self) -> usize {
        self.rows.len()
    }

    /// Largest digit `D` covered.
    pub fn max_digit(&self) -> usize {
        self.rows[0].len()
    }

    /// `alpha_{k,d}` for `1 <= k <= K+1` and `1 <= d <= D`.
    pub fn alpha(&self, k: usize, d: usize) -> f64 {
        if k == self.rows.len() + 1 {
            0.5
        } else {
            self.rows[k - 1][d - 1]
        }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}
