use std::collections::BTreeSet;

use num_rational::Ratio;

use super::Analyzer;
use crate::error::{Error, Result};
use crate::ternary::TriadicRational;

/// Hölder constant asserted for exponent `1/n`.
///
/// Two adjacent level-`d` blocks each have an `x` range of `3^-d`, and
/// `3^-(d+1)n < |t - u| <= 3^-dn` puts the pair within such blocks, giving
/// `2 * 3`.
pub const HOLDER_CONSTANT: f64 = 6.0;

/// Largest `|x_i(t) - x_i(u)| / |t - u|^{1/n}` over the scanned grid pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct HolderReport {
    pub depth: usize,
    pub max_ratio: f64,
    /// `max_ratio^n`, exact: `|dX|^n / lag` with `dX` the numerator
    /// difference at depth `m` and `lag` the pair distance in grid steps.
    pub max_ratio_pow: Ratio<u128>,
    pub t: TriadicRational,
    pub u: TriadicRational,
    pub pairs: u64,
}

impl Analyzer {
    /// Scans pairs `(s, s + lag)` of the grid `s / 3^{n m}`.
    ///
    /// Lags are `g * 3^{n l}` for `1 <= g <= 3^n` and `0 <= l < m`: every
    /// separation up to one block at each coarser scale, adjacent pairs
    /// included. Ties keep the first pair in (lag, s) order.
    pub fn holder_scan(&self, i: usize, depth: usize) -> Result<HolderReport> {
        if depth == 0 {
            return Err(Error::InvalidArgument(
                "holder scan needs depth >= 1".into(),
            ));
        }
        let n = self.dim();
        let values = self.grid_values(i, depth)?;
        let cells = (values.len() - 1) as u64;
        let block = 3u64.pow(n as u32);
        let lags: BTreeSet<u64> = (0..depth)
            .flat_map(|l| {
                let scale = 3u64.pow((n * l) as u32);
                (1..=block).map(move |g| g * scale)
            })
            .filter(|&lag| lag <= cells)
            .collect();

        let mut best = (0u128, 1u128);
        let mut arg = (0u64, 0u64);
        let mut pairs = 0u64;
        for &lag in &lags {
            for s in 0..=(cells - lag) {
                let dx = values[s as usize].abs_diff(values[(s + lag) as usize]) as u128;
                let pow = dx.pow(n as u32);
                pairs += 1;
                // pow / lag > best.0 / best.1
                if pow * best.1 > best.0 * lag as u128 {
                    best = (pow, lag as u128);
                    arg = (s, s + lag);
                }
            }
        }

        let ratio = Ratio::new(best.0, best.1);
        let max_ratio = (best.0 as f64 / best.1 as f64).powf(1.0 / n as f64);
        let exponent = (n * depth) as u32;
        Ok(HolderReport {
            depth,
            max_ratio,
            max_ratio_pow: ratio,
            t: TriadicRational::new(arg.0, exponent)?,
            u: TriadicRational::new(arg.1, exponent)?,
            pairs,
        })
    }
}
