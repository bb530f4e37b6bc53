use super::Analyzer;
use crate::error::{Error, Result};
use crate::ternary::DigitSeq;

/// How a value sitting exactly on a bin edge is assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BinRule {
    /// Bin by the leading output digits the curve produces. A value computed
    /// as `0.y_1..y_m(2)` goes to the bin of `y_1..y_m`, which is the cell the
    /// whole parameter cell maps onto.
    #[default]
    Representation,
    /// Bin by numeric value: an edge value goes to the upper bin, and 1 to the
    /// top bin.
    UpperEdge,
}

/// Counts of `x_i` over the grid `s / 3^{n m}`, `s < 3^{n m}`, in `3^d` bins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub grid_depth: usize,
    pub bin_depth: usize,
    pub rule: BinRule,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The count every bin would hold under exact equidistribution.
    pub fn expected(&self) -> f64 {
        self.total() as f64 / self.counts.len() as f64
    }

    /// Largest absolute deviation of a bin count from [`Histogram::expected`].
    pub fn max_deviation(&self) -> f64 {
        let e = self.expected();
        self.counts
            .iter()
            .map(|&c| (c as f64 - e).abs())
            .fold(0.0, f64::max)
    }
}

impl Analyzer {
    pub fn histogram(
        &self,
        i: usize,
        grid_depth: usize,
        bin_depth: usize,
        rule: BinRule,
    ) -> Result<Histogram> {
        self.curve.check_index(i)?;
        if bin_depth > grid_depth {
            return Err(Error::InvalidArgument(format!(
                "bin depth {bin_depth} exceeds grid depth {grid_depth}"
            )));
        }
        let n = self.dim();
        let cells = self.grid_cells(n * grid_depth)?;
        let bins = 3u64.pow(bin_depth as u32);
        let width = 3u64.pow((grid_depth - bin_depth) as u32);
        let mut counts = vec![0u64; bins as usize];
        for s in 0..cells {
            let t = DigitSeq::from_index(s, n * grid_depth);
            let (digits, two) = self.curve.coordinate_scaled(&t, i, grid_depth);
            let bin = match rule {
                BinRule::Representation => digits / width,
                BinRule::UpperEdge => ((digits + u64::from(two)) / width).min(bins - 1),
            };
            counts[bin as usize] += 1;
        }
        Ok(Histogram {
            grid_depth,
            bin_depth,
            rule,
            counts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ternary::pow3;
    use num_traits::ToPrimitive;

    /// Brute-force oracle: exact values, numeric bins, no fast path.
    fn numeric_bins(n: usize, i: usize, m: usize, d: usize) -> Vec<u64> {
        let c = crate::PeanoCurve::new(n).unwrap();
        let mut counts = vec![0u64; 3usize.pow(d as u32)];
        for s in 0..3u64.pow((n * m) as u32) {
            let x = c.coordinate(&DigitSeq::from_index(s, n * m), i, m).unwrap();
            // floor(x * 3^d) with exact integers
            let floor = (x.numerator() * pow3(d as u32)) / pow3(x.exponent());
            let bin = floor.to_u64().unwrap().min(counts.len() as u64 - 1);
            counts[bin as usize] += 1;
        }
        counts
    }

    #[test]
    fn single_bin_holds_everything() {
        let h = Analyzer::new(2)
            .unwrap()
            .histogram(1, 1, 0, BinRule::Representation)
            .unwrap();
        assert_eq!(h.counts, vec![9]);
    }

    #[test]
    fn representation_bins_are_exactly_equal() {
        let a = Analyzer::new(2).unwrap();
        let h = a.histogram(1, 3, 1, BinRule::Representation).unwrap();
        assert_eq!(h.counts, vec![243, 243, 243]);
        let h = Analyzer::new(3)
            .unwrap()
            .histogram(2, 2, 1, BinRule::Representation)
            .unwrap();
        assert_eq!(h.counts, vec![243, 243, 243]);
    }

    #[test]
    fn upper_edge_rule_matches_numeric_oracle() {
        for (n, i, m, d) in [(2, 1, 1, 1), (2, 1, 3, 1), (2, 2, 2, 2), (3, 2, 2, 1)] {
            let h = Analyzer::new(n)
                .unwrap()
                .histogram(i, m, d, BinRule::UpperEdge)
                .unwrap();
            assert_eq!(
                h.counts,
                numeric_bins(n, i, m, d),
                "n={n} i={i} m={m} d={d}"
            );
        }
        // The edge rule moves whole cells between the outer bins.
        let h = Analyzer::new(2)
            .unwrap()
            .histogram(1, 3, 1, BinRule::UpperEdge)
            .unwrap();
        assert_eq!(h.counts, vec![230, 243, 256]);
    }

    #[test]
    fn rejects_bin_depth_above_grid_depth() {
        let a = Analyzer::new(2).unwrap();
        assert!(a.histogram(1, 1, 2, BinRule::Representation).is_err());
    }

    #[test]
    fn reports_budget() {
        let a = Analyzer::new(2).unwrap().with_max_cells(100);
        assert_eq!(
            a.histogram(1, 4, 1, BinRule::Representation),
            Err(Error::ResourceLimit {
                required: 6561,
                limit: 100
            })
        );
    }
}
