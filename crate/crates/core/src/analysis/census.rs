use super::Analyzer;
use crate::error::Result;
use crate::ternary::DigitSeq;

/// `|Q_i(s)|` for every coordinate `i` and first output digit `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub dim: usize,
    /// `counts[i - 1][s]`.
    pub counts: Vec<[u64; 3]>,
}

impl CensusTable {
    /// The value every entry takes, `3^(n-1)`.
    pub fn expected(&self) -> u64 {
        3u64.pow(self.dim as u32 - 1)
    }

    pub fn is_uniform(&self) -> bool {
        let e = self.expected();
        self.counts.iter().flatten().all(|&c| c == e)
    }
}

impl Analyzer {
    /// Tallies the first output digit of `x_i` over the `3^n` intervals
    /// `[k/3^n, (k+1)/3^n)`, each read through the canonical digits of its
    /// left endpoint.
    pub fn census(&self, i: usize) -> Result<[u64; 3]> {
        self.curve.check_index(i)?;
        let n = self.dim();
        let cells = self.grid_cells(n)?;
        let mut counts = [0u64; 3];
        for k in 0..cells {
            let t = DigitSeq::from_index(k, n);
            let out = self.curve.coordinate_digits(&t, i, 1)?;
            counts[out.digit(1).value() as usize] += 1;
        }
        Ok(counts)
    }

    pub fn census_table(&self) -> Result<CensusTable> {
        let counts = (1..=self.dim())
            .map(|i| self.census(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(CensusTable {
            dim: self.dim(),
            counts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn planar_census() {
        let a = Analyzer::new(2).unwrap();
        assert_eq!(a.census(1).unwrap(), [3, 3, 3]);
        assert_eq!(a.census(2).unwrap(), [3, 3, 3]);
    }

    #[test]
    fn spatial_census() {
        let table = Analyzer::new(3).unwrap().census_table().unwrap();
        assert_eq!(table.counts, vec![[9, 9, 9]; 3]);
        assert!(table.is_uniform());
    }

    #[test]
    fn census_validates_index() {
        let a = Analyzer::new(2).unwrap();
        assert!(matches!(
            a.census(0),
            Err(Error::CoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            a.census(3),
            Err(Error::CoordinateOutOfRange { .. })
        ));
    }
}
