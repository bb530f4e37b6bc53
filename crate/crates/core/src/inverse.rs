//! Point-to-parameter construction and spatial keys.
//!
//! Given the ternary digits `a_{i+jn}` of every target coordinate, the
//! parameter digits are built in index order as
//! `t_{i+jn} = xi^{S_{i+jn}}(a_{i+jn})`. `S_{i+jn}` only reads digits that are
//! already fixed, and `xi` is an involution, so the curve maps the result back
//! onto the target digits.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::curve::{xi_apply, PeanoCurve, Point, SState};
use crate::error::{Error, Result};
use crate::ternary::{pow3, DigitSeq, Tail};

/// A target point given by one ternary representation per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointDigits {
    rows: Vec<DigitSeq>,
}

impl PointDigits {
    pub fn new(rows: Vec<DigitSeq>) -> Self {
        PointDigits { rows }
    }

    pub fn rows(&self) -> &[DigitSeq] {
        &self.rows
    }
}

impl From<&Point> for PointDigits {
    fn from(p: &Point) -> Self {
        PointDigits {
            rows: p.coords().iter().map(DigitSeq::from_triadic).collect(),
        }
    }
}

/// A position along the curve at resolution `3^-(n * depth)`.
///
/// Keys of equal depth order exactly as their parameters do.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SfcKey {
    depth: usize,
    index: BigUint,
}

impl SfcKey {
    pub fn new(index: BigUint, depth: usize) -> Self {
        SfcKey { depth, index }
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

impl fmt::Display for SfcKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.index, self.depth)
    }
}

/// Parses the `index@depth` form.
impl FromStr for SfcKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (index, depth) = s
            .trim()
            .split_once('@')
            .ok_or_else(|| Error::parse(s, "expected index@depth"))?;
        let index = index
            .parse::<BigUint>()
            .map_err(|_| Error::parse(s, "bad key index"))?;
        let depth = depth
            .parse::<usize>()
            .map_err(|_| Error::parse(s, "bad key depth"))?;
        Ok(SfcKey { depth, index })
    }
}

impl PeanoCurve {
    /// Builds a parameter of `n * depth` digits whose image agrees with the
    /// target in the first `depth` ternary digits of every coordinate.
    ///
    /// Rows with a two tail are first rewritten to their zero-tail form, so
    /// boundary points always get the same preimage. The value 1 keeps its
    /// only representation `0.(2)`. Rows are then truncated to `depth`
    /// columns.
    pub fn invert(&self, target: &PointDigits, depth: usize) -> Result<DigitSeq> {
        let n = self.dim();
        if target.rows.len() != n {
            return Err(Error::RowCount {
                expected: n,
                found: target.rows.len(),
            });
        }
        let rows: Vec<DigitSeq> = target
            .rows
            .iter()
            .map(|row| match row.tail() {
                Tail::Two => row.alternate_rep().unwrap_or_else(|_| row.clone()),
                Tail::Zero => row.clone(),
            })
            .collect();

        let mut state = SState::new(n);
        let mut prefix = Vec::with_capacity(n * depth);
        for k in 1..=n * depth {
            let row = (k - 1) % n + 1;
            let column = (k - 1) / n;
            let a = rows[row - 1].digit(column + 1);
            let t = xi_apply(state.next_s(row), a);
            state.push(row, t);
            prefix.push(t);
        }
        Ok(DigitSeq::new(prefix, Tail::Zero))
    }

    /// The key of the parameter returned by [`PeanoCurve::invert`].
    pub fn key_encode(&self, target: &PointDigits, depth: usize) -> Result<SfcKey> {
        let t = self.invert(target, depth)?;
        let index = t
            .prefix()
            .iter()
            .fold(BigUint::zero(), |acc, d| acc * 3u32 + d.value() as u32);
        Ok(SfcKey { depth, index })
    }

    /// The curve point at the key's grid parameter `index / 3^(n * depth)`.
    pub fn key_decode(&self, key: &SfcKey) -> Result<Point> {
        let digits = self.dim() * key.depth;
        if key.index >= pow3(digits as u32) {
            return Err(Error::KeyOutOfRange {
                index: key.index.to_string(),
                digits,
            });
        }
        let significant = if key.index.is_zero() {
            Vec::new()
        } else {
            key.index.to_radix_be(3)
        };
        let mut prefix = vec![0u8; digits - significant.len()];
        prefix.extend(significant);
        self.eval(&DigitSeq::from_digits(&prefix, Tail::Zero)?, key.depth)
    }
}
