//! The n-dimensional Peano curve `t -> (x_1(t), .., x_n(t))`.
//!
//! Digits of `t` are laid out column by column in an `n`-row matrix: digit
//! `t_{i+jn}` sits in row `i`, column `j`. The `j`-th output digit of `x_i` is
//! `t_{i+jn}`, complemented when the parity sum `S_{i+jn}` is odd, where
//! `S_{i+jn}` sums every digit before position `i+jn` except those earlier in
//! row `i`.
//!
//! Past the prefix every column adds `c * (n - 1)` to each `S` (with `c` the
//! tail digit, 0 or 2), which is even. So the output digits of a row are
//! constant in the tail region and every coordinate is an exact triadic
//! rational.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ternary::{Digit, DigitSeq, Tail, TriadicRational};

/// `xi^parity(a)`: the digit itself for even parity, `2 - a` for odd.
#[inline]
pub fn xi_apply(parity: u64, a: Digit) -> Digit {
    if parity.is_multiple_of(2) {
        a
    } else {
        a.complement()
    }
}

/// Running digit sums for incremental evaluation of `S_{i+jn}`.
///
/// After digits `t_1 .. t_{k-1}` have been pushed, [`SState::next_s`] for the
/// row of position `k` is exactly `S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SState {
    total: u64,
    row_totals: Vec<u64>,
}

impl SState {
    pub fn new(dim: usize) -> Self {
        SState {
            total: 0,
            row_totals: vec![0; dim],
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn row_totals(&self) -> &[u64] {
        &self.row_totals
    }

    /// `S` for the next digit of row `row` (1-based).
    #[inline]
    pub fn next_s(&self, row: usize) -> u64 {
        self.total - self.row_totals[row - 1]
    }

    #[inline]
    pub fn push(&mut self, row: usize, d: Digit) {
        let v = d.value() as u64;
        self.total += v;
        self.row_totals[row - 1] += v;
    }
}

/// A point of the unit cube `[0, 1]^n` with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<TriadicRational>,
}

impl Point {
    pub fn new(coords: Vec<TriadicRational>) -> Self {
        Point { coords }
    }

    pub fn coords(&self) -> &[TriadicRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_coords(self) -> Vec<TriadicRational> {
        self.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The curve in a fixed dimension `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeanoCurve {
    dim: usize,
}

impl PeanoCurve {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        Ok(PeanoCurve { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.dim).contains(&i) {
            Ok(())
        } else {
            Err(Error::CoordinateOutOfRange {
                index: i,
                dim: self.dim,
            })
        }
    }

    /// Smallest column depth whose `n * depth` digits cover the prefix of `t`.
    pub fn required_depth(&self, t: &DigitSeq) -> usize {
        t.len().div_ceil(self.dim)
    }

    fn check_depth(&self, t: &DigitSeq, depth: usize) -> Result<()> {
        let required = self.required_depth(t);
        if depth < required {
            return Err(Error::DepthTooSmall { depth, required });
        }
        Ok(())
    }

    /// `S_{i+jn}(t)`: all digits before position `i + jn` minus the row-`i`
    /// digits in columns `0 .. j`.
    ///
    /// Reads only `t_1 .. t_{(i-1)+jn}`; positions past the prefix read the
    /// tail digit.
    pub fn s_value(&self, t: &DigitSeq, i: usize, j: usize) -> Result<u64> {
        self.check_index(i)?;
        let mut state = SState::new(self.dim);
        let position = i + j * self.dim;
        for k in 1..position {
            state.push((k - 1) % self.dim + 1, t.digit(k));
        }
        Ok(state.next_s(i))
    }

    /// Runs the digit transform over the first `depth` columns, calling
    /// `emit(row, digit)` for every output digit in index order, and returns
    /// the constant output digit of each row in the tail region.
    fn walk(&self, t: &DigitSeq, depth: usize, mut emit: impl FnMut(usize, Digit)) -> Vec<Digit> {
        let n = self.dim;
        let mut state = SState::new(n);
        for k in 1..=n * depth {
            let row = (k - 1) % n + 1;
            let d = t.digit(k);
            emit(row, xi_apply(state.next_s(row), d));
            state.push(row, d);
        }
        let c = t.digit(n * depth + 1);
        let mut tails = Vec::with_capacity(n);
        for row in 1..=n {
            tails.push(xi_apply(state.next_s(row), c));
            state.push(row, c);
        }
        tails
    }

    /// The output digit sequence of `x_i(t)`: `depth` digits followed by the
    /// constant tail.
    pub fn coordinate_digits(&self, t: &DigitSeq, i: usize, depth: usize) -> Result<DigitSeq> {
        self.check_index(i)?;
        self.check_depth(t, depth)?;
        let mut digits = Vec::with_capacity(depth);
        let tails = self.walk(t, depth, |row, d| {
            if row == i {
                digits.push(d);
            }
        });
        let tail = Tail::from_digit(tails[i - 1]).expect("tail output digit is 0 or 2");
        Ok(DigitSeq::new(digits, tail))
    }

    /// The exact value `x_i(t)`.
    pub fn coordinate(&self, t: &DigitSeq, i: usize, depth: usize) -> Result<TriadicRational> {
        Ok(self.coordinate_digits(t, i, depth)?.to_triadic())
    }

    /// The first `depth` output digits of `x_i(t)` read as a base-3 integer,
    /// and whether the output tail is all twos. `x_i(t) * 3^depth` is the sum
    /// of the two.
    ///
    /// Callers guarantee `depth <= 40` and a prefix of at most `n * depth`
    /// digits.
    pub(crate) fn coordinate_scaled(&self, t: &DigitSeq, i: usize, depth: usize) -> (u64, bool) {
        debug_assert!(depth <= 40 && self.required_depth(t) <= depth);
        let mut acc = 0u64;
        let tails = self.walk(t, depth, |row, d| {
            if row == i {
                acc = acc * 3 + d.value() as u64;
            }
        });
        (acc, tails[i - 1] == Digit::TWO)
    }

    /// `alpha(t) = (x_1(t), .., x_n(t))`, every coordinate exact.
    pub fn eval(&self, t: &DigitSeq, depth: usize) -> Result<Point> {
        self.check_depth(t, depth)?;
        let n = self.dim;
        let mut numerators = vec![BigUint::default(); n];
        let tails = self.walk(t, depth, |row, d| {
            let acc = &mut numerators[row - 1];
            *acc = &*acc * 3u32 + d.value() as u32;
        });
        let coords = numerators
            .into_iter()
            .zip(tails)
            .map(|(num, tail)| {
                let num = if tail == Digit::TWO { num + 1u32 } else { num };
                TriadicRational::new(num, depth as u32).expect("coordinate lies in [0, 1]")
            })
            .collect();
        Ok(Point::new(coords))
    }
}
