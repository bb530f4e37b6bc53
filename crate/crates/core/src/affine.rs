//! Self-affinity of the coordinate functions.
//!
//! Cutting `t` after `k` columns (`kn` digits) splits it into an anchor
//! `t(k) = 0.t_1..t_{kn}` and a shifted parameter `u = 3^{kn} (t - t(k))`. Then
//!
//! ```text
//! 3^k (x_i(t) - x_i(t(k))) = (-1)^sigma(k) x_i(u)
//! ```
//!
//! with `sigma(k)` the digit sum of the first `k` columns minus the row-`i`
//! digits among them. Both sides are exact, so the residual is an exact zero.

use num_rational::Ratio;

use crate::curve::PeanoCurve;
use crate::error::{Error, Result};
use crate::ternary::{DigitSeq, SignedTriadic, Tail, TriadicRational};

/// The pieces of `t` around a cut after `k` columns, for coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineDecomposition {
    pub k: usize,
    /// `t(k)`: the first `kn` digits followed by zeros.
    pub anchor: TriadicRational,
    /// `u`, with `u_s = t_{s+kn}` and the tail of `t`.
    pub shifted: DigitSeq,
    pub sigma: u64,
    /// `(-1)^sigma`.
    pub sign: i8,
}

/// Scale parameter `H` and integer base `r` of the self-affine form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfAffineParams {
    pub hurst: Ratio<u32>,
    pub base: u64,
}

/// `H = 1/n` and `r = 3^n`.
pub fn self_affine_params(dim: usize) -> Result<SelfAffineParams> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let base = 3u64
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::InvalidArgument(format!("3^{dim} overflows u64")))?;
    Ok(SelfAffineParams {
        hurst: Ratio::new(1, dim as u32),
        base,
    })
}

/// The closed forms of the planar case: `S_{1+2j} = t_2 + t_4 + .. + t_{2j}`
/// and `S_{2+2j} = t_1 + t_3 + .. + t_{2j+1}`.
pub fn classic_peano_s(t: &DigitSeq, i: usize, j: usize) -> Result<u64> {
    let sum = |positions: &mut dyn Iterator<Item = usize>| -> u64 {
        positions.map(|k| t.digit(k).value() as u64).sum()
    };
    match i {
        1 => Ok(sum(&mut (1..=j).map(|q| 2 * q))),
        2 => Ok(sum(&mut (0..=j).map(|q| 2 * q + 1))),
        _ => Err(Error::CoordinateOutOfRange { index: i, dim: 2 }),
    }
}

impl PeanoCurve {
    pub fn decompose(&self, t: &DigitSeq, i: usize, k: usize) -> Result<AffineDecomposition> {
        self.check_index(i)?;
        if k == 0 {
            return Err(Error::InvalidArgument(
                "column cut k must be at least 1".into(),
            ));
        }
        let n = self.dim();
        let cut = k * n;
        let full = t.extend(cut);
        let (head, rest) = full.prefix().split_at(cut);

        let column_sum: u64 = head.iter().map(|d| d.value() as u64).sum();
        let row_sum: u64 = (0..k).map(|r| head[i - 1 + r * n].value() as u64).sum();
        let sigma = column_sum - row_sum;

        Ok(AffineDecomposition {
            k,
            anchor: DigitSeq::new(head.to_vec(), Tail::Zero).to_triadic(),
            shifted: DigitSeq::new(rest.to_vec(), t.tail()),
            sigma,
            sign: if sigma.is_multiple_of(2) { 1 } else { -1 },
        })
    }

    /// `3^k (x_i(t) - x_i(t(k))) - (-1)^sigma x_i(u)`, computed exactly.
    ///
    /// `depth` must cover `t` after materializing its first `k` columns.
    pub fn self_affinity_residual(
        &self,
        t: &DigitSeq,
        i: usize,
        k: usize,
        depth: usize,
    ) -> Result<SignedTriadic> {
        let parts = self.decompose(t, i, k)?;
        let full = t.extend(k * self.dim());
        let required = self.required_depth(&full);
        if depth < required {
            return Err(Error::DepthTooSmall { depth, required });
        }
        let x_t = SignedTriadic::from(self.coordinate(&full, i, depth)?);
        let anchor = DigitSeq::from_triadic(&parts.anchor);
        let x_anchor = SignedTriadic::from(self.coordinate(&anchor, i, depth)?);
        let x_u = SignedTriadic::from(self.coordinate(&parts.shifted, i, depth)?);

        let lhs = (&x_t - &x_anchor).scale_pow3(k as u32);
        let rhs = if parts.sign > 0 { x_u } else { -x_u };
        Ok(&lhs - &rhs)
    }
}
