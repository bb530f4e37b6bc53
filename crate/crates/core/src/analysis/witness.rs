use super::Analyzer;
use crate::error::Result;
use crate::ternary::{Digit, DigitSeq, SignedTriadic, Tail, TriadicRational};

/// A parameter `u` in the level-`d` block of `t` where `x_i` moves far.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub depth: usize,
    pub u: DigitSeq,
    /// `|x_i(t) - x_i(u)|`.
    pub delta_x: TriadicRational,
    /// `|t - u|`.
    pub delta_t: TriadicRational,
    /// `delta_x / delta_t`.
    pub quotient: f64,
}

impl Analyzer {
    /// Searches the level-`d` block containing `t` for a point whose
    /// coordinate differs from `x_i(t)` by at least `3^-d / 2`.
    ///
    /// The candidates are the `3^n + 1` points of the depth-`d+1` grid inside
    /// the closed block, both block endpoints included. On each block `x_i`
    /// sweeps an interval of length `3^-d` between its values at the
    /// endpoints, so the best candidate always meets the bound. Ties go to
    /// the leftmost candidate.
    pub fn lower_modulus_witness(&self, i: usize, t: &DigitSeq, depth: usize) -> Result<Witness> {
        self.curve.check_index(i)?;
        let n = self.dim();
        let t = t.canonical();
        let work = self.curve.required_depth(&t).max(depth + 1);
        let x_t = SignedTriadic::from(&self.curve.coordinate(&t, i, work)?);
        let t_value = SignedTriadic::from(&t.to_triadic());

        let block: Vec<Digit> = t.extend(n * depth).prefix()[..n * depth].to_vec();
        let steps = 3u64.pow(n as u32);
        let mut best: Option<(TriadicRational, DigitSeq)> = None;
        for s in 0..=steps {
            let u = if s == steps {
                // the right block endpoint, written with the block's own digits
                DigitSeq::new(block.clone(), Tail::Two)
            } else {
                let mut digits = block.clone();
                digits.extend(DigitSeq::from_index(s, n).prefix());
                DigitSeq::new(digits, Tail::Zero)
            };
            let x_u = SignedTriadic::from(&self.curve.coordinate(&u, i, work)?);
            let dx = (&x_t - &x_u).abs();
            if best.as_ref().is_none_or(|(b, _)| dx > *b) {
                best = Some((dx, u));
            }
        }
        let (delta_x, u) = best.expect("candidate set is nonempty");
        let u = u.canonical();
        let delta_t = (&t_value - &SignedTriadic::from(&u.to_triadic())).abs();
        let quotient = delta_x.to_f64() / delta_t.to_f64();
        Ok(Witness {
            depth,
            u,
            delta_x,
            delta_t,
            quotient,
        })
    }
}
