//! Ternary digit sequences and exact triadic rationals.
//!
//! A parameter `t` in `[0, 1]` is held as a finite digit prefix followed by a
//! constant tail of all zeros or all twos. Every triadic rational `N/3^m` has
//! exactly these representations (two of them when it is nonzero and not 1),
//! so every identity of the curve can be checked with integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Returns `3^exponent` as a big integer.
pub fn pow3(exponent: u32) -> BigUint {
    BigUint::from(3u32).pow(exponent)
}

/// A single base-3 digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Digit(u8);

impl Digit {
    pub const ZERO: Digit = Digit(0);
    pub const ONE: Digit = Digit(1);
    pub const TWO: Digit = Digit(2);

    pub fn new(value: u8) -> Result<Self> {
        if value <= 2 {
            Ok(Digit(value))
        } else {
            Err(Error::InvalidDigit(value))
        }
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    /// The complement `2 - a`.
    #[inline]
    pub const fn complement(self) -> Digit {
        Digit(2 - self.0)
    }
}

impl TryFrom<u8> for Digit {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        Digit::new(value)
    }
}

impl From<Digit> for u8 {
    fn from(d: Digit) -> u8 {
        d.0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The constant tail that follows the digit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Tail {
    #[default]
    Zero,
    Two,
}

impl Tail {
    #[inline]
    pub const fn digit(self) -> Digit {
        match self {
            Tail::Zero => Digit::ZERO,
            Tail::Two => Digit::TWO,
        }
    }

    /// The tail whose repeated digit is `d`, if `d` is 0 or 2.
    pub fn from_digit(d: Digit) -> Option<Tail> {
        match d.0 {
            0 => Some(Tail::Zero),
            2 => Some(Tail::Two),
            _ => None,
        }
    }
}

/// An exact value `numerator / 3^exponent` in `[0, 1]`, always kept reduced.
///
/// Reduced means the numerator is not divisible by 3 unless the exponent is
/// zero, so two equal values are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriadicRational {
    numerator: BigUint,
    exponent: u32,
}

impl TriadicRational {
    pub fn new(numerator: impl Into<BigUint>, exponent: u32) -> Result<Self> {
        let numerator = numerator.into();
        if numerator > pow3(exponent) {
            return Err(Error::OutOfUnitInterval(format!(
                "{numerator}/3^{exponent}"
            )));
        }
        Ok(Self::reduced(numerator, exponent))
    }

    fn reduced(mut numerator: BigUint, mut exponent: u32) -> Self {
        if numerator.is_zero() {
            return TriadicRational {
                numerator,
                exponent: 0,
            };
        }
        let three = BigUint::from(3u32);
        while exponent > 0 {
            let (q, r) = numerator.div_rem(&three);
            if !r.is_zero() {
                break;
            }
            numerator = q;
            exponent -= 1;
        }
        TriadicRational {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Self {
        TriadicRational {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        TriadicRational {
            numerator: BigUint::one(),
            exponent: 0,
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.is_one()
    }

    /// The numerator after raising the denominator to `3^exponent`, or `None`
    /// when the value needs a larger exponent.
    pub fn numerator_at(&self, exponent: u32) -> Option<BigUint> {
        (exponent >= self.exponent).then(|| &self.numerator * pow3(exponent - self.exponent))
    }

    pub fn to_f64(&self) -> f64 {
        // 3^600 is still a finite f64; shift larger exponents into the numerator first.
        const MAX_DIRECT: u32 = 600;
        let shift = self.exponent.saturating_sub(MAX_DIRECT);
        let num = if shift > 0 {
            &self.numerator / pow3(shift)
        } else {
            self.numerator.clone()
        };
        num.to_f64().unwrap_or(f64::INFINITY) / 3f64.powi((self.exponent - shift) as i32)
    }

    /// Decimal expansion rounded to `places` fractional digits.
    pub fn to_decimal(&self, places: usize) -> String {
        let scaled = &self.numerator * BigUint::from(10u32).pow(places as u32);
        let den = pow3(self.exponent);
        let (q, r) = scaled.div_rem(&den);
        // The denominator is odd, so a remainder of exactly half never occurs.
        let q = if r * 2u32 > den { q + 1u32 } else { q };
        let digits = q.to_str_radix(10);
        if places == 0 {
            return digits;
        }
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    }
}

impl PartialOrd for TriadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TriadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.numerator_at(e)
            .expect("common exponent")
            .cmp(&other.numerator_at(e).expect("common exponent"))
    }
}

impl fmt::Display for TriadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, pow3(self.exponent))
        }
    }
}

/// Parses `N/D` with `D` a power of three, `N/3^m`, or a bare `0` or `1`.
impl FromStr for TriadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |text: &str| {
            BigUint::from_str(text.trim())
                .map_err(|_| Error::parse(s, "expected a nonnegative integer"))
        };
        let Some((num, den)) = s.split_once('/') else {
            let n = parse_int(s)?;
            return TriadicRational::new(n, 0);
        };
        let numerator = parse_int(num)?;
        let exponent = if let Some(exp) = den.trim().strip_prefix("3^") {
            exp.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(s, "bad exponent"))?
        } else {
            let mut d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::parse(s, "zero denominator"));
            }
            let three = BigUint::from(3u32);
            let mut e = 0u32;
            while !d.is_one() {
                let (q, r) = d.div_rem(&three);
                if !r.is_zero() {
                    return Err(Error::parse(s, "denominator is not a power of 3"));
                }
                d = q;
                e += 1;
            }
            e
        };
        TriadicRational::new(numerator, exponent)
    }
}

/// A signed triadic rational without range restriction, used for exact
/// differences and residuals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedTriadic {
    numerator: BigInt,
    exponent: u32,
}

impl SignedTriadic {
    fn reduced(numerator: BigInt, exponent: u32) -> Self {
        let (sign, magnitude) = numerator.into_parts();
        let r = TriadicRational::reduced(magnitude, exponent);
        SignedTriadic {
            numerator: BigInt::from_biguint(sign, r.numerator),
            exponent: r.exponent,
        }
    }

    pub fn zero() -> Self {
        SignedTriadic {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn abs(&self) -> TriadicRational {
        TriadicRational::reduced(self.numerator.magnitude().clone(), self.exponent)
    }

    /// Multiplies by `3^k`.
    pub fn scale_pow3(&self, k: u32) -> SignedTriadic {
        if k <= self.exponent {
            SignedTriadic::reduced(self.numerator.clone(), self.exponent - k)
        } else {
            let factor = BigInt::from(pow3(k - self.exponent));
            SignedTriadic::reduced(&self.numerator * factor, 0)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let magnitude = self.abs().to_f64();
        if self.numerator.sign() == Sign::Minus {
            -magnitude
        } else {
            magnitude
        }
    }
}

impl From<&TriadicRational> for SignedTriadic {
    fn from(v: &TriadicRational) -> Self {
        SignedTriadic {
            numerator: BigInt::from(v.numerator.clone()),
            exponent: v.exponent,
        }
    }
}

impl From<TriadicRational> for SignedTriadic {
    fn from(v: TriadicRational) -> Self {
        SignedTriadic::from(&v)
    }
}

impl Sub for &SignedTriadic {
    type Output = SignedTriadic;

    fn sub(self, rhs: &SignedTriadic) -> SignedTriadic {
        let e = self.exponent.max(rhs.exponent);
        let a = &self.numerator * BigInt::from(pow3(e - self.exponent));
        let b = &rhs.numerator * BigInt::from(pow3(e - rhs.exponent));
        SignedTriadic::reduced(a - b, e)
    }
}

impl Neg for SignedTriadic {
    type Output = SignedTriadic;

    fn neg(self) -> SignedTriadic {
        SignedTriadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl fmt::Display for SignedTriadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, pow3(self.exponent))
        }
    }
}

/// A ternary representation: digits `t_1 .. t_m` followed by a constant tail.
///
/// Digits are addressed 1-based through [`DigitSeq::digit`]; positions past
/// the prefix read the tail digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DigitSeq {
    prefix: Vec<Digit>,
    tail: Tail,
}

impl DigitSeq {
    pub fn new(prefix: Vec<Digit>, tail: Tail) -> Self {
        DigitSeq { prefix, tail }
    }

    pub fn from_digits(digits: &[u8], tail: Tail) -> Result<Self> {
        let prefix = digits
            .iter()
            .map(|&d| Digit::new(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(DigitSeq { prefix, tail })
    }

    /// The `len`-digit base-3 expansion of `index` followed by zeros, i.e. the
    /// grid point `index / 3^len`.
    pub fn from_index(index: u64, len: usize) -> Self {
        let mut prefix = vec![Digit::ZERO; len];
        let mut rest = index;
        for slot in prefix.iter_mut().rev() {
            *slot = Digit((rest % 3) as u8);
            rest /= 3;
        }
        debug_assert_eq!(rest, 0, "index does not fit in {len} ternary digits");
        DigitSeq {
            prefix,
            tail: Tail::Zero,
        }
    }

    pub fn zero() -> Self {
        DigitSeq::default()
    }

    /// `0.(2)`, the only representation of 1.
    pub fn one() -> Self {
        DigitSeq {
            prefix: Vec::new(),
            tail: Tail::Two,
        }
    }

    pub fn prefix(&self) -> &[Digit] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// The digit `t_k`, 1-based.
    #[inline]
    pub fn digit(&self, k: usize) -> Digit {
        debug_assert!(k >= 1, "digit positions are 1-based");
        self.prefix.get(k - 1).copied().unwrap_or(self.tail.digit())
    }

    /// The canonical representation of `value`.
    ///
    /// Canonical means a zero tail with no trailing zero digits. The value 1
    /// has no such representation and maps to `0.(2)`.
    pub fn from_triadic(value: &TriadicRational) -> Self {
        if value.is_one() {
            return DigitSeq::one();
        }
        let mut prefix = vec![Digit::ZERO; value.exponent as usize];
        let mut rest = value.numerator.clone();
        let three = BigUint::from(3u32);
        for slot in prefix.iter_mut().rev() {
            let (q, r) = rest.div_rem(&three);
            *slot = Digit(r.to_u8().expect("remainder below 3"));
            rest = q;
        }
        DigitSeq {
            prefix,
            tail: Tail::Zero,
        }
    }

    /// The exact value `sum t_k / 3^k`; a two tail after `m` digits adds `3^-m`.
    pub fn to_triadic(&self) -> TriadicRational {
        let mut n = BigUint::zero();
        for d in &self.prefix {
            n = n * 3u32 + d.0 as u32;
        }
        if self.tail == Tail::Two {
            n += 1u32;
        }
        TriadicRational::reduced(n, self.prefix.len() as u32)
    }

    pub fn is_canonical(&self) -> bool {
        match self.tail {
            Tail::Zero => self.prefix.last() != Some(&Digit::ZERO),
            Tail::Two => self.prefix.is_empty(),
        }
    }

    pub fn canonical(&self) -> DigitSeq {
        DigitSeq::from_triadic(&self.to_triadic())
    }

    /// The other ternary representation of the same value.
    ///
    /// `(.., a, 0, 0, ..)` with `a != 0` becomes `(.., a - 1, 2, 2, ..)` and
    /// vice versa. Zero and one have a single representation and are rejected.
    pub fn alternate_rep(&self) -> Result<DigitSeq> {
        let mut prefix = self.prefix.clone();
        match self.tail {
            Tail::Zero => {
                while prefix.last() == Some(&Digit::ZERO) {
                    prefix.pop();
                }
                let Some(last) = prefix.last_mut() else {
                    return Err(Error::NoAlternateRepresentation(self.to_string()));
                };
                last.0 -= 1;
                Ok(DigitSeq {
                    prefix,
                    tail: Tail::Two,
                })
            }
            Tail::Two => {
                while prefix.last() == Some(&Digit::TWO) {
                    prefix.pop();
                }
                let Some(last) = prefix.last_mut() else {
                    return Err(Error::NoAlternateRepresentation(self.to_string()));
                };
                last.0 += 1;
                Ok(DigitSeq {
                    prefix,
                    tail: Tail::Zero,
                })
            }
        }
    }

    /// Materializes the prefix to `m` digits by appending tail digits. A
    /// prefix already longer than `m` is left untouched.
    pub fn extend(&self, m: usize) -> DigitSeq {
        let mut prefix = self.prefix.clone();
        if m > prefix.len() {
            prefix.resize(m, self.tail.digit());
        }
        DigitSeq {
            prefix,
            tail: self.tail,
        }
    }
}

impl fmt::Display for DigitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0")?;
        if self.prefix.is_empty() && self.tail == Tail::Zero {
            return Ok(());
        }
        f.write_str(".")?;
        for d in &self.prefix {
            write!(f, "{}", d.0)?;
        }
        if self.tail == Tail::Two {
            f.write_str("(2)")?;
        }
        Ok(())
    }
}

/// Parses `0.t1t2t3...` with an optional `(0)` or `(2)` tail suffix.
impl FromStr for DigitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let Some(rest) = text.strip_prefix('0') else {
            return Err(Error::parse(s, "digit strings start with `0`"));
        };
        if rest.is_empty() {
            return Ok(DigitSeq::zero());
        }
        let Some(rest) = rest.strip_prefix('.') else {
            return Err(Error::parse(s, "expected `.` after the leading 0"));
        };
        let (digits, tail) = match rest.find('(') {
            Some(pos) => {
                let tail = match &rest[pos..] {
                    "(0)" => Tail::Zero,
                    "(2)" => Tail::Two,
                    _ => return Err(Error::parse(s, "tail must be `(0)` or `(2)`")),
                };
                (&rest[..pos], tail)
            }
            None => (rest, Tail::Zero),
        };
        let prefix = digits
            .chars()
            .map(|c| match c {
                '0' => Ok(Digit::ZERO),
                '1' => Ok(Digit::ONE),
                '2' => Ok(Digit::TWO),
                _ => Err(Error::parse(s, format!("{c:?} is not a ternary digit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DigitSeq { prefix, tail })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> DigitSeq {
        s.parse().unwrap()
    }

    fn tr(s: &str) -> TriadicRational {
        s.parse().unwrap()
    }

    #[test]
    fn digit_rejects_three() {
        assert_eq!(Digit::new(3), Err(Error::InvalidDigit(3)));
        assert_eq!(Digit::TWO.complement(), Digit::ZERO);
    }

    #[test]
    fn from_triadic_examples() {
        assert_eq!(
            DigitSeq::from_triadic(&TriadicRational::zero()),
            DigitSeq::zero()
        );
        assert_eq!(DigitSeq::from_triadic(&tr("1/3")), seq("0.1"));
        assert_eq!(DigitSeq::from_triadic(&tr("13/27")), seq("0.111"));
        assert_eq!(
            DigitSeq::from_triadic(&TriadicRational::one()),
            DigitSeq::one()
        );
    }

    #[test]
    fn triadic_rejects_values_above_one() {
        assert!(matches!(
            TriadicRational::new(10u32, 2),
            Err(Error::OutOfUnitInterval(_))
        ));
        assert!("4/3".parse::<TriadicRational>().is_err());
        assert!("1/2".parse::<TriadicRational>().is_err());
    }

    #[test]
    fn to_triadic_examples() {
        assert_eq!(seq("0.1").to_triadic(), tr("1/3"));
        assert_eq!(seq("0.0(2)").to_triadic(), tr("1/3"));
        assert_eq!(seq("0.22(2)").to_triadic(), TriadicRational::one());
    }

    #[test]
    fn alternate_rep_examples() {
        assert_eq!(seq("0.1").alternate_rep().unwrap(), seq("0.0(2)"));
        assert_eq!(seq("0.2").alternate_rep().unwrap(), seq("0.1(2)"));
        assert_eq!(seq("0.111").alternate_rep().unwrap(), seq("0.110(2)"));
        assert_eq!(seq("0.110(2)").to_triadic(), tr("13/27"));
    }

    #[test]
    fn alternate_rep_rejects_zero_and_one() {
        assert!(DigitSeq::zero().alternate_rep().is_err());
        assert!(seq("0.000").alternate_rep().is_err());
        assert!(DigitSeq::one().alternate_rep().is_err());
        assert!(seq("0.22(2)").alternate_rep().is_err());
    }

    #[test]
    fn extend_examples() {
        assert_eq!(seq("0.1").extend(3), seq("0.100"));
        assert_eq!(seq("0.0(2)").extend(3), seq("0.022(2)"));
        assert_eq!(DigitSeq::zero().extend(2), seq("0.00"));
        assert_eq!(seq("0.1201").extend(2), seq("0.1201"));
    }

    #[test]
    fn digit_string_format() {
        assert_eq!(seq("0.110(2)").prefix().len(), 3);
        assert_eq!(seq("0.110(2)").tail(), Tail::Two);
        assert_eq!(seq("0.12(0)"), seq("0.12"));
        assert_eq!(seq("0.110(2)").to_string(), "0.110(2)");
        assert_eq!(DigitSeq::one().to_string(), "0.(2)");
        assert_eq!(DigitSeq::zero().to_string(), "0");
        assert!("0.13".parse::<DigitSeq>().is_err());
        assert!("0.1(1)".parse::<DigitSeq>().is_err());
        assert!("1.0".parse::<DigitSeq>().is_err());
    }

    #[test]
    fn rational_syntax() {
        assert_eq!(tr("27/3^4"), tr("1/3"));
        assert_eq!(tr("0/81"), TriadicRational::zero());
        assert_eq!(tr("1"), TriadicRational::one());
        assert_eq!(tr("13/27").to_string(), "13/27");
        assert_eq!(tr("9/9").to_string(), "1");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(tr("1/3").to_decimal(4), "0.3333");
        assert_eq!(tr("2/3").to_decimal(4), "0.6667");
        assert_eq!(TriadicRational::one().to_decimal(2), "1.00");
        assert_eq!(tr("1/81").to_decimal(0), "0");
    }

    #[test]
    fn signed_arithmetic() {
        let a = SignedTriadic::from(tr("5/9"));
        let b = SignedTriadic::from(tr("2/3"));
        let d = &a - &b;
        assert_eq!(d.to_string(), "-1/9");
        assert_eq!(d.scale_pow3(1).to_string(), "-1/3");
        assert_eq!(d.scale_pow3(3).to_string(), "-3");
        assert!((&d - &d).is_zero());
        assert_eq!((-d).abs(), tr("1/9"));
    }

    #[test]
    fn to_f64_survives_huge_exponents() {
        let v = TriadicRational::new(pow3(700) / 3u32, 700).unwrap();
        assert!((v.to_f64() - 1.0 / 3.0).abs() < 1e-12);
    }

    fn arb_triadic() -> impl Strategy<Value = TriadicRational> {
        (0u32..40).prop_flat_map(|e| {
            let max = 3u64.pow(e.min(40));
            (0..=max).prop_map(move |n| TriadicRational::new(n, e).unwrap())
        })
    }

    fn arb_seq() -> impl Strategy<Value = DigitSeq> {
        (prop::collection::vec(0u8..3, 0..40), any::<bool>()).prop_map(|(d, two)| {
            DigitSeq::from_digits(&d, if two { Tail::Two } else { Tail::Zero }).unwrap()
        })
    }

    proptest! {
        #[test]
        fn round_trip(v in arb_triadic()) {
            let d = DigitSeq::from_triadic(&v);
            prop_assert!(d.is_canonical());
            prop_assert_eq!(d.to_triadic(), v);
        }

        #[test]
        fn duality(v in arb_triadic()) {
            prop_assume!(!v.is_zero() && !v.is_one());
            let d = DigitSeq::from_triadic(&v);
            let alt = d.alternate_rep().unwrap();
            prop_assert_eq!(alt.to_triadic(), v);
            prop_assert_eq!(alt.alternate_rep().unwrap(), d);
        }

        #[test]
        fn extend_preserves_value(d in arb_seq(), extra in 0usize..20) {
            let e = d.extend(d.len() + extra);
            prop_assert_eq!(e.to_triadic(), d.to_triadic());
            prop_assert_eq!(e.len(), d.len() + extra);
        }

        #[test]
        fn canonical_agrees_with_value(d in arb_seq()) {
            let c = d.canonical();
            prop_assert!(c.is_canonical());
            prop_assert_eq!(c.to_triadic(), d.to_triadic());
        }

        #[test]
        fn ordering_matches_common_exponent(a in arb_triadic(), b in arb_triadic()) {
            let e = a.exponent().max(b.exponent());
            prop_assert_eq!(a.cmp(&b), a.numerator_at(e).unwrap().cmp(&b.numerator_at(e).unwrap()));
        }

        #[test]
        fn display_parse_round_trip(d in arb_seq()) {
            prop_assert_eq!(d.to_string().parse::<DigitSeq>().unwrap(), d);
        }
    }
}
