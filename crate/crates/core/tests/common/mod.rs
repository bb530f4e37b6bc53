//! Reference evaluation straight from the digit-matrix definition, using
//! plain big rationals and no shared code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use npeano::{DigitSeq, Tail};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn pow3(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(3), e)
}

/// Value of a digit string with a constant tail digit `c` (0 or 2).
pub fn param_value(digits: &[u8], c: u8) -> BigRational {
    let mut v = BigRational::zero();
    for (k, &d) in digits.iter().enumerate() {
        v += BigRational::new(BigInt::from(d), pow3(k + 1));
    }
    if c == 2 {
        v += BigRational::new(BigInt::one(), pow3(digits.len()));
    }
    v
}

/// `x_i` of the parameter `digits` followed by `c, c, ..`.
///
/// Materializes enough columns to cover the digits plus two more, sums each
/// `S` from scratch, and closes with the geometric series of the constant
/// output digit of the row.
pub fn naive_coordinate(digits: &[u8], c: u8, n: usize, i: usize) -> BigRational {
    let cols = digits.len().div_ceil(n) + 2;
    let mut t: Vec<u8> = digits.to_vec();
    t.resize(cols * n, c);
    let digit_at = |k: usize| -> u64 {
        if k <= t.len() {
            t[k - 1] as u64
        } else {
            c as u64
        }
    };
    let s = |j: usize| -> u64 {
        let pos = i + j * n;
        let before: u64 = (1..pos).map(digit_at).sum();
        let row: u64 = (0..j).map(|q| digit_at(i + q * n)).sum();
        before - row
    };
    let out = |j: usize| -> u64 {
        let a = digit_at(i + j * n);
        if s(j) % 2 == 0 {
            a
        } else {
            2 - a
        }
    };
    let mut x = BigRational::zero();
    for j in 0..cols {
        x += BigRational::new(BigInt::from(out(j)), pow3(j + 1));
    }
    // every later output digit of the row equals out(cols)
    assert_eq!(out(cols), out(cols + 1));
    x += BigRational::new(BigInt::from(out(cols)), pow3(cols) * 2);
    x
}

pub fn to_big(v: &npeano::TriadicRational) -> BigRational {
    BigRational::new(
        BigInt::from(v.numerator().clone()),
        pow3(v.exponent() as usize),
    )
}

/// A random canonical parameter with at most `max_len` digits.
pub fn random_canonical(rng: &mut ChaCha8Rng, max_len: usize) -> DigitSeq {
    let len = rng.gen_range(0..=max_len);
    let mut digits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
    while digits.last() == Some(&0) {
        digits.pop();
    }
    DigitSeq::from_digits(&digits, Tail::Zero).unwrap()
}

pub fn raw_digits(t: &DigitSeq) -> (Vec<u8>, u8) {
    (
        t.prefix().iter().map(|d| d.value()).collect(),
        t.tail().digit().value(),
    )
}
