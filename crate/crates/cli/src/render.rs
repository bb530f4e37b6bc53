use npeano::ternary::pow3;
use npeano::TriadicRational;
use num_bigint::BigUint;

/// `ceil(depth * log10 3) + 2`: enough places to tell apart multiples of
/// `3^-depth`. The ceiling is found with integers, as the least `p` with
/// `10^p >= 3^depth`.
pub fn decimal_places(depth: usize) -> usize {
    let target = pow3(depth as u32);
    let ten = BigUint::from(10u32);
    let mut p = 0;
    let mut power = BigUint::from(1u32);
    while power < target {
        power *= &ten;
        p += 1;
    }
    p + 2
}

/// Rounded decimal with trailing zeros dropped, so 0 prints as `0`.
pub fn decimal(x: &TriadicRational, places: usize) -> String {
    let s = x.to_decimal(places);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn places() {
        assert_eq!(decimal_places(0), 2);
        // 3 <= 10
        assert_eq!(decimal_places(1), 3);
        // 9 <= 10, 27 <= 100
        assert_eq!(decimal_places(2), 3);
        assert_eq!(decimal_places(3), 4);
        // 3^21 = 10460353203 > 10^10
        assert_eq!(decimal_places(21), 13);
    }

    #[test]
    fn trims() {
        let x = |s: &str| s.parse::<TriadicRational>().unwrap();
        assert_eq!(decimal(&x("0"), 4), "0");
        assert_eq!(decimal(&x("1"), 4), "1");
        assert_eq!(decimal(&x("1/3"), 4), "0.3333");
        assert_eq!(decimal(&x("2/3"), 4), "0.6667");
        assert_eq!(decimal(&x("1/9"), 0), "0");
    }
}
