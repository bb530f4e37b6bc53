mod common;

use common::*;
use npeano::{classic_peano_s, DigitSeq, PeanoCurve, Tail, TriadicRational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seq(s: &str) -> DigitSeq {
    s.parse().unwrap()
}

#[test]
fn agrees_with_reference_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4 {
        let curve = PeanoCurve::new(n).unwrap();
        for _ in 0..200 {
            let t = random_canonical(&mut rng, 5 * n);
            for t in [t.clone(), t.alternate_rep().unwrap_or(t)] {
                let depth = curve.required_depth(&t);
                let (digits, c) = raw_digits(&t);
                for i in 1..=n {
                    let x = curve.coordinate(&t, i, depth).unwrap();
                    assert_eq!(
                        to_big(&x),
                        naive_coordinate(&digits, c, n, i),
                        "n={n} t={t} i={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn both_representations_give_the_same_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 2..=4 {
        let curve = PeanoCurve::new(n).unwrap();
        for _ in 0..1000 {
            let t = random_canonical(&mut rng, 12 * n);
            let Ok(alt) = t.alternate_rep() else {
                continue;
            };
            assert_eq!(t.to_triadic(), alt.to_triadic());
            let depth = curve.required_depth(&t).max(curve.required_depth(&alt));
            for i in 1..=n {
                assert_eq!(
                    curve.coordinate(&t, i, depth).unwrap(),
                    curve.coordinate(&alt, i, depth).unwrap(),
                    "n={n} t={t} i={i}"
                );
            }
        }
    }
}

#[test]
fn endpoints() {
    for n in 2..=6 {
        let curve = PeanoCurve::new(n).unwrap();
        let zero = curve.eval(&DigitSeq::zero(), 1).unwrap();
        assert!(zero.coords().iter().all(TriadicRational::is_zero), "n={n}");
        let one = curve.eval(&DigitSeq::one(), 1).unwrap();
        assert!(one.coords().iter().all(TriadicRational::is_one), "n={n}");
        // 1 written with a materialized prefix of twos
        let ones = curve.eval(&DigitSeq::one().extend(3 * n), 3).unwrap();
        assert_eq!(one, ones);
    }
}

#[test]
fn planar_closed_forms_agree_exhaustively() {
    let curve = PeanoCurve::new(2).unwrap();
    for len in 0..=8 {
        for s in 0..3u64.pow(len as u32) {
            let t = DigitSeq::from_index(s, len);
            for tail in [Tail::Zero, Tail::Two] {
                let t = DigitSeq::new(t.prefix().to_vec(), tail);
                for i in 1..=2 {
                    for j in 0..=(len / 2 + 1) {
                        assert_eq!(
                            curve.s_value(&t, i, j).unwrap(),
                            classic_peano_s(&t, i, j).unwrap(),
                            "t={t} i={i} j={j}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn worked_planar_values() {
    let curve = PeanoCurve::new(2).unwrap();
    assert_eq!(curve.eval(&seq("0.1"), 4).unwrap().to_string(), "(1/3, 1)");
    assert_eq!(curve.eval(&seq("0.2"), 4).unwrap().to_string(), "(2/3, 0)");
    assert_eq!(
        curve.eval(&seq("0.0(2)"), 4).unwrap().to_string(),
        "(1/3, 1)"
    );
}

#[test]
fn coordinates_are_independent_of_working_depth() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let curve = PeanoCurve::new(3).unwrap();
    for _ in 0..100 {
        let t = random_canonical(&mut rng, 15);
        let base = curve.required_depth(&t);
        let p = curve.eval(&t, base).unwrap();
        for extra in 1..4 {
            assert_eq!(curve.eval(&t, base + extra).unwrap(), p);
        }
    }
}
