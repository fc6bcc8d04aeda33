#![allow(dead_code)]

use alternabase::{AlternateBase, DigitWord, InfiniteWord, ParryProfile, QuadNum};
use rand::Rng;

pub fn q(p: i64, q: i64, d: u64, r: i64) -> QuadNum {
    QuadNum::surd(p, q, d, r)
}

pub fn base(written: Vec<QuadNum>) -> AlternateBase {
    AlternateBase::new(written).unwrap()
}

pub fn profile(b: &AlternateBase) -> ParryProfile {
    ParryProfile::new(b, 4096).unwrap()
}

/// `((1+√13)/2, (5+√13)/6)`
pub fn running() -> AlternateBase {
    base(vec![q(1, 1, 13, 2), q(5, 1, 13, 6)])
}

/// `((4/15)(4+√61), (11+√61)/4)`
pub fn unbalanced() -> AlternateBase {
    base(vec![q(16, 4, 61, 15), q(11, 1, 61, 4)])
}

pub fn golden() -> QuadNum {
    q(1, 1, 5, 2)
}

/// Case-3 base for `d*_B(1) = (d0)^ω`, `d*_{S(B)}(1) = (e0)^ω`.
pub fn case3(d: u64, e: u64) -> AlternateBase {
    match (d, e) {
        (1, 1) => base(vec![golden(), golden()]),
        (2, 2) => base(vec![q(1, 1, 2, 1), q(1, 1, 2, 1)]),
        (1, 2) => base(vec![q(1, 1, 3, 2), q(1, 1, 3, 1)]),
        (2, 1) => base(vec![q(1, 1, 3, 1), q(1, 1, 3, 2)]),
        _ => unreachable!(),
    }
}

/// Every Parry base the tests exercise, with a display name.
pub fn corpus() -> Vec<(&'static str, AlternateBase)> {
    vec![
        ("running", running()),
        ("running shifted", running().shift(1)),
        ("integer 2", base(vec![QuadNum::from_integer(2)])),
        ("integer 3", base(vec![QuadNum::from_integer(3)])),
        ("golden ratio", base(vec![golden()])),
        ("golden ratio squared", base(vec![q(3, 1, 5, 2)])),
        ("2+sqrt(3)", base(vec![q(2, 1, 3, 1)])),
        ("case 3 (1,1)", case3(1, 1)),
        ("case 3 (1,2)", case3(1, 2)),
        ("case 3 (2,1)", case3(2, 1)),
        ("case 3 (2,2)", case3(2, 2)),
        ("unbalanced", unbalanced()),
    ]
}

/// A random admissible word with at most five integer and five fractional
/// digits, by rejection.
pub fn random_admissible(prof: &ParryProfile, rng: &mut impl Rng) -> DigitWord {
    loop {
        let int_len = rng.gen_range(0..6);
        let frac_len = rng.gen_range(0..6);
        let mut digit = |n: i64| rng.gen_range(0..prof.base().beta(n).ceil().try_into().unwrap_or(1u64));
        let int: Vec<u64> = (0..int_len).rev().map(&mut digit).collect();
        let frac: Vec<u64> = (1..=frac_len).map(|j| digit(-j)).collect();
        let w = DigitWord::new(int, InfiniteWord::finite(frac));
        if prof.is_admissible(&w) {
            return w;
        }
    }
}
