use std::cmp::Ordering;

use alternabase::QuadNum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

const RADICANDS: [u64; 10] = [1, 2, 3, 5, 6, 7, 10, 11, 13, 61];

/// `(a_num, a_den, b_num, b_den)` for `a + b√d`.
type Parts = (i64, i64, i64, i64);

fn parts() -> impl Strategy<Value = Parts> {
    (-60i64..=60, 1i64..=24, -60i64..=60, 1i64..=24)
}

fn build((an, ad, bn, bd): Parts, d: u64) -> QuadNum {
    let r = |n: i64, m: i64| BigRational::new(BigInt::from(n), BigInt::from(m));
    QuadNum::new(r(an, ad), r(bn, bd), d).unwrap()
}

/// `(a + b√d)·10^200` as a rational, with `√d` replaced by a 200-digit
/// truncation.
fn decimal(p: Parts, d: u64) -> BigRational {
    let (an, ad, bn, bd) = p;
    let scale = BigInt::from(10).pow(200);
    let root = (BigInt::from(d) * &scale * &scale).sqrt();
    let num = BigInt::from(an) * BigInt::from(bd) * &scale + BigInt::from(bn) * BigInt::from(ad) * root;
    BigRational::new(num, BigInt::from(ad) * BigInt::from(bd))
}

fn oracle_cmp(x: Parts, y: Parts, d: u64) -> Ordering {
    (decimal(x, d) - decimal(y, d)).cmp(&BigRational::zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn compare_matches_decimal_oracle(x in parts(), y in parts(), k in 0usize..RADICANDS.len()) {
        let d = RADICANDS[k];
        let expected = if d == 1 {
            // b folds into a; compare a + b exactly
            let v = |p: Parts| BigRational::new(p.0.into(), p.1.into()) + BigRational::new(p.2.into(), p.3.into());
            v(x).cmp(&v(y))
        } else {
            oracle_cmp(x, y, d)
        };
        prop_assert_eq!(build(x, d).try_cmp(&build(y, d)).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_axioms(x in parts(), y in parts(), z in parts(), k in 0usize..RADICANDS.len()) {
        let d = RADICANDS[k];
        let (x, y, z) = (build(x, d), build(y, d), build(z, d));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert_eq!(&x + &QuadNum::zero(), x.clone());
    }

    #[test]
    fn floor_brackets(x in parts(), k in 0usize..RADICANDS.len()) {
        let x = build(x, RADICANDS[k]);
        let f = QuadNum::from_bigint(x.floor());
        prop_assert!(f <= x);
        prop_assert!(x < &f + &QuadNum::one());
        let c = QuadNum::from_bigint(x.ceil());
        prop_assert!(c >= x && &c - &QuadNum::one() < x);
    }

    #[test]
    fn text_and_json_round_trip(x in parts(), k in 0usize..RADICANDS.len()) {
        let x = build(x, RADICANDS[k]);
        prop_assert_eq!(x.to_string().parse::<QuadNum>().unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<QuadNum>(&json).unwrap(), x);
    }
}

#[test]
fn documented_examples() {
    let b1 = QuadNum::surd(1, 1, 13, 2);
    let b0 = QuadNum::surd(5, 1, 13, 6);
    assert_eq!(&b1 * &b0, QuadNum::surd(3, 1, 13, 2));
    let c1 = QuadNum::surd(11, 1, 61, 4);
    let c0 = QuadNum::surd(16, 4, 61, 15);
    assert_eq!(&c1 * &c0, QuadNum::surd(7, 1, 61, 1));
    assert_eq!(QuadNum::surd(-1, 1, 13, 6).try_cmp(&QuadNum::one()).unwrap(), Ordering::Less);
    assert_eq!(QuadNum::surd(-5, 1, 61, 4).try_cmp(&QuadNum::one()).unwrap(), Ordering::Less);
    assert_eq!(b1.floor(), BigInt::from(2));
    assert_eq!(b0.ceil(), BigInt::from(2));
    assert_eq!(QuadNum::from_integer(5).floor(), BigInt::from(5));
    assert!(QuadNum::surd(0, 1, 2, 1).try_add(&QuadNum::surd(0, 1, 3, 1)).is_err());
    assert!(QuadNum::one().try_div(&QuadNum::zero()).is_err());
}
