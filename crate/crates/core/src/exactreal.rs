//! Exact arithmetic in real quadratic fields `Q(sqrt(d))`.
//!
//! A [`QuadNum`] is `a + b*sqrt(d)` with rational `a`, `b` and a square-free
//! radicand `d >= 1`. Rationals are the `d = 1` case and always carry `b = 0`,
//! so a rational operand mixes freely with any field. Comparison and floor are
//! decided with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("operands live in different fields Q(sqrt({0})) and Q(sqrt({1}))")]
    MixedFields(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand must be a positive integer, got {0}")]
    InvalidRadicand(i128),
    #[error("cannot parse quadratic number: {0}")]
    Parse(String),
}

/// An element `a + b*sqrt(d)` of a real quadratic field, kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Splits `n` into `(s, r)` with `n = s^2 * r` and `r` square-free.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut f = 2u64;
    while f * f <= n {
        while n.is_multiple_of(f * f) {
            n /= f * f;
            square *= f;
        }
        f += 1;
    }
    (square, n)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadNum {
    /// Builds `a + b*sqrt(d)`; square factors of `d` are pulled into `b`.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, ArithError> {
        if d == 0 {
            return Err(ArithError::InvalidRadicand(0));
        }
        let (s, r) = square_free_split(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        Ok(Self::canonical(a, b, r))
    }

    fn canonical(a: BigRational, b: BigRational, d: u64) -> Self {
        if d == 1 {
            QuadNum { a: a + b, b: BigRational::zero(), d: 1 }
        } else if b.is_zero() {
            QuadNum { a, b, d: 1 }
        } else {
            QuadNum { a, b, d }
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadNum { a, b: BigRational::zero(), d: 1 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// `num/den` as a rational number. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(p + q*sqrt(d)) / r` with integer inputs, the shape most bases are written in.
    pub fn surd(p: i64, q: i64, d: u64, r: i64) -> Self {
        let den = BigInt::from(r);
        Self::new(
            BigRational::new(BigInt::from(p), den.clone()),
            BigRational::new(BigInt::from(q), den),
            d,
        )
        .expect("radicand must be positive")
    }

    /// The square root of a non-negative integer, exact.
    pub fn sqrt_of(n: &BigInt) -> Result<Self, ArithError> {
        if n.is_negative() {
            return Err(ArithError::InvalidRadicand(n.to_i128().unwrap_or(i128::MIN)));
        }
        if n.is_zero() {
            return Ok(Self::zero());
        }
        let root = n.sqrt();
        if &root * &root == *n {
            return Ok(Self::from_bigint(root));
        }
        let small = n
            .to_u64()
            .ok_or_else(|| ArithError::InvalidRadicand(n.to_i128().unwrap_or(i128::MAX)))?;
        Self::new(BigRational::zero(), BigRational::one(), small)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Square-free radicand; `1` for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    /// The common radicand of two operands, if they share a field.
    pub fn common_field(&self, other: &QuadNum) -> Result<u64, ArithError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(ArithError::MixedFields(d, e)),
        }
    }

    pub fn try_add(&self, other: &QuadNum) -> Result<QuadNum, ArithError> {
        let d = self.common_field(other)?;
        Ok(Self::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &QuadNum) -> Result<QuadNum, ArithError> {
        let d = self.common_field(other)?;
        Ok(Self::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &QuadNum) -> Result<QuadNum, ArithError> {
        let d = self.common_field(other)?;
        let dd = rat(d as i64);
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::canonical(a, b, d))
    }

    pub fn try_div(&self, other: &QuadNum) -> Result<QuadNum, ArithError> {
        let d = self.common_field(other)?;
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // x / y = x * conj(y) / norm(y); norm(y) != 0 since d is not a square
        let norm = other.norm();
        let num = self.try_mul(&other.conjugate())?;
        Ok(Self::canonical(num.a / &norm, num.b / &norm, d))
    }

    pub fn recip(&self) -> Result<QuadNum, ArithError> {
        Self::one().try_div(self)
    }

    /// `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> QuadNum {
        QuadNum { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d as i64)
    }

    pub fn pow(&self, exp: u32) -> QuadNum {
        let mut acc = QuadNum::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of `a + b*sqrt(d)`, from the signs of `a`, `b` and `a^2` versus `d*b^2`.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || self.d == 1 {
            return sign_of(&(&self.a + &self.b));
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d as i64);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn try_cmp(&self, other: &QuadNum) -> Result<Ordering, ArithError> {
        let diff = self.try_sub(other)?;
        Ok(diff.signum().cmp(&0))
    }

    /// Largest integer `k` with `k <= self`.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let d = BigInt::from(self.d);
        let s = d.sqrt();
        let mut lo = BigRational::from_integer(s.clone());
        let mut hi = BigRational::from_integer(s + 1);
        let two = rat(2);
        loop {
            let (mut x_lo, mut x_hi) = (&self.a + &self.b * &lo, &self.a + &self.b * &hi);
            if self.b.is_negative() {
                std::mem::swap(&mut x_lo, &mut x_hi);
            }
            let f_lo = x_lo.floor().to_integer();
            let f_hi = x_hi.floor().to_integer();
            if f_lo == f_hi {
                return f_lo;
            }
            if &f_hi - &f_lo == BigInt::one() {
                // irrational, so never equal to the candidate
                let cand = QuadNum::from_bigint(f_hi.clone());
                return if self.signum_against(&cand) > 0 { f_hi } else { f_lo };
            }
            let mid = (&lo + &hi) / &two;
            if &mid * &mid < BigRational::from_integer(d.clone()) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    fn signum_against(&self, other: &QuadNum) -> i8 {
        (self - other).signum()
    }

    /// Smallest integer `k` with `k >= self`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Decimal rendering truncated toward zero after `digits` places.
    pub fn to_decimal_truncated(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let negative = self.is_negative();
        let magnitude = if negative { -self } else { self.clone() };
        let scaled = (&magnitude * &QuadNum::from_bigint(scale.clone())).floor();
        let (int, frac) = scaled.div_rem(&scale);
        let mut out = String::new();
        if negative && !scaled.is_zero() {
            out.push('-');
        }
        out.push_str(&int.to_string());
        if digits > 0 {
            out.push('.');
            let f = frac.to_string();
            out.push_str(&"0".repeat(digits - f.len()));
            out.push_str(&f);
        }
        out
    }

    /// Lossy conversion for display and plotting.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Evaluates an integer polynomial (coefficients from the constant term up).
    pub fn eval_poly(&self, coeffs: &[i64]) -> QuadNum {
        coeffs
            .iter()
            .rev()
            .fold(QuadNum::zero(), |acc, &c| &(&acc * self) + &QuadNum::from_integer(c))
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $trait<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
    };
}

// Operators panic on mixed fields or division by zero; use the `try_*` forms
// when operands come from untrusted input.
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl From<i64> for QuadNum {
    fn from(n: i64) -> Self {
        QuadNum::from_integer(n)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Text form `a_n/a_d + b_n/b_d * sqrt(d)`; rationals print as `a_n/a_d`.
impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {} * sqrt({})", fmt_rat(&self.a), sign, fmt_rat(&self.b.abs()), self.d)
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadNum({})", self)
    }
}

fn parse_rat(s: &str) -> Result<BigRational, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses `sqrt(d)`, `q * sqrt(d)` or `q*sqrt(d)` into `(q, d)`.
fn parse_surd_term(s: &str) -> Result<(BigRational, u64), ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    let idx = s.find("sqrt(").ok_or_else(bad)?;
    let coeff = s[..idx].trim().trim_end_matches('*').trim();
    let inner = s[idx + 5..].strip_suffix(')').ok_or_else(bad)?;
    let d: u64 = inner.trim().parse().map_err(|_| bad())?;
    let q = match coeff {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rat(c)?,
    };
    Ok((q, d))
}

impl FromStr for QuadNum {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ArithError::Parse(String::new()));
        }
        if !s.contains("sqrt") {
            return Ok(QuadNum::from_rational(parse_rat(s)?));
        }
        // split at the last top-level +/- that is not a leading sign
        let bytes = s.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !s[..i].trim_end().ends_with(['*', '/']) {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) if !s[..i].trim().is_empty() && !s[..i].contains("sqrt") => {
                let a = parse_rat(&s[..i])?;
                let (mut q, d) = parse_surd_term(&s[i + 1..])?;
                if bytes[i] == b'-' {
                    q = -q;
                }
                QuadNum::new(a, q, d)
            }
            _ => {
                let (q, d) = parse_surd_term(s)?;
                QuadNum::new(BigRational::zero(), q, d)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntLit {
    Small(i64),
    Big(String),
}

impl IntLit {
    fn from_big(n: &BigInt) -> Self {
        n.to_i64().map(IntLit::Small).unwrap_or_else(|| IntLit::Big(n.to_string()))
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            IntLit::Small(n) => Ok(BigInt::from(*n)),
            IntLit::Big(s) => s.parse().map_err(|_| format!("bad integer literal {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    a: [IntLit; 2],
    b: [IntLit; 2],
    d: u64,
}

fn rat_from_pair(p: &[IntLit; 2]) -> Result<BigRational, String> {
    let den = p[1].to_big()?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(p[0].to_big()?, den))
}

/// JSON form `{"a":[num,den],"b":[num,den],"d":int}`.
impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadJson {
            a: [IntLit::from_big(self.a.numer()), IntLit::from_big(self.a.denom())],
            b: [IntLit::from_big(self.b.numer()), IntLit::from_big(self.b.denom())],
            d: self.d,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = QuadJson::deserialize(deserializer)?;
        let a = rat_from_pair(&raw.a).map_err(D::Error::custom)?;
        let b = rat_from_pair(&raw.b).map_err(D::Error::custom)?;
        QuadNum::new(a, b, raw.d).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadNum {
        s.parse().unwrap()
    }

    #[test]
    fn product_of_running_example_bases() {
        let b1 = QuadNum::surd(1, 1, 13, 2);
        let b0 = QuadNum::surd(5, 1, 13, 6);
        assert_eq!(&b1 * &b0, QuadNum::surd(3, 1, 13, 2));
    }

    #[test]
    fn product_of_unbalanced_example_bases() {
        let b0 = QuadNum::surd(11, 1, 61, 4);
        let b1 = QuadNum::surd(16, 4, 61, 15);
        assert_eq!(&b0 * &b1, QuadNum::surd(7, 1, 61, 1));
    }

    #[test]
    fn additive_identity() {
        let x = QuadNum::surd(-1, 1, 13, 6);
        assert_eq!(&x + &QuadNum::zero(), x);
    }

    #[test]
    fn comparisons() {
        assert_eq!(QuadNum::surd(-1, 1, 13, 6).try_cmp(&QuadNum::one()), Ok(Ordering::Less));
        assert_eq!(QuadNum::surd(-5, 1, 61, 4).try_cmp(&QuadNum::one()), Ok(Ordering::Less));
        let x = QuadNum::surd(3, -7, 2, 5);
        assert_eq!(x.try_cmp(&x), Ok(Ordering::Equal));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let x = QuadNum::surd(0, 1, 2, 1);
        let y = QuadNum::surd(0, 1, 3, 1);
        assert_eq!(x.try_add(&y), Err(ArithError::MixedFields(2, 3)));
        assert!(x.try_cmp(&y).is_err());
        // rationals mix with anything
        assert!(x.try_mul(&QuadNum::ratio(1, 3)).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(QuadNum::one().try_div(&QuadNum::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn floors_and_ceilings() {
        assert_eq!(QuadNum::surd(1, 1, 13, 2).floor(), BigInt::from(2));
        assert_eq!(QuadNum::from_integer(5).floor(), BigInt::from(5));
        assert_eq!(QuadNum::from_integer(5).ceil(), BigInt::from(5));
        assert_eq!(QuadNum::surd(5, 1, 13, 6).ceil(), BigInt::from(2));
        assert_eq!(QuadNum::surd(0, -1, 2, 1).floor(), BigInt::from(-2));
        // 1 + 10^-12 style closeness: (99999 + sqrt(2)) vs large denominators
        let tight = QuadNum::new(
            BigRational::new(BigInt::from(-1_414_213_562i64), BigInt::from(1_000_000_000i64)),
            BigRational::one(),
            2,
        )
        .unwrap();
        assert_eq!(tight.floor(), BigInt::from(0));
    }

    #[test]
    fn square_factors_are_extracted() {
        assert_eq!(QuadNum::surd(0, 1, 12, 1), QuadNum::surd(0, 2, 3, 1));
        assert_eq!(QuadNum::surd(1, 1, 9, 1), QuadNum::from_integer(4));
        assert_eq!(QuadNum::sqrt_of(&BigInt::from(13)).unwrap(), QuadNum::surd(0, 1, 13, 1));
    }

    #[test]
    fn text_round_trip() {
        for s in ["-1/6 + 1/6 * sqrt(13)", "7 + 1 * sqrt(61)", "3/2", "0 - 2/3 * sqrt(5)"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("sqrt(13)"), QuadNum::surd(0, 1, 13, 1));
        assert_eq!(q("1/2 + sqrt(5)").to_string(), "1/2 + 1 * sqrt(5)");
        assert_eq!(q("-3/2+1/2*sqrt(13)"), QuadNum::surd(-3, 1, 13, 2));
        assert!("1 + sqrt(x)".parse::<QuadNum>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = QuadNum::surd(16, 4, 61, 15);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"a":[16,15],"b":[4,15],"d":61}"#);
        let back: QuadNum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn truncated_decimals() {
        assert_eq!(QuadNum::surd(5, 1, 13, 3).to_decimal_truncated(2), "2.86");
        assert_eq!(QuadNum::from_integer(3).to_decimal_truncated(2), "3.00");
        assert_eq!(QuadNum::surd(-1, 1, 13, 6).to_decimal_truncated(6), "0.434258");
    }

    #[test]
    fn polynomial_evaluation() {
        // (3 + sqrt 13)/2 is a root of X^2 - 3X - 1
        assert!(QuadNum::surd(3, 1, 13, 2).eval_poly(&[-1, -3, 1]).is_zero());
    }
}
