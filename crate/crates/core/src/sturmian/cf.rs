use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exactreal::QuadNum;

/// A continued fraction `[a_0; a_1, ..., a_r, (a_{r+1}, ..., a_{r+s})]`.
///
/// `period` is empty for rationals (the expansion terminates) and for
/// expansions cut at the term budget, which set `truncated`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    #[serde(serialize_with = "ser_ints")]
    pub head: Vec<BigInt>,
    #[serde(serialize_with = "ser_ints")]
    pub period: Vec<BigInt>,
    pub truncated: bool,
    /// Radicand of the expanded number, used to rebuild the periodic tail.
    #[serde(skip)]
    pub radicand: u64,
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for a in v {
        match a.to_i64() {
            Some(n) => seq.serialize_element(&n)?,
            None => seq.serialize_element(&a.to_string())?,
        }
    }
    seq.end()
}

/// Partial quotients of `x` by `a_k = ⌊x_k⌋`, `x_{k+1} = 1/(x_k - a_k)`.
///
/// A repeated `x_k` (for `k >= 1`) closes the period. At most `max_terms`
/// partial quotients are produced.
pub fn continued_fraction(x: &QuadNum, max_terms: usize) -> ContinuedFraction {
    let mut head = Vec::new();
    let mut seen: HashMap<QuadNum, usize> = HashMap::new();
    let radicand = x.radicand();
    let mut cur = x.clone();
    for k in 0..max_terms {
        if k > 0 {
            if let Some(&start) = seen.get(&cur) {
                let period = head.split_off(start);
                return ContinuedFraction { head, period, truncated: false, radicand };
            }
            seen.insert(cur.clone(), k);
        }
        let a = cur.floor();
        let frac = &cur - &QuadNum::from_bigint(a.clone());
        head.push(a);
        if frac.is_zero() {
            return ContinuedFraction { head, period: Vec::new(), truncated: false, radicand };
        }
        cur = frac.recip().expect("nonzero");
    }
    ContinuedFraction { head, period: Vec::new(), truncated: true, radicand }
}

impl ContinuedFraction {
    /// Exact value, or `None` when the expansion was truncated.
    pub fn value(&self) -> Option<QuadNum> {
        if self.truncated {
            return None;
        }
        let tail = if self.period.is_empty() {
            None
        } else {
            // y = [p_1; ..., p_s, y] gives y = (P y + P')/(Q y + Q')
            let (p, pp, q, qq) = convergent_matrix(&self.period);
            let a = q;
            let b = &qq - &p;
            let c = -pp;
            let disc = &b * &b - BigInt::from(4) * &a * &c;
            let root = sqrt_in_field(&disc, self.radicand)?;
            let num = &QuadNum::from_bigint(-b) + &root;
            Some(&num / &QuadNum::from_bigint(BigInt::from(2) * a))
        };
        let mut acc = tail;
        for a in self.head.iter().rev() {
            let a = QuadNum::from_bigint(a.clone());
            acc = Some(match acc {
                None => a,
                Some(t) => &a + &t.recip().ok()?,
            });
        }
        acc
    }
}

/// `√n` as `f·√d` when `n = f²d`, otherwise through [`QuadNum::sqrt_of`].
fn sqrt_in_field(n: &BigInt, d: u64) -> Option<QuadNum> {
    let d_big = BigInt::from(d);
    if d > 1 && (n % &d_big).is_zero() {
        let f2 = n / &d_big;
        let f = f2.sqrt();
        if &f * &f == f2 {
            return QuadNum::new(BigRational::zero(), BigRational::from_integer(f), d).ok();
        }
    }
    QuadNum::sqrt_of(n).ok()
}

/// `(P, P', Q, Q')` with `[a_1; ..., a_s, y] = (P y + P')/(Q y + Q')`.
fn convergent_matrix(terms: &[BigInt]) -> (BigInt, BigInt, BigInt, BigInt) {
    let (mut p, mut pp, mut q, mut qq) =
        (BigInt::from(1), BigInt::zero(), BigInt::zero(), BigInt::from(1));
    for a in terms {
        // [[p, pp], [q, qq]] · [[a, 1], [1, 0]]
        let np = a * &p + &pp;
        let nq = a * &q + &qq;
        pp = std::mem::replace(&mut p, np);
        qq = std::mem::replace(&mut q, nq);
    }
    (p, pp, q, qq)
}

/// `[a0; a1, a2, (p1, p2)]`, with a trailing `...` when truncated.
impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.head.iter().skip(1).map(|a| a.to_string()).collect();
        if !self.period.is_empty() {
            let per: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
            parts.push(format!("({})", per.join(", ")));
        }
        if self.truncated {
            parts.push("...".into());
        }
        let a0 = self.head.first().map(|a| a.to_string()).unwrap_or_else(|| "0".into());
        if parts.is_empty() {
            write!(f, "[{a0}]")
        } else {
            write!(f, "[{a0}; {}]", parts.join(", "))
        }
    }
}
