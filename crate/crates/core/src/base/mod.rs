//! Alternate bases and their two-way greedy and quasi-greedy expansions.
//!
//! An alternate base of period `p` is written `(β_{p-1}, ..., β_0)` and
//! extended periodically to all integer indices, `β_{n+p} = β_n`. A digit at
//! non-negative index `n` weighs `β_{n-1}⋯β_0`; a digit at index `-j` weighs
//! `1/(β_{-1}⋯β_{-j})`.

mod digits;
mod parry;

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactreal::{ArithError, QuadNum};

pub use digits::{Digit, DigitWord, InfiniteWord};
pub use parry::{ParryProfile, DEFAULT_STATE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("base entry {index} = {value} is not greater than one")]
    BaseNotGreaterThanOne { index: usize, value: String },
    #[error("base entries live in different quadratic fields ({0} vs {1})")]
    MixedFields(u64, u64),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("cannot expand a negative number")]
    NegativeInput,
    #[error("no repeated state within a budget of {budget} states; base not certified Parry")]
    BudgetExhausted { budget: usize },
    #[error("word {0} is not an admissible expansion")]
    NotAdmissible(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A periodic two-way Cantor real base.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlternateBase {
    // betas[i] = β_i
    betas: Vec<QuadNum>,
    radicand: u64,
}

impl AlternateBase {
    /// Builds a base from its written form `(β_{p-1}, ..., β_0)`.
    pub fn new(written: Vec<QuadNum>) -> Result<Self, BaseError> {
        if written.is_empty() {
            return Err(BaseError::Malformed("a base needs at least one entry".into()));
        }
        let p = written.len();
        let mut radicand = 1;
        for (k, beta) in written.iter().enumerate() {
            match (radicand, beta.radicand()) {
                (_, 1) => {}
                (1, d) => radicand = d,
                (r, d) if r != d => return Err(BaseError::MixedFields(r, d)),
                _ => {}
            }
            if beta.try_cmp(&QuadNum::one())?.is_le() {
                return Err(BaseError::BaseNotGreaterThanOne {
                    index: p - 1 - k,
                    value: beta.to_string(),
                });
            }
        }
        let mut betas = written;
        betas.reverse();
        Ok(AlternateBase { betas, radicand })
    }

    /// A constant base `(β)` of period one.
    pub fn single(beta: QuadNum) -> Result<Self, BaseError> {
        Self::new(vec![beta])
    }

    pub fn period(&self) -> usize {
        self.betas.len()
    }

    /// Square-free radicand of the field holding every entry.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// `β_n` for any integer index.
    pub fn beta(&self, n: i64) -> &QuadNum {
        &self.betas[n.mod_floor(&(self.period() as i64)) as usize]
    }

    /// Entries in written order `(β_{p-1}, ..., β_0)`.
    pub fn written(&self) -> Vec<QuadNum> {
        self.betas.iter().rev().cloned().collect()
    }

    /// `S^i(B)`, the base with `β'_n = β_{n+i}`.
    pub fn shift(&self, i: i64) -> AlternateBase {
        let p = self.period() as i64;
        let betas = (0..p).map(|n| self.beta(n + i).clone()).collect();
        AlternateBase { betas, radicand: self.radicand }
    }

    /// `δ = β_{p-1}⋯β_0`.
    pub fn product(&self) -> QuadNum {
        self.betas.iter().fold(QuadNum::one(), |acc, b| &acc * b)
    }

    /// `β_{n-1}⋯β_0`, the weight of the digit at index `n >= 0`.
    pub fn place_value(&self, n: usize) -> QuadNum {
        (0..n as i64).fold(QuadNum::one(), |acc, k| &acc * self.beta(k))
    }

    /// Place values `β_{k-1}⋯β_0` for `k = 0..=n`.
    pub fn place_values(&self, n: usize) -> Vec<QuadNum> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(QuadNum::one());
        for k in 0..n {
            let next = &out[k] * self.beta(k as i64);
            out.push(next);
        }
        out
    }

    /// Value of a two-way digit word in this base.
    pub fn value(&self, w: &DigitWord) -> QuadNum {
        let places = self.place_values(w.int_len());
        let mut total = QuadNum::zero();
        for (k, &a) in w.int_part().iter().rev().enumerate() {
            if a != 0 {
                total = &total + &(&places[k] * &QuadNum::from_integer(a as i64));
            }
        }
        &total + &self.fraction_value(w.frac())
    }

    /// `Σ c_j / (β_{-1}⋯β_{-j})` for an eventually periodic digit sequence.
    pub fn fraction_value(&self, frac: &InfiniteWord) -> QuadNum {
        let mut total = QuadNum::zero();
        let mut weight = QuadNum::one(); // 1/(β_{-1}⋯β_{-j})
        for (j, &c) in frac.prefix().iter().enumerate() {
            weight = &weight / self.beta(-(j as i64) - 1);
            if c != 0 {
                total = &total + &(&weight * &QuadNum::from_integer(c as i64));
            }
        }
        if frac.is_terminating() {
            return total;
        }
        // tail: one block of lcm(s, p) digits, summed as a geometric series
        let r = frac.prefix().len() as i64;
        let block = frac.period().len().lcm(&self.period());
        let mut block_sum = QuadNum::zero();
        let mut inner = QuadNum::one();
        for t in 0..block {
            inner = &inner / self.beta(-r - t as i64 - 1);
            let c = frac.period()[t % frac.period().len()];
            if c != 0 {
                block_sum = &block_sum + &(&inner * &QuadNum::from_integer(c as i64));
            }
        }
        // inner = 1/Π over the block; tail = weight * S / (1 - 1/Π)
        let ratio = &QuadNum::one() - &inner;
        &total + &(&(&weight * &block_sum) / &ratio)
    }

    /// Two-way greedy expansion `d_B(x)`.
    ///
    /// At most `frac_digits` fractional digits are produced unless the
    /// remainder state repeats earlier, in which case the exact eventually
    /// periodic expansion is returned.
    pub fn greedy_expand(&self, x: &QuadNum, frac_digits: usize) -> Result<Expansion, BaseError> {
        if x.try_cmp(&QuadNum::zero())?.is_lt() {
            return Err(BaseError::NegativeInput);
        }
        let one = QuadNum::one();
        let mut int_part = Vec::new();
        let mut r = x.clone();
        if x.try_cmp(&one)?.is_ge() {
            // minimal N with x < β_N⋯β_0
            let mut n = 0usize;
            let mut place = self.beta(0).clone();
            while x.try_cmp(&place)?.is_ge() {
                n += 1;
                place = &place * self.beta(n as i64);
            }
            r = x / &place;
            for k in (0..=n as i64).rev() {
                let (a, next) = greedy_step(self.beta(k), &r);
                int_part.push(a);
                r = next;
            }
        }
        let p = self.period();
        let mut digits = Vec::new();
        let mut seen: HashMap<(usize, QuadNum), usize> = HashMap::new();
        let mut j = 0usize;
        while !r.is_zero() {
            let key = (j % p, r.clone());
            if let Some(&start) = seen.get(&key) {
                let period = digits.split_off(start);
                let frac = InfiniteWord::new(digits, period);
                return Ok(Expansion { word: DigitWord::new(int_part, frac), truncated: false });
            }
            if j == frac_digits {
                let frac = InfiniteWord::finite(digits);
                return Ok(Expansion { word: DigitWord::new(int_part, frac), truncated: true });
            }
            seen.insert(key, j);
            let (a, next) = greedy_step(self.beta(-(j as i64) - 1), &r);
            digits.push(a);
            r = next;
            j += 1;
        }
        Ok(Expansion {
            word: DigitWord::new(int_part, InfiniteWord::finite(digits)),
            truncated: false,
        })
    }

    /// Quasi-greedy expansion of one, `d*_B(1)`.
    ///
    /// Runs `a = ⌈βr⌉ - 1`, `r ← βr - a` from `r = 1`; the remainder stays in
    /// `(0, 1]`. Fails once more than `state_budget` distinct states were seen.
    pub fn quasi_greedy_one(&self, state_budget: usize) -> Result<InfiniteWord, BaseError> {
        let p = self.period();
        let mut r = QuadNum::one();
        let mut digits: Vec<Digit> = Vec::new();
        let mut seen: HashMap<(usize, QuadNum), usize> = HashMap::new();
        for j in 0.. {
            let key = (j % p, r.clone());
            if let Some(&start) = seen.get(&key) {
                let period = digits.split_off(start);
                return Ok(InfiniteWord::new(digits, period));
            }
            if seen.len() == state_budget {
                return Err(BaseError::BudgetExhausted { budget: state_budget });
            }
            seen.insert(key, j);
            let scaled = self.beta(-(j as i64) - 1) * &r;
            let a: num_bigint::BigInt = scaled.ceil() - 1;
            let a_q = QuadNum::from_bigint(a.clone());
            r = &scaled - &a_q;
            digits.push(a.to_u64().expect("digit fits in u64"));
        }
        unreachable!()
    }
}

/// `(⌊βr⌋, βr - ⌊βr⌋)`.
fn greedy_step(beta: &QuadNum, r: &QuadNum) -> (Digit, QuadNum) {
    let scaled = beta * r;
    let a = scaled.floor();
    let rest = &scaled - &QuadNum::from_bigint(a.clone());
    (a.to_u64().expect("digit fits in u64"), rest)
}

/// Result of [`AlternateBase::greedy_expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub word: DigitWord,
    /// The fractional part was cut at the digit bound before it terminated or
    /// a period was found.
    pub truncated: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BetaLit {
    Int(i64),
    Text(String),
    Exact(QuadNum),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BaseFile {
    List(Vec<BetaLit>),
    Object {
        betas: Vec<BetaLit>,
        #[serde(default)]
        #[allow(dead_code)]
        period_note: Option<String>,
    },
}

#[derive(Serialize)]
struct BaseOut<'a> {
    betas: &'a [QuadNum],
}

/// Parses a base from JSON: either a list of entries or an object with a
/// `betas` list (and an optional, ignored `period_note`). Entries are written
/// `β_{p-1}` first and may be integers, text forms or `{"a","b","d"}` objects.
pub fn parse_base(text: &str) -> Result<AlternateBase, BaseError> {
    let file: BaseFile =
        serde_json::from_str(text).map_err(|e| BaseError::Malformed(e.to_string()))?;
    let entries = match file {
        BaseFile::List(v) => v,
        BaseFile::Object { betas, .. } => betas,
    };
    let betas = entries
        .into_iter()
        .map(|lit| match lit {
            BetaLit::Int(n) => Ok(QuadNum::from_integer(n)),
            BetaLit::Text(s) => s.parse::<QuadNum>().map_err(BaseError::from),
            BetaLit::Exact(q) => Ok(q),
        })
        .collect::<Result<Vec<_>, _>>()?;
    AlternateBase::new(betas)
}

/// JSON form `{"betas": [...]}` in written order, readable by [`parse_base`].
pub fn base_to_json(base: &AlternateBase) -> String {
    serde_json::to_string(&BaseOut { betas: &base.written() }).expect("serializable")
}
