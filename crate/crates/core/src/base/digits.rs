//! Digit words: eventually periodic one-way words and two-way expansions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::BaseError;

pub type Digit = u64;

/// An eventually periodic infinite word `prefix · period^ω`.
///
/// An empty period stands for the tail `0^ω`. Values are kept canonical: the
/// period is primitive and the prefix as short as possible, so equality of
/// words is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct InfiniteWord {
    prefix: Vec<Digit>,
    period: Vec<Digit>,
}

impl InfiniteWord {
    pub fn new(prefix: Vec<Digit>, period: Vec<Digit>) -> Self {
        let mut w = InfiniteWord { prefix, period };
        w.canonicalize();
        w
    }

    /// A finite word followed by `0^ω`.
    pub fn finite(digits: Vec<Digit>) -> Self {
        Self::new(digits, Vec::new())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn prefix(&self) -> &[Digit] {
        &self.prefix
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    /// True when the word ends in `0^ω`.
    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.period.is_empty()
    }

    fn canonicalize(&mut self) {
        if self.period.iter().all(|&d| d == 0) {
            self.period.clear();
        }
        if self.period.is_empty() {
            while self.prefix.last() == Some(&0) {
                self.prefix.pop();
            }
            return;
        }
        let n = self.period.len();
        let primitive = (1..=n)
            .find(|&k| n.is_multiple_of(k) && (k..n).all(|i| self.period[i] == self.period[i - k]))
            .unwrap_or(n);
        self.period.truncate(primitive);
        // roll the period backwards into the prefix while the last prefix digit matches
        while let Some(&last) = self.prefix.last() {
            if last == *self.period.last().unwrap() {
                self.prefix.pop();
                self.period.rotate_right(1);
            } else {
                break;
            }
        }
    }

    /// Digit at 0-based position `i`.
    pub fn at(&self, i: usize) -> Digit {
        if i < self.prefix.len() {
            self.prefix[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// The first `n` digits.
    pub fn take(&self, n: usize) -> Vec<Digit> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// The word with its first `n` digits removed.
    pub fn suffix(&self, n: usize) -> InfiniteWord {
        if n <= self.prefix.len() {
            return InfiniteWord::new(self.prefix[n..].to_vec(), self.period.clone());
        }
        if self.period.is_empty() {
            return InfiniteWord::zero();
        }
        let mut period = self.period.clone();
        period.rotate_left((n - self.prefix.len()) % self.period.len());
        InfiniteWord::new(Vec::new(), period)
    }

    /// `head · self`.
    pub fn prepend(&self, head: &[Digit]) -> InfiniteWord {
        let mut prefix = head.to_vec();
        prefix.extend_from_slice(&self.prefix);
        InfiniteWord::new(prefix, self.period.clone())
    }

    /// Same word, re-split so that the prefix has exactly `pre` digits and the
    /// period exactly `per` digits. Fails if the word is not of that shape.
    pub fn reshaped(&self, pre: usize, per: usize) -> Option<(Vec<Digit>, Vec<Digit>)> {
        let own_per = self.period.len().max(1);
        if per == 0 || !per.is_multiple_of(own_per) || pre < self.prefix.len() {
            return None;
        }
        Some((self.take(pre), (pre..pre + per).map(|i| self.at(i)).collect()))
    }

    /// Positions after which two words can no longer differ.
    fn horizon(&self, other: &InfiniteWord) -> usize {
        let lp = self.period.len().max(1);
        let lq = other.period.len().max(1);
        self.prefix.len().max(other.prefix.len()) + lp.lcm(&lq)
    }

    /// Lexicographic order on infinite words.
    pub fn cmp_lex(&self, other: &InfiniteWord) -> Ordering {
        for i in 0..self.horizon(other) {
            match self.at(i).cmp(&other.at(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

fn join(digits: &[Digit]) -> String {
    digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

/// Text form `c_1,...,c_r (c_{r+1},...,c_{r+s})^w`; the zero word prints as `0`.
impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", join(&self.prefix))?;
        if !self.period.is_empty() {
            if !self.prefix.is_empty() {
                write!(f, " ")?;
            }
            write!(f, "({})^w", join(&self.period))?;
        }
        Ok(())
    }
}

fn parse_digits(s: &str) -> Result<Vec<Digit>, BaseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<Digit>().map_err(|_| BaseError::Malformed(format!("bad digit {t:?}"))))
        .collect()
}

impl FromStr for InfiniteWord {
    type Err = BaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(InfiniteWord::zero());
        }
        match s.find('(') {
            Some(open) => {
                let rest = &s[open + 1..];
                let close = rest
                    .find(")^w")
                    .ok_or_else(|| BaseError::Malformed(format!("unterminated period in {s:?}")))?;
                if !rest[close + 3..].trim().is_empty() {
                    return Err(BaseError::Malformed(format!("trailing text in {s:?}")));
                }
                let period = parse_digits(&rest[..close])?;
                if period.is_empty() {
                    return Err(BaseError::Malformed("empty period".into()));
                }
                Ok(InfiniteWord::new(parse_digits(&s[..open])?, period))
            }
            None => Ok(InfiniteWord::finite(parse_digits(s)?)),
        }
    }
}

/// A two-way digit word `a_{N-1} ... a_0 . c_1 c_2 ...`.
///
/// The integer part is stored most significant digit first and carries no
/// leading zero; the fractional part is an [`InfiniteWord`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DigitWord {
    int_part: Vec<Digit>,
    frac: InfiniteWord,
}

impl DigitWord {
    pub fn new(int_part: Vec<Digit>, frac: InfiniteWord) -> Self {
        let lead = int_part.iter().take_while(|&&d| d == 0).count();
        DigitWord { int_part: int_part[lead..].to_vec(), frac }
    }

    /// An integer-part-only word `a_{N-1} ... a_0 . 0^ω`.
    pub fn integer(int_part: Vec<Digit>) -> Self {
        Self::new(int_part, InfiniteWord::zero())
    }

    pub fn fraction(frac: InfiniteWord) -> Self {
        Self::new(Vec::new(), frac)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn int_part(&self) -> &[Digit] {
        &self.int_part
    }

    pub fn frac(&self) -> &InfiniteWord {
        &self.frac
    }

    /// Number of integer digits `N`.
    pub fn int_len(&self) -> usize {
        self.int_part.len()
    }

    pub fn is_zero(&self) -> bool {
        self.int_part.is_empty() && self.frac.is_zero()
    }

    /// Has only zeros after the radix point.
    pub fn is_integer(&self) -> bool {
        self.frac.is_zero()
    }

    /// Digit at two-way index `n` (`n >= 0` integer side, `n < 0` fractional side).
    pub fn digit(&self, n: i64) -> Digit {
        if n >= 0 {
            let n = n as usize;
            if n < self.int_part.len() {
                self.int_part[self.int_part.len() - 1 - n]
            } else {
                0
            }
        } else {
            self.frac.at((-n - 1) as usize)
        }
    }

    /// The infinite word read from two-way index `n` downwards.
    pub fn read_from(&self, n: i64) -> InfiniteWord {
        if n >= 0 {
            let n = n as usize;
            let len = self.int_part.len();
            let head: Vec<Digit> = if n < len {
                self.int_part[len - 1 - n..].to_vec()
            } else {
                let mut h = vec![0; n + 1 - len];
                h.extend_from_slice(&self.int_part);
                h
            };
            self.frac.prepend(&head)
        } else {
            self.frac.suffix((-n - 1) as usize)
        }
    }

    /// Moves the radix point one place left: `a_{N-1}..a_1 . a_0 c_1 ...`.
    pub fn shift_point_left(&self) -> DigitWord {
        match self.int_part.split_last() {
            Some((&last, rest)) => DigitWord::new(rest.to_vec(), self.frac.prepend(&[last])),
            None => DigitWord::fraction(self.frac.prepend(&[0])),
        }
    }

    /// Radix order: longer integer part is larger, then lexicographic.
    pub fn cmp_radix(&self, other: &DigitWord) -> Ordering {
        self.int_part
            .len()
            .cmp(&other.int_part.len())
            .then_with(|| self.int_part.cmp(&other.int_part))
            .then_with(|| self.frac.cmp_lex(&other.frac))
    }

    /// Digits of the integer part concatenated, `ε` when empty. Only
    /// unambiguous while every digit is below ten.
    pub fn compact_int(&self) -> String {
        if self.int_part.is_empty() {
            "ε".to_string()
        } else {
            self.int_part.iter().map(|d| d.to_string()).collect()
        }
    }
}

/// Text form `a_{N-1},...,a_0 . c_1,...,c_r (c_{r+1},...)^w`.
impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.int_part.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", join(&self.int_part))?;
        }
        if !self.frac.is_zero() {
            write!(f, " . {}", self.frac)?;
        }
        Ok(())
    }
}

impl FromStr for DigitWord {
    type Err = BaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f.parse::<InfiniteWord>()?),
            None => (s, InfiniteWord::zero()),
        };
        if int.contains('(') {
            return Err(BaseError::Malformed(format!("period in integer part of {s:?}")));
        }
        Ok(DigitWord::new(parse_digits(int)?, frac))
    }
}

#[derive(Serialize, Deserialize)]
struct DigitWordJson {
    int_part: Vec<Digit>,
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

/// JSON mirror with fields `int_part`, `preperiod`, `period`.
impl Serialize for DigitWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DigitWordJson {
            int_part: self.int_part.clone(),
            preperiod: self.frac.prefix.clone(),
            period: self.frac.period.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DigitWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DigitWordJson::deserialize(deserializer)?;
        Ok(DigitWord::new(raw.int_part, InfiniteWord::new(raw.preperiod, raw.period)))
    }
}
