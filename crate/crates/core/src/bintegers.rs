//! B-integers: the maxima `M_{B,n}`, the gaps `Δ_n`, the radix successor and
//! the gap words `w_B` and `v_B`.

use serde::Serialize;

use crate::base::{BaseError, Digit, DigitWord, ParryProfile};
use crate::exactreal::QuadNum;

/// `(d_B(M_{B,n}), M_{B,n})`, the largest B-integer below `β_{n-1}⋯β_0`.
///
/// Its expansion is the length-`n` prefix of `d*_{S^n(B)}(1)`.
pub fn max_below(profile: &ParryProfile, n: usize) -> (DigitWord, QuadNum) {
    let word = DigitWord::integer(profile.quasi_greedy(n as i64).take(n));
    let value = profile.base().value(&word);
    (word, value)
}

/// `Δ_n = β_{n-1}⋯β_0 - M_{B,n}`, evaluated as `val_B(0·d_{n,n+1}d_{n,n+2}⋯)`.
pub fn delta(profile: &ParryProfile, n: usize) -> QuadNum {
    let tail = profile.quasi_greedy(n as i64).suffix(n);
    profile.base().fraction_value(&tail)
}

/// `Δ_0, ..., Δ_{ℓp+mp-1}`.
pub fn deltas(profile: &ParryProfile) -> Vec<QuadNum> {
    (0..profile.alphabet_size()).map(|n| delta(profile, n)).collect()
}

/// Folds a gap letter into `{0, ..., ℓp+mp-1}`.
pub fn project_letter(profile: &ParryProfile, w: usize) -> usize {
    let lp = profile.preperiod_len();
    if w < lp {
        w
    } else {
        lp + (w - lp) % profile.period_len()
    }
}

/// Merges letters of `{0, ..., ℓp+mp-1}` whose gaps are equal.
///
/// `classes[a]` numbers the distinct values of `Δ_a` in order of first
/// appearance, so letter `0` always lands in class `0`.
pub fn distance_classes(profile: &ParryProfile) -> Vec<usize> {
    let ds = deltas(profile);
    let mut reps: Vec<&QuadNum> = Vec::new();
    ds.iter()
        .map(|d| match reps.iter().position(|r| *r == d) {
            Some(c) => c,
            None => {
                reps.push(d);
                reps.len() - 1
            }
        })
        .collect()
}

/// The next B-integer expansion in radix order and the carry position `n`,
/// so that the gap between the two values is `Δ_n`.
pub fn successor(profile: &ParryProfile, x: &DigitWord) -> Result<(DigitWord, usize), BaseError> {
    if !x.is_integer() || !profile.is_admissible(x) {
        return Err(BaseError::NotAdmissible(x.to_string()));
    }
    let digits = x.int_part();
    let len = digits.len();
    for n in 0..len {
        let mut cand = digits.to_vec();
        cand[len - 1 - n] += 1;
        cand[len - n..].iter_mut().for_each(|d| *d = 0);
        let w = DigitWord::integer(cand);
        if profile.is_admissible(&w) {
            return Ok((w, n));
        }
    }
    // 1·0^N is admissible since every d_{i,1} >= 1
    let mut top: Vec<Digit> = vec![1];
    top.resize(len + 1, 0);
    Ok((DigitWord::integer(top), len))
}

/// One row of the B-integer table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BIntegerEntry {
    pub k: usize,
    pub value: QuadNum,
    pub expansion: DigitWord,
    /// Gap letter `w_k`: `x_{k+1} - x_k = Δ_{w_k}`.
    pub w: usize,
    /// `w_k` folded into the finite alphabet.
    pub v: usize,
}

/// Forward generator of the B-integers `x_0 = 0 < x_1 = 1 < ...`.
///
/// Values are recomputed from the expansions, not accumulated.
#[derive(Clone, Debug)]
pub struct BIntegers<'a> {
    profile: &'a ParryProfile,
    k: usize,
    current: DigitWord,
    places: Vec<QuadNum>,
}

impl<'a> BIntegers<'a> {
    pub fn new(profile: &'a ParryProfile) -> Self {
        BIntegers { profile, k: 0, current: DigitWord::zero(), places: vec![QuadNum::one()] }
    }

    fn value_of(&mut self, w: &DigitWord) -> QuadNum {
        while self.places.len() < w.int_len() {
            let k = self.places.len();
            let next = &self.places[k - 1] * self.profile.base().beta(k as i64 - 1);
            self.places.push(next);
        }
        let mut total = QuadNum::zero();
        for (k, &a) in w.int_part().iter().rev().enumerate() {
            if a != 0 {
                total = &total + &(&self.places[k] * &QuadNum::from_integer(a as i64));
            }
        }
        total
    }
}

impl Iterator for BIntegers<'_> {
    type Item = BIntegerEntry;

    fn next(&mut self) -> Option<BIntegerEntry> {
        let (next, w) = successor(self.profile, &self.current).expect("generator stays admissible");
        let expansion = std::mem::replace(&mut self.current, next);
        let value = self.value_of(&expansion);
        let entry = BIntegerEntry {
            k: self.k,
            value,
            expansion,
            w,
            v: project_letter(self.profile, w),
        };
        self.k += 1;
        Some(entry)
    }
}

/// The first `count` B-integers.
pub fn enumerate(profile: &ParryProfile, count: usize) -> Vec<BIntegerEntry> {
    BIntegers::new(profile).take(count).collect()
}

/// Prefix of `w_B` of the given length, from successive carries.
pub fn gap_word(profile: &ParryProfile, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    let mut x = DigitWord::zero();
    while out.len() < len {
        let (next, w) = successor(profile, &x).expect("successor of an admissible word");
        out.push(w);
        x = next;
    }
    out
}

/// Prefix of `v_B`: [`gap_word`] with every letter projected.
pub fn projected_gap_word(profile: &ParryProfile, len: usize) -> Vec<usize> {
    gap_word(profile, len).into_iter().map(|w| project_letter(profile, w)).collect()
}
