//! Balance, letter frequencies and the sturmian classification of the gap
//! word `v_B`.

mod cf;
mod morphism;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::base::ParryProfile;
use crate::bintegers::distance_classes;
use crate::exactreal::QuadNum;
use crate::substitution::{composed_phi, fixed_point_word, format_word, Letter, Substitution};

pub use cf::{continued_fraction, ContinuedFraction};
pub use morphism::{
    format_factorization, peel, product, sturmian_morphism_test, test_word_criterion, Generator,
    MorphismVerdict,
};

/// Default prefix length for balance scans.
pub const DEFAULT_PREFIX: usize = 2048;

const CF_TERMS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmianError {
    #[error("letter {0} is not binary")]
    NotBinaryWord(Letter),
    #[error("substitution on {0} letters is not binary")]
    NotBinaryAlphabet(usize),
    #[error("test-word criterion and peeling disagree on {0}")]
    ProceduresDisagree(String),
}

/// Two windows of equal length whose counts of `1` differ by more than one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceViolation {
    pub len: usize,
    /// Start of the window with fewer `1`s.
    pub light: usize,
    /// Start of the window with more `1`s.
    pub heavy: usize,
    pub light_window: String,
    pub heavy_window: String,
}

/// The first unbalanced pair of factors, shortest length first, or `None`.
pub fn balance_violation(word: &[Letter]) -> Result<Option<BalanceViolation>, SturmianError> {
    if let Some(&a) = word.iter().find(|&&a| a > 1) {
        return Err(SturmianError::NotBinaryWord(a));
    }
    let mut ones = vec![0usize; word.len() + 1];
    for (i, &a) in word.iter().enumerate() {
        ones[i + 1] = ones[i] + a;
    }
    for len in 1..=word.len() {
        let (mut lo, mut hi) = ((usize::MAX, 0), (0, 0));
        for s in 0..=word.len() - len {
            let c = ones[s + len] - ones[s];
            if c < lo.0 {
                lo = (c, s);
            }
            if c > hi.0 || s == 0 {
                hi = (c, s);
            }
        }
        if hi.0 > lo.0 + 1 {
            let window = |s: usize| format_word(&word[s..s + len]);
            return Ok(Some(BalanceViolation {
                len,
                light: lo.1,
                heavy: hi.1,
                light_window: window(lo.1),
                heavy_window: window(hi.1),
            }));
        }
    }
    Ok(None)
}

pub fn is_balanced(word: &[Letter]) -> Result<bool, SturmianError> {
    Ok(balance_violation(word)?.is_none())
}

/// Letter frequencies `(ρ_0, ρ_1)` of the fixed point of a primitive binary
/// substitution, from the Perron eigenvector of its incidence matrix.
pub fn binary_frequency(sigma: &Substitution) -> Option<(QuadNum, QuadNum)> {
    if sigma.alphabet_size() != 2 {
        return None;
    }
    let m = sigma.incidence();
    if !m.is_primitive() {
        return None;
    }
    let [a, b, c, d] = [m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)].map(|v| v as i64);
    let lambda = perron_root(a, b, c, d);
    let q = |n: i64| QuadNum::from_integer(n);
    // ρ_1 / ρ_0
    let ratio = if b != 0 { &(&lambda - &q(a)) / &q(b) } else { &q(c) / &(&lambda - &q(d)) };
    let rho0 = (&q(1) + &ratio).recip().ok()?;
    let rho1 = &q(1) - &rho0;
    Some((rho0, rho1))
}

/// Largest eigenvalue of `[[a, b], [c, d]]`.
fn perron_root(a: i64, b: i64, c: i64, d: i64) -> QuadNum {
    let disc = BigInt::from((a - d) * (a - d) + 4 * b * c);
    let root = QuadNum::sqrt_of(&disc).expect("non-negative discriminant");
    &(&QuadNum::from_integer(a + d) + &root) / &QuadNum::from_integer(2)
}

/// Which clause of the sturmian characterization a profile matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `p = 1`, `d*(1) = (d0)^ω`.
    Case1,
    /// `p = 1`, `d*(1) = (d+1)d^ω`.
    Case2,
    /// `p = 2`, `d*_B(1) = (d0)^ω`, `d*_{S(B)}(1) = (e0)^ω`.
    Case3,
    /// The gap alphabet has more (or fewer) than two letters.
    NotBinary,
    /// Binary gap alphabet outside the three cases.
    BinaryNotSturmian,
}

/// Result of a balance scan over a finite prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub checked: usize,
    pub violation: Option<BalanceViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmianVerdict {
    pub case_tag: CaseTag,
    /// `[d]` or `[d, e]` for the three cases.
    pub params: Vec<u64>,
    pub alphabet_size: usize,
    /// Letters of `v_B` with equal gaps share a class.
    pub classes: Vec<usize>,
    /// Binary substitution fixing the class-coded word, when it exists.
    pub substitution: Option<Substitution>,
    pub factorization: Option<Vec<Generator>>,
    /// `(ρ_0, ρ_1)` of the class-coded word.
    pub frequency: Option<(QuadNum, QuadNum)>,
    pub cf: Option<ContinuedFraction>,
    /// Balance scan of the class-coded word when it is binary.
    pub balance: Option<BalanceReport>,
}

impl SturmianVerdict {
    /// Sturmian by one of the three cases, or by a certified binary
    /// substitution with no balance violation seen.
    pub fn is_sturmian(&self) -> bool {
        let balanced = self.balance.as_ref().is_some_and(|b| b.violation.is_none());
        match self.case_tag {
            CaseTag::Case1 | CaseTag::Case2 | CaseTag::Case3 => true,
            _ => balanced && self.factorization.is_some(),
        }
    }
}

/// Projects `v_B` through [`distance_classes`].
pub fn class_word(profile: &ParryProfile, len: usize) -> Vec<Letter> {
    let classes = distance_classes(profile);
    fixed_point_word(profile, len).into_iter().map(|a| classes[a]).collect()
}

/// The substitution induced by `classes` on the composed `φ`, if every class
/// maps to a single class-coded image.
pub fn quotient_substitution(profile: &ParryProfile, classes: &[usize]) -> Option<Substitution> {
    let phi = composed_phi(profile);
    let n = classes.iter().max().map_or(0, |m| m + 1);
    let mut images: Vec<Option<Vec<Letter>>> = vec![None; n];
    for (a, &c) in classes.iter().enumerate() {
        let img: Vec<Letter> = phi.image(a).iter().map(|&b| classes[b]).collect();
        match &images[c] {
            Some(prev) if *prev != img => return None,
            Some(_) => {}
            None => images[c] = Some(img),
        }
    }
    Substitution::new(images.into_iter().collect::<Option<Vec<_>>>()?).ok()
}

fn match_case(profile: &ParryProfile) -> Option<(CaseTag, Vec<u64>)> {
    let qg = profile.quasi_greedy_all();
    let pure_d0 = |i: usize| -> Option<u64> {
        let w = &qg[i];
        match (w.prefix(), w.period()) {
            ([], &[d, 0]) if d >= 1 => Some(d),
            _ => None,
        }
    };
    match qg.len() {
        1 => {
            if let Some(d) = pure_d0(0) {
                return Some((CaseTag::Case1, vec![d]));
            }
            match (qg[0].prefix(), qg[0].period()) {
                (&[top], &[d]) if d >= 1 && top == d + 1 => Some((CaseTag::Case2, vec![d])),
                _ => None,
            }
        }
        2 => Some((CaseTag::Case3, vec![pure_d0(0)?, pure_d0(1)?])),
        _ => None,
    }
}

/// Frequencies from the case formulas, in terms of `β_0`.
fn case_frequency(profile: &ParryProfile, tag: CaseTag) -> Option<(QuadNum, QuadNum)> {
    let one = QuadNum::one();
    let b0 = profile.base().beta(0);
    let rho1 = match tag {
        CaseTag::Case1 | CaseTag::Case3 => (b0 + &one).recip().ok()?,
        CaseTag::Case2 => b0.recip().ok()?,
        _ => return None,
    };
    Some((&one - &rho1, rho1))
}

/// Classifies `v_B`, scanning `prefix_len` letters of the class-coded word
/// for a balance violation.
pub fn classify(profile: &ParryProfile, prefix_len: usize) -> SturmianVerdict {
    let k = profile.alphabet_size();
    let classes = distance_classes(profile);
    let binary_classes = classes.iter().max() == Some(&1);
    let matched = match_case(profile);
    let case_tag = match &matched {
        Some((tag, _)) => *tag,
        None if k == 2 => CaseTag::BinaryNotSturmian,
        None => CaseTag::NotBinary,
    };
    let params = matched.map(|(_, p)| p).unwrap_or_default();

    let mut verdict = SturmianVerdict {
        case_tag,
        params,
        alphabet_size: k,
        classes: classes.clone(),
        substitution: None,
        factorization: None,
        frequency: None,
        cf: None,
        balance: None,
    };
    if !binary_classes {
        return verdict;
    }
    let word = class_word(profile, prefix_len);
    let violation = balance_violation(&word).expect("classes are binary");
    verdict.balance = Some(BalanceReport { checked: word.len(), violation });
    verdict.substitution = quotient_substitution(profile, &classes);
    if let Some(sigma) = &verdict.substitution {
        verdict.factorization = sturmian_morphism_test(sigma).ok().and_then(|v| v.factorization);
    }
    verdict.frequency = case_frequency(profile, case_tag)
        .or_else(|| verdict.substitution.as_ref().and_then(binary_frequency));
    verdict.cf = verdict.frequency.as_ref().map(|(rho0, _)| continued_fraction(rho0, CF_TERMS));
    verdict
}
