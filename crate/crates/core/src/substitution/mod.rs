//! Substitutions on finite alphabets, the gap substitutions `ψ` and `φ` of a
//! Parry base, their incidence matrices and the associated automaton.

mod automaton;
mod matrix;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base::ParryProfile;
use crate::bintegers::deltas;
use crate::exactreal::QuadNum;

pub use automaton::{Edge, ParryAutomaton, Vertex};
pub use matrix::{format_poly, CountMatrix};

pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("alphabet sizes differ ({0} vs {1})")]
    AlphabetMismatch(usize, usize),
    #[error("image of {letter} uses letter {found} outside an alphabet of size {size}")]
    LetterOutOfRange { letter: Letter, found: Letter, size: usize },
    #[error("image of {0} is empty")]
    EmptyImage(Letter),
    #[error("not prolongable at {0}")]
    NotProlongable(Letter),
    #[error("gap vector is not an eigenvector for the base product: {0}")]
    EigenIdentityViolated(String),
    #[error("malformed substitution: {0}")]
    Malformed(String),
}

/// A non-erasing substitution on `{0, ..., k-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Letter>>", into = "Vec<Vec<Letter>>")]
pub struct Substitution {
    images: Vec<Vec<Letter>>,
}

impl Substitution {
    pub fn new(images: Vec<Vec<Letter>>) -> Result<Self, SubstitutionError> {
        let size = images.len();
        for (letter, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(SubstitutionError::EmptyImage(letter));
            }
            if let Some(&found) = img.iter().find(|&&b| b >= size) {
                return Err(SubstitutionError::LetterOutOfRange { letter, found, size });
            }
        }
        Ok(Substitution { images })
    }

    pub fn identity(k: usize) -> Self {
        Substitution { images: (0..k).map(|a| vec![a]).collect() }
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a]
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn apply(&self, word: &[Letter]) -> Vec<Letter> {
        word.iter().flat_map(|&a| self.images[a].iter().copied()).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution, SubstitutionError> {
        if self.alphabet_size() != other.alphabet_size() {
            return Err(SubstitutionError::AlphabetMismatch(
                self.alphabet_size(),
                other.alphabet_size(),
            ));
        }
        Ok(Substitution { images: other.images.iter().map(|w| self.apply(w)).collect() })
    }

    /// `M[i][j] = |σ(j)|_i`.
    pub fn incidence(&self) -> CountMatrix {
        let mut m = CountMatrix::zeros(self.alphabet_size());
        for (j, img) in self.images.iter().enumerate() {
            for &i in img {
                m.set(i, j, m.get(i, j) + 1);
            }
        }
        m
    }

    pub fn is_prolongable(&self, seed: Letter) -> bool {
        seed < self.alphabet_size() && self.images[seed].len() >= 2 && self.images[seed][0] == seed
    }

    /// The first `len` letters of the fixed point starting with `seed`.
    pub fn fixed_point_prefix(&self, seed: Letter, len: usize) -> Result<Vec<Letter>, SubstitutionError> {
        if !self.is_prolongable(seed) {
            return Err(SubstitutionError::NotProlongable(seed));
        }
        let mut word = vec![seed];
        while word.len() < len {
            let mut next = Vec::with_capacity(len);
            for &a in &word {
                next.extend_from_slice(&self.images[a]);
                if next.len() >= len {
                    break;
                }
            }
            word = next;
        }
        word.truncate(len);
        Ok(word)
    }
}

impl TryFrom<Vec<Vec<Letter>>> for Substitution {
    type Error = SubstitutionError;

    fn try_from(images: Vec<Vec<Letter>>) -> Result<Self, Self::Error> {
        Substitution::new(images)
    }
}

impl From<Substitution> for Vec<Vec<Letter>> {
    fn from(s: Substitution) -> Self {
        s.images
    }
}

/// Concatenated letters when all are single digits, otherwise dot separated.
pub fn format_word(word: &[Letter]) -> String {
    if word.iter().all(|&a| a < 10) {
        word.iter().map(|a| a.to_string()).collect()
    } else {
        word.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn parse_word(text: &str, dotted: bool) -> Result<Vec<Letter>, SubstitutionError> {
    let bad = || SubstitutionError::Malformed(text.to_string());
    if dotted || text.contains('.') {
        text.split('.').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    } else {
        text.trim().chars().map(|c| c.to_digit(10).map(|d| d as Letter).ok_or_else(bad)).collect()
    }
}

/// `0->01, 1->2, ...`; images are dot separated on alphabets of more than
/// ten letters.
impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dotted = self.alphabet_size() > 10;
        for (a, img) in self.images.iter().enumerate() {
            if a > 0 {
                f.write_str(", ")?;
            }
            if dotted {
                let parts: Vec<String> = img.iter().map(|c| c.to_string()).collect();
                write!(f, "{a}->{}", parts.join("."))?;
            } else {
                write!(f, "{a}->{}", format_word(img))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Substitution {
    type Err = SubstitutionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut images = Vec::new();
        let dotted = s.split(',').count() > 10;
        for (k, rule) in s.split(',').enumerate() {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| SubstitutionError::Malformed(rule.trim().to_string()))?;
            if lhs.trim().parse::<Letter>().ok() != Some(k) {
                return Err(SubstitutionError::Malformed(format!("rule {k} is `{}`", rule.trim())));
            }
            images.push(parse_word(rhs, dotted)?);
        }
        Substitution::new(images)
    }
}

/// `ψ_{S^i(B)}(n) = 0^{d_{i+n+1,n+1}}(n+1)` over the infinite alphabet.
pub fn psi_image(profile: &ParryProfile, i: usize, n: Letter) -> Vec<Letter> {
    let zeros = profile.d((i + n + 1) as i64, n + 1) as usize;
    let mut img = vec![0; zeros];
    img.push(n + 1);
    img
}

/// `ψ_B ∘ ψ_{S(B)} ∘ ⋯ ∘ ψ_{S^{depth-1}(B)}(0)`, a prefix of `w_B`.
pub fn sadic_prefix(profile: &ParryProfile, depth: usize) -> Vec<Letter> {
    (0..depth).rev().fold(vec![0], |word, i| {
        word.iter().flat_map(|&a| psi_image(profile, i, a)).collect()
    })
}

/// The first `len` letters of `w_B`, from S-adic prefixes of growing depth.
pub fn sadic_word(profile: &ParryProfile, len: usize) -> Vec<Letter> {
    let mut depth = 1;
    loop {
        let mut w = sadic_prefix(profile, depth);
        if w.len() >= len {
            w.truncate(len);
            return w;
        }
        depth += 1;
    }
}

/// `φ_{S^i(B)}` on `{0, ..., ℓp+mp-1}`.
pub fn phi(profile: &ParryProfile, i: usize) -> Substitution {
    let k = profile.alphabet_size();
    let lp = profile.preperiod_len();
    let images = (0..k)
        .map(|n| {
            let mut img = psi_image(profile, i, n);
            if n + 1 == k {
                *img.last_mut().expect("nonempty") = lp;
            }
            img
        })
        .collect();
    Substitution { images }
}

/// `φ_B ∘ φ_{S(B)} ∘ ⋯ ∘ φ_{S^{p-1}(B)}`, which fixes `v_B`.
pub fn composed_phi(profile: &ParryProfile) -> Substitution {
    (0..profile.period())
        .map(|i| phi(profile, i))
        .reduce(|acc, s| acc.compose(&s).expect("same alphabet"))
        .expect("period is positive")
}

/// The first `len` letters of `v_B` as the fixed point of [`composed_phi`].
pub fn fixed_point_word(profile: &ParryProfile, len: usize) -> Vec<Letter> {
    composed_phi(profile).fixed_point_prefix(0, len).expect("φ-composition is prolongable at 0")
}

/// Checks `D_{p-1}·Δᵀ = δ·Δᵀ` exactly, where `Δ = (Δ_0, ..., Δ_{ℓp+mp-1})`,
/// `D_{p-1}` is the transposed incidence matrix of [`composed_phi`] and `δ`
/// is the product of the bases. Returns `(Δ, δ)`.
pub fn perron_check(profile: &ParryProfile) -> Result<(Vec<QuadNum>, QuadNum), SubstitutionError> {
    let delta = deltas(profile);
    let product = profile.base().product();
    let inc = composed_phi(profile).incidence();
    for j in 0..delta.len() {
        let lhs = (0..delta.len()).fold(QuadNum::zero(), |acc, i| {
            &acc + &(&delta[i] * &QuadNum::from_integer(inc.get(i, j) as i64))
        });
        let rhs = &product * &delta[j];
        if lhs != rhs {
            return Err(SubstitutionError::EigenIdentityViolated(format!(
                "component {j}: {lhs} != {rhs}"
            )));
        }
    }
    Ok((delta, product))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::AlternateBase;

    fn running() -> ParryProfile {
        let b = AlternateBase::new(vec![QuadNum::surd(1, 1, 13, 2), QuadNum::surd(5, 1, 13, 6)])
            .unwrap();
        ParryProfile::new(&b, 64).unwrap()
    }

    fn subst(s: &str) -> Substitution {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        let s = subst("0->01, 1->2, 2->03, 3->02");
        assert_eq!(s.to_string(), "0->01, 1->2, 2->03, 3->02");
        assert_eq!(subst("0->0.11, 1->1, 2->2, 3->3, 4->4, 5->5, 6->6, 7->7, 8->8, 9->9, 10->10, 11->11").image(0), &[0, 11]);
        assert!(matches!("0->02, 1->1".parse::<Substitution>(), Err(SubstitutionError::LetterOutOfRange { .. })));
        assert!(matches!("1->0".parse::<Substitution>(), Err(SubstitutionError::Malformed(_))));
        assert!(matches!("0->, 1->1".parse::<Substitution>(), Err(SubstitutionError::Malformed(_) | SubstitutionError::EmptyImage(_))));
    }

    #[test]
    fn psi_images() {
        let prof = running();
        assert_eq!(psi_image(&prof, 0, 0), vec![0, 1]);
        assert_eq!(psi_image(&prof, 0, 1), vec![2]);
        assert_eq!(psi_image(&prof, 0, 7), vec![0, 8]);
        assert_eq!(sadic_prefix(&prof, 1), vec![0, 1]);
        assert_eq!(sadic_prefix(&prof, 2), vec![0, 1, 0, 1, 2]);
    }

    #[test]
    fn phi_images() {
        let prof = running();
        assert_eq!(phi(&prof, 0), subst("0->01, 1->2, 2->03, 3->02"));
        assert_eq!(phi(&prof, 1), subst("0->001, 1->2, 2->3, 3->2"));
        assert_eq!(composed_phi(&prof), subst("0->01012, 1->03, 2->02, 3->03"));
        let two = ParryProfile::new(&AlternateBase::single(QuadNum::from_integer(2)).unwrap(), 8)
            .unwrap();
        assert_eq!(phi(&two, 0), subst("0->00"));
    }

    #[test]
    fn fixed_points() {
        let prof = running();
        let w = composed_phi(&prof).fixed_point_prefix(0, 16).unwrap();
        assert_eq!(format_word(&w), "0101203010120302");
        let fib = subst("0->01, 1->0");
        assert_eq!(format_word(&fib.fixed_point_prefix(0, 8).unwrap()), "01001010");
        assert_eq!(
            format_word(&subst("0->01011, 1->01").fixed_point_prefix(0, 16).unwrap()),
            "0101101010110101"
        );
        assert_eq!(fib.fixed_point_prefix(1, 4), Err(SubstitutionError::NotProlongable(1)));
    }

    #[test]
    fn composition_and_incidence() {
        let s = subst("0->01, 1->2, 2->03, 3->02");
        assert_eq!(s.compose(&Substitution::identity(4)).unwrap(), s);
        assert_eq!(
            s.compose(&Substitution::identity(2)),
            Err(SubstitutionError::AlphabetMismatch(4, 2))
        );
        assert_eq!(Substitution::identity(2).incidence(), CountMatrix::identity(2));
        let t = subst("0->001, 1->2, 2->3, 3->2");
        assert_eq!(
            s.compose(&t).unwrap().incidence(),
            s.incidence().try_mul(&t.incidence()).unwrap()
        );
    }

    #[test]
    fn running_automaton() {
        let prof = running();
        let a = ParryAutomaton::build(&prof);
        let m = CountMatrix::new(vec![
            vec![0, 0, 0, 0, 2, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
            vec![1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![1, 0, 0, 1, 0, 0, 0, 0],
            vec![1, 0, 1, 0, 0, 0, 0, 0],
        ]);
        assert_eq!(a.adjacency(), m);
        assert_eq!(a.block(0).transpose(), phi(&prof, 0).incidence());
        assert_eq!(a.block(1).transpose(), phi(&prof, 1).incidence());
        assert_eq!(a.cycle_product().transpose(), composed_phi(&prof).incidence());
        assert!(a.strongly_connected());
        assert!(a.to_dot().contains("\"1,0\" -> \"0,1\" [label=\"2\"];"));
    }

    #[test]
    fn eigen_identity() {
        let prof = running();
        let (delta, product) = perron_check(&prof).unwrap();
        assert_eq!(product, QuadNum::surd(3, 1, 13, 2));
        assert_eq!(delta[1], QuadNum::surd(-1, 1, 13, 6));
    }
}
