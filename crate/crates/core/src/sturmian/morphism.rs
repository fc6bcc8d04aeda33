use std::fmt;

use serde::Serialize;

use super::{balance_violation, SturmianError};
use crate::substitution::{Letter, Substitution};

/// Generators of the sturmian monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    /// `0 ↦ 1, 1 ↦ 0`
    E,
    /// `0 ↦ 0, 1 ↦ 01`
    G,
    /// `0 ↦ 0, 1 ↦ 10`
    GTilde,
}

impl Generator {
    pub fn substitution(self) -> Substitution {
        let images = match self {
            Generator::E => vec![vec![1], vec![0]],
            Generator::G => vec![vec![0], vec![0, 1]],
            Generator::GTilde => vec![vec![0], vec![1, 0]],
        };
        Substitution::new(images).expect("valid generator")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::E => "E",
            Generator::G => "G",
            Generator::GTilde => "G~",
        })
    }
}

/// `g_1 ∘ g_2 ∘ ⋯ ∘ g_k`; the identity on two letters when empty.
pub fn product(factors: &[Generator]) -> Substitution {
    factors.iter().fold(Substitution::identity(2), |acc, g| {
        acc.compose(&g.substitution()).expect("binary")
    })
}

/// Compact text such as `E·G~·E·G^2·E`, or `id` for the empty product.
pub fn format_factorization(factors: &[Generator]) -> String {
    if factors.is_empty() {
        return "id".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let g = factors[i];
        let run = factors[i..].iter().take_while(|&&h| h == g).count();
        parts.push(if run == 1 { g.to_string() } else { format!("{g}^{run}") });
        i += run;
    }
    parts.join("·")
}

const TEST_WORD: [Letter; 14] = [1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1];

/// Outcome of [`sturmian_morphism_test`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismVerdict {
    pub sturmian: bool,
    /// A factorization over `{E, G, G~}` when sturmian.
    pub factorization: Option<Vec<Generator>>,
}

/// Decides membership in the monoid generated by `E`, `G` and `G~`.
///
/// Two independent procedures run: the test-word criterion (the image of
/// `10010010100101` is balanced and `σ(0)σ(1) ≠ σ(1)σ(0)`) and a search that
/// peels generators off the left. Disagreement is reported as an error.
pub fn sturmian_morphism_test(sigma: &Substitution) -> Result<MorphismVerdict, SturmianError> {
    if sigma.alphabet_size() != 2 {
        return Err(SturmianError::NotBinaryAlphabet(sigma.alphabet_size()));
    }
    let by_criterion = test_word_criterion(sigma);
    let factorization = peel(sigma, None);
    if by_criterion != factorization.is_some() {
        return Err(SturmianError::ProceduresDisagree(sigma.to_string()));
    }
    Ok(MorphismVerdict { sturmian: by_criterion, factorization })
}

/// The test-word half of [`sturmian_morphism_test`].
pub fn test_word_criterion(sigma: &Substitution) -> bool {
    let (x, y) = (sigma.image(0), sigma.image(1));
    let xy: Vec<Letter> = x.iter().chain(y).copied().collect();
    let yx: Vec<Letter> = y.iter().chain(x).copied().collect();
    if xy == yx {
        return false;
    }
    let image = sigma.apply(&TEST_WORD);
    matches!(balance_violation(&image), Ok(None))
}

/// The peeling half of [`sturmian_morphism_test`]: a factorization with
/// `σ = g_1 ∘ ⋯ ∘ g_k`, if one exists.
pub fn peel(sigma: &Substitution, last: Option<Generator>) -> Option<Vec<Generator>> {
    if *sigma == Substitution::identity(2) {
        return Some(Vec::new());
    }
    let total: usize = sigma.images().iter().map(Vec::len).sum();
    let ones: usize = sigma.images().iter().flatten().filter(|&&a| a == 1).count();
    if ones > 0 {
        for (g, decode) in [
            (Generator::G, decode_g as fn(&[Letter]) -> Option<Vec<Letter>>),
            (Generator::GTilde, decode_g_tilde),
        ] {
            let images: Option<Vec<Vec<Letter>>> =
                sigma.images().iter().map(|img| decode(img)).collect();
            if let Some(images) = images {
                let tau = Substitution::new(images).expect("decoded images are binary");
                debug_assert!(tau.images().iter().map(Vec::len).sum::<usize>() < total);
                if let Some(mut rest) = peel(&tau, Some(g)) {
                    rest.insert(0, g);
                    return Some(rest);
                }
            }
        }
    }
    if last != Some(Generator::E) {
        let swapped: Vec<Vec<Letter>> =
            sigma.images().iter().map(|img| img.iter().map(|&a| 1 - a).collect()).collect();
        let tau = Substitution::new(swapped).expect("binary");
        if let Some(mut rest) = peel(&tau, Some(Generator::E)) {
            rest.insert(0, Generator::E);
            return Some(rest);
        }
    }
    None
}

/// Parses a word as blocks `0 = G(0)` and `01 = G(1)`, right to left.
fn decode_g(word: &[Letter]) -> Option<Vec<Letter>> {
    let mut out = Vec::new();
    let mut i = word.len();
    while i > 0 {
        if word[i - 1] == 0 {
            out.push(0);
            i -= 1;
        } else if i >= 2 && word[i - 2] == 0 {
            out.push(1);
            i -= 2;
        } else {
            return None;
        }
    }
    out.reverse();
    Some(out)
}

/// Parses a word as blocks `0 = G~(0)` and `10 = G~(1)`, left to right.
fn decode_g_tilde(word: &[Letter]) -> Option<Vec<Letter>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < word.len() {
        if word[i] == 0 {
            out.push(0);
            i += 1;
        } else if i + 1 < word.len() && word[i + 1] == 0 {
            out.push(1);
            i += 2;
        } else {
            return None;
        }
    }
    Some(out)
}
