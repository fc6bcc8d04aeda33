use num_integer::Integer;

use super::{AlternateBase, BaseError, Digit, DigitWord, InfiniteWord};

/// Stored-state bound for the quasi-greedy period search.
pub const DEFAULT_STATE_BUDGET: usize = 4096;

/// A Parry alternate base together with its quasi-greedy expansions of one,
/// normalized to a common preperiod `ℓp` and period `mp`.
///
/// Everything downstream (B-integer gaps, substitutions, automata) reads the
/// digit table `d_{i,j}` from here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParryProfile {
    base: AlternateBase,
    ell: usize,
    m: usize,
    // qg[i] = d*_{S^i(B)}(1)
    qg: Vec<InfiniteWord>,
}

impl ParryProfile {
    /// Computes all `p` quasi-greedy expansions and the minimal `(ℓ, m)`.
    pub fn new(base: &AlternateBase, state_budget: usize) -> Result<Self, BaseError> {
        let p = base.period() as i64;
        let qg = (0..p)
            .map(|i| base.shift(i).quasi_greedy_one(state_budget))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_expansions(base.clone(), qg))
    }

    /// Builds a profile from already known expansions `d*_{S^i(B)}(1)`.
    ///
    /// The expansions are not re-derived from the base; callers vouch for them.
    pub fn from_expansions(base: AlternateBase, qg: Vec<InfiniteWord>) -> Self {
        assert_eq!(qg.len(), base.period(), "one expansion per shift");
        let p = base.period();
        let max_pre = qg.iter().map(|w| w.prefix().len()).max().unwrap_or(0);
        let ell = max_pre.div_ceil(p);
        let mp = qg.iter().fold(p, |acc, w| acc.lcm(&w.period().len().max(1)));
        ParryProfile { base, ell, m: mp / p, qg }
    }

    pub fn base(&self) -> &AlternateBase {
        &self.base
    }

    pub fn period(&self) -> usize {
        self.base.period()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `ℓp`, the common preperiod length.
    pub fn preperiod_len(&self) -> usize {
        self.ell * self.period()
    }

    /// `mp`, the common period length.
    pub fn period_len(&self) -> usize {
        self.m * self.period()
    }

    /// `ℓp + mp`, the size of the finite gap alphabet.
    pub fn alphabet_size(&self) -> usize {
        self.preperiod_len() + self.period_len()
    }

    /// `d*_{S^i(B)}(1)` for any integer `i`.
    pub fn quasi_greedy(&self, i: i64) -> &InfiniteWord {
        &self.qg[i.mod_floor(&(self.period() as i64)) as usize]
    }

    pub fn quasi_greedy_all(&self) -> &[InfiniteWord] {
        &self.qg
    }

    /// `d*_{S^i(B)}(1)` split as `(ℓp digits, mp digits)`.
    pub fn normalized(&self, i: i64) -> (Vec<Digit>, Vec<Digit>) {
        self.quasi_greedy(i)
            .reshaped(self.preperiod_len(), self.period_len())
            .expect("(ℓ, m) is compatible with every expansion")
    }

    /// The digit `d_{i,j}` (the `j`-th digit of `d*_{S^i(B)}(1)`, `j >= 1`).
    pub fn d(&self, i: i64, j: usize) -> Digit {
        assert!(j >= 1, "quasi-greedy digits are indexed from 1");
        self.quasi_greedy(i).at(j - 1)
    }

    /// Profile of `S^i(B)`: the same expansions re-indexed by `i`.
    pub fn shift(&self, i: i64) -> ParryProfile {
        let p = self.period() as i64;
        ParryProfile {
            base: self.base.shift(i),
            ell: self.ell,
            m: self.m,
            qg: (0..p).map(|k| self.quasi_greedy(k + i).clone()).collect(),
        }
    }

    /// Admissibility of a two-way word: every suffix read from index `n-1`
    /// is lexicographically below `d*_{S^n(B)}(1)`.
    pub fn is_admissible(&self, w: &DigitWord) -> bool {
        let p = self.period();
        let frac = w.frac();
        let frac_span = if frac.is_terminating() {
            frac.prefix().len()
        } else {
            frac.prefix().len() + frac.period().len().lcm(&p)
        };
        // n - 1 ranges over the integer digits and one full cycle of the fraction
        let top = w.int_len() as i64;
        let bottom = -(frac_span as i64);
        (bottom..top).all(|idx| {
            let n = idx + 1;
            w.read_from(idx).cmp_lex(self.quasi_greedy(n)).is_lt()
        })
    }
}
