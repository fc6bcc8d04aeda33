use std::fmt;

use serde::{Deserialize, Serialize};

use super::SubstitutionError;

/// A square matrix of non-negative integer counts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct CountMatrix {
    rows: Vec<Vec<u64>>,
}

impl CountMatrix {
    /// Panics unless `rows` is square.
    pub fn new(rows: Vec<Vec<u64>>) -> Self {
        let k = rows.len();
        assert!(rows.iter().all(|r| r.len() == k), "count matrices are square");
        CountMatrix { rows }
    }

    pub fn zeros(k: usize) -> Self {
        CountMatrix { rows: vec![vec![0; k]; k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.size()).map(|j| self.rows.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn transpose(&self) -> CountMatrix {
        let k = self.size();
        CountMatrix { rows: (0..k).map(|j| (0..k).map(|i| self.rows[i][j]).collect()).collect() }
    }

    pub fn try_mul(&self, other: &CountMatrix) -> Result<CountMatrix, SubstitutionError> {
        let k = self.size();
        if other.size() != k {
            return Err(SubstitutionError::AlphabetMismatch(k, other.size()));
        }
        let mut out = Self::zeros(k);
        for i in 0..k {
            for t in 0..k {
                let a = self.rows[i][t];
                if a == 0 {
                    continue;
                }
                for j in 0..k {
                    let prod = a.checked_mul(other.rows[t][j]).expect("count overflow");
                    out.rows[i][j] = out.rows[i][j].checked_add(prod).expect("count overflow");
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> CountMatrix {
        (0..e).fold(Self::identity(self.size()), |acc, _| acc.try_mul(self).expect("same size"))
    }

    /// Square sub-block of size `k` with top-left corner `(r, c)`.
    pub fn block(&self, r: usize, c: usize, k: usize) -> CountMatrix {
        CountMatrix {
            rows: self.rows[r..r + k].iter().map(|row| row[c..c + k].to_vec()).collect(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.rows.iter().flatten().all(|&v| v > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&v| v == 0)
    }

    /// Smallest `n <= (k-1)^2 + 1` with `M^n` entrywise positive, computed
    /// over the boolean semiring.
    pub fn primitivity_exponent(&self) -> Option<usize> {
        let k = self.size();
        if k == 0 {
            return None;
        }
        let base: Vec<Vec<bool>> =
            self.rows.iter().map(|r| r.iter().map(|&v| v > 0).collect()).collect();
        let mut cur = base.clone();
        let bound = (k - 1) * (k - 1) + 1;
        for n in 1..=bound {
            if cur.iter().flatten().all(|&b| b) {
                return Some(n);
            }
            cur = (0..k)
                .map(|i| (0..k).map(|j| (0..k).any(|t| cur[i][t] && base[t][j])).collect())
                .collect();
        }
        None
    }

    pub fn is_primitive(&self) -> bool {
        self.primitivity_exponent().is_some()
    }

    /// Characteristic polynomial `det(X·I - M)`, leading coefficient first.
    pub fn char_poly(&self) -> Vec<i128> {
        let k = self.size();
        let a: Vec<Vec<i128>> =
            self.rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let mut coeffs = vec![0i128; k + 1];
        coeffs[0] = 1;
        // Faddeev–LeVerrier: M_j = A·M_{j-1} + c_{j-1} I, c_j = -tr(A·M_j)/j
        let mut m = vec![vec![0i128; k]; k];
        for j in 1..=k {
            let mut next = mat_mul_i128(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += coeffs[j - 1];
            }
            m = next;
            let am = mat_mul_i128(&a, &m);
            let tr: i128 = (0..k).map(|i| am[i][i]).sum();
            coeffs[j] = -tr / j as i128;
        }
        coeffs
    }

    /// Row-major tab-separated text, one line per row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }
}

impl TryFrom<Vec<Vec<u64>>> for CountMatrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<u64>>) -> Result<Self, String> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(format!("matrix with {k} rows is not square"));
        }
        Ok(CountMatrix { rows })
    }
}

impl From<CountMatrix> for Vec<Vec<u64>> {
    fn from(m: CountMatrix) -> Self {
        m.rows
    }
}

fn mat_mul_i128(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let k = a.len();
    (0..k)
        .map(|i| (0..k).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

/// Renders a polynomial given leading coefficient first, e.g. `X^4 - 4X^3 + 2X^2 + X`.
pub fn format_poly(coeffs: &[i128]) -> String {
    let deg = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (t, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let e = deg - t;
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = c.unsigned_abs();
        if mag != 1 || e == 0 {
            out.push_str(&mag.to_string());
        }
        match e {
            0 => {}
            1 => out.push('X'),
            _ => out.push_str(&format!("X^{e}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
