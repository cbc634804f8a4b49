//! Combinatorics of the equioriented `A_n` quiver `1 -> 2 -> ... -> n`.
//!
//! Positive roots are the intervals `alpha_ij = e_i + ... + e_j`. They are
//! totally ordered by the adapted reduced word
//! `w_0 = s_n (s_{n-1} s_n) ... (s_1 s_2 ... s_n)`, which works out to: larger
//! start first, and for equal starts larger end first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dimension vector `(v_1, ..., v_n)` with `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimVector("needs at least one vertex".into()));
        }
        Ok(Self(entries))
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `v_j` for a 1-based vertex `j`.
    pub fn at(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `dim GL_v = sum v_j^2`.
    pub fn gl_dim(&self) -> usize {
        self.0.iter().map(|d| d * d).sum()
    }

    /// `dim R_v = sum_j v_j v_{j+1}`.
    pub fn rep_dim(&self) -> usize {
        self.0.windows(2).map(|w| w[0] * w[1]).sum()
    }

    /// `|S_v| = prod v_j!`, saturating at `u128::MAX`.
    pub fn weyl_order(&self) -> u128 {
        self.0
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(factorial(d)))
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

impl TryFrom<Vec<usize>> for DimVector {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DimVector> for Vec<usize> {
    fn from(v: DimVector) -> Self {
        v.0
    }
}

/// Comma-separated nonnegative integers, e.g. `1,2,1` or `(1,2,1)`.
impl FromStr for DimVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidDimVector(format!("bad entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `alpha_ij` with `1 <= start <= end <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub start: usize,
    pub end: usize,
}

impl PositiveRoot {
    pub fn contains(&self, vertex: usize) -> bool {
        self.start <= vertex && vertex <= self.end
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}_{}", self.start, self.end)
    }
}

/// Positive roots of `A_n` in the order induced by the adapted reduced word.
pub fn positive_roots_ordered(n: usize) -> Vec<PositiveRoot> {
    (1..=n)
        .rev()
        .flat_map(|start| (start..=n).rev().map(move |end| PositiveRoot { start, end }))
        .collect()
}

/// Multiplicities on positive roots, stored in root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KostantPartition {
    mult: Vec<usize>,
}

impl KostantPartition {
    pub fn new(mult: Vec<usize>) -> Self {
        Self { mult }
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    /// Rank `n` recovered from the tuple length `n(n+1)/2`.
    pub fn rank(&self) -> usize {
        let len = self.mult.len();
        let mut n = 0;
        while n * (n + 1) / 2 < len {
            n += 1;
        }
        debug_assert_eq!(n * (n + 1) / 2, len, "not a triangular length");
        n
    }

    pub fn get(&self, root: PositiveRoot) -> usize {
        self.mult[root_index(self.rank(), root)]
    }

    /// `sum mult(alpha) * alpha`, componentwise.
    pub fn weight(&self) -> Vec<usize> {
        let n = self.rank();
        let mut w = vec![0; n];
        for (m, root) in self.mult.iter().zip(positive_roots_ordered(n)) {
            for j in root.start..=root.end {
                w[j - 1] += m;
            }
        }
        w
    }
}

impl fmt::Display for KostantPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mult.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Position of `root` in [`positive_roots_ordered`].
pub fn root_index(n: usize, root: PositiveRoot) -> usize {
    // blocks for start = n, n-1, ..., root.start+1 precede; block for start s has n-s+1 roots
    let before: usize = (root.start + 1..=n).map(|s| n - s + 1).sum();
    before + (n - root.end)
}

/// All Kostant partitions of `v`, recursing over roots in root order with the
/// largest multiplicity tried first.
pub fn enumerate_kp(v: &DimVector) -> Vec<KostantPartition> {
    let n = v.n();
    let roots = positive_roots_ordered(n);
    let mut out = Vec::new();
    let mut rem = v.entries().to_vec();
    let mut acc = Vec::with_capacity(roots.len());
    kp_rec(&roots, 0, &mut rem, &mut acc, &mut out);
    out
}

fn kp_rec(
    roots: &[PositiveRoot],
    k: usize,
    rem: &mut [usize],
    acc: &mut Vec<usize>,
    out: &mut Vec<KostantPartition>,
) {
    if k == roots.len() {
        if rem.iter().all(|&r| r == 0) {
            out.push(KostantPartition::new(acc.clone()));
        }
        return;
    }
    let root = roots[k];
    let span = root.start - 1..root.end;
    let max = rem[span.clone()].iter().copied().min().unwrap_or(0);
    for m in (0..=max).rev() {
        for r in &mut rem[span.clone()] {
            *r -= m;
        }
        acc.push(m);
        kp_rec(roots, k + 1, rem, acc, out);
        acc.pop();
        for r in &mut rem[span.clone()] {
            *r += m;
        }
    }
}

/// A pair `(i, a)`: the monomial `E_{i_1}^{(a_1)} ... E_{i_m}^{(a_m)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialShape {
    pub word: Vec<usize>,
    pub exps: Vec<usize>,
}

impl MonomialShape {
    pub fn new(word: Vec<usize>, exps: Vec<usize>) -> Result<Self> {
        if word.len() != exps.len() {
            return Err(Error::ShapeMismatch(format!(
                "word has length {} but exponents have length {}",
                word.len(),
                exps.len()
            )));
        }
        if word.contains(&0) {
            return Err(Error::ShapeMismatch("vertices are 1-based".into()));
        }
        Ok(Self { word, exps })
    }

    /// `v_j = sum_{k : i_k = j} a_k` over `n` vertices.
    pub fn weight(&self, n: usize) -> Vec<usize> {
        let mut w = vec![0; n];
        for (&i, &a) in self.word.iter().zip(&self.exps) {
            w[i - 1] += a;
        }
        w
    }

    pub fn has_weight(&self, v: &DimVector) -> bool {
        self.word.iter().all(|&i| i <= v.n()) && self.weight(v.n()) == v.entries()
    }
}

/// `(n, n-1, n, ..., 1, 2, ..., n)`.
pub fn adapted_word(n: usize) -> Vec<usize> {
    (1..=n).rev().flat_map(|i| i..=n).collect()
}

/// Exponents pairing with [`adapted_word`]: the block for start row `i` is
/// `(m_ii + ... + m_in, m_i,i+1 + ... + m_in, ..., m_in)`.
pub fn monomial_exponents(c: &KostantPartition) -> MonomialShape {
    let n = c.rank();
    let mut exps = Vec::with_capacity(c.mult().len());
    for start in (1..=n).rev() {
        for k in start..=n {
            exps.push(
                (k..=n)
                    .map(|end| c.get(PositiveRoot { start, end }))
                    .sum(),
            );
        }
    }
    MonomialShape {
        word: adapted_word(n),
        exps,
    }
}
