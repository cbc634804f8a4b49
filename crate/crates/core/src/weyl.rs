//! Permutations, products of symmetric groups, and parallel folds over them.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::typea::factorial;

/// A permutation of `{0..n}` stored by its images: `self.image(i) = w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Self(images))
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles written 1-based.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || touched[x - 1] {
                    return Err(Error::Parse(format!("bad cycle {cycle:?} in S_{n}")));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inversions(&self) -> usize {
        inversions(&self.0)
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }
}

pub(crate) fn inversions(images: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                count += 1;
            }
        }
    }
    count
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Cycle notation, `e` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            // single-digit labels are written without separators
            if self.0.len() < 10 {
                write!(f, "({})", body.concat())?;
            } else {
                write!(f, "({})", body.join(" "))?;
            }
        }
        Ok(())
    }
}

impl Permutation {
    /// Parses cycle notation such as `(12)(34)`, `(1 10)` or `e` in `S_n`.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Self::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let entries: Vec<usize> = if body.contains(char::is_whitespace) || body.contains(',') {
                body.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad label {t:?}"))))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad label {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            cycles.push(entries);
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(n, &refs)
    }
}

/// An element of `S_{v_1} x ... x S_{v_n}`, one permutation per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylElement {
    components: Vec<Permutation>,
}

impl WeylElement {
    pub fn new(components: Vec<Permutation>) -> Self {
        Self { components }
    }

    pub fn identity(degrees: &[usize]) -> Self {
        Self::new(degrees.iter().map(|&d| Permutation::identity(d)).collect())
    }

    pub fn components(&self) -> &[Permutation] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Permutation {
        &self.components[j]
    }

    pub fn length(&self) -> usize {
        self.components.iter().map(Permutation::inversions).sum()
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.components.iter().map(Permutation::inverse).collect())
    }
}

/// The group `S_{d_1} x ... x S_{d_k}` for a list of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricProduct {
    degrees: Vec<usize>,
}

impl SymmetricProduct {
    pub fn new(degrees: Vec<usize>) -> Self {
        Self { degrees }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.degrees
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(factorial(d)))
    }

    pub fn max_length(&self) -> usize {
        self.degrees.iter().map(|d| d * d.saturating_sub(1) / 2).sum()
    }

    /// The element at position `rank` of the enumeration order: lexicographic
    /// within each factor, with the first factor most significant.
    pub fn unrank(&self, rank: u128) -> WeylElement {
        let mut comps = vec![Vec::new(); self.degrees.len()];
        let mut r = rank;
        for (j, &d) in self.degrees.iter().enumerate().rev() {
            let size = factorial(d);
            comps[j] = unrank_lex(d, r % size);
            r /= size;
        }
        WeylElement::new(comps.into_iter().map(Permutation).collect())
    }

    /// Every element, in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = WeylElement> + '_ {
        let total = self.order();
        let mut state = Cursor::start(self, 0);
        (0..total).map(move |_| {
            let out = state.element();
            state.advance();
            out
        })
    }

    /// Histogram of `l(w) + weight(w)` over the group, accumulated in parallel.
    ///
    /// `weight` receives the images of each factor. The result has length
    /// `max_length + max_weight + 1` with trailing zeros trimmed.
    pub fn length_histogram<F>(&self, weight: F) -> Vec<u64>
    where
        F: Fn(&[Vec<usize>]) -> usize + Sync,
    {
        let total = self.order();
        let chunk = chunk_size(total);
        let chunks = total.div_ceil(chunk);
        let merged = (0..chunks)
            .into_par_iter()
            .map(|k| {
                let start = k * chunk;
                let end = (start + chunk).min(total);
                let mut cursor = Cursor::start(self, start);
                let mut hist: Vec<u64> = Vec::new();
                for _ in start..end {
                    let key = cursor.length + weight(&cursor.perms);
                    if key >= hist.len() {
                        hist.resize(key + 1, 0);
                    }
                    hist[key] += 1;
                    cursor.advance();
                }
                hist
            })
            .reduce(Vec::new, merge_histograms);
        trim(merged)
    }
}

fn chunk_size(total: u128) -> u128 {
    let workers = rayon::current_num_threads() as u128;
    (total / (workers * 8)).clamp(256, 1 << 16)
}

fn merge_histograms(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn trim(mut h: Vec<u64>) -> Vec<u64> {
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

/// Lehmer-code unranking in lexicographic order.
fn unrank_lex(n: usize, mut rank: u128) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Rearranges `p` into its lexicographic successor; returns false and resets
/// to the identity after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Streaming position in a `SymmetricProduct`, tracking the length.
struct Cursor {
    perms: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    length: usize,
}

impl Cursor {
    fn start(group: &SymmetricProduct, rank: u128) -> Self {
        let perms: Vec<Vec<usize>> = if rank < group.order() {
            group.unrank(rank).components.into_iter().map(|p| p.0).collect()
        } else {
            group.degrees.iter().map(|&d| (0..d).collect()).collect()
        };
        let lengths: Vec<usize> = perms.iter().map(|p| inversions(p)).collect();
        let length = lengths.iter().sum();
        Self { perms, lengths, length }
    }

    fn element(&self) -> WeylElement {
        WeylElement::new(self.perms.iter().cloned().map(Permutation).collect())
    }

    fn advance(&mut self) {
        for j in (0..self.perms.len()).rev() {
            let carried = !next_permutation(&mut self.perms[j]);
            let l = inversions(&self.perms[j]);
            self.length = self.length + l - self.lengths[j];
            self.lengths[j] = l;
            if !carried {
                return;
            }
        }
    }
}
