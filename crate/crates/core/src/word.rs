//! Word primitives: borders, periods, exponents, periodic prefixes and
//! longest-common-extension queries.
//!
//! Free functions take a plain byte slice. [`Word`] wraps an owned word and
//! adds 1-indexed inclusive access plus LCE queries backed by a lazily built
//! suffix-array index.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// Entry `k` (0-based) is the longest proper border of `s[..=k]`.
pub fn border_table(s: &[u8]) -> Vec<usize> {
    let mut table = vec![0usize; s.len()];
    let mut b = 0usize;
    for k in 1..s.len() {
        while b > 0 && s[k] != s[b] {
            b = table[b - 1];
        }
        if s[k] == s[b] {
            b += 1;
        }
        table[k] = b;
    }
    table
}

fn require_nonempty(s: &[u8]) -> Result<()> {
    if s.is_empty() {
        Err(Error::UndefinedInput("empty word".into()))
    } else {
        Ok(())
    }
}

pub fn minimal_period(s: &[u8]) -> Result<usize> {
    require_nonempty(s)?;
    Ok(s.len() - border_table(s)[s.len() - 1])
}

pub fn exponent(s: &[u8]) -> Result<Rational> {
    let p = minimal_period(s)?;
    Ok(ratio(s.len() as i128, p as i128))
}

/// True unless the exponent is an integer ≥ 2.
pub fn is_primitive(s: &[u8]) -> Result<bool> {
    let p = minimal_period(s)?;
    Ok(!(s.len().is_multiple_of(p) && s.len() / p >= 2))
}

pub fn is_repetition(s: &[u8]) -> Result<bool> {
    let p = minimal_period(s)?;
    Ok(s.len() >= 2 * p)
}

/// Length of the longest prefix with exponent ≥ 2, if any.
pub fn longest_periodic_prefix(s: &[u8]) -> Option<usize> {
    let table = border_table(s);
    (1..=s.len()).rev().find(|&k| 2 * (k - table[k - 1]) <= k)
}

/// Length of the longest suffix with exponent ≥ 2, if any.
pub fn longest_periodic_suffix(s: &[u8]) -> Option<usize> {
    let rev: Vec<u8> = s.iter().rev().copied().collect();
    longest_periodic_prefix(&rev)
}

/// Suffix array + LCP + sparse-table RMQ; O(1) LCE between suffixes.
#[derive(Debug, Clone)]
struct LceIndex {
    rank: Vec<usize>,
    // sparse[k][r] = min lcp over ranks r..r + 2^k (lcp[r] is between sa[r-1] and sa[r]).
    sparse: Vec<Vec<u32>>,
    len: usize,
}

impl LceIndex {
    fn build(s: &[u8]) -> Self {
        let n = s.len();
        let sa = suffix_array(s);
        let mut rank = vec![0usize; n];
        for (r, &i) in sa.iter().enumerate() {
            rank[i] = r;
        }
        // Kasai
        let mut lcp = vec![0u32; n];
        let mut h = 0usize;
        for i in 0..n {
            if rank[i] > 0 {
                let j = sa[rank[i] - 1];
                while i + h < n && j + h < n && s[i + h] == s[j + h] {
                    h += 1;
                }
                lcp[rank[i]] = h as u32;
                h = h.saturating_sub(1);
            } else {
                h = 0;
            }
        }
        let mut sparse = vec![lcp];
        let mut width = 1usize;
        while 2 * width <= n {
            let prev = sparse.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * width)
                .map(|r| prev[r].min(prev[r + width]))
                .collect();
            sparse.push(next);
            width *= 2;
        }
        LceIndex {
            rank,
            sparse,
            len: n,
        }
    }

    /// 0-based LCE of suffixes `i` and `j`.
    fn lce(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len - i;
        }
        let (a, b) = {
            let (ri, rj) = (self.rank[i], self.rank[j]);
            if ri < rj {
                (ri + 1, rj)
            } else {
                (rj + 1, ri)
            }
        };
        let span = b - a + 1;
        let k = usize::BITS as usize - 1 - span.leading_zeros() as usize;
        self.sparse[k][a].min(self.sparse[k][b + 1 - (1 << k)]) as usize
    }
}

/// Prefix doubling, O(n log² n).
fn suffix_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = s.iter().map(|&b| b as usize).collect();
    let mut tmp = vec![0usize; n];
    if n < 2 {
        return sa;
    }
    let mut k = 1usize;
    loop {
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// An immutable word over bytes. Public positions are 1-indexed inclusive.
#[derive(Clone, Default)]
pub struct Word {
    symbols: Vec<u8>,
    forward: OnceLock<LceIndex>,
    backward: OnceLock<LceIndex>,
}

impl Word {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Self {
        Word {
            symbols: symbols.into(),
            forward: OnceLock::new(),
            backward: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.symbols
    }

    /// `w[q]`, 1-indexed.
    pub fn at(&self, q: usize) -> u8 {
        self.symbols[q - 1]
    }

    /// `w[i..j]`, 1-indexed inclusive; defined iff `1 ≤ i ≤ j ≤ n`.
    pub fn factor(&self, i: usize, j: usize) -> Result<&[u8]> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::UndefinedInput(format!(
                "factor [{i}, {j}] of a word of length {}",
                self.len()
            )));
        }
        Ok(&self.symbols[i - 1..j])
    }

    fn check_positions(&self, i: usize, j: usize) -> Result<()> {
        let n = self.len();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::UndefinedInput(format!(
                "positions ({i}, {j}) outside 1..={n}"
            )));
        }
        Ok(())
    }

    /// Largest `L` with `w[i..i+L-1] = w[j..j+L-1]`.
    pub fn lce_right(&self, i: usize, j: usize) -> Result<usize> {
        self.check_positions(i, j)?;
        let index = self.forward.get_or_init(|| LceIndex::build(&self.symbols));
        Ok(index.lce(i - 1, j - 1))
    }

    /// Largest `L` with `w[i-L+1..i] = w[j-L+1..j]`.
    pub fn lce_left(&self, i: usize, j: usize) -> Result<usize> {
        self.check_positions(i, j)?;
        let index = self.backward.get_or_init(|| {
            let rev: Vec<u8> = self.symbols.iter().rev().copied().collect();
            LceIndex::build(&rev)
        });
        let n = self.len();
        Ok(index.lce(n - i, n - j))
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Word {}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", String::from_utf8_lossy(&self.symbols))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.symbols))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word::new(s.as_bytes())
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word::new(s)
    }
}
