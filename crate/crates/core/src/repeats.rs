//! Maximal gapped repeats.

use rayon::prelude::*;

use crate::constraint::GapConstraint;
use crate::error::{Error, Result};

/// A gapped repeat `uvu` identified by the start of its left copy, the copy
/// length and the period `|u| + |v|`. Positions are 1-indexed inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GappedRepeat {
    pub beg1: usize,
    pub copy_len: usize,
    pub period: usize,
}

impl GappedRepeat {
    pub fn new(beg1: usize, copy_len: usize, period: usize) -> Self {
        GappedRepeat {
            beg1,
            copy_len,
            period,
        }
    }

    pub fn end1(&self) -> usize {
        self.beg1 + self.copy_len - 1
    }

    pub fn beg2(&self) -> usize {
        self.beg1 + self.period
    }

    pub fn end2(&self) -> usize {
        self.beg2() + self.copy_len - 1
    }

    pub fn gap_len(&self) -> usize {
        self.period - self.copy_len
    }

    /// Canonical output order.
    pub fn sort_key(&self) -> (usize, usize, usize) {
        (self.beg1, self.period, self.copy_len)
    }

    /// Re-checks every structural property against `w` by symbol comparison.
    pub fn is_valid_in(&self, w: &[u8]) -> bool {
        let n = w.len();
        if self.copy_len == 0 || self.period <= self.copy_len || self.beg1 == 0 || self.end2() > n {
            return false;
        }
        let left = &w[self.beg1 - 1..self.end1()];
        let right = &w[self.beg2() - 1..self.end2()];
        left == right
            && (self.beg1 == 1 || w[self.beg1 - 2] != w[self.beg2() - 2])
            && (self.end2() == n || w[self.end1()] != w[self.end2()])
    }
}

/// Calls `f(a, b)` for every maximal interval `[a, b] ⊆ [1, n-p]` (1-indexed)
/// on which `w[k] = w[k+p]`, in increasing order.
pub(crate) fn for_each_block(w: &[u8], p: usize, mut f: impl FnMut(usize, usize)) {
    let n = w.len();
    if p == 0 || p >= n {
        return;
    }
    let mut start: Option<usize> = None;
    for k in 0..n - p {
        if w[k] == w[k + p] {
            start.get_or_insert(k);
        } else if let Some(a) = start.take() {
            f(a + 1, k);
        }
    }
    if let Some(a) = start {
        f(a + 1, n - p);
    }
}

pub fn match_blocks(w: &[u8], p: usize) -> Result<Vec<(usize, usize)>> {
    if p == 0 || p >= w.len() {
        return Err(Error::Domain {
            x: p as u64,
            max: w.len().saturating_sub(1) as u64,
        });
    }
    let mut out = Vec::new();
    for_each_block(w, p, |a, b| out.push((a, b)));
    Ok(out)
}

fn collect_sorted(
    w: &[u8],
    keep: impl Fn(GappedRepeat) -> Result<bool> + Sync,
) -> Result<Vec<GappedRepeat>> {
    let n = w.len();
    if n < 3 {
        return Ok(Vec::new());
    }
    let per_period: Vec<Result<Vec<GappedRepeat>>> = (2..n)
        .into_par_iter()
        .map(|p| {
            let mut found = Vec::new();
            let mut err = None;
            for_each_block(w, p, |a, b| {
                let c = b - a + 1;
                if c < p && err.is_none() {
                    let rep = GappedRepeat::new(a, c, p);
                    match keep(rep) {
                        Ok(true) => found.push(rep),
                        Ok(false) => {}
                        Err(e) => err = Some(e),
                    }
                }
            });
            err.map_or(Ok(found), Err)
        })
        .collect();
    let mut all = Vec::new();
    for part in per_period {
        all.extend(part?);
    }
    all.sort_unstable_by_key(GappedRepeat::sort_key);
    Ok(all)
}

/// All maximal gapped repeats of `w`, sorted by `(beg1, period, copy_len)`.
///
/// A block of length ≥ p at period p is a run, not a gapped repeat.
pub fn enumerate_maximal_gapped_repeats(w: &[u8]) -> Vec<GappedRepeat> {
    collect_sorted(w, |_| Ok(true)).expect("unfiltered enumeration cannot fail")
}

/// Maximal gapped repeats admitted by `con`, filtered while scanning so the
/// quadratic unconstrained set is never materialised.
pub fn enumerate_constrained(w: &[u8], con: &GapConstraint) -> Result<Vec<GappedRepeat>> {
    let max_c = w.len().saturating_sub(1) / 2;
    let admission = con.admission(max_c.min(con.domain() as usize))?;
    let domain = con.domain() as usize;
    collect_sorted(w, |rep| {
        if rep.copy_len > domain {
            return Err(Error::Domain {
                x: rep.copy_len as u64,
                max: domain as u64,
            });
        }
        Ok(admission.admits(rep.copy_len, rep.gap_len()))
    })
}

/// Keeps the repeats with `g(c) ≤ gap ≤ f(c)`, preserving order.
pub fn filter_repeats(reps: &[GappedRepeat], con: &GapConstraint) -> Result<Vec<GappedRepeat>> {
    let mut out = Vec::new();
    for rep in reps {
        if con.admits(rep.copy_len as u64, rep.gap_len() as u64)? {
            out.push(*rep);
        }
    }
    Ok(out)
}
