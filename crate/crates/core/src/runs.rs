//! Maximal repetitions (runs).

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::repeats::for_each_block;
use crate::word::minimal_period;

/// A maximal repetition `w[beg..end]` with minimal period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub beg: usize,
    pub end: usize,
    pub period: usize,
    pub exponent: Rational,
}

impl Run {
    pub fn new(beg: usize, end: usize, period: usize) -> Self {
        Run {
            beg,
            end,
            period,
            exponent: ratio((end - beg + 1) as i128, period as i128),
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.beg + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, beg: usize, end: usize) -> bool {
        self.beg <= beg && end <= self.end
    }
}

/// All runs of `w`, sorted by `(beg, period)`.
///
/// For each period `p`, a maximal block `[a, b]` of `{k : w[k] = w[k+p]}`
/// with `b - a + 1 ≥ p` spans the repetition `w[a..b+p]`; it is a run exactly
/// when its minimal period is `p` itself.
pub fn enumerate_runs(w: &[u8]) -> Vec<Run> {
    let n = w.len();
    let mut runs: Vec<Run> = (1..=n / 2)
        .into_par_iter()
        .flat_map_iter(|p| {
            let mut found = Vec::new();
            for_each_block(w, p, |a, b| {
                if b - a + 1 >= p && minimal_period(&w[a - 1..b + p]).ok() == Some(p) {
                    found.push(Run::new(a, b + p, p));
                }
            });
            found
        })
        .collect();
    runs.sort_unstable_by_key(|r| (r.beg, r.period));
    runs.dedup();
    runs
}

/// `E(w)`: the sum of exponents over all runs.
pub fn sum_of_exponents(w: &[u8]) -> Rational {
    enumerate_runs(w).iter().map(|r| r.exponent).sum()
}

/// Extends the repetition `w[beg..end]` of minimal period `q` to its run.
pub fn extend_to_run(w: &[u8], beg: usize, end: usize, q: usize) -> Result<Run> {
    let n = w.len();
    if beg == 0 || beg > end || end > n || q == 0 {
        return Err(Error::InvalidArgument(format!(
            "[{beg}, {end}] with period {q} in a word of length {n}"
        )));
    }
    let factor = &w[beg - 1..end];
    if minimal_period(factor)? != q || factor.len() < 2 * q {
        return Err(Error::InvalidArgument(format!(
            "w[{beg}..{end}] is not a repetition with minimal period {q}"
        )));
    }
    let (mut b, mut e) = (beg, end);
    while b > 1 && w[b - 2] == w[b - 2 + q] {
        b -= 1;
    }
    while e < n && w[e - q] == w[e] {
        e += 1;
    }
    let run = Run::new(b, e, q);
    debug_assert_eq!(minimal_period(&w[b - 1..e]).ok(), Some(q));
    Ok(run)
}

/// Runs grouped by minimal period, for `O(log)` containment lookups.
#[derive(Debug, Clone, Default)]
pub struct RunIndex {
    runs: Vec<Run>,
    by_period: HashMap<usize, Vec<Run>>,
}

impl RunIndex {
    pub fn new(runs: Vec<Run>) -> Self {
        let mut by_period: HashMap<usize, Vec<Run>> = HashMap::new();
        for r in &runs {
            by_period.entry(r.period).or_default().push(*r);
        }
        for list in by_period.values_mut() {
            list.sort_unstable_by_key(|r| r.beg);
        }
        RunIndex { runs, by_period }
    }

    pub fn of_word(w: &[u8]) -> Self {
        Self::new(enumerate_runs(w))
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn with_period(&self, period: usize) -> &[Run] {
        self.by_period.get(&period).map_or(&[], Vec::as_slice)
    }

    /// The run of minimal period `period` containing `[beg, end]`.
    ///
    /// Distinct runs with one period overlap by less than that period, so for a
    /// factor of length ≥ 2·period at most one candidate exists and it is the
    /// last run starting at or before `beg`.
    pub fn containing(&self, beg: usize, end: usize, period: usize) -> Option<Run> {
        let list = self.with_period(period);
        let idx = list.partition_point(|r| r.beg <= beg);
        let r = list[..idx].last()?;
        r.contains(beg, end).then_some(*r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn triples(runs: &[Run]) -> Vec<(usize, usize, usize)> {
        runs.iter().map(|r| (r.beg, r.end, r.period)).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            triples(&enumerate_runs(b"aabaa")),
            vec![(1, 2, 1), (4, 5, 1)]
        );
        assert_eq!(triples(&enumerate_runs(b"abab")), vec![(1, 4, 2)]);
        assert!(enumerate_runs(b"ab").is_empty());
        assert!(enumerate_runs(b"").is_empty());
        assert!(enumerate_runs(b"a").is_empty());
        assert_eq!(enumerate_runs(b"abab")[0].exponent, int(2));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(sum_of_exponents(b"aabaa"), int(4));
        assert_eq!(sum_of_exponents(b"ab"), int(0));
        assert_eq!(sum_of_exponents(b"aaaa"), int(4));
        // runs (1,8,3) e=8/3, (1,2,1), (4,5,1), (7,8,1)
        assert_eq!(sum_of_exponents(b"aabaabaa"), ratio(8, 3) + int(6));
    }

    #[test]
    fn extend_examples() {
        assert_eq!(extend_to_run(b"aaaaa", 1, 2, 1).unwrap(), Run::new(1, 5, 1));
        assert_eq!(extend_to_run(b"aabaa", 4, 5, 1).unwrap(), Run::new(4, 5, 1));
        assert_eq!(extend_to_run(b"abab", 1, 4, 2).unwrap(), Run::new(1, 4, 2));
        assert_eq!(
            extend_to_run(b"xababay", 3, 6, 2).unwrap(),
            Run::new(2, 6, 2)
        );
    }

    #[test]
    fn extend_rejects_non_repetitions() {
        assert!(matches!(
            extend_to_run(b"aab", 1, 3, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(extend_to_run(b"abab", 1, 4, 4).is_err());
        assert!(extend_to_run(b"aaaa", 1, 4, 2).is_err());
        assert!(extend_to_run(b"aaaa", 0, 2, 1).is_err());
        assert!(extend_to_run(b"aaaa", 3, 5, 1).is_err());
    }

    #[test]
    fn index_lookup() {
        let idx = RunIndex::of_word(b"aabaabaab");
        assert_eq!(idx.containing(2, 7, 3), Some(Run::new(1, 9, 3)));
        assert_eq!(idx.containing(1, 2, 1), Some(Run::new(1, 2, 1)));
        assert_eq!(idx.containing(2, 3, 1), None);
        assert_eq!(idx.containing(1, 2, 5), None);
    }
}
