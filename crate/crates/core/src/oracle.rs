//! Brute-force reference implementations for differential testing.
//!
//! Nothing here calls into the border table, the LCE index, the block scanner
//! or the run index; every answer is obtained by comparing symbols one at a
//! time straight from the definitions. Costs are quartic, so keep inputs
//! short (a few hundred symbols at most).

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::repeats::GappedRepeat;
use crate::runs::Run;

fn has_period(w: &[u8], p: usize) -> bool {
    (0..w.len().saturating_sub(p)).all(|k| w[k] == w[k + p])
}

/// Smallest `p ≥ 1` with `w[k] = w[k+p]` for all valid `k`.
pub fn naive_minimal_period(w: &[u8]) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::UndefinedInput(
            "minimal period of the empty word".into(),
        ));
    }
    Ok((1..=w.len()).find(|&p| has_period(w, p)).unwrap())
}

pub fn naive_exponent(w: &[u8]) -> Result<Rational> {
    let p = naive_minimal_period(w)?;
    Ok(ratio(w.len() as i128, p as i128))
}

/// Longest `k` with `e(w[1..k]) ≥ 2`.
pub fn naive_longest_periodic_prefix(w: &[u8]) -> Option<usize> {
    (2..=w.len())
        .rev()
        .find(|&k| 2 * naive_minimal_period(&w[..k]).unwrap() <= k)
}

pub fn naive_longest_periodic_suffix(w: &[u8]) -> Option<usize> {
    let n = w.len();
    (2..=n)
        .rev()
        .find(|&k| 2 * naive_minimal_period(&w[n - k..]).unwrap() <= k)
}

/// Every triple `(beg1, c, p)` with `gap ≥ 1` checked against the definition.
pub fn naive_maximal_gapped_repeats(w: &[u8]) -> Vec<GappedRepeat> {
    let n = w.len();
    let mut out = Vec::new();
    for beg1 in 1..=n {
        for p in 2..=n {
            for c in 1..p {
                let beg2 = beg1 + p;
                let end2 = beg2 + c - 1;
                if end2 > n {
                    break;
                }
                let equal = (0..c).all(|k| w[beg1 - 1 + k] == w[beg2 - 1 + k]);
                let left_max = beg1 == 1 || w[beg1 - 2] != w[beg2 - 2];
                let right_max = end2 == n || w[beg1 + c - 1] != w[end2];
                if equal && left_max && right_max {
                    out.push(GappedRepeat::new(beg1, c, p));
                }
            }
        }
    }
    out.sort_unstable_by_key(|r| (r.beg1, r.period, r.copy_len));
    out
}

/// Every factor with exponent ≥ 2 that is maximal for its minimal period.
pub fn naive_runs(w: &[u8]) -> Vec<Run> {
    let n = w.len();
    let mut out = Vec::new();
    for beg in 1..=n {
        for end in beg + 1..=n {
            let p = naive_minimal_period(&w[beg - 1..end]).unwrap();
            if end - beg + 1 < 2 * p {
                continue;
            }
            let left_max = beg == 1 || w[beg - 2] != w[beg - 2 + p];
            let right_max = end == n || w[end - p] != w[end];
            if left_max && right_max {
                out.push(Run::new(beg, end, p));
            }
        }
    }
    out.sort_unstable_by_key(|r| (r.beg, r.period));
    out
}

pub fn naive_sum_of_exponents(w: &[u8]) -> Rational {
    naive_runs(w).iter().map(|r| r.exponent).sum()
}

/// The run of minimal period `p` containing `w[beg..end]`, found by growing
/// the factor one symbol at a time in each direction.
pub fn naive_extend(w: &[u8], beg: usize, end: usize, p: usize) -> Option<Run> {
    let factor = &w[beg - 1..end];
    if naive_minimal_period(factor).ok()? != p || factor.len() < 2 * p {
        return None;
    }
    let (mut b, mut e) = (beg, end);
    while b > 1 && naive_minimal_period(&w[b - 2..e]).unwrap() == p {
        b -= 1;
    }
    while e < w.len() && naive_minimal_period(&w[b - 1..e + 1]).unwrap() == p {
        e += 1;
    }
    Some(Run::new(b, e, p))
}

/// Major class of a repeat straight from the definitions:
/// `"periodic"`, `"semiperiodic"` or `"ordinary"`.
pub fn naive_major_class(w: &[u8], rep: &GappedRepeat) -> &'static str {
    let copy = &w[rep.beg1 - 1..rep.beg1 - 1 + rep.copy_len];
    let c = copy.len();
    if 2 * naive_minimal_period(copy).unwrap() <= c {
        return "periodic";
    }
    let half = |k: Option<usize>| k.is_some_and(|k| 2 * k >= c);
    if half(naive_longest_periodic_prefix(copy)) || half(naive_longest_periodic_suffix(copy)) {
        "semiperiodic"
    } else {
        "ordinary"
    }
}
