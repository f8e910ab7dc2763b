//! C1–C3: facts about runs and repeated squares that hold for every word.

use serde_json::json;

use super::{run_json, CheckId, CheckReport, Context, Tally};
use crate::rational::ratio;
use crate::word::border_table;

/// C1 (Lemma 1).
pub(super) fn run_overlap(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C1);
    let mut runs = ctx.runs().runs().to_vec();
    runs.sort_unstable_by_key(|r| (r.period, r.beg));
    for (k, a) in runs.iter().enumerate() {
        for b in runs[k + 1..]
            .iter()
            .take_while(|b| b.period == a.period && b.beg <= a.end)
        {
            t.checked();
            let overlap = a.end.min(b.end) - b.beg + 1;
            t.max_metric(
                "max_overlap_over_period",
                ratio(overlap as i128, a.period as i128),
            );
            if overlap >= a.period {
                t.violation(|| json!({"runs": [run_json(a), run_json(b)], "overlap": overlap}));
            }
        }
    }
    t.count("runs", runs.len());
    t.finish()
}

/// Per start position `i`, the minimal period of every prefix of `w[i..]`.
struct PrefixPeriods {
    periods: Vec<usize>,
}

impl PrefixPeriods {
    fn new(suffix: &[u8]) -> Self {
        let periods = border_table(suffix)
            .iter()
            .enumerate()
            .map(|(k, b)| k + 1 - b)
            .collect();
        PrefixPeriods { periods }
    }

    /// Minimal period of the prefix of length `len ≥ 1`.
    fn of(&self, len: usize) -> usize {
        self.periods[len - 1]
    }
}

/// Two occurrences at `i` and `i + d` agree on exactly `lce(i, i+d)` symbols,
/// so a factor of length `L` starting at `i` reoccurs at distance `d` iff
/// `L ≤ lce`. Both C2 and C3 therefore reduce to one scan over `(i, d)`.
fn spacing_scan(ctx: &Context<'_>, mut visit: impl FnMut(usize, usize, usize, &Scan)) {
    let n = ctx.n();
    for i in 1..=n {
        let pp = PrefixPeriods::new(&ctx.w[i - 1..]);
        let len = n - i + 1;
        let primitive_squares: Vec<usize> = (1..=len / 2).filter(|&h| pp.of(2 * h) == h).collect();
        // best[L]: (period, length) of the periodic prefix of length ≤ L
        // with the largest minimal period.
        let mut best = vec![(0usize, 0usize); len + 1];
        for l in 1..=len {
            let p = pp.of(l);
            best[l] = best[l - 1];
            if 2 * p <= l && p > best[l].0 {
                best[l] = (p, l);
            }
        }
        let scan = Scan {
            primitive_squares,
            best,
        };
        for d in 1..len {
            let lce = ctx.word.lce_right(i, i + d).expect("positions in range");
            visit(i, d, lce, &scan);
        }
    }
}

struct Scan {
    primitive_squares: Vec<usize>,
    best: Vec<(usize, usize)>,
}

/// C2 (Proposition 1).
pub(super) fn square_spacing(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C2);
    spacing_scan(ctx, |i, d, lce, scan| {
        t.checked();
        let fits = scan.primitive_squares.partition_point(|&h| 2 * h <= lce);
        if let Some(&h) = scan.primitive_squares[..fits].last() {
            if h > d {
                t.violation(|| json!({"square_beg": [i, i + d], "half_len": h}));
            }
        }
    });
    t.finish()
}

/// C3 (Corollary 1).
pub(super) fn repetition_spacing(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C3);
    spacing_scan(ctx, |i, d, lce, scan| {
        t.checked();
        let (p, len) = scan.best[lce];
        if p > d {
            t.violation(|| json!({"occurrence_beg": [i, i + d], "len": len, "period": p}));
        }
    });
    t.finish()
}
