//! C14–C19: the covering-point argument for ordinary repeats.

use serde_json::json;

use super::{rational_json, repeat_json, CheckId, CheckReport, Context, Tally};
use crate::covering::{
    above_box_weight_exceeds, tail_weight_holds, tail_weight_margin, to_point, CoverBox, CoverMode,
    Point,
};
use crate::rational::{int, ratio, Rational};
use crate::repeats::GappedRepeat;

fn ordinary_points(ctx: &Context<'_>) -> Vec<(Point, GappedRepeat)> {
    let mut pts: Vec<(Point, GappedRepeat)> = ctx
        .classes
        .classified
        .iter()
        .filter(|c| c.class.is_ordinary())
        .map(|c| (to_point(&c.repeat), c.repeat))
        .collect();
    pts.sort_unstable_by_key(|(p, _)| (p.i, p.j, p.c));
    pts
}

/// Visits every unordered pair `(a, b)` with `c_a ≤ c_b ≤ ⌊3c_a/2⌋` and both
/// `|i_a − i_b|`, `|j_a − j_b|` at most `⌊c_b/6⌋`. This is a superset of the
/// pairs that can be strongly overlapped or share a cover-box point.
fn for_each_close_pair(
    pts: &[(Point, GappedRepeat)],
    mut visit: impl FnMut(&Point, &Point, usize, usize),
) {
    let key = |p: &Point| (p.i, p.j, p.c);
    for (ka, (a, _)) in pts.iter().enumerate() {
        let c_max = 3 * a.c / 2;
        let radius = c_max / 6;
        for i in a.i.saturating_sub(radius)..=a.i + radius {
            let lo = pts.partition_point(|(p, _)| (p.i, p.j) < (i, a.j.saturating_sub(radius)));
            let hi = pts.partition_point(|(p, _)| (p.i, p.j) <= (i, a.j + radius));
            for (kb, (b, _)) in pts.iter().enumerate().take(hi).skip(lo) {
                let ordered = a.c < b.c || (a.c == b.c && key(a) < key(b));
                if !ordered || b.c > c_max {
                    continue;
                }
                let r = b.c / 6;
                if a.i.abs_diff(b.i) <= r && a.j.abs_diff(b.j) <= r {
                    visit(a, b, ka, kb);
                }
            }
        }
    }
}

fn strongly_overlapped(b1: u64, c1: u64, b2: u64, c2: u64) -> bool {
    (b1 <= b2 && 6 * (b2 - b1) <= c1) || (b2 <= b1 && 6 * (b1 - b2) <= c2)
}

/// C14 (Lemma 5), restricted to the admitted repeats.
pub(super) fn strong_overlap(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C14);
    let pts = ordinary_points(ctx);
    for_each_close_pair(&pts, |a, b, ka, kb| {
        t.checked();
        let close = 2 * b.c <= 3 * a.c
            && strongly_overlapped(a.i, a.c, b.i, b.c)
            && strongly_overlapped(a.j, a.c, b.j, b.c);
        if close {
            t.violation(|| json!({"repeats": [repeat_json(&pts[ka].1), repeat_json(&pts[kb].1)]}));
        }
    });
    t.count("ordinary", pts.len());
    t.finish()
}

/// C15 / C16 (Corollaries 9 and 10).
pub(super) fn unique_cover(ctx: &Context<'_>, mode: CoverMode) -> CheckReport {
    let id = match mode {
        CoverMode::Above => CheckId::C15,
        CoverMode::Below => CheckId::C16,
    };
    let mut t = Tally::new(id);
    let pts = ordinary_points(ctx);
    for_each_close_pair(&pts, |a, b, ka, kb| {
        t.checked();
        let x = CoverBox { origin: *a, mode };
        let y = CoverBox { origin: *b, mode };
        if x.intersects(&y) {
            let (xi, xj, xc) = (x.i_range(), x.j_range(), x.c_range());
            let (yi, yj, yc) = (y.i_range(), y.j_range(), y.c_range());
            let shared = Point::new(xi.0.max(yi.0), xj.0.max(yj.0), xc.0.max(yc.0));
            t.violation(|| {
                json!({
                    "repeats": [repeat_json(&pts[ka].1), repeat_json(&pts[kb].1)],
                    "point": {"i": shared.i, "j": shared.j, "c": shared.c},
                })
            });
        }
    });
    t.count("ordinary", pts.len());
    t.finish()
}

/// C17 / C18 (Lemmas 6 and 7). For each box and copy length the two
/// inequalities are tightest at opposite corners of the `(i, j)` square, so
/// only those corners are evaluated.
pub(super) fn slab(ctx: &Context<'_>, mode: CoverMode) -> CheckReport {
    let s = &ctx.stats;
    let (id, lo_c, hi_c, g_term, f_term) = match mode {
        CoverMode::Above => (
            CheckId::C17,
            ratio(5, 6),
            ratio(7, 4),
            s.dminus_g / int(2),
            s.dplus_f / int(2),
        ),
        CoverMode::Below => (
            CheckId::C18,
            ratio(5, 9),
            ratio(7, 6),
            s.dplus_g / int(3),
            s.dminus_f / int(3),
        ),
    };
    let mut t = Tally::new(id);
    let mut min_lower_slack: Option<Rational> = None;
    let mut min_upper_slack: Option<Rational> = None;
    for item in &ctx.classes.classified {
        let origin = to_point(&item.repeat);
        let cover = CoverBox { origin, mode };
        let (i0, i1) = cover.i_range();
        let (j0, j1) = cover.j_range();
        let (c0, c1) = cover.c_range();
        let mut in_domain = true;
        for c in c0..=c1 {
            let (Ok(f), Ok(g)) = (ctx.analysis.eval_f(c), ctx.analysis.eval_g(c)) else {
                in_domain = false;
                break;
            };
            let cr = int(c as i128);
            let lower = int(i1 as i128) + lo_c * cr + g - cr * g_term;
            let upper = int(i0 as i128) + hi_c * cr + f + cr * f_term;
            let lower_slack = int(j0 as i128) - lower;
            let upper_slack = upper - int(j1 as i128);
            min_lower_slack = Some(min_lower_slack.map_or(lower_slack, |m| m.min(lower_slack)));
            min_upper_slack = Some(min_upper_slack.map_or(upper_slack, |m| m.min(upper_slack)));
            if lower_slack < int(0) || upper_slack < int(0) {
                t.violation(|| {
                    json!({
                        "repeat": repeat_json(&item.repeat),
                        "c": c,
                        "lower_corner": {"i": i1, "j": j0, "bound": rational_json(&lower)},
                        "upper_corner": {"i": i0, "j": j1, "bound": rational_json(&upper)},
                    })
                });
            }
        }
        if in_domain {
            t.checked();
        } else {
            t.out_of_domain();
        }
    }
    if let Some(m) = min_lower_slack {
        t.metric("min_lower_slack", m);
    }
    if let Some(m) = min_upper_slack {
        t.metric("min_upper_slack", m);
    }
    t.finish()
}

/// C19 (Lemma 8 proof) for every `c'` up to the largest possible copy
/// length, plus `ρ(V^a[σ]) > 5/1152` for every ordinary repeat.
pub(super) fn tail_weight(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C19);
    let cmax = (ctx.n().saturating_sub(1) / 2).max(1) as u64;
    let mut min_margin: Option<Rational> = None;
    for c in 1..=cmax {
        t.checked();
        let margin = tail_weight_margin(c);
        min_margin = Some(min_margin.map_or(margin, |m| m.min(margin)));
        if margin < int(1) && !tail_weight_holds(c) {
            t.violation(|| json!({"c_prime": c}));
        }
    }
    let mut lengths: Vec<u64> = ordinary_points(ctx).iter().map(|(p, _)| p.c).collect();
    lengths.sort_unstable();
    lengths.dedup();
    for &c in &lengths {
        t.checked();
        if !above_box_weight_exceeds(c) {
            t.violation(|| json!({"box_copy_len": c}));
        }
    }
    t.metric("min_margin", min_margin.unwrap_or(int(1)));
    t.count("c_max", cmax as usize);
    t.finish()
}
