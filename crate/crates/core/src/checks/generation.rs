//! C4–C13 and C22: generation of periodic and semiperiodic repeats by runs.

use std::collections::BTreeMap;

use serde_json::json;

use super::{rational_json, repeat_json, run_json, CheckId, CheckReport, Context, Tally};
use crate::classify::{prefix_window, semi_window, GenCase, GenerationKind, Side};
use crate::error::Error;
use crate::rational::{int, Rational};
use crate::runs::Run;

type RunKey = (usize, usize, usize);

fn run_key(r: &Run) -> RunKey {
    (r.beg, r.end, r.period)
}

fn len(r: &Run) -> Rational {
    int(r.len() as i128)
}

/// C4 (the three generation cases).
pub(super) fn trichotomy(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C4);
    let mut per_case = [0usize; 3];
    for item in &ctx.classes.classified {
        let Some(g) = item.periodic else { continue };
        t.checked();
        let rep = item.repeat;
        let (gen, cb, ce) = match g.side {
            Side::Left => (g.run_left, rep.beg1, rep.end1()),
            Side::Right => (g.run_right, rep.beg2(), rep.end2()),
        };
        let cases = [
            gen.beg == cb && gen.end > ce,
            gen.beg < cb && gen.end == ce,
            gen.beg == cb && gen.end == ce,
        ];
        let matched: Vec<usize> = (0..3).filter(|&k| cases[k]).collect();
        let begins = g.run_left.beg == rep.beg1 || g.run_right.beg == rep.beg2();
        let ends = g.run_left.end == rep.end1() || g.run_right.end == rep.end2();
        let shorter = gen.len() <= g.partner().len();
        if matched.len() == 1 && begins && ends && shorter {
            per_case[matched[0]] += 1;
        } else {
            t.violation(|| {
                json!({
                    "repeat": repeat_json(&rep),
                    "run_left": run_json(&g.run_left),
                    "run_right": run_json(&g.run_right),
                    "side": g.side.as_str(),
                    "cases_matched": matched.iter().map(|k| k + 1).collect::<Vec<_>>(),
                })
            });
        }
    }
    t.count("prefixly", per_case[0]);
    t.count("suffixly", per_case[1]);
    t.count("totally", per_case[2]);
    t.finish()
}

/// C5 (Proposition 3).
pub(super) fn prefix_count(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C5);
    let mut groups: BTreeMap<(RunKey, RunKey), (Run, usize)> = BTreeMap::new();
    for item in &ctx.classes.classified {
        let Some(g) = item.periodic else { continue };
        if g.kind != GenerationKind::Periodic(GenCase::Prefixly) {
            continue;
        }
        let gen = g.generator();
        groups
            .entry((run_key(&gen), run_key(&g.partner())))
            .or_insert((gen, 0))
            .1 += 1;
    }
    for ((_, partner), (gen, count)) in &groups {
        t.checked();
        let used = int(*count as i128) / gen.exponent;
        t.max_metric("max_count_over_exponent", used);
        if count * gen.period >= gen.len() {
            t.violation(|| {
                json!({"run": run_json(gen), "partner": {"beg": partner.0, "end": partner.1, "period": partner.2}, "count": count})
            });
        }
    }
    t.finish()
}

/// C6 (Proposition 4).
pub(super) fn ppp_window(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C6);
    for item in &ctx.classes.classified {
        let Some(g) = item.periodic else { continue };
        if g.side != Side::Left || g.kind != GenerationKind::Periodic(GenCase::Prefixly) {
            continue;
        }
        let rep = item.repeat;
        match prefix_window(&g.run_left, &ctx.analysis) {
            Err(_) => t.out_of_domain(),
            Ok(window) => {
                t.checked();
                let beg2 = int(rep.beg2() as i128);
                let inside = window.is_some_and(|(lb, ub)| lb <= beg2 && beg2 <= ub);
                if !inside {
                    t.violation(|| {
                        json!({
                            "repeat": repeat_json(&rep),
                            "run": run_json(&g.run_left),
                            "window": window.map(|(lb, ub)| [rational_json(&lb), rational_json(&ub)]),
                        })
                    });
                }
            }
        }
    }
    t.finish()
}

/// Shared body of C7 and C11: all but at most one partner run starts inside
/// the generator's window.
fn partner_window(
    ctx: &Context<'_>,
    id: CheckId,
    partners: impl Fn(&crate::classify::GeneratedSets) -> &Vec<Run>,
    window: impl Fn(&Run) -> Result<Option<(Rational, Rational)>, Error>,
) -> CheckReport {
    let mut t = Tally::new(id);
    let sets = ctx.classes.generated_sets();
    let mut generators: Vec<&Run> = sets.keys().collect();
    generators.sort_unstable_by_key(|r| run_key(r));
    let mut max_outside = 0usize;
    for r in generators {
        let list = partners(&sets[r]);
        if list.is_empty() {
            continue;
        }
        let w = match window(r) {
            Err(_) => {
                t.out_of_domain();
                continue;
            }
            Ok(w) => w,
        };
        t.checked();
        let outside: Vec<&Run> = list
            .iter()
            .filter(|p| {
                let beg = int(p.beg as i128);
                !w.is_some_and(|(lo, hi)| lo <= beg && beg <= hi)
            })
            .collect();
        max_outside = max_outside.max(outside.len());
        if outside.len() > 1 {
            t.violation(|| {
                json!({
                    "run": run_json(r),
                    "window": w.map(|(lo, hi)| [rational_json(&lo), rational_json(&hi)]),
                    "outside": outside.iter().map(|p| run_json(p)).collect::<Vec<_>>(),
                })
            });
        }
    }
    t.count("max_outside", max_outside);
    t.finish()
}

/// C7 (Proposition 5).
pub(super) fn gpr_window(ctx: &Context<'_>) -> CheckReport {
    partner_window(
        ctx,
        CheckId::C7,
        |s| &s.gpr,
        |r| prefix_window(r, &ctx.analysis),
    )
}

/// C11 (Proposition 8).
pub(super) fn gsr_window(ctx: &Context<'_>) -> CheckReport {
    partner_window(
        ctx,
        CheckId::C11,
        |s| &s.gsr,
        |r| semi_window(r, &ctx.analysis).map(Some),
    )
}

/// Shared body of C8 and C12: strict width bound for every run's window.
fn window_width(
    ctx: &Context<'_>,
    id: CheckId,
    slack: Rational,
    window: impl Fn(&Run) -> Result<Option<(Rational, Rational)>, Error>,
) -> CheckReport {
    let mut t = Tally::new(id);
    let s = &ctx.stats;
    let factor = int(1) + slack * (s.delta + s.d);
    let mut vacuous = 0usize;
    for r in ctx.runs().runs() {
        match window(r) {
            Err(_) => t.out_of_domain(),
            Ok(None) => vacuous += 1,
            Ok(Some((lo, hi))) => {
                t.checked();
                let width = hi - lo;
                let bound = len(r) * factor;
                t.max_metric("max_width_over_bound", width / bound);
                if width >= bound {
                    t.violation(|| {
                        json!({"run": run_json(r), "width": rational_json(&width), "bound": rational_json(&bound)})
                    });
                }
            }
        }
    }
    t.count("vacuous", vacuous);
    t.finish()
}

/// C8 (Proposition 6).
pub(super) fn ppp_width(ctx: &Context<'_>) -> CheckReport {
    window_width(ctx, CheckId::C8, int(1), |r| {
        prefix_window(r, &ctx.analysis)
    })
}

/// C12 (Proposition 9).
pub(super) fn psp_width(ctx: &Context<'_>) -> CheckReport {
    window_width(ctx, CheckId::C12, int(2), |r| {
        semi_window(r, &ctx.analysis).map(Some)
    })
}

/// C9 (Lemma 2, constant from its proof).
pub(super) fn tpp_count(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C9);
    let mut per_run: BTreeMap<RunKey, (Run, usize)> = BTreeMap::new();
    for item in &ctx.classes.classified {
        let Some(g) = item.periodic else { continue };
        if g.kind == GenerationKind::Periodic(GenCase::Totally) {
            let gen = g.generator();
            per_run.entry(run_key(&gen)).or_insert((gen, 0)).1 += 1;
        }
    }
    for (r, count) in per_run.values() {
        t.checked();
        let bound = int(2) * (int(1) + r.exponent * ctx.stats.delta);
        let count = int(*count as i128);
        t.max_metric("max_count_over_bound", count / bound);
        if count > bound {
            t.violation(|| json!({"run": run_json(r), "count": *count.numer(), "bound": rational_json(&bound)}));
        }
    }
    t.finish()
}

/// C10 (Proposition 7), with windows anchored at `end(r)`.
pub(super) fn psp_window(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C10);
    for item in &ctx.classes.classified {
        let Some(g) = item.semi_prefix else { continue };
        if g.side != Side::Left {
            continue;
        }
        let rep = item.repeat;
        match semi_window(&g.run_left, &ctx.analysis) {
            Err(_) => t.out_of_domain(),
            Ok((lp, up)) => {
                t.checked();
                let beg2 = int(rep.beg2() as i128);
                if !(lp <= beg2 && beg2 <= up) {
                    t.violation(|| {
                        json!({
                            "repeat": repeat_json(&rep),
                            "run": run_json(&g.run_left),
                            "window": [rational_json(&lp), rational_json(&up)],
                        })
                    });
                }
            }
        }
    }
    t.finish()
}

/// C13 (Lemma 4 proof).
pub(super) fn unique_psp(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C13);
    let mut pairs: BTreeMap<(RunKey, RunKey), Vec<_>> = BTreeMap::new();
    for item in &ctx.classes.classified {
        let Some(g) = item.semi_prefix else { continue };
        if g.side == Side::Left {
            pairs
                .entry((run_key(&g.run_left), run_key(&g.run_right)))
                .or_default()
                .push(item.repeat);
        }
    }
    for ((left, right), reps) in &pairs {
        t.checked();
        if reps.len() > 1 {
            t.violation(|| {
                json!({
                    "run_left": {"beg": left.0, "end": left.1, "period": left.2},
                    "run_right": {"beg": right.0, "end": right.1, "period": right.2},
                    "repeats": reps.iter().map(repeat_json).collect::<Vec<_>>(),
                })
            });
        }
    }
    t.finish()
}

/// C22 (Corollary 6, constant from its proof).
pub(super) fn gpr_size(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C22);
    let s = &ctx.stats;
    let bound = int(2) + int(2) * (int(1) + s.delta + s.d);
    t.metric("bound", bound);
    let sets = ctx.classes.generated_sets();
    let mut generators: Vec<&Run> = sets.keys().collect();
    generators.sort_unstable_by_key(|r| run_key(r));
    let mut largest = 0usize;
    for r in generators {
        let size = sets[r].gpr.len();
        if size == 0 {
            continue;
        }
        t.checked();
        largest = largest.max(size);
        if int(size as i128) > bound {
            t.violation(|| {
                json!({"run": run_json(r), "gpr": sets[r].gpr.iter().map(run_json).collect::<Vec<_>>()})
            });
        }
    }
    t.count("max_gpr", largest);
    t.finish()
}
