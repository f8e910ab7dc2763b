//! C20–C21: report-only ratios behind Theorem 2 and Proposition 2.

use super::{CheckId, CheckReport, Context, Tally};
use crate::constraint::bound_value;
use crate::rational::{int, ratio};

/// C20: `|P_{f,g}| / (n(1 + max{∂, Δ}))`, with `∂, Δ` over the given domain.
pub(super) fn theorem_ratio(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C20);
    let n = ctx.n() as u64;
    let count = ctx.classes.classified.len();
    t.count("count", count);
    if n > 0 {
        t.checked();
        let bound = bound_value(n, &ctx.con.stats());
        t.metric("bound", bound);
        t.metric("ratio", int(count as i128) / bound);
    }
    t.finish()
}

/// C21: private repeats per symbol.
pub(super) fn private_ratio(ctx: &Context<'_>) -> CheckReport {
    let mut t = Tally::new(CheckId::C21);
    let private = ctx.classes.census().private;
    t.count("private", private as usize);
    if ctx.n() > 0 {
        t.checked();
        t.metric("ratio", ratio(private as i128, ctx.n() as i128));
    }
    t.finish()
}
