//! Instance checks of the lemmas, propositions and corollaries behind the linear bound.
//!
//! Each check scans one word under one constraint and either passes or fails
//! with the first counterexample found (in a deterministic scan order), plus
//! a few measured quantities. Suprema `∂`, `Δ` and the generation windows are
//! evaluated on the constraint widened to `max(X, 2n)` when it is analytic,
//! since the window `lp_g/up_f` ranges over copy lengths up to `2|r|`. A
//! table too short for some instance makes that instance vacuous; the count
//! is reported under the metric `out_of_domain`.

mod bounds;
mod covering;
mod generation;
mod structure;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;

use crate::classify::Classification;
use crate::constraint::{ConstraintStats, GapConstraint};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::repeats::enumerate_constrained;
use crate::runs::RunIndex;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    C12,
    C13,
    C14,
    C15,
    C16,
    C17,
    C18,
    C19,
    C20,
    C21,
    C22,
}

impl CheckId {
    pub const ALL: [CheckId; 22] = [
        CheckId::C1,
        CheckId::C2,
        CheckId::C3,
        CheckId::C4,
        CheckId::C5,
        CheckId::C6,
        CheckId::C7,
        CheckId::C8,
        CheckId::C9,
        CheckId::C10,
        CheckId::C11,
        CheckId::C12,
        CheckId::C13,
        CheckId::C14,
        CheckId::C15,
        CheckId::C16,
        CheckId::C17,
        CheckId::C18,
        CheckId::C19,
        CheckId::C20,
        CheckId::C21,
        CheckId::C22,
    ];

    /// C20 and C21 only record ratios and never fail.
    pub fn is_assertable(self) -> bool {
        !matches!(self, CheckId::C20 | CheckId::C21)
    }

    /// Checks that depend on the word alone, not on the constraint.
    pub fn is_structural(self) -> bool {
        matches!(self, CheckId::C1 | CheckId::C2 | CheckId::C3 | CheckId::C19)
    }

    pub fn claim(self) -> &'static str {
        match self {
            CheckId::C1 => "distinct runs with equal period p overlap by less than p",
            CheckId::C2 => "occurrences of a primitive square uu start at least |u| apart",
            CheckId::C3 => "occurrences of a repetition r start at least p(r) apart",
            CheckId::C4 => {
                "every non-private periodic repeat is prefixly, suffixly or totally generated"
            }
            CheckId::C5 => "r prefixly generates fewer than e(r) repeats with a fixed partner",
            CheckId::C6 => "PPP repeats generated from the left satisfy lb_g <= beg(u'') <= ub_f",
            CheckId::C7 => "all but at most one run of GPR(r) start in [lb_g, ub_f]",
            CheckId::C8 => "ub_f - lb_g < |r|(1 + delta + d)",
            CheckId::C9 => "r totally generates at most 2(1 + e(r) delta) repeats",
            CheckId::C10 => "PSP repeats generated from the left satisfy lp_g <= beg(u'') <= up_f",
            CheckId::C11 => "all but at most one run of GSR(r) start in [lp_g, up_f]",
            CheckId::C12 => "up_f - lp_g < |r|(1 + 2 delta + 2 d)",
            CheckId::C13 => "a run pair generates at most one PSP repeat from the left",
            CheckId::C14 => {
                "of two strongly overlapped repeats with c1 <= c2 <= 3c1/2 one is not ordinary"
            }
            CheckId::C15 => "no point is covered from above by two ordinary repeats",
            CheckId::C16 => "no point is covered from below by two ordinary repeats",
            CheckId::C17 => "points covered from above lie in the CQ^a slab",
            CheckId::C18 => "points covered from below lie in the CQ^b slab",
            CheckId::C19 => "sum over 2c'/3 <= c <= c' of 1/c^3 is at least 5/(32 c'^2)",
            CheckId::C20 => "repeat count relative to n(1 + max{d, delta})",
            CheckId::C21 => "private repeat count relative to n",
            CheckId::C22 => "|GPR(r)| <= 2 + 2(1 + delta + d)",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        CheckId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::Usage(format!("unknown check id {s:?}")))
    }
}

/// Parses a comma-separated list such as `C1,C4,C19` or `all`.
pub fn parse_ids(list: &str) -> Result<Vec<CheckId>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(CheckId::ALL.to_vec());
    }
    let mut ids = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<CheckId>>>()?;
    if ids.is_empty() {
        return Err(Error::Usage("empty check list".into()));
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub status: Status,
    pub witness: Option<Value>,
    #[serde(serialize_with = "serialize_metrics")]
    pub metrics: BTreeMap<String, Rational>,
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn serialize_metrics<S: Serializer>(
    metrics: &BTreeMap<String, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(metrics.len()))?;
    for (name, value) in metrics {
        map.serialize_entry(
            name,
            &serde_json::json!({"num": *value.numer(), "den": *value.denom()}),
        )?;
    }
    map.end()
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Accumulates one check's outcome.
#[derive(Debug)]
pub(crate) struct Tally {
    id: CheckId,
    violations: u64,
    witness: Option<Value>,
    metrics: BTreeMap<String, Rational>,
    checked: u64,
    out_of_domain: u64,
}

impl Tally {
    pub(crate) fn new(id: CheckId) -> Self {
        Tally {
            id,
            violations: 0,
            witness: None,
            metrics: BTreeMap::new(),
            checked: 0,
            out_of_domain: 0,
        }
    }

    pub(crate) fn checked(&mut self) {
        self.checked += 1;
    }

    pub(crate) fn out_of_domain(&mut self) {
        self.out_of_domain += 1;
    }

    /// Records a violation; only the first witness is kept.
    pub(crate) fn violation(&mut self, witness: impl FnOnce() -> Value) {
        self.violations += 1;
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn metric(&mut self, name: &str, value: Rational) {
        self.metrics.insert(name.to_string(), value);
    }

    pub(crate) fn max_metric(&mut self, name: &str, value: Rational) {
        let slot = self.metrics.entry(name.to_string()).or_insert(value);
        if value > *slot {
            *slot = value;
        }
    }

    pub(crate) fn count(&mut self, name: &str, value: usize) {
        self.metric(name, int(value as i128));
    }

    pub(crate) fn finish(mut self) -> CheckReport {
        self.count("checked", self.checked as usize);
        self.count("violations", self.violations as usize);
        if self.out_of_domain > 0 {
            self.count("out_of_domain", self.out_of_domain as usize);
        }
        let status = if self.violations > 0 {
            Status::Fail
        } else if self.checked == 0 && self.out_of_domain > 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
        CheckReport {
            check_id: self.id,
            status,
            witness: self.witness,
            metrics: self.metrics,
        }
    }
}

/// Everything the checks share for one `(w, con)` pair.
pub(crate) struct Context<'a> {
    pub w: &'a [u8],
    pub word: Word,
    pub con: &'a GapConstraint,
    /// `con` widened to cover copy lengths up to `2n` where possible.
    pub analysis: GapConstraint,
    pub stats: ConstraintStats,
    pub classes: Classification,
}

impl<'a> Context<'a> {
    fn new(w: &'a [u8], con: &'a GapConstraint) -> Result<Self> {
        let analysis = con.widened(con.domain().max(2 * w.len() as u64))?;
        let stats = analysis.stats();
        let repeats = enumerate_constrained(w, con)?;
        let classes = Classification::of_repeats(w, RunIndex::of_word(w), &repeats)?;
        Ok(Context {
            w,
            word: Word::new(w),
            con,
            analysis,
            stats,
            classes,
        })
    }

    pub fn runs(&self) -> &RunIndex {
        &self.classes.runs
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }
}

/// Runs the requested checks on `w` under `con`; reports come back in
/// catalogue order regardless of how they were scheduled.
pub fn check_word(w: &[u8], con: &GapConstraint, ids: &[CheckId]) -> Result<Vec<CheckReport>> {
    let ctx = Context::new(w, con)?;
    let mut ids = ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    Ok(ids.par_iter().map(|&id| run_check(&ctx, id)).collect())
}

fn run_check(ctx: &Context<'_>, id: CheckId) -> CheckReport {
    match id {
        CheckId::C1 => structure::run_overlap(ctx),
        CheckId::C2 => structure::square_spacing(ctx),
        CheckId::C3 => structure::repetition_spacing(ctx),
        CheckId::C4 => generation::trichotomy(ctx),
        CheckId::C5 => generation::prefix_count(ctx),
        CheckId::C6 => generation::ppp_window(ctx),
        CheckId::C7 => generation::gpr_window(ctx),
        CheckId::C8 => generation::ppp_width(ctx),
        CheckId::C9 => generation::tpp_count(ctx),
        CheckId::C10 => generation::psp_window(ctx),
        CheckId::C11 => generation::gsr_window(ctx),
        CheckId::C12 => generation::psp_width(ctx),
        CheckId::C13 => generation::unique_psp(ctx),
        CheckId::C14 => covering::strong_overlap(ctx),
        CheckId::C15 => covering::unique_cover(ctx, crate::covering::CoverMode::Above),
        CheckId::C16 => covering::unique_cover(ctx, crate::covering::CoverMode::Below),
        CheckId::C17 => covering::slab(ctx, crate::covering::CoverMode::Above),
        CheckId::C18 => covering::slab(ctx, crate::covering::CoverMode::Below),
        CheckId::C19 => covering::tail_weight(ctx),
        CheckId::C20 => bounds::theorem_ratio(ctx),
        CheckId::C21 => bounds::private_ratio(ctx),
        CheckId::C22 => generation::gpr_size(ctx),
    }
}

/// True iff no assertable check failed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports
        .iter()
        .all(|r| r.passed() || !r.check_id.is_assertable())
}

pub(crate) fn run_json(r: &crate::runs::Run) -> Value {
    serde_json::json!({"beg": r.beg, "end": r.end, "period": r.period})
}

pub(crate) fn repeat_json(rep: &crate::repeats::GappedRepeat) -> Value {
    serde_json::json!({"beg1": rep.beg1, "copy_len": rep.copy_len, "period": rep.period})
}

pub(crate) fn rational_json(r: &Rational) -> Value {
    serde_json::json!({"num": *r.numer(), "den": *r.denom()})
}
