//! Classification of maximal gapped repeats into periodic (private, prefixly,
//! suffixly or totally generated), semiperiodic (prefix and/or suffix) and
//! ordinary repeats, together with the runs that generate them.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::constraint::GapConstraint;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::repeats::{enumerate_constrained, GappedRepeat};
use crate::runs::{Run, RunIndex};
use crate::word::{longest_periodic_prefix, longest_periodic_suffix, minimal_period};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// How a generating run sits relative to the copy it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenCase {
    /// Same start, run extends further right.
    Prefixly,
    /// Run starts earlier, same end.
    Suffixly,
    /// Run and copy coincide.
    Totally,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeriodicKind {
    Private,
    Generated(GenCase),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepeatClass {
    Periodic(PeriodicKind),
    Semiperiodic { prefix: bool, suffix: bool },
    Ordinary,
}

impl RepeatClass {
    pub fn major(&self) -> &'static str {
        match self {
            RepeatClass::Periodic(_) => "periodic",
            RepeatClass::Semiperiodic { .. } => "semiperiodic",
            RepeatClass::Ordinary => "ordinary",
        }
    }

    pub fn subclass(&self) -> Option<&'static str> {
        match self {
            RepeatClass::Periodic(PeriodicKind::Private) => Some("private"),
            RepeatClass::Periodic(PeriodicKind::Generated(GenCase::Prefixly)) => Some("PPP"),
            RepeatClass::Periodic(PeriodicKind::Generated(GenCase::Suffixly)) => Some("SPP"),
            RepeatClass::Periodic(PeriodicKind::Generated(GenCase::Totally)) => Some("TPP"),
            RepeatClass::Semiperiodic {
                prefix: true,
                suffix: true,
            } => Some("PSP+SSP"),
            RepeatClass::Semiperiodic { prefix: true, .. } => Some("PSP"),
            RepeatClass::Semiperiodic { suffix: true, .. } => Some("SSP"),
            _ => None,
        }
    }

    pub fn is_ordinary(&self) -> bool {
        matches!(self, RepeatClass::Ordinary)
    }
}

impl fmt::Display for RepeatClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.subclass() {
            Some(sub) => write!(f, "{}/{}", self.major(), sub),
            None => f.write_str(self.major()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenerationKind {
    Periodic(GenCase),
    /// Runs extend the periodic prefixes of the copies.
    SemiPrefix,
    /// Runs extend the periodic suffixes of the copies.
    SemiSuffix,
}

/// The pair of runs `(r', r'')` extending the two copies (or their periodic
/// prefixes/suffixes) and the side of the generating (shorter) run; ties go left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generation {
    pub run_left: Run,
    pub run_right: Run,
    pub side: Side,
    pub kind: GenerationKind,
}

impl Generation {
    pub fn generator(&self) -> Run {
        match self.side {
            Side::Left => self.run_left,
            Side::Right => self.run_right,
        }
    }

    pub fn partner(&self) -> Run {
        match self.side {
            Side::Left => self.run_right,
            Side::Right => self.run_left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classified {
    pub repeat: GappedRepeat,
    pub class: RepeatClass,
    /// Periodic, non-private repeats only.
    pub periodic: Option<Generation>,
    /// Prefix semiperiodic repeats only.
    pub semi_prefix: Option<Generation>,
    /// Suffix semiperiodic repeats only.
    pub semi_suffix: Option<Generation>,
}

impl Classified {
    /// The generation that drives counting: periodic, else prefix, else suffix.
    pub fn generation(&self) -> Option<Generation> {
        self.periodic.or(self.semi_prefix).or(self.semi_suffix)
    }
}

fn shorter_side(left: &Run, right: &Run) -> Side {
    if left.len() <= right.len() {
        Side::Left
    } else {
        Side::Right
    }
}

fn violation(rep: &GappedRepeat, what: impl fmt::Display) -> Error {
    Error::TaxonomyViolation(format!(
        "repeat (beg1={}, c={}, p={}): {what}",
        rep.beg1, rep.copy_len, rep.period
    ))
}

fn lookup(runs: &RunIndex, rep: &GappedRepeat, beg: usize, end: usize, q: usize) -> Result<Run> {
    runs.containing(beg, end, q).ok_or_else(|| {
        violation(
            rep,
            format_args!("no run of period {q} contains [{beg}, {end}]"),
        )
    })
}

/// Which of the three alignments holds between a generating run and its copy.
pub fn generation_case(run: &Run, copy_beg: usize, copy_end: usize) -> Option<GenCase> {
    match (run.beg == copy_beg, run.end == copy_end) {
        (true, false) if run.end > copy_end => Some(GenCase::Prefixly),
        (false, true) if run.beg < copy_beg => Some(GenCase::Suffixly),
        (true, true) => Some(GenCase::Totally),
        _ => None,
    }
}

/// Classifies one maximal gapped repeat of `w`. `runs` must index `w`'s runs.
pub fn classify_repeat(w: &[u8], rep: &GappedRepeat, runs: &RunIndex) -> Result<Classified> {
    let c = rep.copy_len;
    let (beg1, end1, beg2, end2) = (rep.beg1, rep.end1(), rep.beg2(), rep.end2());
    let copy = &w[beg1 - 1..end1];
    let q = minimal_period(copy)?;

    if c >= 2 * q {
        let left = lookup(runs, rep, beg1, end1, q)?;
        let right = lookup(runs, rep, beg2, end2, q)?;
        if left == right {
            return Ok(Classified {
                repeat: *rep,
                class: RepeatClass::Periodic(PeriodicKind::Private),
                periodic: None,
                semi_prefix: None,
                semi_suffix: None,
            });
        }
        let side = shorter_side(&left, &right);
        let (gen, cb, ce) = match side {
            Side::Left => (left, beg1, end1),
            Side::Right => (right, beg2, end2),
        };
        let case = generation_case(&gen, cb, ce).ok_or_else(|| {
            violation(
                rep,
                format_args!(
                    "generator [{}, {}] fits none of the three cases",
                    gen.beg, gen.end
                ),
            )
        })?;
        return Ok(Classified {
            repeat: *rep,
            class: RepeatClass::Periodic(PeriodicKind::Generated(case)),
            periodic: Some(Generation {
                run_left: left,
                run_right: right,
                side,
                kind: GenerationKind::Periodic(case),
            }),
            semi_prefix: None,
            semi_suffix: None,
        });
    }

    let prefix_len = longest_periodic_prefix(copy).filter(|&k| 2 * k >= c);
    let suffix_len = longest_periodic_suffix(copy).filter(|&k| 2 * k >= c);

    let semi_prefix = prefix_len
        .map(|k| -> Result<Generation> {
            let q = minimal_period(&copy[..k])?;
            let left = lookup(runs, rep, beg1, beg1 + k - 1, q)?;
            let right = lookup(runs, rep, beg2, beg2 + k - 1, q)?;
            if left.end != beg1 + k - 1 || right.end != beg2 + k - 1 {
                return Err(violation(
                    rep,
                    "periodic prefix does not end where its run ends",
                ));
            }
            if left == right {
                return Err(violation(rep, "both periodic prefixes extend to one run"));
            }
            Ok(Generation {
                run_left: left,
                run_right: right,
                side: shorter_side(&left, &right),
                kind: GenerationKind::SemiPrefix,
            })
        })
        .transpose()?;

    let semi_suffix = suffix_len
        .map(|k| -> Result<Generation> {
            let q = minimal_period(&copy[c - k..])?;
            let left = lookup(runs, rep, end1 + 1 - k, end1, q)?;
            let right = lookup(runs, rep, end2 + 1 - k, end2, q)?;
            if left.beg != end1 + 1 - k || right.beg != end2 + 1 - k {
                return Err(violation(
                    rep,
                    "periodic suffix does not start where its run starts",
                ));
            }
            if left == right {
                return Err(violation(rep, "both periodic suffixes extend to one run"));
            }
            Ok(Generation {
                run_left: left,
                run_right: right,
                side: shorter_side(&left, &right),
                kind: GenerationKind::SemiSuffix,
            })
        })
        .transpose()?;

    let class = if semi_prefix.is_some() || semi_suffix.is_some() {
        RepeatClass::Semiperiodic {
            prefix: semi_prefix.is_some(),
            suffix: semi_suffix.is_some(),
        }
    } else {
        RepeatClass::Ordinary
    };
    Ok(Classified {
        repeat: *rep,
        class,
        periodic: None,
        semi_prefix,
        semi_suffix,
    })
}

/// All admitted repeats of a word with their classes, plus the run index.
#[derive(Debug, Clone)]
pub struct Classification {
    pub runs: RunIndex,
    pub classified: Vec<Classified>,
}

impl Classification {
    pub fn of_repeats(w: &[u8], runs: RunIndex, repeats: &[GappedRepeat]) -> Result<Self> {
        let classified = repeats
            .par_iter()
            .map(|rep| classify_repeat(w, rep, &runs))
            .collect::<Result<Vec<_>>>()?;
        Ok(Classification { runs, classified })
    }

    pub fn of_word(w: &[u8], con: &GapConstraint) -> Result<Self> {
        let repeats = enumerate_constrained(w, con)?;
        Self::of_repeats(w, RunIndex::of_word(w), &repeats)
    }

    pub fn census(&self) -> Census {
        let mut census = Census::default();
        for item in &self.classified {
            census.add(&item.class);
        }
        census
    }

    /// Generated sets for every run that generates something from the left.
    pub fn generated_sets(&self) -> HashMap<Run, GeneratedSets> {
        let mut sets: HashMap<Run, GeneratedSets> = HashMap::new();
        for item in &self.classified {
            if let Some(g) = item.periodic {
                if g.side == Side::Left && g.kind == GenerationKind::Periodic(GenCase::Prefixly) {
                    let entry = sets.entry(g.run_left).or_default();
                    push_unique(&mut entry.gpr, g.run_right);
                    entry.ppp.push(item.repeat);
                }
            }
            if let Some(g) = item.semi_prefix {
                if g.side == Side::Left {
                    let entry = sets.entry(g.run_left).or_default();
                    push_unique(&mut entry.gsr, g.run_right);
                    entry.psp.push(item.repeat);
                }
            }
        }
        for entry in sets.values_mut() {
            entry.gpr.sort_unstable_by_key(|r| r.beg);
            entry.gsr.sort_unstable_by_key(|r| r.beg);
        }
        sets
    }
}

fn push_unique(list: &mut Vec<Run>, run: Run) {
    if !list.contains(&run) {
        list.push(run);
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Census {
    pub total: u64,
    pub periodic: u64,
    pub private: u64,
    pub ppp: u64,
    pub spp: u64,
    pub tpp: u64,
    pub semiperiodic: u64,
    /// PSP, including repeats that are also SSP.
    pub semi_prefix: u64,
    /// SSP, including repeats that are also PSP.
    pub semi_suffix: u64,
    pub semi_both: u64,
    pub ordinary: u64,
}

impl Census {
    fn add(&mut self, class: &RepeatClass) {
        self.total += 1;
        match class {
            RepeatClass::Periodic(kind) => {
                self.periodic += 1;
                match kind {
                    PeriodicKind::Private => self.private += 1,
                    PeriodicKind::Generated(GenCase::Prefixly) => self.ppp += 1,
                    PeriodicKind::Generated(GenCase::Suffixly) => self.spp += 1,
                    PeriodicKind::Generated(GenCase::Totally) => self.tpp += 1,
                }
            }
            RepeatClass::Semiperiodic { prefix, suffix } => {
                self.semiperiodic += 1;
                self.semi_prefix += u64::from(*prefix);
                self.semi_suffix += u64::from(*suffix);
                self.semi_both += u64::from(*prefix && *suffix);
            }
            RepeatClass::Ordinary => self.ordinary += 1,
        }
    }

    pub fn reconciles(&self) -> bool {
        self.periodic + self.semiperiodic + self.ordinary == self.total
            && self.private + self.ppp + self.spp + self.tpp == self.periodic
            && self.semi_prefix + self.semi_suffix - self.semi_both == self.semiperiodic
    }
}

pub fn class_census(w: &[u8], con: &GapConstraint) -> Result<Census> {
    Ok(Classification::of_word(w, con)?.census())
}

/// `GPR(r)` and `GSR(r)` with the repeats generated from the left by `r`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratedSets {
    pub gpr: Vec<Run>,
    pub gsr: Vec<Run>,
    pub ppp: Vec<GappedRepeat>,
    pub psp: Vec<GappedRepeat>,
}

pub fn generated_sets(w: &[u8], run: &Run, con: &GapConstraint) -> Result<GeneratedSets> {
    let classification = Classification::of_word(w, con)?;
    Ok(classification
        .generated_sets()
        .remove(run)
        .unwrap_or_default())
}

/// Window endpoints bounding where the right copy of a repeat generated from
/// the left by a run can start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Windows {
    /// `beg(r) + min_{2p ≤ x < |r|} (x + g(x))`; absent when `|r| = 2p`.
    pub lb_g: Option<Rational>,
    /// `beg(r) + max_{2p ≤ x < |r|} (x + f(x))`.
    pub ub_f: Option<Rational>,
    /// `end(r) + 2 + min_{1 < x ≤ 2|r|} g(x)`.
    pub lp_g: Rational,
    /// `end(r) + 1 + |r| + max_{1 < x ≤ 2|r|} f(x)`.
    pub up_f: Rational,
}

/// `(lb_g, ub_f)` for prefixly generated periodic repeats, or `None` when the
/// copy-length range `2p ≤ x < |r|` is empty.
pub fn prefix_window(run: &Run, con: &GapConstraint) -> Result<Option<(Rational, Rational)>> {
    let (lo, hi) = (2 * run.period, run.len());
    if lo >= hi {
        return Ok(None);
    }
    let mut lb: Option<Rational> = None;
    let mut ub: Option<Rational> = None;
    for x in lo..hi {
        let xr = int(x as i128);
        let low = xr + con.eval_g(x as u64)?;
        let high = xr + con.eval_f(x as u64)?;
        lb = Some(lb.map_or(low, |v| v.min(low)));
        ub = Some(ub.map_or(high, |v| v.max(high)));
    }
    let beg = int(run.beg as i128);
    Ok(lb.zip(ub).map(|(l, u)| (beg + l, beg + u)))
}

/// `(lp_g, up_f)` for prefix semiperiodic repeats generated from the left.
pub fn semi_window(run: &Run, con: &GapConstraint) -> Result<(Rational, Rational)> {
    let top = 2 * run.len() as u64;
    let mut min_g: Option<Rational> = None;
    let mut max_f = Rational::zero();
    for x in 2..=top {
        let g = con.eval_g(x)?;
        min_g = Some(min_g.map_or(g, |v| v.min(g)));
        max_f = max_f.max(con.eval_f(x)?);
    }
    let end = int(run.end as i128);
    let min_g = min_g.expect("runs have length at least 2");
    Ok((
        end + int(2) + min_g,
        end + int(1) + int(run.len() as i128) + max_f,
    ))
}

pub fn generation_windows(run: &Run, con: &GapConstraint) -> Result<Windows> {
    let prefix = prefix_window(run, con)?;
    let (lp_g, up_f) = semi_window(run, con)?;
    Ok(Windows {
        lb_g: prefix.map(|p| p.0),
        ub_f: prefix.map(|p| p.1),
        lp_g,
        up_f,
    })
}
