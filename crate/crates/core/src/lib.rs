//! Maximal gapped repeats and maximal repetitions (runs) in words.
//!
//! The crate enumerates maximal repeats `uvu` and runs with transparent
//! quadratic scans, filters repeats by a gap constraint `g(|u|) ≤ |v| ≤ f(|u|)`,
//! classifies them as periodic, semiperiodic or ordinary, and checks the
//! structural facts behind the linear bound `O(n(1 + max{∂, Δ}))` on concrete
//! words. Brute-force reference implementations live in [`oracle`].

pub mod checks;
pub mod classify;
pub mod cli;
pub mod constraint;
pub mod covering;
pub mod error;
pub mod oracle;
pub mod rational;
pub mod repeats;
pub mod runs;
pub mod word;
pub mod wordgen;

pub use checks::{check_word, CheckId, CheckReport, Status};
pub use classify::{
    class_census, classify_repeat, Census, Classification, Classified, RepeatClass,
};
pub use constraint::{bound_value, ConstraintKind, ConstraintStats, GapConstraint};
pub use covering::{CoverBox, Point};
pub use error::{Error, Result};
pub use rational::Rational;
pub use repeats::{
    enumerate_constrained, enumerate_maximal_gapped_repeats, filter_repeats, GappedRepeat,
};
pub use runs::{enumerate_runs, extend_to_run, sum_of_exponents, Run, RunIndex};
pub use word::Word;
pub use wordgen::{generate, GeneratorKind, GeneratorSpec};
