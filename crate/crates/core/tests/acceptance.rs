//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the lines show up in normal
//! `cargo test` output.

use std::io::Write;
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use gapped_repeats::checks::{check_word, CheckId, CheckReport, Status};
use gapped_repeats::classify::Classification;
use gapped_repeats::covering::tail_weight_lower_bound_check;
use gapped_repeats::oracle::{naive_maximal_gapped_repeats, naive_runs, naive_sum_of_exponents};
use gapped_repeats::rational::{int, parse_rational, Rational};
use gapped_repeats::{
    enumerate_constrained, enumerate_maximal_gapped_repeats, enumerate_runs, filter_repeats,
    generate, sum_of_exponents, GapConstraint, GeneratorSpec,
};
use rayon::prelude::*;

// Pinned limits.
const C1_TIME_LIMIT: Duration = Duration::from_secs(300);
const C7_TIME_LIMIT: Duration = Duration::from_secs(120);
const C7_GROWTH_LIMIT: (i128, i128) = (3, 2);
const C7_SEEDS: u64 = 5;
const C5_TAIL_CMAX: u64 = 10_000;
const GOLDEN_RANDOM_16: &str = "aaabaabaabaaaaab";

const CONSTRAINTS: [&str; 4] = ["alpha:3/2", "alpha:2", "alpha:4", "band:1:10"];

fn all_words(sigma: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<u8>| {
                (0..sigma).map(move |a| {
                    let mut v = w.clone();
                    v.push(b'a' + a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Corpus of criterion 1: binary n ≤ 13, ternary n ≤ 9, 500 seeded words.
fn small_corpus() -> Vec<Vec<u8>> {
    let mut words = all_words(2, 13);
    words.extend(all_words(3, 9));
    for k in 0..500u64 {
        let sigma = 2 + (k % 3) as u32;
        let n = 1 + ((k * 29 + 11) % 64) as usize;
        words.push(generate(&GeneratorSpec::random(n, sigma, 0x5eed_0000 + k)).unwrap());
    }
    words
}

/// The extra words of criterion 4.
fn large_corpus() -> Vec<Vec<u8>> {
    let mut words = vec![
        generate(&GeneratorSpec::fibonacci(1000)).unwrap(),
        generate(&GeneratorSpec::thue_morse(1024)).unwrap(),
    ];
    for k in 0..100u64 {
        words.push(generate(&GeneratorSpec::random(512, 2, 0x1a76_0000 + k)).unwrap());
    }
    words
}

fn constraint(spec: &str, n: usize) -> GapConstraint {
    GapConstraint::parse(spec, n.max(1) as u64).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion_1(small: &[Vec<u8>]) -> Outcome {
    let start = Instant::now();
    let bad: Vec<&Vec<u8>> = small
        .par_iter()
        .filter(|w| enumerate_maximal_gapped_repeats(w) != naive_maximal_gapped_repeats(w))
        .collect();
    let took = start.elapsed();
    let mut detail = format!(
        "{} words, {} discrepancies, {:.1}s (limit {}s)",
        small.len(),
        bad.len(),
        took.as_secs_f64(),
        C1_TIME_LIMIT.as_secs()
    );
    if let Some(w) = bad.first() {
        detail += &format!("; first: {}", String::from_utf8_lossy(w));
    }
    outcome(bad.is_empty() && took <= C1_TIME_LIMIT, detail)
}

fn criterion_2(small: &[Vec<u8>]) -> Outcome {
    let bad: Vec<&Vec<u8>> = small
        .par_iter()
        .filter(|w| {
            enumerate_runs(w) != naive_runs(w) || sum_of_exponents(w) != naive_sum_of_exponents(w)
        })
        .collect();
    let mut detail = format!(
        "{} words, {} discrepancies in runs or E(w)",
        small.len(),
        bad.len()
    );
    if let Some(w) = bad.first() {
        detail += &format!("; first: {}", String::from_utf8_lossy(w));
    }
    outcome(bad.is_empty(), detail)
}

fn criterion_3(words: &[&Vec<u8>]) -> Outcome {
    let failures: Vec<String> = words
        .par_iter()
        .flat_map_iter(|w| {
            CONSTRAINTS.iter().filter_map(move |spec| {
                match Classification::of_word(w, &constraint(spec, w.len())) {
                    Ok(c) if c.census().reconciles() => None,
                    Ok(_) => Some(format!(
                        "{spec} on {}: census does not reconcile",
                        String::from_utf8_lossy(w)
                    )),
                    Err(e) => Some(format!("{spec} on {}: {e}", String::from_utf8_lossy(w))),
                }
            })
        })
        .collect();
    let mut detail = format!(
        "{} word/constraint pairs, {} failures",
        words.len() * CONSTRAINTS.len(),
        failures.len()
    );
    if let Some(f) = failures.first() {
        detail += &format!("; first: {f}");
    }
    outcome(failures.is_empty(), detail)
}

/// Every assertable check except the report-only C20/C21, once per word for
/// the structural ones and once per constraint for the rest.
fn lemma_reports(words: &[&Vec<u8>]) -> Vec<(String, CheckReport)> {
    let structural: Vec<CheckId> = CheckId::ALL
        .into_iter()
        .filter(|id| id.is_assertable() && id.is_structural())
        .collect();
    let per_constraint: Vec<CheckId> = CheckId::ALL
        .into_iter()
        .filter(|id| id.is_assertable() && !id.is_structural())
        .collect();
    words
        .par_iter()
        .flat_map_iter(|w| {
            let name = String::from_utf8_lossy(w).into_owned();
            let mut out = Vec::new();
            let first = constraint(CONSTRAINTS[0], w.len());
            for r in check_word(w, &first, &structural).expect("checks run") {
                out.push((format!("{name} (structural)"), r));
            }
            for spec in CONSTRAINTS {
                for r in
                    check_word(w, &constraint(spec, w.len()), &per_constraint).expect("checks run")
                {
                    out.push((format!("{name} under {spec}"), r));
                }
            }
            out
        })
        .collect()
}

fn summarise(
    reports: &[(String, CheckReport)],
    filter: impl Fn(CheckId) -> bool,
) -> (usize, usize, Option<String>) {
    let selected: Vec<&(String, CheckReport)> =
        reports.iter().filter(|(_, r)| filter(r.check_id)).collect();
    let failed: Vec<&&(String, CheckReport)> = selected
        .iter()
        .filter(|(_, r)| r.status == Status::Fail)
        .collect();
    let first = failed.first().map(|(name, r)| {
        let short: String = name.chars().take(40).collect();
        format!(
            "{} on {short}: {}",
            r.check_id,
            r.witness.as_ref().map_or(String::new(), |w| w.to_string())
        )
    });
    (selected.len(), failed.len(), first)
}

fn criterion_4(reports: &[(String, CheckReport)]) -> Outcome {
    let (total, failed, first) = summarise(reports, |id| id.is_assertable());
    let mut detail = format!("{total} reports over C1-C19 and C22, {failed} failures");
    if let Some(f) = first {
        detail += &format!("; first: {f}");
    }
    outcome(failed == 0, detail)
}

fn criterion_5(reports: &[(String, CheckReport)]) -> Outcome {
    let (total, failed, first) = summarise(reports, |id| matches!(id, CheckId::C9 | CheckId::C22));
    let tail = tail_weight_lower_bound_check(C5_TAIL_CMAX);
    let mut detail = format!(
        "{total} C9/C22 reports, {failed} failures; C19 for all c' <= {C5_TAIL_CMAX}: {}",
        if tail { "holds" } else { "fails" }
    );
    if let Some(f) = first {
        detail += &format!("; first: {f}");
    }
    outcome(failed == 0 && tail, detail)
}

fn criterion_6(words: &[&Vec<u8>]) -> Outcome {
    let alphas = ["3/2", "2", "3"];
    let bad: Vec<String> = words
        .par_iter()
        .flat_map_iter(|w| {
            let all = enumerate_maximal_gapped_repeats(w);
            alphas.iter().filter_map(move |a| {
                let alpha: Rational = parse_rational(a).unwrap();
                let con = constraint(&format!("alpha:{a}"), w.len());
                let filtered = filter_repeats(&all, &con).unwrap();
                let direct: Vec<_> = all
                    .iter()
                    .copied()
                    .filter(|r| {
                        r.period > r.copy_len
                            && int(r.period as i128) <= alpha * int(r.copy_len as i128)
                    })
                    .collect();
                (filtered != direct).then(|| format!("alpha {a} on {}", String::from_utf8_lossy(w)))
            })
        })
        .collect();
    let mut detail = format!(
        "{} word/alpha pairs, {} mismatches",
        words.len() * alphas.len(),
        bad.len()
    );
    if let Some(b) = bad.first() {
        detail += &format!("; first: {b}");
    }
    outcome(bad.is_empty(), detail)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut ratios = Vec::new();
    let mut structural_ok = true;
    let mut notes = Vec::new();
    for exp in [10u32, 12, 14] {
        let n = 1usize << exp;
        let (mut count, mut bound) = (int(0), int(0));
        for seed in 0..C7_SEEDS {
            let w = generate(&GeneratorSpec::random(n, 2, 0x7e57_0000 + seed)).unwrap();
            let con = constraint("alpha:2", n);
            count += int(enumerate_constrained(&w, &con).unwrap().len() as i128);
            bound += gapped_repeats::bound_value(n as u64, &con.stats());
            let runs = enumerate_runs(&w);
            let e: Rational = runs.iter().map(|r| r.exponent).sum();
            if e > int(3 * n as i128) || runs.len() > n {
                structural_ok = false;
                notes.push(format!("n={n} seed={seed}: E={e} runs={}", runs.len()));
            }
        }
        let ratio = count / bound;
        notes.push(format!("n=2^{exp}: ratio {:.4}", approx(ratio)));
        ratios.push(ratio);
    }
    let took = start.elapsed();
    let (num, den) = C7_GROWTH_LIMIT;
    let growth_ok = ratios[2] * int(den) <= ratios[0] * int(num);
    let detail = format!(
        "{}; growth 2^14 vs 2^10 = {:.3} (limit {:.2}); E(w) <= 3n and runs <= n: {}; {:.1}s (limit {}s)",
        notes.join(", "),
        approx(ratios[2] / ratios[0]),
        num as f64 / den as f64,
        if structural_ok { "yes" } else { "no" },
        took.as_secs_f64(),
        C7_TIME_LIMIT.as_secs()
    );
    outcome(growth_ok && structural_ok && took <= C7_TIME_LIMIT, detail)
}

/// Display only; every decision above is made on exact rationals.
fn approx(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn cli(args: &[&str], stdin: &[u8]) -> (i32, Vec<u8>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gapped-repeats"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_8() -> Outcome {
    let mut input = Vec::new();
    for w in [
        generate(&GeneratorSpec::thue_morse(64)).unwrap(),
        generate(&GeneratorSpec::fibonacci(89)).unwrap(),
        generate(&GeneratorSpec::random(200, 3, 9)).unwrap(),
    ] {
        input.extend(w);
        input.push(b'\n');
    }
    let invocations: [&[&str]; 5] = [
        &["repeats", "--constraint", "alpha:2"],
        &["runs", "--format", "tsv"],
        &["classify", "--constraint", "band:1:10"],
        &["verify", "--constraint", "alpha:3/2"],
        &["bound", "--constraint", "alpha:4", "--format", "tsv"],
    ];
    let mut stable = 0;
    let mut problems = Vec::new();
    for args in invocations {
        let first = cli(args, &input);
        let mut threaded: Vec<&str> = args.to_vec();
        threaded.extend(["--threads", "1"]);
        let second = cli(&threaded, &input);
        let third = cli(args, &input);
        if first.0 == 0 && first == second && first == third && !first.1.is_empty() {
            stable += 1;
        } else {
            problems.push(args[0]);
        }
    }
    let (code, golden) = cli(
        &[
            "gen",
            "--kind",
            "random",
            "--length",
            "16",
            "--alphabet",
            "2",
            "--seed",
            "42",
        ],
        b"",
    );
    let golden_ok = code == 0 && golden == format!("{GOLDEN_RANDOM_16}\n").into_bytes();
    let detail = format!(
        "{stable}/{} subcommands byte-identical across 3 runs{}; golden random(16, 2, 42) = {}: {}",
        invocations.len(),
        if problems.is_empty() {
            String::new()
        } else {
            format!(" (unstable: {})", problems.join(", "))
        },
        GOLDEN_RANDOM_16,
        if golden_ok { "match" } else { "MISMATCH" }
    );
    outcome(problems.is_empty() && golden_ok, detail)
}

fn main() -> ExitCode {
    let small = small_corpus();
    let large = large_corpus();
    let everything: Vec<&Vec<u8>> = small.iter().chain(large.iter()).collect();

    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut record = |k: u32, name: &'static str, o: Outcome| {
        println!(
            "criterion {k} ({name}): {} [{}]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((k, name, o));
    };

    record(1, "oracle equivalence, repeats", criterion_1(&small));
    record(2, "oracle equivalence, runs", criterion_2(&small));
    record(3, "taxonomy soundness", criterion_3(&everything));
    let reports = lemma_reports(&everything);
    record(4, "lemma suite", criterion_4(&reports));
    record(5, "explicit constants", criterion_5(&reports));
    record(6, "alpha-gapped correspondence", criterion_6(&everything));
    record(7, "empirical linearity", criterion_7());
    record(8, "determinism", criterion_8());

    let failed = results.iter().filter(|(_, _, o)| !o.pass).count();
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
