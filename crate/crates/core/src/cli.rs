//! Command-line front end.
//!
//! Every subcommand except `gen` reads newline-separated words (blank lines
//! skipped), processes them independently and writes records in input order.
//! Records carry a 1-based `word` index so multi-word inputs stay readable.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::checks::{self, check_word, CheckId};
use crate::classify::Classification;
use crate::constraint::{bound_value, GapConstraint};
use crate::error::{Error, Result};
use crate::oracle::{naive_maximal_gapped_repeats, naive_runs};
use crate::rational::{int, Rational};
use crate::repeats::{enumerate_constrained, filter_repeats, GappedRepeat};
use crate::runs::{enumerate_runs, Run};
use crate::wordgen::{generate, GeneratorKind, GeneratorSpec, KindName};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gapped-repeats",
    version,
    about = "Maximal gapped repeats and runs in words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal gapped repeats admitted by the constraint.
    Repeats(ConstrainedArgs),
    /// Maximal repetitions (runs).
    Runs(InputArgs),
    /// Admitted repeats with their class in the periodic/semiperiodic/ordinary taxonomy.
    Classify(ConstrainedArgs),
    /// Instance checks of the lemmas; exits 1 if any assertable check fails.
    Verify(VerifyArgs),
    /// Repeat count against n(1 + max{d, delta}).
    Bound(ConstrainedArgs),
    /// Writes a generated word to standard output.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Tsv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file with one word per line; standard input when absent or `-`.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Longest accepted word.
    #[arg(long, default_value_t = 65536)]
    pub max_len: usize,
    /// Use the brute-force reference implementation.
    #[arg(long, hide = true)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct ConstrainedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// `alpha:<r>`, `band:<gmin>:<gmax>`, `affine:<a>:<b>:<c>:<d>` or `table:<path>`.
    #[arg(long, short)]
    pub constraint: String,
    /// Constraint domain 1..=X for analytic constraints (default: the word length).
    #[arg(long)]
    pub domain: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: ConstrainedArgs,
    /// Comma-separated check ids, or `all`.
    #[arg(long, default_value = "all")]
    pub checks: String,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub kind: String,
    #[arg(long, default_value_t = 0)]
    pub length: usize,
    #[arg(long, default_value_t = 2)]
    pub alphabet: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub block: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

/// An output record: ordered `(field, value)` pairs shared by both formats.
type Record = Vec<(&'static str, Value)>;

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::TaxonomyViolation(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs against the given streams.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "gapped-repeats: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run_with(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut out,
        &mut io::stderr(),
    );
    if out.flush().is_err() {
        return EXIT_IO;
    }
    code
}

pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Gen(args) => gen(args, out).map(|_| EXIT_OK),
        Command::Runs(input) => runs_cmd(input, stdin, out),
        Command::Repeats(args) => repeats_cmd(args, stdin, out),
        Command::Classify(args) => classify_cmd(args, stdin, out),
        Command::Bound(args) => bound_cmd(args, stdin, out),
        Command::Verify(args) => verify_cmd(args, stdin, out),
    }
}

fn read_words(input: &InputArgs, stdin: &mut dyn Read) -> Result<Vec<Vec<u8>>> {
    let mut bytes = Vec::new();
    match &input.input {
        Some(path) if path.as_os_str() != "-" => bytes = fs::read(path)?,
        _ => {
            stdin.read_to_end(&mut bytes)?;
        }
    }
    let words: Vec<Vec<u8>> = bytes
        .split(|&b| b == b'\n')
        .map(|line| line.strip_suffix(b"\r").unwrap_or(line))
        .filter(|line| !line.is_empty())
        .map(<[u8]>::to_vec)
        .collect();
    if let Some(w) = words.iter().find(|w| w.len() > input.max_len) {
        return Err(Error::Usage(format!(
            "word of length {} exceeds --max-len {}",
            w.len(),
            input.max_len
        )));
    }
    Ok(words)
}

/// The constraint for one word: analytic kinds get domain `--domain` or `n`.
struct ConstraintSource {
    base: GapConstraint,
    domain: Option<u64>,
}

impl ConstraintSource {
    fn new(args: &ConstrainedArgs) -> Result<Self> {
        let base = GapConstraint::parse(&args.constraint, args.domain.unwrap_or(1).max(1))?;
        Ok(ConstraintSource {
            base,
            domain: args.domain,
        })
    }

    fn for_word(&self, n: usize) -> Result<GapConstraint> {
        match self.domain {
            Some(_) => Ok(self.base.clone()),
            None => self.base.widened(n.max(1) as u64),
        }
    }
}

/// Applies `f` to every word on a pool of `threads` workers (0 = all cores),
/// keeping input order.
fn process<T: Send>(
    threads: usize,
    words: &[Vec<u8>],
    f: impl Fn(&[u8]) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    pool.install(|| words.par_iter().map(|w| f(w)).collect())
}

fn emit(out: &mut dyn Write, format: Format, header: &mut bool, record: &Record) -> Result<()> {
    match format {
        Format::Jsonl => {
            let mut line = String::from("{");
            for (k, (name, value)) in record.iter().enumerate() {
                if k > 0 {
                    line.push(',');
                }
                line.push_str(&serde_json::to_string(name).expect("string keys"));
                line.push(':');
                line.push_str(&serde_json::to_string(value).expect("json values"));
            }
            line.push('}');
            writeln!(out, "{line}")?;
        }
        Format::Tsv => {
            if !*header {
                let names: Vec<&str> = record.iter().map(|(name, _)| *name).collect();
                writeln!(out, "{}", names.join("\t"))?;
                *header = true;
            }
            let cells: Vec<String> = record
                .iter()
                .map(|(_, value)| match value {
                    Value::String(s) => s.clone(),
                    Value::Null => String::new(),
                    other => other.to_string(),
                })
                .collect();
            writeln!(out, "{}", cells.join("\t"))?;
        }
    }
    Ok(())
}

fn repeat_record(word: usize, rep: &GappedRepeat) -> Record {
    vec![
        ("word", json!(word)),
        ("beg1", json!(rep.beg1)),
        ("end1", json!(rep.end1())),
        ("beg2", json!(rep.beg2())),
        ("end2", json!(rep.end2())),
        ("period", json!(rep.period)),
        ("copy_len", json!(rep.copy_len)),
        ("gap_len", json!(rep.gap_len())),
    ]
}

fn run_record(word: usize, run: &Run) -> Record {
    vec![
        ("word", json!(word)),
        ("beg", json!(run.beg)),
        ("end", json!(run.end)),
        ("period", json!(run.period)),
        ("exp_num", json!(*run.exponent.numer())),
        ("exp_den", json!(*run.exponent.denom())),
    ]
}

fn push_rational(record: &mut Record, num: &'static str, den: &'static str, r: Rational) {
    record.push((num, json!(*r.numer())));
    record.push((den, json!(*r.denom())));
}

fn runs_cmd(input: &InputArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let words = read_words(input, stdin)?;
    let oracle = input.oracle;
    let all = process(input.threads, &words, |w| {
        Ok(if oracle {
            naive_runs(w)
        } else {
            enumerate_runs(w)
        })
    })?;
    let mut header = false;
    for (k, runs) in all.iter().enumerate() {
        for run in runs {
            emit(out, input.format, &mut header, &run_record(k + 1, run))?;
        }
    }
    Ok(EXIT_OK)
}

fn repeats_cmd(args: &ConstrainedArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let words = read_words(&args.input, stdin)?;
    let source = ConstraintSource::new(args)?;
    let oracle = args.input.oracle;
    let all = process(args.input.threads, &words, |w| {
        let con = source.for_word(w.len())?;
        if oracle {
            filter_repeats(&naive_maximal_gapped_repeats(w), &con)
        } else {
            enumerate_constrained(w, &con)
        }
    })?;
    let mut header = false;
    for (k, reps) in all.iter().enumerate() {
        for rep in reps {
            emit(
                out,
                args.input.format,
                &mut header,
                &repeat_record(k + 1, rep),
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn classify_cmd(args: &ConstrainedArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let words = read_words(&args.input, stdin)?;
    let source = ConstraintSource::new(args)?;
    let all = process(args.input.threads, &words, |w| {
        Classification::of_word(w, &source.for_word(w.len())?)
    })?;
    let mut header = false;
    for (k, classes) in all.iter().enumerate() {
        for item in &classes.classified {
            let mut record = repeat_record(k + 1, &item.repeat);
            let (prefix, suffix) = match item.class {
                crate::classify::RepeatClass::Semiperiodic { prefix, suffix } => (prefix, suffix),
                _ => (false, false),
            };
            record.push(("class", json!(item.class.major())));
            record.push(("subclass", json!(item.class.subclass())));
            record.push(("semi_prefix", json!(prefix)));
            record.push(("semi_suffix", json!(suffix)));
            record.push((
                "gen_side",
                json!(item.generation().map(|g| g.side.as_str())),
            ));
            emit(out, args.input.format, &mut header, &record)?;
        }
    }
    Ok(EXIT_OK)
}

fn bound_cmd(args: &ConstrainedArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let words = read_words(&args.input, stdin)?;
    let source = ConstraintSource::new(args)?;
    let all = process(args.input.threads, &words, |w| {
        let con = source.for_word(w.len())?;
        let count = enumerate_constrained(w, &con)?.len();
        Ok((w.len(), con.stats(), count))
    })?;
    let mut header = false;
    for (k, (n, stats, count)) in all.iter().enumerate() {
        let mut record: Record = vec![("word", json!(k + 1)), ("n", json!(n))];
        push_rational(&mut record, "d_num", "d_den", stats.d);
        push_rational(&mut record, "delta_num", "delta_den", stats.delta);
        let bound = bound_value(*n as u64, stats);
        push_rational(&mut record, "bound_num", "bound_den", bound);
        record.push(("count", json!(count)));
        let ratio = if *n == 0 {
            int(0)
        } else {
            int(*count as i128) / bound
        };
        push_rational(&mut record, "ratio_num", "ratio_den", ratio);
        record.push((
            "grows_with_domain",
            json!(source.for_word(*n)?.grows_with_domain()),
        ));
        emit(out, args.input.format, &mut header, &record)?;
    }
    Ok(EXIT_OK)
}

fn verify_cmd(args: &VerifyArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    let ids: Vec<CheckId> = checks::parse_ids(&args.checks)?;
    let words = read_words(&args.common.input, stdin)?;
    let source = ConstraintSource::new(&args.common)?;
    let all = process(args.common.input.threads, &words, |w| {
        check_word(w, &source.for_word(w.len())?, &ids)
    })?;
    let mut header = false;
    let mut ok = true;
    for (k, reports) in all.iter().enumerate() {
        ok &= checks::all_passed(reports);
        for report in reports {
            let full = serde_json::to_value(report).expect("reports serialise");
            let record: Record = vec![
                ("word", json!(k + 1)),
                ("check_id", full["check_id"].clone()),
                ("status", full["status"].clone()),
                ("witness", full["witness"].clone()),
                ("metrics", full["metrics"].clone()),
            ];
            emit(out, args.common.input.format, &mut header, &record)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let kind = match args.kind.parse::<KindName>()? {
        KindName::Random => GeneratorKind::Random {
            alphabet: args.alphabet,
            seed: args.seed,
        },
        KindName::Fibonacci => GeneratorKind::Fibonacci,
        KindName::ThueMorse => GeneratorKind::ThueMorse,
        KindName::Power => GeneratorKind::Power {
            block: args
                .block
                .clone()
                .ok_or_else(|| Error::Usage("--kind power needs --block".into()))?
                .into_bytes(),
            count: args.count,
        },
    };
    let length = match &kind {
        GeneratorKind::Power { block, count } => block.len() * count,
        _ => args.length,
    };
    let word = generate(&GeneratorSpec { kind, length })?;
    out.write_all(&word)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("gapped-repeats").chain(args.iter().copied());
        let code = run_with(argv, &mut stdin, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn repeats_example() {
        let (code, out, _) = call(&["repeats", "--constraint", "alpha:2"], "aabaa\n");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"word\":1,\"beg1\":1,\"end1\":2,\"beg2\":4,\"end2\":5,\"period\":3,\"copy_len\":2,\"gap_len\":1}\n\
             {\"word\":1,\"beg1\":2,\"end1\":2,\"beg2\":4,\"end2\":4,\"period\":2,\"copy_len\":1,\"gap_len\":1}\n"
        );
    }

    #[test]
    fn tsv_matches_jsonl_fields() {
        let (_, tsv, _) = call(&["runs", "--format", "tsv"], "aabaa\n\nabab\n");
        assert_eq!(
            tsv,
            "word\tbeg\tend\tperiod\texp_num\texp_den\n1\t1\t2\t1\t2\t1\n1\t4\t5\t1\t2\t1\n2\t1\t4\t2\t2\t1\n"
        );
    }

    #[test]
    fn bound_with_explicit_domain() {
        // random copies stay far shorter than 100
        let word = generate(&GeneratorSpec::random(1000, 2, 7)).unwrap();
        let word = String::from_utf8(word).unwrap();
        let (code, out, _) = call(&["bound", "-c", "alpha:2", "--domain", "100"], &word);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(
            (v["bound_num"].as_i64(), v["bound_den"].as_i64()),
            (Some(1990), Some(1))
        );
        assert_eq!(v["n"], 1000);
        let periodic = "ab".repeat(500);
        assert_eq!(
            call(&["bound", "-c", "alpha:2", "--domain", "100"], &periodic).0,
            2
        );
    }

    #[test]
    fn verify_and_exit_codes() {
        let (code, out, _) = call(&["verify", "--constraint", "alpha:2"], "aabaa\n");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 22);
        assert!(out.lines().all(|l| l.contains("\"status\":\"pass\"")));
        assert_eq!(call(&["repeats", "--constraint", "alpha:1"], "aa\n").0, 2);
        assert_eq!(call(&["repeats", "--constraint", "zeta:2"], "aa\n").0, 2);
        assert_eq!(
            call(&["verify", "-c", "alpha:2", "--checks", "C99"], "aa\n").0,
            2
        );
        assert_eq!(
            call(&["runs", "--input", "/nonexistent/words.txt"], "").0,
            3
        );
        assert_eq!(call(&["runs", "--max-len", "3"], "aaaa\n").0, 2);
    }

    #[test]
    fn classify_fields() {
        let (_, out, _) = call(&["classify", "--constraint", "alpha:2"], "aabaa\n");
        let rows: Vec<Value> = out
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(rows[0]["class"], "periodic");
        assert_eq!(rows[0]["subclass"], "TPP");
        assert_eq!(rows[0]["gen_side"], "left");
        assert_eq!(rows[1]["class"], "ordinary");
        assert!(rows[1]["gen_side"].is_null());
    }

    #[test]
    fn gen_examples() {
        assert_eq!(
            call(&["gen", "--kind", "fibonacci", "--length", "10"], "").1,
            "abaababaab\n"
        );
        assert_eq!(
            call(&["gen", "--kind", "thue-morse", "--length", "8"], "").1,
            "abbabaab\n"
        );
        assert_eq!(
            call(
                &["gen", "--kind", "power", "--block", "ab", "--count", "3"],
                ""
            )
            .1,
            "ababab\n"
        );
        assert_eq!(
            call(
                &[
                    "gen",
                    "--kind",
                    "random",
                    "--length",
                    "16",
                    "--alphabet",
                    "2",
                    "--seed",
                    "42"
                ],
                ""
            )
            .1,
            "aaabaabaabaaaaab\n"
        );
        assert_eq!(
            call(&["gen", "--kind", "random", "--alphabet", "30"], "").0,
            2
        );
    }

    #[test]
    fn oracle_flag_agrees() {
        let input = "abaababaabaab\n";
        let fast = call(&["repeats", "-c", "band:1:4"], input).1;
        let slow = call(&["repeats", "-c", "band:1:4", "--oracle"], input).1;
        assert_eq!(fast, slow);
    }
}
