//! Command-line interface: classify, evaluate, tune, and check-ontology.
//!
//! Exit codes: 0 success, 1 usage error, 2 malformed input (thresholds, grid,
//! or corpus), 3 ontology or lexicon load failure. Every nonzero exit prints
//! a single JSON object to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::corpus::{load_corpus, CorpusError, NumberedReview};
use crate::detectors::{classify, Thresholds, Verdict};
use crate::evaluation::evaluate_corpus;
use crate::lexicons::{load_lexicons, LexiconSet};
use crate::ontology::{load_ontology, Ontology};
use crate::preprocess::{preprocess_review, PreprocessedReview};
use crate::tuning::{tune, GridSpec, Mode};

#[derive(Parser)]
#[command(
    name = "opspam",
    version,
    about = "Rule-based opinion spam detection over a product ontology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify reviews and write one verdict per line.
    Classify(CommonArgs),
    /// Score a labeled corpus and write an evaluation report.
    Evaluate(CommonArgs),
    /// Grid-search thresholds on a labeled corpus.
    Tune(TuneArgs),
    /// Validate an ontology file and print its size.
    CheckOntology(CheckArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Ontology file.
    #[arg(long)]
    ontology: PathBuf,
    /// Directory holding the five lexicon files.
    #[arg(long)]
    lexicons: PathBuf,
    /// Thresholds JSON; defaults apply when absent.
    #[arg(long)]
    thresholds: Option<PathBuf>,
    /// JSON-lines review corpus.
    #[arg(long)]
    input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for per-review work; defaults to the number of cores.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Args)]
struct TuneArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid JSON mapping threshold names to candidate arrays.
    #[arg(long)]
    grid: PathBuf,
    /// Search strategy.
    #[arg(long, value_enum)]
    mode: ModeArg,
}

#[derive(Args)]
struct CheckArgs {
    /// Ontology file.
    #[arg(long)]
    ontology: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Coordinate,
}

impl From<ModeArg> for Mode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Coordinate => Mode::Coordinate,
        }
    }
}

/// A failed run: exit code plus the one-line JSON error report.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    line: Option<usize>,
}

impl Failure {
    fn load(message: impl ToString) -> Self {
        Failure {
            code: 3,
            kind: "load",
            message: message.to_string(),
            line: None,
        }
    }

    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            kind: "input",
            message: message.to_string(),
            line: None,
        }
    }

    fn input_at(line: usize, message: impl ToString) -> Self {
        Failure {
            code: 2,
            kind: "input",
            message: message.to_string(),
            line: Some(line),
        }
    }

    fn io(message: impl ToString) -> Self {
        Failure {
            code: 2,
            kind: "io",
            message: message.to_string(),
            line: None,
        }
    }

    fn to_json(&self) -> String {
        let mut object = serde_json::Map::new();
        object.insert("error".into(), self.kind.into());
        object.insert("message".into(), self.message.clone().into());
        if let Some(line) = self.line {
            object.insert("line".into(), line.into());
        }
        serde_json::Value::Object(object).to_string()
    }
}

impl From<CorpusError> for Failure {
    fn from(error: CorpusError) -> Self {
        match error {
            CorpusError::Read { .. } => Failure::input(error),
            CorpusError::Malformed { line, .. } => Failure::input_at(line, error),
        }
    }
}

/// Run the CLI on the given arguments, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(error) => {
            if matches!(
                error.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{error}");
                return 0;
            }
            let message = error
                .to_string()
                .lines()
                .next()
                .unwrap_or("usage error")
                .to_string();
            eprintln!(
                "{}",
                Failure {
                    code: 1,
                    kind: "usage",
                    message,
                    line: None,
                }
                .to_json()
            );
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("{}", failure.to_json());
            failure.code
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify(args) => classify_command(args),
        Command::Evaluate(args) => evaluate_command(args),
        Command::Tune(args) => tune_command(args),
        Command::CheckOntology(args) => check_ontology_command(args),
    }
}

fn load_world(args: &CommonArgs) -> Result<(Ontology, LexiconSet, Thresholds), Failure> {
    let ontology = load_ontology(&args.ontology).map_err(Failure::load)?;
    let lex = load_lexicons(&args.lexicons).map_err(Failure::load)?;
    let thresholds = match &args.thresholds {
        None => Thresholds::default(),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            let thresholds: Thresholds = serde_json::from_str(&text)
                .map_err(|e| Failure::input(format!("invalid thresholds: {e}")))?;
            thresholds
                .validate()
                .map_err(|e| Failure::input(format!("invalid thresholds: {e}")))?;
            thresholds
        }
    };
    Ok((ontology, lex, thresholds))
}

/// Check up front that every review names a known category, so later
/// failures cannot lose the offending line number.
fn check_categories(reviews: &[NumberedReview], ontology: &Ontology) -> Result<(), Failure> {
    for numbered in reviews {
        if !ontology.has_category(&numbered.review.category) {
            return Err(Failure::input_at(
                numbered.line,
                format!("unknown product category {:?}", numbered.review.category),
            ));
        }
    }
    Ok(())
}

fn check_labels(reviews: &[NumberedReview]) -> Result<(), Failure> {
    for numbered in reviews {
        if numbered.review.label.is_none() {
            return Err(Failure::input_at(
                numbered.line,
                "review is missing a label",
            ));
        }
    }
    Ok(())
}

fn with_pool<R: Send>(jobs: Option<u16>, work: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    match jobs {
        None => Ok(work()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .map_err(Failure::io)?;
            Ok(pool.install(work))
        }
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        None => {
            let stdout = io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(content.as_bytes()).map_err(Failure::io)?;
            handle.flush().map_err(Failure::io)
        }
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
    }
}

fn preprocess_corpus(
    reviews: &[NumberedReview],
    ontology: &Ontology,
    lex: &LexiconSet,
) -> Result<Vec<PreprocessedReview>, Failure> {
    let computed: Vec<Result<PreprocessedReview, Failure>> = reviews
        .par_iter()
        .map(|numbered| {
            preprocess_review(&numbered.review, ontology, lex)
                .map_err(|e| Failure::input_at(numbered.line, e))
        })
        .collect();
    let mut preprocessed = Vec::with_capacity(computed.len());
    for result in computed {
        preprocessed.push(result?);
    }
    Ok(preprocessed)
}

fn classify_command(args: CommonArgs) -> Result<(), Failure> {
    let (ontology, lex, thresholds) = load_world(&args)?;
    let reviews = load_corpus(&args.input)?;
    check_categories(&reviews, &ontology)?;
    let verdicts: Vec<Verdict> = with_pool(args.jobs, || {
        preprocess_corpus(&reviews, &ontology, &lex).map(|ps| {
            ps.par_iter()
                .map(|p| classify(p, &lex, &thresholds))
                .collect()
        })
    })??;
    let mut out = String::new();
    for verdict in &verdicts {
        out.push_str(&serde_json::to_string(verdict).expect("verdicts are plain data"));
        out.push('\n');
    }
    write_output(args.output.as_deref(), &out)
}

fn evaluate_command(args: CommonArgs) -> Result<(), Failure> {
    let (ontology, lex, thresholds) = load_world(&args)?;
    let numbered = load_corpus(&args.input)?;
    check_labels(&numbered)?;
    check_categories(&numbered, &ontology)?;
    let corpus: Vec<_> = numbered.into_iter().map(|n| n.review).collect();
    let report = with_pool(args.jobs, || {
        evaluate_corpus(&corpus, &ontology, &lex, &thresholds)
    })?
    .map_err(Failure::input)?;
    let mut out = serde_json::to_string_pretty(&report).expect("reports are plain data");
    out.push('\n');
    write_output(args.output.as_deref(), &out)
}

fn tune_command(args: TuneArgs) -> Result<(), Failure> {
    let (ontology, lex, _) = load_world(&args.common)?;
    let grid_text = fs::read_to_string(&args.grid)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.grid.display())))?;
    let grid: GridSpec = serde_json::from_str(&grid_text)
        .map_err(|e| Failure::input(format!("invalid grid: {e}")))?;
    let numbered = load_corpus(&args.common.input)?;
    check_labels(&numbered)?;
    check_categories(&numbered, &ontology)?;
    let result = with_pool(args.common.jobs, || {
        let preprocessed = preprocess_corpus(&numbered, &ontology, &lex)?;
        tune(&preprocessed, &lex, &grid, args.mode.into()).map_err(Failure::input)
    })??;
    let mut out = serde_json::to_string_pretty(&result).expect("results are plain data");
    out.push('\n');
    write_output(args.common.output.as_deref(), &out)
}

fn check_ontology_command(args: CheckArgs) -> Result<(), Failure> {
    let ontology = load_ontology(&args.ontology).map_err(Failure::load)?;
    println!(
        "classes={} entities={}",
        ontology.class_count(),
        ontology.entity_count()
    );
    Ok(())
}
