use std::collections::BTreeSet;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use trlex::bench::{self, BenchThresholds};
use trlex::corrector::{CorrectorConfig, TraceEvent};
use trlex::pipeline::{correct_text, run_pipeline, BadLinePolicy, JobConfig, ResourcePaths};
use trlex::similarity::format_score;
use trlex::tokenizer::parse_class_set;

#[derive(Parser)]
#[command(name = "trlex", version, about = "Turkish review normalization and n-gram lexicons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build per-rating n-gram lexicons from JSONL reviews.
    Build(BuildArgs),
    /// Correct stdin line by line.
    Correct(CorrectArgs),
    /// Compare Levenshtein, gestalt and cascade results for test words.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ResourceArgs {
    /// Dictionary file (`word<TAB>frequency` lines); bundled list if absent.
    #[arg(long)]
    dict: Option<PathBuf>,
    /// Abbreviation table (`abbrev<TAB>expansion` lines).
    #[arg(long)]
    abbrev: Option<PathBuf>,
    /// Toggle pairs file (`a<TAB>b` lines).
    #[arg(long)]
    pairs_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0.8)]
    fuzzy_threshold: f64,
}

#[derive(Args)]
struct BuildArgs {
    /// JSONL review files; repeat or comma-separate.
    #[arg(long, required = true, value_delimiter = ',')]
    input: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "1,2,3", value_delimiter = ',')]
    grams: Vec<usize>,
    /// Class set such as `0-5` or `1,5`; defaults to the classes in the input.
    #[arg(long)]
    classes: Option<String>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 1)]
    min_count: u64,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    suffixes: Option<PathBuf>,
    #[arg(long)]
    skip_bad_lines: bool,
    #[command(flatten)]
    resources: ResourceArgs,
}

#[derive(Args)]
struct CorrectArgs {
    /// Print a per-token trace to stderr.
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    resources: ResourceArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// Rows of `word<TAB>dictionary words`; bundled rows if absent.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Gestalt threshold.
    #[arg(long, default_value_t = 0.6)]
    threshold: f64,
}

fn corrector_config(args: &ResourceArgs) -> Result<CorrectorConfig> {
    let config = CorrectorConfig {
        fuzzy_threshold: args.fuzzy_threshold,
        ..CorrectorConfig::default()
    };
    config.validate()?;
    Ok(config)
}

fn resource_paths(args: &ResourceArgs) -> ResourcePaths {
    ResourcePaths {
        dictionary: args.dict.clone(),
        abbreviations: args.abbrev.clone(),
        pairs: args.pairs_file.clone(),
        ..ResourcePaths::default()
    }
}

fn build(args: BuildArgs) -> Result<()> {
    let mut config = JobConfig::new(args.input, args.out);
    config.gram_sizes = args.grams.into_iter().collect::<BTreeSet<_>>();
    config.classes = args.classes.as_deref().map(parse_class_set).transpose()?;
    config.workers = args.workers;
    config.min_count = args.min_count;
    config.corrector = corrector_config(&args.resources)?;
    config.resources = ResourcePaths {
        stopwords: args.stopwords,
        suffixes: args.suffixes,
        ..resource_paths(&args.resources)
    };
    if args.skip_bad_lines {
        config.bad_lines = BadLinePolicy::Skip;
    }
    let report = run_pipeline(&config)?;
    print!("{report}");
    Ok(())
}

fn correct(args: CorrectArgs) -> Result<()> {
    let config = corrector_config(&args.resources)?;
    let resources = resource_paths(&args.resources).load()?;
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    for line in stdin.lock().lines() {
        let line = line.context("reading stdin")?;
        let (text, trace) = correct_text(&line, &resources, &config);
        writeln!(out, "{text}")?;
        if args.trace {
            for r in &trace {
                let exploded = r
                    .trace
                    .iter()
                    .any(|e| matches!(e, TraceEvent::ToggleExplosion { .. }));
                writeln!(
                    err,
                    "{}\t{}\t{}\t{}{}",
                    r.original,
                    r.corrected,
                    r.method,
                    format_score(r.confidence),
                    if exploded { "\ttoggle-cap" } else { "" }
                )?;
            }
        }
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    if !(0.0..=1.0).contains(&args.threshold) {
        bail!("threshold {} outside [0, 1]", args.threshold);
    }
    let rows = match &args.pairs {
        Some(p) => {
            let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            bench::parse_pairs(&bytes)?
        }
        None => bench::parse_pairs(bench::BUNDLED_PAIRS.as_bytes())?,
    };
    let thresholds = BenchThresholds {
        gestalt: args.threshold,
        ..BenchThresholds::default()
    };
    let blocks = bench::bench_compare(&rows, thresholds, &CorrectorConfig::default());
    print!("{}", bench::render(&blocks, thresholds));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => build(a),
        Command::Correct(a) => correct(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
