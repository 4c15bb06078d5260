//! Batch lexicon build: JSONL ingestion, shard-parallel map, monoid merge,
//! TSV emission.
//!
//! Reviews are assigned to shards round-robin by their index in the input.
//! Each shard worker owns its tables and only shares the immutable
//! [`LexiconResources`]; shard outputs are merged with
//! [`NgramTable::merge`], so the emitted files do not depend on the worker
//! count or on the order shards finish.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Deserialize;

use crate::corrector::{correct_word, AmbiguityMap, CorrectionResult, CorrectorConfig, Method};
use crate::error::{Error, Result};
use crate::lexicon::{AbbreviationTable, Dictionary, LexiconResources, StopwordList, SuffixStemmer};
use crate::ngram::{extract_ngrams, DistinctiveLists, NgramKey, NgramTable};
use crate::tokenizer::{remove_stopwords, tokenize, RawReview, Rating};

#[derive(Deserialize)]
struct ReviewLine {
    text: String,
    rating: serde_json::Number,
}

/// What to do with a malformed or out-of-range JSONL line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BadLinePolicy {
    #[default]
    Abort,
    Skip,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ingested {
    pub reviews: Vec<RawReview>,
    /// `(line, reason)` for every skipped line.
    pub skipped: Vec<(usize, String)>,
}

fn parse_review_line(line: &str, classes: Option<&BTreeSet<Rating>>) -> std::result::Result<RawReview, String> {
    let raw: ReviewLine = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let rating = raw
        .rating
        .as_i64()
        .ok_or_else(|| format!("rating {} is not an integer", raw.rating))?;
    let rating = Rating::new(rating).map_err(|e| e.to_string())?;
    if let Some(set) = classes {
        if !set.contains(&rating) {
            return Err(format!("rating {rating} is not in the configured class set"));
        }
    }
    RawReview::new(raw.text, rating).map_err(|e| e.to_string())
}

/// Parses one `{"text": ..., "rating": ...}` object per line. Blank lines
/// are ignored.
pub fn ingest_jsonl(
    bytes: &[u8],
    classes: Option<&BTreeSet<Rating>>,
    policy: BadLinePolicy,
) -> Result<Ingested> {
    let mut out = Ingested::default();
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    if body.is_empty() {
        return Ok(out);
    }
    for (i, raw) in body.split(|&b| b == b'\n').enumerate() {
        let line_no = i + 1;
        let parsed = match std::str::from_utf8(raw) {
            Ok(line) if line.trim().is_empty() => continue,
            Ok(line) => parse_review_line(line, classes),
            Err(_) => Err("input is not valid UTF-8".to_string()),
        };
        match (parsed, policy) {
            (Ok(review), _) => out.reviews.push(review),
            (Err(reason), BadLinePolicy::Skip) => out.skipped.push((line_no, reason)),
            (Err(reason), BadLinePolicy::Abort) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: reason,
                })
            }
        }
    }
    Ok(out)
}

/// Paths to resource files; `None` selects the bundled resource.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResourcePaths {
    pub dictionary: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub suffixes: Option<PathBuf>,
    pub pairs: Option<PathBuf>,
}

impl ResourcePaths {
    pub fn load(&self) -> Result<LexiconResources> {
        let dictionary = match &self.dictionary {
            Some(p) => Dictionary::load(p)?,
            None => Dictionary::bundled(),
        };
        let stopwords = match &self.stopwords {
            Some(p) => StopwordList::load(p)?,
            None => StopwordList::bundled(),
        };
        let abbreviations = match &self.abbreviations {
            Some(p) => AbbreviationTable::load(p)?,
            None => AbbreviationTable::bundled(),
        };
        let stemmer = match &self.suffixes {
            Some(p) => SuffixStemmer::load(p)?,
            None => SuffixStemmer::bundled(),
        };
        let ambiguity = match &self.pairs {
            Some(p) => {
                let bytes = std::fs::read(p).map_err(|e| Error::io(p, e))?;
                AmbiguityMap::parse(&bytes)?
            }
            None => AmbiguityMap::turkish(),
        };
        Ok(LexiconResources::new(
            dictionary,
            stopwords,
            abbreviations,
            Box::new(stemmer),
            ambiguity,
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub inputs: Vec<PathBuf>,
    pub output_dir: PathBuf,
    pub gram_sizes: BTreeSet<usize>,
    /// `None` uses the classes present in the input.
    pub classes: Option<BTreeSet<Rating>>,
    pub workers: usize,
    pub corrector: CorrectorConfig,
    pub resources: ResourcePaths,
    pub min_count: u64,
    pub bad_lines: BadLinePolicy,
}

impl JobConfig {
    pub fn new(inputs: Vec<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        JobConfig {
            inputs,
            output_dir: output_dir.into(),
            gram_sizes: [1, 2, 3].into(),
            classes: None,
            workers: 1,
            corrector: CorrectorConfig::default(),
            resources: ResourcePaths::default(),
            min_count: 1,
            bad_lines: BadLinePolicy::Abort,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        if self.gram_sizes.is_empty() {
            return Err(Error::Config("no gram sizes requested".into()));
        }
        if let Some(n) = self.gram_sizes.iter().find(|n| !(1..=3).contains(*n)) {
            return Err(Error::Config(format!("gram size {n} outside 1..=3")));
        }
        if self.classes.as_ref().is_some_and(BTreeSet::is_empty) {
            return Err(Error::Config("empty class set".into()));
        }
        self.corrector.validate()
    }
}

/// Counters gathered while mapping reviews.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MapStats {
    pub reviews: u64,
    pub reviews_per_class: BTreeMap<Rating, u64>,
    pub tokens_seen: u64,
    pub tokens_kept: u64,
    pub methods: BTreeMap<Method, u64>,
}

impl MapStats {
    fn merge(&mut self, other: MapStats) {
        self.reviews += other.reviews;
        self.tokens_seen += other.tokens_seen;
        self.tokens_kept += other.tokens_kept;
        for (k, v) in other.reviews_per_class {
            *self.reviews_per_class.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.methods {
            *self.methods.entry(k).or_insert(0) += v;
        }
    }
}

/// One shard's tables (one per gram size) and counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShardOutput {
    pub tables: BTreeMap<usize, NgramTable>,
    pub stats: MapStats,
}

impl ShardOutput {
    pub fn empty(gram_sizes: &BTreeSet<usize>, classes: &BTreeSet<Rating>) -> Result<Self> {
        let tables = gram_sizes
            .iter()
            .map(|&n| Ok((n, NgramTable::new(n, classes.clone())?)))
            .collect::<Result<_>>()?;
        Ok(ShardOutput {
            tables,
            stats: MapStats::default(),
        })
    }

    pub fn merge(mut self, other: ShardOutput) -> Result<Self> {
        for (n, table) in other.tables {
            let merged = match self.tables.remove(&n) {
                Some(mine) => mine.merge(table)?,
                None => table,
            };
            self.tables.insert(n, merged);
        }
        self.stats.merge(other.stats);
        Ok(self)
    }
}

/// Shared, read-only inputs of the map phase.
pub struct MapContext<'a> {
    pub resources: &'a LexiconResources,
    pub corrector: &'a CorrectorConfig,
    pub gram_sizes: &'a BTreeSet<usize>,
    pub classes: &'a BTreeSet<Rating>,
}

/// Tokenize, drop stopwords, correct, stem. Corrections are appended to
/// `corrections` in token order.
pub fn normalize_review(
    text: &str,
    resources: &LexiconResources,
    config: &CorrectorConfig,
    cache: &mut HashMap<String, CorrectionResult>,
    corrections: &mut Vec<Method>,
) -> (usize, Vec<String>) {
    let tokens = tokenize(text);
    let seen = tokens.len();
    let kept = remove_stopwords(&tokens, &resources.stopwords);
    let mut terms = Vec::with_capacity(kept.len());
    for token in kept {
        let result = cache
            .entry(token.surface.clone())
            .or_insert_with(|| correct_word(&token.surface, resources, config));
        corrections.push(result.method);
        for piece in result.corrected.split_whitespace() {
            terms.push(resources.stemmer.stem(piece));
        }
    }
    (seen, terms)
}

/// Map phase for the reviews of one shard.
pub fn map_shard<'r>(
    reviews: impl IntoIterator<Item = &'r RawReview>,
    ctx: &MapContext<'_>,
) -> Result<ShardOutput> {
    let mut out = ShardOutput::empty(ctx.gram_sizes, ctx.classes)?;
    let mut cache = HashMap::new();
    let mut methods = Vec::new();
    for review in reviews {
        methods.clear();
        let (seen, terms) =
            normalize_review(&review.text, ctx.resources, ctx.corrector, &mut cache, &mut methods);
        let stats = &mut out.stats;
        stats.reviews += 1;
        *stats.reviews_per_class.entry(review.rating).or_insert(0) += 1;
        stats.tokens_seen += seen as u64;
        stats.tokens_kept += methods.len() as u64;
        for &m in &methods {
            *stats.methods.entry(m).or_insert(0) += 1;
        }
        for (&n, table) in out.tables.iter_mut() {
            table.accumulate(review.rating, extract_ngrams(&terms, n))?;
        }
    }
    Ok(out)
}

/// Round-robin shard assignment by review index.
pub fn shard_reviews(reviews: &[RawReview], workers: usize) -> Vec<Vec<&RawReview>> {
    let workers = workers.max(1);
    let mut shards: Vec<Vec<&RawReview>> = (0..workers).map(|_| Vec::new()).collect();
    for (i, r) in reviews.iter().enumerate() {
        shards[i % workers].push(r);
    }
    shards
}

/// Runs the map phase on `workers` threads and merges the shard outputs.
pub fn map_reduce(reviews: &[RawReview], ctx: &MapContext<'_>, workers: usize) -> Result<ShardOutput> {
    let shards = shard_reviews(reviews, workers);
    let outputs: Vec<Result<ShardOutput>> = std::thread::scope(|scope| {
        let handles: Vec<_> = shards
            .iter()
            .map(|shard| scope.spawn(move || map_shard(shard.iter().copied(), ctx)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("shard worker panicked"))
            .collect()
    });
    let mut merged = ShardOutput::empty(ctx.gram_sizes, ctx.classes)?;
    for out in outputs {
        merged = merged.merge(out?)?;
    }
    Ok(merged)
}

/// The class pair whose shared list is emitted: lowest and highest class.
pub fn extreme_pair(classes: &BTreeSet<Rating>) -> Option<BTreeSet<Rating>> {
    match (classes.first(), classes.last()) {
        (Some(&lo), Some(&hi)) if lo != hi => Some([lo, hi].into()),
        _ => None,
    }
}

fn write_entries(entries: &[(NgramKey, u64)], min_count: u64) -> String {
    let mut out = String::new();
    for (key, count) in entries.iter().filter(|(_, c)| *c >= min_count) {
        let _ = writeln!(out, "{key}\t{count}");
    }
    out
}

/// Renders every output file as `(file name, contents)`, sorted by name.
pub fn render_outputs(tables: &BTreeMap<usize, NgramTable>, min_count: u64) -> Result<BTreeMap<String, String>> {
    let mut files = BTreeMap::new();
    for (&n, table) in tables {
        for &class in table.classes() {
            files.insert(
                format!("grams_n{n}_class{class}.tsv"),
                write_entries(&table.sorted(class), min_count),
            );
        }
        let pairs: Vec<BTreeSet<Rating>> = extreme_pair(table.classes()).into_iter().collect();
        let lists = DistinctiveLists::compute(table, &pairs)?;
        lists.check(table)?;
        for (class, list) in &lists.exclusive {
            files.insert(
                format!("exclusive_n{n}_class{class}.tsv"),
                write_entries(list, min_count),
            );
        }
        for (set, list) in &lists.shared {
            let names: Vec<String> = set.iter().map(Rating::to_string).collect();
            files.insert(
                format!("shared_n{n}_classes{}.tsv", names.join("-")),
                write_entries(list, min_count),
            );
        }
    }
    Ok(files)
}

/// Summary of one `run_pipeline` call.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PipelineReport {
    pub stats: MapStats,
    pub skipped_lines: Vec<(PathBuf, usize, String)>,
    pub files: Vec<PathBuf>,
    pub phase_times: Vec<(&'static str, Duration)>,
}

impl PipelineReport {
    /// Files named `grams_*`.
    pub fn gram_files(&self) -> usize {
        self.files
            .iter()
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("grams_"))
            })
            .count()
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.stats;
        writeln!(f, "reviews processed: {}", s.reviews)?;
        for (class, count) in &s.reviews_per_class {
            writeln!(f, "  class {class}: {count}")?;
        }
        writeln!(f, "tokens seen: {}", s.tokens_seen)?;
        writeln!(f, "tokens kept: {}", s.tokens_kept)?;
        writeln!(f, "corrections:")?;
        for m in Method::ALL {
            writeln!(f, "  {:<16}{}", m.as_str(), s.methods.get(&m).copied().unwrap_or(0))?;
        }
        if !self.skipped_lines.is_empty() {
            writeln!(f, "skipped lines: {}", self.skipped_lines.len())?;
            for (path, line, reason) in &self.skipped_lines {
                writeln!(f, "  {}:{line}: {reason}", path.display())?;
            }
        }
        writeln!(f, "files emitted: {}", self.files.len())?;
        for (phase, t) in &self.phase_times {
            writeln!(f, "  {phase:<8}{:.3}s", t.as_secs_f64())?;
        }
        Ok(())
    }
}

/// Loads resources, ingests every input, builds and writes the lexicon.
pub fn run_pipeline(config: &JobConfig) -> Result<PipelineReport> {
    config.validate()?;
    let mut report = PipelineReport::default();

    let t = Instant::now();
    let resources = config.resources.load()?;
    report.phase_times.push(("load", t.elapsed()));

    let t = Instant::now();
    let mut reviews = Vec::new();
    for path in &config.inputs {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let ingested = ingest_jsonl(&bytes, config.classes.as_ref(), config.bad_lines).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })?;
        reviews.extend(ingested.reviews);
        report
            .skipped_lines
            .extend(ingested.skipped.into_iter().map(|(l, r)| (path.clone(), l, r)));
    }
    report.phase_times.push(("ingest", t.elapsed()));

    let classes = match &config.classes {
        Some(c) => c.clone(),
        None => reviews.iter().map(|r| r.rating).collect(),
    };

    let t = Instant::now();
    let ctx = MapContext {
        resources: &resources,
        corrector: &config.corrector,
        gram_sizes: &config.gram_sizes,
        classes: &classes,
    };
    let merged = map_reduce(&reviews, &ctx, config.workers)?;
    report.phase_times.push(("map", t.elapsed()));

    let t = Instant::now();
    let files = render_outputs(&merged.tables, config.min_count)?;
    write_outputs(&config.output_dir, &files)?;
    report.files = files.keys().map(|n| config.output_dir.join(n)).collect();
    report.phase_times.push(("emit", t.elapsed()));

    report.stats = merged.stats;
    Ok(report)
}

pub fn write_outputs(dir: &Path, files: &BTreeMap<String, String>) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

/// Corrects every token of a line. Stopwords are kept.
pub fn correct_text(
    line: &str,
    resources: &LexiconResources,
    config: &CorrectorConfig,
) -> (String, Vec<CorrectionResult>) {
    let trace: Vec<CorrectionResult> = tokenize(line)
        .iter()
        .map(|t| correct_word(&t.surface, resources, config))
        .collect();
    let text = trace
        .iter()
        .map(|r| r.corrected.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    (text, trace)
}
