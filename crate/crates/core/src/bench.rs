//! Side-by-side comparison of Levenshtein similarity, gestalt matching and
//! the correction cascade on a test word against a small dictionary.

use std::fmt::Write as _;

use crate::corrector::{correct_word, CorrectionResult, CorrectorConfig};
use crate::error::{utf8_lines, Error, Result};
use crate::lexicon::{Dictionary, LexiconResources};
use crate::similarity::{best_matches, format_score, Metric, RankedMatch};
use crate::tokenizer::turkish_lowercase;

pub const BUNDLED_PAIRS: &str = include_str!("../data/bench_pairs.tsv");

/// Printed under every Levenshtein block.
pub const LEVENSHTEIN_NOTE: &str = "note: scores are 1 - distance/max(|a|,|b|); reference values of \
0.33 for single-substitution pairs of length 3 cannot be derived from any standard normalization \
and are not reproduced";

/// A test word and the dictionary it is compared against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub word: String,
    pub dictionary: Vec<String>,
}

/// Parses `word<TAB>entry entry ...` lines; `#` lines are comments.
pub fn parse_pairs(bytes: &[u8]) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for (line_no, line) in utf8_lines(bytes)? {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, entries) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(line_no, "expected word<TAB>dictionary entries"))?;
        let word = turkish_lowercase(word.trim());
        let dictionary: Vec<String> = entries.split_whitespace().map(turkish_lowercase).collect();
        if word.is_empty() {
            return Err(Error::parse(line_no, "empty test word"));
        }
        if dictionary.is_empty() {
            return Err(Error::parse(line_no, "empty dictionary"));
        }
        rows.push(BenchRow { word, dictionary });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchBlock {
    pub word: String,
    pub levenshtein: Vec<RankedMatch>,
    pub gestalt: Vec<RankedMatch>,
    pub proposed: CorrectionResult,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchThresholds {
    pub levenshtein: f64,
    pub gestalt: f64,
}

impl Default for BenchThresholds {
    fn default() -> Self {
        BenchThresholds {
            levenshtein: 0.6,
            gestalt: 0.6,
        }
    }
}

pub fn bench_compare(
    rows: &[BenchRow],
    thresholds: BenchThresholds,
    config: &CorrectorConfig,
) -> Vec<BenchBlock> {
    rows.iter()
        .map(|row| {
            let dict = Dictionary::from_words(&row.dictionary);
            let levenshtein = best_matches(&row.word, &dict, Metric::Levenshtein, thresholds.levenshtein);
            let gestalt = best_matches(&row.word, &dict, Metric::Gestalt, thresholds.gestalt);
            let resources = LexiconResources::with_dictionary(dict);
            let proposed = correct_word(&row.word, &resources, config);
            BenchBlock {
                word: row.word.clone(),
                levenshtein,
                gestalt,
                proposed,
            }
        })
        .collect()
}

/// Renders blocks in a three-section table layout.
pub fn render(blocks: &[BenchBlock], thresholds: BenchThresholds) -> String {
    let mut out = String::new();
    for block in blocks {
        let _ = writeln!(out, "== {} ==", block.word);
        let _ = writeln!(out, "Levenshtein (threshold {:.2})", thresholds.levenshtein);
        write_matches(&mut out, &block.levenshtein);
        let _ = writeln!(out, "  {LEVENSHTEIN_NOTE}");
        let _ = writeln!(out, "Fuzzy String Matching (gestalt, threshold {:.2})", thresholds.gestalt);
        write_matches(&mut out, &block.gestalt);
        let _ = writeln!(out, "Proposed Method");
        let p = &block.proposed;
        let _ = writeln!(
            out,
            "  {}\t{}\t[{}]",
            p.corrected,
            format_score(p.confidence),
            p.method
        );
        out.push('\n');
    }
    out
}

fn write_matches(out: &mut String, matches: &[RankedMatch]) {
    if matches.is_empty() {
        out.push_str("  (no match)\n");
    }
    for m in matches {
        let _ = writeln!(out, "  {}\t{}", m.candidate, format_score(m.score));
    }
}
