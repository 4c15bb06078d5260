//! Read-only knowledge shared by every pipeline worker: the frequency
//! dictionary, stopwords, abbreviations and the stemmer.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::corrector::{AmbiguityMap, DiacriticIndex};
use crate::error::{utf8_lines, Error, Result};
use crate::tokenizer::{is_noise, turkish_lowercase};

pub const BUNDLED_DICTIONARY: &str = include_str!("../data/dictionary.tsv");
pub const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords.txt");
pub const BUNDLED_ABBREVIATIONS: &str = include_str!("../data/abbreviations.tsv");
pub const BUNDLED_SUFFIXES: &str = include_str!("../data/suffixes.txt");

/// Word → frequency map. Keys are Turkish-lowercased, noise-free words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    entries: HashMap<String, u64>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every word with frequency 1.
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut d = Dictionary::new();
        for w in words {
            d.insert(w.as_ref(), 1);
        }
        d
    }

    /// Parses `word[<TAB>frequency]` lines. Duplicate words sum.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let mut dict = Dictionary::new();
        for (line_no, line) in utf8_lines(bytes)? {
            if line.trim().is_empty() {
                continue;
            }
            let (word, freq) = match line.split_once('\t') {
                Some((w, f)) => {
                    let f = f.trim();
                    let f: u64 = f
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad frequency {f:?}")))?;
                    (w, f)
                }
                None => (line, 1),
            };
            let word = turkish_lowercase(word.trim());
            if word.is_empty() {
                return Err(Error::parse(line_no, "empty word"));
            }
            if word.chars().any(|c| c.is_whitespace() || is_noise(c)) {
                return Err(Error::parse(
                    line_no,
                    format!("word {word:?} contains whitespace or noise characters"),
                ));
            }
            dict.insert(&word, freq);
        }
        Ok(dict)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&bytes)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_DICTIONARY.as_bytes()).expect("bundled dictionary parses")
    }

    /// Adds `freq` to the word's count; the word is used as given.
    pub fn insert(&mut self, word: &str, freq: u64) {
        let slot = self.entries.entry(word.to_string()).or_insert(0);
        *slot = slot.saturating_add(freq);
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn frequency(&self, word: &str) -> Option<u64> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(w, &f)| (w.as_str(), f))
    }

    /// Words in lexicographic order.
    pub fn sorted_words(&self) -> Vec<&str> {
        let mut words: Vec<&str> = self.entries.keys().map(String::as_str).collect();
        words.sort_unstable();
        words
    }

    /// Serializes as `word<TAB>frequency` lines sorted by word.
    pub fn to_tsv(&self) -> String {
        let sorted: BTreeMap<&str, u64> = self.iter().collect();
        let mut out = String::new();
        for (w, f) in sorted {
            let _ = writeln!(out, "{w}\t{f}");
        }
        out
    }
}

/// Exact-match dictionary membership.
pub fn is_known(dict: &Dictionary, word: &str) -> bool {
    dict.contains(word)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopwordList {
            words: words
                .into_iter()
                .map(|w| turkish_lowercase(w.as_ref()))
                .collect(),
        }
    }

    /// One word per line; `#` lines are comments.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        Ok(Self::from_words(word_lines(bytes)?))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&bytes)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_STOPWORDS.as_bytes()).expect("bundled stopwords parse")
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn word_lines(bytes: &[u8]) -> Result<Vec<String>> {
    Ok(utf8_lines(bytes)?
        .into_iter()
        .map(|(_, l)| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

/// Social-media abbreviation → expansion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbbreviationTable {
    entries: HashMap<String, String>,
}

impl AbbreviationTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `abbrev<TAB>expansion` lines; `#` lines are comments. A later
    /// line for the same key replaces the earlier one.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let mut table = AbbreviationTable::new();
        for (line_no, line) in utf8_lines(bytes)? {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, expansion) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(line_no, "expected abbrev<TAB>expansion"))?;
            let key = turkish_lowercase(key.trim());
            let expansion = turkish_lowercase(expansion.trim());
            if key.is_empty() || expansion.is_empty() {
                return Err(Error::parse(line_no, "empty abbreviation or expansion"));
            }
            table.entries.insert(key, expansion);
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&bytes)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_ABBREVIATIONS.as_bytes()).expect("bundled abbreviations parse")
    }

    pub fn insert(&mut self, key: &str, expansion: &str) {
        self.entries.insert(key.to_string(), expansion.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Reduces an inflected word to a base form.
///
/// Implementations must return a non-empty string for non-empty input and
/// be idempotent.
pub trait Stemmer: Send + Sync {
    fn stem(&self, word: &str) -> String;
}

/// Strips inventory suffixes, longest first, until none applies.
#[derive(Debug, Clone)]
pub struct SuffixStemmer {
    suffixes: Vec<String>,
    min_stem_len: usize,
}

impl SuffixStemmer {
    pub const DEFAULT_MIN_STEM_LEN: usize = 3;

    pub fn new<I, S>(suffixes: I, min_stem_len: usize) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut suffixes: Vec<String> = suffixes
            .into_iter()
            .map(|s| turkish_lowercase(s.as_ref()))
            .filter(|s| !s.is_empty())
            .collect();
        // stable: equal lengths keep inventory order
        suffixes.sort_by_key(|s| std::cmp::Reverse(s.chars().count()));
        SuffixStemmer {
            suffixes,
            min_stem_len: min_stem_len.max(1),
        }
    }

    /// One suffix per line, in priority order; `#` lines are comments.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        Ok(Self::new(word_lines(bytes)?, Self::DEFAULT_MIN_STEM_LEN))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&bytes)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_SUFFIXES.as_bytes()).expect("bundled suffixes parse")
    }

    pub fn min_stem_len(&self) -> usize {
        self.min_stem_len
    }

    pub fn suffixes(&self) -> &[String] {
        &self.suffixes
    }
}

impl Stemmer for SuffixStemmer {
    fn stem(&self, word: &str) -> String {
        let mut current = word;
        'strip: loop {
            let len = current.chars().count();
            for suffix in &self.suffixes {
                let slen = suffix.chars().count();
                if len >= slen + self.min_stem_len && current.ends_with(suffix.as_str()) {
                    current = &current[..current.len() - suffix.len()];
                    continue 'strip;
                }
            }
            return current.to_string();
        }
    }
}

/// Everything the corrector and pipeline read. Immutable once built.
pub struct LexiconResources {
    pub dictionary: Dictionary,
    pub stopwords: StopwordList,
    pub abbreviations: AbbreviationTable,
    pub stemmer: Box<dyn Stemmer>,
    pub ambiguity: AmbiguityMap,
    index: DiacriticIndex,
}

impl LexiconResources {
    pub fn new(
        dictionary: Dictionary,
        stopwords: StopwordList,
        abbreviations: AbbreviationTable,
        stemmer: Box<dyn Stemmer>,
        ambiguity: AmbiguityMap,
    ) -> Self {
        let index = DiacriticIndex::build(&dictionary);
        LexiconResources {
            dictionary,
            stopwords,
            abbreviations,
            stemmer,
            ambiguity,
            index,
        }
    }

    /// Bundled dictionary, stopwords, abbreviations and suffix stemmer with
    /// the Turkish toggle pairs.
    pub fn bundled() -> Self {
        Self::new(
            Dictionary::bundled(),
            StopwordList::bundled(),
            AbbreviationTable::bundled(),
            Box::new(SuffixStemmer::bundled()),
            AmbiguityMap::turkish(),
        )
    }

    /// A dictionary-only resource set: no stopwords, bundled abbreviations,
    /// bundled stemmer.
    pub fn with_dictionary(dictionary: Dictionary) -> Self {
        Self::new(
            dictionary,
            StopwordList::default(),
            AbbreviationTable::bundled(),
            Box::new(SuffixStemmer::bundled()),
            AmbiguityMap::turkish(),
        )
    }

    pub fn index(&self) -> &DiacriticIndex {
        &self.index
    }
}
