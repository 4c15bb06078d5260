//! Review text to clean lowercase tokens.
//!
//! Noise is defined by Unicode general category: every punctuation (`P*`)
//! and symbol (`S*`) character, and every decimal digit (`Nd`), is replaced
//! by a single space before whitespace splitting. Apostrophe-suffixed proper
//! nouns ("Ankara'da") therefore split into two tokens.

use std::collections::BTreeSet;
use std::fmt;

use unicode_general_category::{get_general_category, GeneralCategory};

use crate::error::{Error, Result};
use crate::lexicon::{Dictionary, StopwordList};

/// Integer star rating. Valid classes are `0..=5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rating(u8);

impl Rating {
    pub const MAX: u8 = 5;

    pub fn new(value: i64) -> Result<Self> {
        match u8::try_from(value) {
            Ok(v) if v <= Self::MAX => Ok(Rating(v)),
            _ => Err(Error::Config(format!(
                "rating {value} outside 0..={}",
                Self::MAX
            ))),
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> BTreeSet<Rating> {
        (0..=Self::MAX).map(Rating).collect()
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses a class set such as `0-5`, `1,3,5` or `0-1,4-5`.
pub fn parse_class_set(text: &str) -> Result<BTreeSet<Rating>> {
    let mut out = BTreeSet::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::Config(format!("bad class set element {part:?}"));
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                for v in lo..=hi {
                    out.insert(Rating::new(v)?);
                }
            }
            None => {
                out.insert(Rating::new(part.parse().map_err(|_| bad())?)?);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config("empty class set".into()));
    }
    Ok(out)
}

/// One review and its star rating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawReview {
    pub text: String,
    pub rating: Rating,
}

impl RawReview {
    pub fn new(text: impl Into<String>, rating: Rating) -> Result<Self> {
        let text = text.into();
        if text.trim().is_empty() {
            return Err(Error::Config("review text is empty".into()));
        }
        Ok(RawReview { text, rating })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub index: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, index: usize) -> Self {
        Token {
            surface: surface.into(),
            index,
        }
    }
}

/// Lowercases with Turkish case mapping: `İ` → `i`, `I` → `ı`.
pub fn turkish_lowercase(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            'I' => out.push('ı'),
            'İ' => out.push('i'),
            _ => out.extend(c.to_lowercase()),
        }
    }
    out
}

/// True for punctuation, symbols and decimal digits.
pub fn is_noise(c: char) -> bool {
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        ConnectorPunctuation
            | DashPunctuation
            | OpenPunctuation
            | ClosePunctuation
            | InitialPunctuation
            | FinalPunctuation
            | OtherPunctuation
            | MathSymbol
            | CurrencySymbol
            | ModifierSymbol
            | OtherSymbol
            | DecimalNumber
    )
}

/// Replaces each noise character with one space.
pub fn strip_noise(text: &str) -> String {
    text.chars()
        .map(|c| if is_noise(c) { ' ' } else { c })
        .collect()
}

pub fn tokenize(text: &str) -> Vec<Token> {
    strip_noise(&turkish_lowercase(text))
        .split_whitespace()
        .enumerate()
        .map(|(i, s)| Token::new(s, i))
        .collect()
}

/// Drops stopwords and renumbers the survivors contiguously.
pub fn remove_stopwords(tokens: &[Token], stoplist: &StopwordList) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| !stoplist.contains(&t.surface))
        .enumerate()
        .map(|(i, t)| Token::new(t.surface.clone(), i))
        .collect()
}

/// Above this many repeated runs, candidates are not enumerated.
pub const MAX_COLLAPSE_RUNS: usize = 8;

/// Reduces repeated-character runs ("çooookkkk" → "çok").
///
/// Each run of length ≥ 2 may become length 1 or 2. The dictionary candidate
/// with the fewest removed characters wins (ties: lexicographic); if no
/// candidate is known, every run collapses to one character.
pub fn collapse_repeats(word: &str, dict: &Dictionary) -> String {
    let runs = char_runs(word);
    let repeated: Vec<usize> = runs
        .iter()
        .enumerate()
        .filter(|(_, (_, len))| *len >= 2)
        .map(|(i, _)| i)
        .collect();
    if repeated.is_empty() {
        return word.to_string();
    }
    let all_single = || runs.iter().map(|&(c, _)| c).collect::<String>();

    if repeated.len() > MAX_COLLAPSE_RUNS {
        if runs.iter().all(|&(_, len)| len <= 2) && dict.contains(word) {
            return word.to_string();
        }
        return all_single();
    }

    let original_len = word.chars().count();
    let mut best: Option<(usize, String)> = None;
    for mask in 0u32..(1 << repeated.len()) {
        let mut candidate = String::with_capacity(word.len());
        let mut next = 0;
        for (i, &(c, len)) in runs.iter().enumerate() {
            let keep = if next < repeated.len() && repeated[next] == i {
                let doubled = mask & (1 << next) != 0;
                next += 1;
                if doubled {
                    2
                } else {
                    1
                }
            } else {
                len
            };
            candidate.extend(std::iter::repeat(c).take(keep));
        }
        if !dict.contains(&candidate) {
            continue;
        }
        let removed = original_len - candidate.chars().count();
        let better = match &best {
            None => true,
            Some((r, w)) => removed < *r || (removed == *r && candidate < *w),
        };
        if better {
            best = Some((removed, candidate));
        }
    }
    best.map(|(_, w)| w).unwrap_or_else(all_single)
}

fn char_runs(word: &str) -> Vec<(char, usize)> {
    let mut runs: Vec<(char, usize)> = Vec::new();
    for c in word.chars() {
        match runs.last_mut() {
            Some((last, len)) if *last == c => *len += 1,
            _ => runs.push((c, 1)),
        }
    }
    runs
}

/// Longest run of one repeated character.
pub fn longest_run(word: &str) -> usize {
    char_runs(word).iter().map(|&(_, l)| l).max().unwrap_or(0)
}
