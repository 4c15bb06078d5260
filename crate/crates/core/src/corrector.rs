//! Word correction: diacritic-toggle candidate search, abbreviation
//! expansion, repeat collapse and a gestalt fuzzy fallback.
//!
//! A word with `n` toggleable letters has `2^n` diacritic variants. The
//! naive path enumerates all of them; [`DiacriticIndex`] walks a dictionary
//! trie instead and only follows prefixes that exist, which returns the same
//! winner while visiting a tiny fraction of the variants.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{utf8_lines, Error, Result};
use crate::lexicon::{AbbreviationTable, Dictionary, LexiconResources};
use crate::similarity::{best_matches, Metric};
use crate::tokenizer::{collapse_repeats, turkish_lowercase};

/// Letters that the candidate generator may flip, stored as an involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityMap {
    pairs: Vec<(char, char)>,
    partner: HashMap<char, char>,
}

impl AmbiguityMap {
    pub const TURKISH_PAIRS: [(char, char); 6] = [
        ('c', 'ç'),
        ('g', 'ğ'),
        ('i', 'ı'),
        ('o', 'ö'),
        ('s', 'ş'),
        ('u', 'ü'),
    ];

    pub fn turkish() -> Self {
        Self::from_pairs(Self::TURKISH_PAIRS).expect("built-in pairs are disjoint")
    }

    /// Fails if a pair repeats a letter or two pairs share one.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (char, char)>) -> Result<Self> {
        let mut map = AmbiguityMap {
            pairs: Vec::new(),
            partner: HashMap::new(),
        };
        for (a, b) in pairs {
            if a == b {
                return Err(Error::Config(format!("toggle pair ({a},{b}) repeats a letter")));
            }
            for c in [a, b] {
                if map.partner.contains_key(&c) {
                    return Err(Error::Config(format!("letter {c:?} is in two toggle pairs")));
                }
            }
            map.partner.insert(a, b);
            map.partner.insert(b, a);
            map.pairs.push((a, b));
        }
        Ok(map)
    }

    /// Parses `a<TAB>b` lines; `#` lines are comments.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let mut pairs = Vec::new();
        for (line_no, line) in utf8_lines(bytes)? {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (a, b) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(line_no, "expected a<TAB>b"))?;
            let single = |s: &str| -> Result<char> {
                let s = turkish_lowercase(s.trim());
                let mut it = s.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(Error::parse(line_no, format!("{s:?} is not a single letter"))),
                }
            };
            pairs.push((single(a)?, single(b)?));
        }
        Self::from_pairs(pairs).map_err(|e| match e {
            Error::Config(msg) => Error::parse(0, msg),
            other => other,
        })
    }

    pub fn partner(&self, c: char) -> Option<char> {
        self.partner.get(&c).copied()
    }

    pub fn is_ambiguous(&self, c: char) -> bool {
        self.partner.contains_key(&c)
    }

    pub fn pairs(&self) -> &[(char, char)] {
        &self.pairs
    }
}

/// Number of positions holding a toggleable letter.
pub fn count_ambiguous(word: &str, map: &AmbiguityMap) -> usize {
    word.chars().filter(|&c| map.is_ambiguous(c)).count()
}

/// `2^n` for a word with `n` toggleable positions, or `None` past `u128`.
pub fn candidate_count(word: &str, map: &AmbiguityMap) -> Option<u128> {
    1u128.checked_shl(u32::try_from(count_ambiguous(word, map)).ok()?)
}

/// A diacritic variant together with the positions that were flipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionCandidate {
    pub word: String,
    pub toggled_positions: Vec<usize>,
    pub in_dictionary: bool,
}

/// Flips the listed character positions through the map.
pub fn apply_toggles(word: &str, positions: &[usize], map: &AmbiguityMap) -> String {
    word.chars()
        .enumerate()
        .map(|(i, c)| {
            if positions.contains(&i) {
                map.partner(c).unwrap_or(c)
            } else {
                c
            }
        })
        .collect()
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::ToggleExplosion { n, cap })
    } else {
        Ok(())
    }
}

/// Hard ceiling for full enumeration regardless of the configured cap.
pub const MAX_ENUMERATED_POSITIONS: usize = 30;

/// Every subset of toggleable positions flipped, including the empty subset.
pub fn enumerate_candidates(
    word: &str,
    dict: &Dictionary,
    map: &AmbiguityMap,
    cap: usize,
) -> Result<Vec<CorrectionCandidate>> {
    let chars: Vec<char> = word.chars().collect();
    let positions: Vec<usize> = (0..chars.len())
        .filter(|&i| map.is_ambiguous(chars[i]))
        .collect();
    check_cap(positions.len(), cap.min(MAX_ENUMERATED_POSITIONS))?;
    let mut out = Vec::with_capacity(1 << positions.len());
    let mut buf = chars.clone();
    for mask in 0u64..(1u64 << positions.len()) {
        let mut toggled = Vec::new();
        for (bit, &pos) in positions.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                buf[pos] = map.partner(chars[pos]).unwrap_or(chars[pos]);
                toggled.push(pos);
            } else {
                buf[pos] = chars[pos];
            }
        }
        let w: String = buf.iter().collect();
        let in_dictionary = dict.contains(&w);
        out.push(CorrectionCandidate {
            word: w,
            toggled_positions: toggled,
            in_dictionary,
        });
    }
    Ok(out)
}

/// The `2^n` distinct diacritic variants of `word`.
pub fn generate_candidates(word: &str, map: &AmbiguityMap, cap: usize) -> Result<BTreeSet<String>> {
    let empty = Dictionary::new();
    Ok(enumerate_candidates(word, &empty, map, cap)?
        .into_iter()
        .map(|c| c.word)
        .collect())
}

/// Winner ordering: higher frequency, fewer toggles, then lexicographic.
fn beats(freq: u64, toggles: usize, word: &str, best: &DiacriticHit) -> bool {
    (freq, std::cmp::Reverse(toggles)) > (best.frequency, std::cmp::Reverse(best.toggles))
        || (freq == best.frequency && toggles == best.toggles && word < best.word.as_str())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiacriticHit {
    pub word: String,
    pub frequency: u64,
    pub toggles: usize,
}

/// Result of a diacritic search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiacriticOutcome {
    pub winner: Option<DiacriticHit>,
    /// `2^n`, the size of the full variant space.
    pub candidate_count: u128,
    /// Variants that exist in the dictionary.
    pub dictionary_hits: usize,
    /// Trie nodes visited; 0 for the naive path.
    pub visited_nodes: usize,
}

/// Full enumeration followed by dictionary filtering.
pub fn diacritic_search_naive(
    word: &str,
    dict: &Dictionary,
    map: &AmbiguityMap,
    cap: usize,
) -> Result<DiacriticOutcome> {
    let candidates = enumerate_candidates(word, dict, map, cap)?;
    let candidate_count = candidates.len() as u128;
    let mut winner: Option<DiacriticHit> = None;
    let mut hits = 0;
    for c in candidates.into_iter().filter(|c| c.in_dictionary) {
        hits += 1;
        let freq = dict.frequency(&c.word).unwrap_or(0);
        let toggles = c.toggled_positions.len();
        if winner.as_ref().is_none_or(|b| beats(freq, toggles, &c.word, b)) {
            winner = Some(DiacriticHit {
                word: c.word,
                frequency: freq,
                toggles,
            });
        }
    }
    Ok(DiacriticOutcome {
        winner,
        candidate_count,
        dictionary_hits: hits,
        visited_nodes: 0,
    })
}

pub fn diacritic_correct_naive(
    word: &str,
    dict: &Dictionary,
    map: &AmbiguityMap,
    cap: usize,
) -> Result<Option<String>> {
    Ok(diacritic_search_naive(word, dict, map, cap)?
        .winner
        .map(|h| h.word))
}

#[derive(Debug, Clone, Default)]
struct TrieNode {
    children: Vec<(char, u32)>,
    frequency: Option<u64>,
}

/// Character trie over the dictionary, used to prune the variant search.
#[derive(Debug, Clone)]
pub struct DiacriticIndex {
    nodes: Vec<TrieNode>,
}

impl DiacriticIndex {
    pub fn build(dict: &Dictionary) -> Self {
        let mut nodes = vec![TrieNode::default()];
        for (word, freq) in dict.iter() {
            let mut at = 0usize;
            for c in word.chars() {
                at = match nodes[at].children.iter().find(|(k, _)| *k == c) {
                    Some(&(_, next)) => next as usize,
                    None => {
                        let next = nodes.len();
                        nodes.push(TrieNode::default());
                        nodes[at].children.push((c, next as u32));
                        next
                    }
                };
            }
            nodes[at].frequency = Some(freq);
        }
        DiacriticIndex { nodes }
    }

    fn child(&self, node: usize, c: char) -> Option<usize> {
        self.nodes[node]
            .children
            .iter()
            .find(|(k, _)| *k == c)
            .map(|&(_, n)| n as usize)
    }

    /// Same winner as [`diacritic_search_naive`], found by walking only
    /// prefixes present in the dictionary.
    pub fn search(&self, word: &str, map: &AmbiguityMap, cap: usize) -> Result<DiacriticOutcome> {
        let chars: Vec<char> = word.chars().collect();
        let n = chars.iter().filter(|&&c| map.is_ambiguous(c)).count();
        check_cap(n, cap)?;
        let mut walk = Walk {
            index: self,
            map,
            chars: &chars,
            buf: Vec::with_capacity(chars.len()),
            winner: None,
            hits: 0,
            visited: 0,
        };
        walk.descend(0, 0, 0);
        Ok(DiacriticOutcome {
            winner: walk.winner,
            candidate_count: 1u128.checked_shl(n as u32).unwrap_or(u128::MAX),
            dictionary_hits: walk.hits,
            visited_nodes: walk.visited,
        })
    }
}

struct Walk<'a> {
    index: &'a DiacriticIndex,
    map: &'a AmbiguityMap,
    chars: &'a [char],
    buf: Vec<char>,
    winner: Option<DiacriticHit>,
    hits: usize,
    visited: usize,
}

impl Walk<'_> {
    fn descend(&mut self, node: usize, pos: usize, toggles: usize) {
        self.visited += 1;
        if pos == self.chars.len() {
            if let Some(freq) = self.index.nodes[node].frequency {
                self.hits += 1;
                let w: String = self.buf.iter().collect();
                if self.winner.as_ref().is_none_or(|b| beats(freq, toggles, &w, b)) {
                    self.winner = Some(DiacriticHit {
                        word: w,
                        frequency: freq,
                        toggles,
                    });
                }
            }
            return;
        }
        let c = self.chars[pos];
        let options = [Some((c, 0)), self.map.partner(c).map(|p| (p, 1))];
        for (letter, cost) in options.into_iter().flatten() {
            if let Some(next) = self.index.child(node, letter) {
                self.buf.push(letter);
                self.descend(next, pos + 1, toggles + cost);
                self.buf.pop();
            }
        }
    }
}

/// Pruned diacritic restoration; `None` when no variant is a known word.
pub fn diacritic_correct(
    word: &str,
    index: &DiacriticIndex,
    map: &AmbiguityMap,
    cap: usize,
) -> Result<Option<String>> {
    Ok(index.search(word, map, cap)?.winner.map(|h| h.word))
}

pub fn expand_abbreviation<'t>(word: &str, table: &'t AbbreviationTable) -> Option<&'t str> {
    table.get(word)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Exact,
    Abbreviation,
    RepeatCollapse,
    Diacritic,
    FuzzyFallback,
    Unchanged,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Exact,
        Method::Abbreviation,
        Method::RepeatCollapse,
        Method::Diacritic,
        Method::FuzzyFallback,
        Method::Unchanged,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Abbreviation => "abbreviation",
            Method::RepeatCollapse => "repeat_collapse",
            Method::Diacritic => "diacritic",
            Method::FuzzyFallback => "fuzzy_fallback",
            Method::Unchanged => "unchanged",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One step of the cascade, in the order it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Collapsed(String),
    Resolved(Method),
    ToggleExplosion { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionResult {
    pub original: String,
    pub corrected: String,
    pub method: Method,
    pub confidence: f64,
    pub trace: Vec<TraceEvent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectorConfig {
    pub fuzzy_threshold: f64,
    pub compare_threshold: f64,
    pub max_toggle_positions: usize,
}

impl Default for CorrectorConfig {
    fn default() -> Self {
        CorrectorConfig {
            fuzzy_threshold: 0.8,
            compare_threshold: 0.6,
            max_toggle_positions: 16,
        }
    }
}

impl CorrectorConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, t) in [
            ("fuzzy_threshold", self.fuzzy_threshold),
            ("compare_threshold", self.compare_threshold),
        ] {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Config(format!("{name} {t} outside [0, 1]")));
            }
        }
        if self.max_toggle_positions == 0 {
            return Err(Error::Config("max_toggle_positions must be at least 1".into()));
        }
        Ok(())
    }
}

fn resolved(
    method: Method,
    corrected: String,
    confidence: f64,
    trace: &mut Vec<TraceEvent>,
) -> (String, Method, f64) {
    trace.push(TraceEvent::Resolved(method));
    (corrected, method, confidence)
}

/// Runs the correction cascade: exact, abbreviation, repeat collapse,
/// diacritic restoration, gestalt fallback.
pub fn correct_word(
    word: &str,
    resources: &LexiconResources,
    config: &CorrectorConfig,
) -> CorrectionResult {
    let mut trace = Vec::new();
    let (corrected, method, confidence) = cascade(word, resources, config, &mut trace, true);
    CorrectionResult {
        original: word.to_string(),
        corrected,
        method,
        confidence,
        trace,
    }
}

fn cascade(
    word: &str,
    res: &LexiconResources,
    config: &CorrectorConfig,
    trace: &mut Vec<TraceEvent>,
    allow_collapse: bool,
) -> (String, Method, f64) {
    if res.dictionary.contains(word) {
        return resolved(Method::Exact, word.to_string(), 1.0, trace);
    }
    if let Some(exp) = expand_abbreviation(word, &res.abbreviations) {
        return resolved(Method::Abbreviation, exp.to_string(), 1.0, trace);
    }
    if allow_collapse {
        let collapsed = collapse_repeats(word, &res.dictionary);
        if collapsed != word {
            trace.push(TraceEvent::Collapsed(collapsed.clone()));
            let (out, method, conf) = cascade(&collapsed, res, config, trace, false);
            if method != Method::Unchanged {
                return (out, Method::RepeatCollapse, conf);
            }
        }
    }
    match diacritic_correct(word, res.index(), &res.ambiguity, config.max_toggle_positions) {
        Ok(Some(hit)) => return resolved(Method::Diacritic, hit, 1.0, trace),
        Ok(None) => {}
        Err(Error::ToggleExplosion { n, cap }) => trace.push(TraceEvent::ToggleExplosion { n, cap }),
        Err(_) => {}
    }
    if let Some(top) = best_matches(word, &res.dictionary, Metric::Gestalt, config.fuzzy_threshold)
        .into_iter()
        .next()
    {
        return resolved(Method::FuzzyFallback, top.candidate, top.score, trace);
    }
    resolved(Method::Unchanged, word.to_string(), 0.0, trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resources(words: &[(&str, u64)]) -> LexiconResources {
        let mut d = Dictionary::new();
        for &(w, f) in words {
            d.insert(w, f);
        }
        LexiconResources::with_dictionary(d)
    }

    #[test]
    fn pairs_are_an_involution() {
        let map = AmbiguityMap::turkish();
        for &(a, b) in map.pairs() {
            assert_eq!(map.partner(a), Some(b));
            assert_eq!(map.partner(map.partner(a).unwrap()), Some(a));
        }
        assert_eq!(map.partner('k'), None);
        assert!(AmbiguityMap::from_pairs([('a', 'a')]).is_err());
        assert!(AmbiguityMap::from_pairs([('a', 'b'), ('b', 'c')]).is_err());
    }

    #[test]
    fn pairs_file() {
        let m = AmbiguityMap::parse("# pairs\nc\tç\nA\tâ\n".as_bytes()).unwrap();
        assert_eq!(m.partner('ç'), Some('c'));
        assert_eq!(m.partner('a'), Some('â'));
        assert!(AmbiguityMap::parse(b"ab\tc\n").is_err());
        assert!(AmbiguityMap::parse(b"a c\n").is_err());
        assert!(AmbiguityMap::parse("c\tç\nç\tx\n".as_bytes()).is_err());
    }

    #[test]
    fn counts_toggleable_letters() {
        let map = AmbiguityMap::turkish();
        assert_eq!(count_ambiguous("çok", &map), 2);
        assert_eq!(count_ambiguous("xyz", &map), 0);
        assert_eq!(count_ambiguous("simarik", &map), 3);
        assert_eq!(candidate_count("çok", &map), Some(4));
    }

    #[test]
    fn candidates_of_cok() {
        let map = AmbiguityMap::turkish();
        let got = generate_candidates("çok", &map, 16).unwrap();
        let want: BTreeSet<String> = ["cok", "çok", "cök", "çök"].map(String::from).into();
        assert_eq!(got, want);
        assert_eq!(generate_candidates("xyz", &map, 16).unwrap().len(), 1);
    }

    #[test]
    fn explosion_names_n_and_cap() {
        let map = AmbiguityMap::turkish();
        let word = "cocococo";
        match generate_candidates(word, &map, 5) {
            Err(Error::ToggleExplosion { n, cap }) => assert_eq!((n, cap), (8, 5)),
            other => panic!("unexpected {other:?}"),
        }
        let idx = DiacriticIndex::build(&Dictionary::new());
        assert!(matches!(
            idx.search(word, &map, 5),
            Err(Error::ToggleExplosion { n: 8, cap: 5 })
        ));
    }

    #[test]
    fn diacritic_examples() {
        let res = resources(&[("çok", 10), ("sağlam", 3)]);
        let map = &res.ambiguity;
        assert_eq!(
            diacritic_correct("cok", res.index(), map, 16).unwrap().as_deref(),
            Some("çok")
        );
        assert_eq!(
            diacritic_correct("saglam", res.index(), map, 16).unwrap().as_deref(),
            Some("sağlam")
        );
        assert_eq!(diacritic_correct("qqq", res.index(), map, 16).unwrap(), None);
    }

    #[test]
    fn diacritic_winner_rules() {
        // frequency first
        let res = resources(&[("acı", 5), ("açı", 9)]);
        let out = res.index().search("aci", &res.ambiguity, 16).unwrap();
        assert_eq!(out.winner.unwrap().word, "açı");
        assert_eq!(out.dictionary_hits, 2);
        assert_eq!(out.candidate_count, 4);
        // equal frequency: fewer toggles
        let res = resources(&[("acı", 5), ("açı", 5)]);
        let out = res.index().search("acı", &res.ambiguity, 16).unwrap();
        assert_eq!(out.winner.unwrap().word, "acı");
        // equal frequency and toggles: lexicographic
        let res = resources(&[("sa", 1), ("şç", 1), ("çş", 1)]);
        let naive = diacritic_search_naive("cs", &res.dictionary, &res.ambiguity, 16).unwrap();
        let pruned = res.index().search("cs", &res.ambiguity, 16).unwrap();
        assert_eq!(naive.winner, pruned.winner);
        assert_eq!(pruned.winner.unwrap().word, "çş");
    }

    #[test]
    fn abbreviations() {
        let t = AbbreviationTable::bundled();
        assert_eq!(expand_abbreviation("slm", &t), Some("selam"));
        assert_eq!(expand_abbreviation("tmm", &t), Some("tamam"));
        assert_eq!(expand_abbreviation("film", &t), None);
    }

    #[test]
    fn cascade_examples() {
        let res = resources(&[
            ("çok", 100),
            ("film", 10),
            ("gelirim", 4),
            ("geldim", 4),
            ("geliyorum", 4),
            ("germ", 1),
        ]);
        let cfg = CorrectorConfig::default();

        let r = correct_word("cok", &res, &cfg);
        assert_eq!((r.corrected.as_str(), r.method, r.confidence), ("çok", Method::Diacritic, 1.0));

        let r = correct_word("gelirm", &res, &cfg);
        assert_eq!(r.corrected, "gelirim");
        assert_eq!(r.method, Method::FuzzyFallback);
        assert!((r.confidence - 12.0 / 13.0).abs() < 1e-12);

        let r = correct_word("çooookkkk", &res, &cfg);
        assert_eq!(
            (r.corrected.as_str(), r.method, r.confidence),
            ("çok", Method::RepeatCollapse, 1.0)
        );

        let r = correct_word("film", &res, &cfg);
        assert_eq!((r.corrected.as_str(), r.method, r.confidence), ("film", Method::Exact, 1.0));

        let r = correct_word("slm", &res, &cfg);
        assert_eq!((r.corrected.as_str(), r.method), ("selam", Method::Abbreviation));

        let r = correct_word("qqqq", &res, &cfg);
        assert_eq!((r.corrected.as_str(), r.method, r.confidence), ("qqqq", Method::Unchanged, 0.0));
    }

    #[test]
    fn collapse_then_diacritic() {
        let res = resources(&[("çok", 100)]);
        let r = correct_word("coooook", &res, &CorrectorConfig::default());
        assert_eq!(r.corrected, "çok");
        assert_eq!(r.method, Method::RepeatCollapse);
        assert_eq!(
            r.trace,
            vec![
                TraceEvent::Collapsed("cok".into()),
                TraceEvent::Resolved(Method::Diacritic)
            ]
        );
    }

    #[test]
    fn explosion_degrades_to_fuzzy() {
        let word = "çiçiçiçiçiçiçiçiçi"; // 18 toggleable positions
        let res = resources(&[("çiçiçiçiçiçiçiçiçiç", 1)]);
        let r = correct_word(word, &res, &CorrectorConfig::default());
        assert!(r.trace.contains(&TraceEvent::ToggleExplosion { n: 18, cap: 16 }));
        assert_eq!(r.method, Method::FuzzyFallback);
        assert_eq!(r.corrected, "çiçiçiçiçiçiçiçiçiç");
    }

    #[test]
    fn config_validation() {
        assert!(CorrectorConfig::default().validate().is_ok());
        let bad = CorrectorConfig {
            fuzzy_threshold: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = CorrectorConfig {
            max_toggle_positions: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
