//! String similarity metrics and threshold-ranked dictionary lookup.
//!
//! All lengths and positions are in Unicode scalar values.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::lexicon::Dictionary;

/// Scores within this distance of the threshold count as passing it.
const THRESHOLD_EPSILON: f64 = 1e-9;

/// Dictionaries at least this large are scored in parallel.
const PARALLEL_MIN_ENTRIES: usize = 4096;

pub fn levenshtein_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    levenshtein_chars(&a, &b)
}

fn levenshtein_chars(a: &[char], b: &[char]) -> usize {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    let (a, b) = (&a[prefix..], &b[prefix..]);
    let suffix = a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count();
    let (a, b) = (&a[..a.len() - suffix], &b[..b.len() - suffix]);
    if a.is_empty() || b.is_empty() {
        return a.len().max(b.len());
    }
    // row[j] = distance between the current prefix of a and b[..j]
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = diag + usize::from(ca != cb);
            diag = row[j + 1];
            row[j + 1] = sub.min(diag + 1).min(row[j] + 1);
        }
    }
    row[b.len()]
}

/// `1 - distance / max(|a|, |b|)`; two empty strings score 1.
pub fn levenshtein_similarity(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein_chars(&a, &b) as f64 / longest as f64
}

/// Ratcliff/Obershelp score `2M / (|a| + |b|)`; two empty strings score 1.
pub fn gestalt_similarity(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let total = a.len() + b.len();
    if total == 0 {
        return 1.0;
    }
    2.0 * gestalt_matches(&a, &b) as f64 / total as f64
}

/// Total matched characters of the recursive longest-common-substring
/// decomposition. Ties go to the earliest start in `a`, then in `b`.
pub fn gestalt_matches<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut total = 0;
    let mut stack = vec![(0, a.len(), 0, b.len())];
    while let Some((a_lo, a_hi, b_lo, b_hi)) = stack.pop() {
        let (i, j, len) = longest_common_substring(&a[a_lo..a_hi], &b[b_lo..b_hi]);
        if len == 0 {
            continue;
        }
        total += len;
        stack.push((a_lo, a_lo + i, b_lo, b_lo + j));
        stack.push((a_lo + i + len, a_hi, b_lo + j + len, b_hi));
    }
    total
}

/// Returns `(start_a, start_b, len)` of the earliest longest common block.
fn longest_common_substring<T: PartialEq>(a: &[T], b: &[T]) -> (usize, usize, usize) {
    let mut best = (0, 0, 0);
    if a.is_empty() || b.is_empty() {
        return best;
    }
    // run[j + 1] = length of the common suffix ending at a[i], b[j]
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { 0 };
            let len = cur[j + 1];
            if len > best.2 {
                best = (i + 1 - len, j + 1 - len, len);
            } else if len == best.2 && len > 0 {
                let (si, sj) = (i + 1 - len, j + 1 - len);
                if (si, sj) < (best.0, best.1) {
                    best = (si, sj, len);
                }
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Levenshtein,
    Gestalt,
}

impl Metric {
    pub fn score(self, a: &str, b: &str) -> f64 {
        match self {
            Metric::Levenshtein => levenshtein_similarity(a, b),
            Metric::Gestalt => gestalt_similarity(a, b),
        }
    }

    /// Upper bound on the score given only the two lengths.
    fn length_bound(self, la: usize, lb: usize) -> f64 {
        let (lo, hi) = (la.min(lb), la.max(lb));
        if hi == 0 {
            return 1.0;
        }
        match self {
            Metric::Levenshtein => lo as f64 / hi as f64,
            Metric::Gestalt => 2.0 * lo as f64 / (la + lb) as f64,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Levenshtein => "levenshtein",
            Metric::Gestalt => "gestalt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedMatch {
    pub candidate: String,
    pub score: f64,
    pub distance: usize,
}

/// All dictionary entries scoring at least `threshold`, best first.
///
/// Order: score descending, then Levenshtein distance ascending, then the
/// candidate string.
pub fn best_matches(
    word: &str,
    dict: &Dictionary,
    metric: Metric,
    threshold: f64,
) -> Vec<RankedMatch> {
    let word_len = word.chars().count();
    let score_entry = |candidate: &str| -> Option<RankedMatch> {
        let bound = metric.length_bound(word_len, candidate.chars().count());
        if bound + THRESHOLD_EPSILON < threshold {
            return None;
        }
        let score = metric.score(word, candidate);
        (score + THRESHOLD_EPSILON >= threshold).then(|| RankedMatch {
            candidate: candidate.to_string(),
            score,
            distance: levenshtein_distance(word, candidate),
        })
    };
    let mut out: Vec<RankedMatch> = if dict.len() >= PARALLEL_MIN_ENTRIES {
        let words: Vec<&str> = dict.iter().map(|(w, _)| w).collect();
        words.par_iter().filter_map(|w| score_entry(w)).collect()
    } else {
        dict.iter().filter_map(|(w, _)| score_entry(w)).collect()
    };
    out.sort_by(compare_matches);
    out
}

fn compare_matches(x: &RankedMatch, y: &RankedMatch) -> Ordering {
    y.score
        .total_cmp(&x.score)
        .then(x.distance.cmp(&y.distance))
        .then_with(|| x.candidate.cmp(&y.candidate))
}

/// Rounds half-up to two decimals, as reported in comparison tables.
pub fn round2(x: f64) -> f64 {
    ((x * 100.0) + 0.5 + 1e-9).floor() / 100.0
}

pub fn format_score(x: f64) -> String {
    format!("{:.2}", round2(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        assert_eq!(levenshtein_distance("cok", "çok"), 1);
        assert_eq!(levenshtein_distance("film", "film"), 0);
        assert_eq!(levenshtein_distance("", "abc"), 3);
        assert_eq!(levenshtein_distance("abc", ""), 3);
        assert_eq!(levenshtein_distance("kitten", "sitting"), 3);
    }

    #[test]
    fn similarity_examples() {
        assert!((levenshtein_similarity("cok", "çok") - 0.667).abs() < 0.001);
        assert_eq!(levenshtein_similarity("film", "film"), 1.0);
        assert_eq!(levenshtein_similarity("abc", "xyz"), 0.0);
        assert_eq!(levenshtein_similarity("", ""), 1.0);
        assert_eq!(gestalt_similarity("", ""), 1.0);
        assert_eq!(gestalt_similarity("abc", ""), 0.0);
    }

    #[test]
    fn gestalt_reference_values() {
        for (a, b, want) in [
            ("gelirm", "gelirim", 0.92),
            ("gelirm", "geldim", 0.83),
            ("biliyrm", "biliyorum", 0.88),
            ("sonuşlar", "sonuçlar", 0.88),
        ] {
            let got = round2(gestalt_similarity(a, b));
            assert!((got - want).abs() < 0.005, "{a}/{b}: {got}");
        }
        assert_eq!(gestalt_similarity("çok", "çok"), 1.0);
    }

    #[test]
    fn gestalt_tie_break_takes_earliest() {
        // "ab" occurs twice in b; the earliest pairing leaves "x" vs "abx"
        assert_eq!(
            longest_common_substring(&['a', 'b'], &['a', 'b', 'x', 'a', 'b']),
            (0, 0, 2)
        );
        assert_eq!(longest_common_substring(&['x', 'a'], &['a', 'x']), (0, 1, 1));
    }

    #[test]
    fn ranked_matches_order() {
        let dict = Dictionary::from_words(["gelirim", "geldim", "geliyorum", "germ", "zzz"]);
        let got = best_matches("gelirm", &dict, Metric::Gestalt, 0.8);
        let names: Vec<&str> = got.iter().map(|m| m.candidate.as_str()).collect();
        assert_eq!(names, ["gelirim", "geldim", "germ", "geliyorum"]);
        assert_eq!(format_score(got[0].score), "0.92");
        assert_eq!(format_score(got[1].score), "0.83");
        assert_eq!(format_score(got[2].score), "0.80");
        assert_eq!(format_score(got[3].score), "0.80");
    }

    #[test]
    fn exact_hit_heads_list() {
        let dict = Dictionary::from_words(["film", "filmi", "fil"]);
        for metric in [Metric::Levenshtein, Metric::Gestalt] {
            let got = best_matches("film", &dict, metric, 1.0);
            assert_eq!(got.len(), 1);
            assert_eq!(got[0].candidate, "film");
            assert_eq!(got[0].score, 1.0);
        }
        assert!(best_matches("film", &Dictionary::new(), Metric::Gestalt, 0.0).is_empty());
    }

    #[test]
    fn levenshtein_ranking_of_cok() {
        let dict = Dictionary::from_words(["çok", "cık", "cop", "cuk"]);
        let got = best_matches("cok", &dict, Metric::Levenshtein, 0.6);
        assert_eq!(got.len(), 4);
        for m in &got {
            assert!((m.score - 2.0 / 3.0).abs() < 1e-12);
        }
        let names: Vec<&str> = got.iter().map(|m| m.candidate.as_str()).collect();
        assert_eq!(names, ["cop", "cuk", "cık", "çok"]);
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(format_score(0.875), "0.88");
        assert_eq!(format_score(0.8), "0.80");
        assert_eq!(format_score(2.0 / 3.0), "0.67");
        assert_eq!(format_score(1.0), "1.00");
        assert_eq!(format_score(0.0), "0.00");
    }
}
