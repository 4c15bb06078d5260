//! Reference implementations shared by the oracle and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trlex::corrector::{diacritic_search_naive, generate_candidates, AmbiguityMap, DiacriticIndex};
use trlex::similarity::{gestalt_similarity, levenshtein_distance};
use trlex::Dictionary;

pub fn all_strings(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for &c in alphabet {
                let mut t = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Top-down recursive edit distance, memoized on suffix positions.
/// Inputs are at most 6 characters.
pub fn edit_distance_recursive(a: &[char], b: &[char]) -> usize {
    type Memo = [[u8; 7]; 7];
    fn go(a: &[char], b: &[char], i: usize, j: usize, memo: &mut Memo) -> usize {
        if i == a.len() {
            return b.len() - j;
        }
        if j == b.len() {
            return a.len() - i;
        }
        if memo[i][j] != u8::MAX {
            return memo[i][j] as usize;
        }
        let d = if a[i] == b[j] {
            go(a, b, i + 1, j + 1, memo)
        } else {
            1 + go(a, b, i + 1, j, memo)
                .min(go(a, b, i, j + 1, memo))
                .min(go(a, b, i + 1, j + 1, memo))
        };
        memo[i][j] = d as u8;
        d
    }
    assert!(a.len() <= 6 && b.len() <= 6);
    go(a, b, 0, 0, &mut [[u8::MAX; 7]; 7])
}

/// Plain exponential recursion, no memo.
pub fn edit_distance_naive(a: &[char], b: &[char]) -> usize {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => {
            if x == y {
                edit_distance_naive(ra, rb)
            } else {
                1 + edit_distance_naive(ra, b)
                    .min(edit_distance_naive(a, rb))
                    .min(edit_distance_naive(ra, rb))
            }
        }
    }
}

/// Longest common block by enumerating every (start_a, start_b, len);
/// ties resolve to the earliest start in `a`, then in `b`.
pub fn brute_longest_block(a: &[char], b: &[char]) -> (usize, usize, usize) {
    let mut best = (0, 0, 0);
    for i in 0..a.len() {
        for j in 0..b.len() {
            let mut len = 0;
            while i + len < a.len() && j + len < b.len() && a[i + len] == b[j + len] {
                len += 1;
            }
            if len > best.2 {
                best = (i, j, len);
            }
        }
    }
    best
}

pub fn brute_gestalt_matches(a: &[char], b: &[char]) -> usize {
    let (i, j, len) = brute_longest_block(a, b);
    if len == 0 {
        return 0;
    }
    len + brute_gestalt_matches(&a[..i], &b[..j]) + brute_gestalt_matches(&a[i + len..], &b[j + len..])
}

pub fn brute_gestalt(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    2.0 * brute_gestalt_matches(&a, &b) as f64 / (a.len() + b.len()) as f64
}

/// All subsets of toggleable positions, built by explicit recursion.
pub fn brute_subsets(word: &[char], map: &AmbiguityMap) -> BTreeSet<String> {
    fn go(word: &[char], map: &AmbiguityMap, pos: usize, cur: &mut Vec<char>, out: &mut BTreeSet<String>) {
        if pos == word.len() {
            out.insert(cur.iter().collect());
            return;
        }
        cur.push(word[pos]);
        go(word, map, pos + 1, cur, out);
        cur.pop();
        if let Some(p) = map.partner(word[pos]) {
            cur.push(p);
            go(word, map, pos + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(word, map, 0, &mut Vec::new(), &mut out);
    out
}


/// `(pairs checked, mismatches)` of the library distance against the
/// memoized recursion over every string pair up to `max_len` (at most 6).
pub fn levenshtein_mismatches(alphabet: &[char], max_len: usize) -> (usize, usize) {
    let strings = all_strings(alphabet, max_len);
    let chars: Vec<Vec<char>> = strings.iter().map(|s| s.chars().collect()).collect();
    let mismatches = (0..strings.len())
        .into_par_iter()
        .map(|i| {
            (0..strings.len())
                .filter(|&j| {
                    levenshtein_distance(&strings[i], &strings[j]) != edit_distance_recursive(&chars[i], &chars[j])
                })
                .count()
        })
        .sum();
    (strings.len() * strings.len(), mismatches)
}

/// `(pairs checked, mismatches)` of the library gestalt score against the
/// brute-force decomposition.
pub fn gestalt_mismatches(alphabet: &[char], max_len: usize) -> (usize, usize) {
    let strings = all_strings(alphabet, max_len);
    let mut mismatches = 0;
    for a in &strings {
        for b in &strings {
            if gestalt_similarity(a, b) != brute_gestalt(a, b) {
                mismatches += 1;
            }
        }
    }
    (strings.len() * strings.len(), mismatches)
}

pub struct PrunedReport {
    pub words: usize,
    pub disagreements: Vec<String>,
    /// Queries with more than one dictionary hit, i.e. where the tie-break
    /// order mattered.
    pub multi_hit: usize,
}

/// Compares trie search with full enumeration on `count` random words.
pub fn pruned_vs_naive(seed: u64, count: usize) -> PrunedReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet: Vec<char> = "cçoöksşiıauüğgm".chars().collect();
    let map = AmbiguityMap::turkish();
    let random_word = |rng: &mut ChaCha8Rng| -> String {
        let len = rng.gen_range(1..=7);
        (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
    };

    let mut dict = Dictionary::new();
    for _ in 0..3000 {
        let w = random_word(&mut rng);
        dict.insert(&w, rng.gen_range(1..=4));
    }
    let words: Vec<String> = (0..count).map(|_| random_word(&mut rng)).collect();
    // plant a toggled variant of every third query so many have hits
    for w in words.iter().step_by(3) {
        let variants: Vec<String> = generate_candidates(w, &map, 16).unwrap().into_iter().collect();
        let pick = &variants[rng.gen_range(0..variants.len())];
        dict.insert(pick, rng.gen_range(1..=4));
    }

    let index = DiacriticIndex::build(&dict);
    let mut report = PrunedReport {
        words: count,
        disagreements: Vec::new(),
        multi_hit: 0,
    };
    for w in &words {
        let naive = diacritic_search_naive(w, &dict, &map, 16).unwrap();
        let pruned = index.search(w, &map, 16).unwrap();
        let same = naive.winner == pruned.winner
            && naive.candidate_count == pruned.candidate_count
            && naive.dictionary_hits == pruned.dictionary_hits;
        if !same {
            report.disagreements.push(w.clone());
        }
        if pruned.dictionary_hits > 1 {
            report.multi_hit += 1;
        }
    }
    report
}
