//! Independent reference implementations checked against the library.
//! The acceptance target runs the same checks at full size.

mod common;

use trlex::corrector::{candidate_count, count_ambiguous, generate_candidates, AmbiguityMap};
use trlex::similarity::{gestalt_matches, levenshtein_distance};

use common::*;

#[test]
fn levenshtein_matches_memoized_recursion() {
    let (pairs, bad) = levenshtein_mismatches(&['a', 'b', 'c', 'ç'], 5);
    assert_eq!(pairs, 1365 * 1365);
    assert_eq!(bad, 0);
}

#[test]
fn levenshtein_matches_unmemoized_recursion() {
    let strings = all_strings(&['a', 'b', 'ş'], 4);
    for a in &strings {
        let ac: Vec<char> = a.chars().collect();
        for b in &strings {
            let bc: Vec<char> = b.chars().collect();
            assert_eq!(levenshtein_distance(a, b), edit_distance_naive(&ac, &bc), "{a}/{b}");
        }
    }
}

#[test]
fn gestalt_matches_brute_force() {
    let (pairs, bad) = gestalt_mismatches(&['a', 'b', 'ğ'], 4);
    assert_eq!(pairs, 121 * 121);
    assert_eq!(bad, 0);
}

#[test]
fn gestalt_reference_rows_by_brute_force() {
    // frozen from the brute-force decomposition
    for (a, b, matched) in [
        ("gelirm", "geldim", 5),
        ("gelirm", "gelirim", 6),
        ("gelirm", "geliyorum", 6),
        ("gelirm", "germ", 4),
        ("biliyrm", "bildirim", 6),
        ("biliyrm", "bilim", 5),
        ("biliyrm", "biliyorum", 7),
        ("sonuşlar", "sonuçlar", 7),
    ] {
        let ac: Vec<char> = a.chars().collect();
        let bc: Vec<char> = b.chars().collect();
        assert_eq!(brute_gestalt_matches(&ac, &bc), matched, "{a}/{b}");
        assert_eq!(gestalt_matches(&ac, &bc), matched, "{a}/{b}");
    }
}

#[test]
fn candidate_sets_match_subset_enumeration() {
    let map = AmbiguityMap::turkish();
    for w in all_strings(&['c', 'ç', 'o', 'k'], 5) {
        let chars: Vec<char> = w.chars().collect();
        let got = generate_candidates(&w, &map, 16).unwrap();
        let n = count_ambiguous(&w, &map);
        assert_eq!(got.len(), 1 << n, "{w}");
        assert_eq!(candidate_count(&w, &map), Some(1 << n));
        assert_eq!(got, brute_subsets(&chars, &map), "{w}");
        assert!(got.contains(&w));
    }
}

#[test]
fn pruned_search_equals_naive_on_random_words() {
    let report = pruned_vs_naive(0x5eed, 2000);
    assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
    assert!(report.multi_hit > 20, "only {} words exercised tie-breaking", report.multi_hit);
}
