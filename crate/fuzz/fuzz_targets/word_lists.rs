#![no_main]

use libfuzzer_sys::fuzz_target;
use trlex::corrector::AmbiguityMap;
use trlex::lexicon::StopwordList;
use trlex::{Stemmer, SuffixStemmer};

// stopword, suffix and toggle-pair files share one input
fuzz_target!(|data: &[u8]| {
    let _ = StopwordList::parse(data);
    if let Ok(stemmer) = SuffixStemmer::parse(data) {
        for word in ["sinemada", "kesinlikle", "a", ""] {
            let once = stemmer.stem(word);
            assert_eq!(stemmer.stem(&once), once);
        }
    }
    if let Ok(map) = AmbiguityMap::parse(data) {
        for &(a, b) in map.pairs() {
            assert_eq!(map.partner(a), Some(b));
            assert_eq!(map.partner(b), Some(a));
        }
    }
});
