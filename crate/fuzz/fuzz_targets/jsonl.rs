#![no_main]

use libfuzzer_sys::fuzz_target;
use trlex::pipeline::{ingest_jsonl, BadLinePolicy};

fuzz_target!(|data: &[u8]| {
    let strict = ingest_jsonl(data, None, BadLinePolicy::Abort);
    if let Ok(lenient) = ingest_jsonl(data, None, BadLinePolicy::Skip) {
        if let Ok(strict) = strict {
            assert!(lenient.skipped.is_empty());
            assert_eq!(strict.reviews, lenient.reviews);
        }
        for r in &lenient.reviews {
            assert!(r.rating.value() <= 5);
        }
    }
});
