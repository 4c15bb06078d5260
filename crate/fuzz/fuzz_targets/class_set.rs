#![no_main]

use libfuzzer_sys::fuzz_target;
use trlex::tokenizer::parse_class_set;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(set) = parse_class_set(s) {
            assert!(!set.is_empty());
        }
    }
});
