#![no_main]

use libfuzzer_sys::fuzz_target;
use trlex::Dictionary;

fuzz_target!(|data: &[u8]| {
    if let Ok(dict) = Dictionary::parse(data) {
        // serializing and reparsing must be a fixed point
        let text = dict.to_tsv();
        let back = Dictionary::parse(text.as_bytes()).expect("own output parses");
        assert_eq!(back, dict);
    }
});
