#![no_main]

use libfuzzer_sys::fuzz_target;
use trlex::lexicon::AbbreviationTable;

fuzz_target!(|data: &[u8]| {
    let _ = AbbreviationTable::parse(data);
});
