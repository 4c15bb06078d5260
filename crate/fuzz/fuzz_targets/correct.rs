#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use trlex::pipeline::correct_text;
use trlex::tokenizer::{is_noise, tokenize};
use trlex::{CorrectorConfig, LexiconResources};

fn resources() -> &'static LexiconResources {
    static RES: OnceLock<LexiconResources> = OnceLock::new();
    RES.get_or_init(LexiconResources::bundled)
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for t in tokenize(text) {
        assert!(!t.surface.chars().any(is_noise));
    }
    let (_, trace) = correct_text(text, resources(), &CorrectorConfig::default());
    for r in trace {
        assert!((0.0..=1.0).contains(&r.confidence));
    }
});
