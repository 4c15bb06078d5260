#![no_main]

use libfuzzer_sys::fuzz_target;
use trlex::bench::{bench_compare, parse_pairs, render, BenchThresholds};
use trlex::CorrectorConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = parse_pairs(data) {
        let rows: Vec<_> = rows.into_iter().take(4).collect();
        let blocks = bench_compare(&rows, BenchThresholds::default(), &CorrectorConfig::default());
        let _ = render(&blocks, BenchThresholds::default());
    }
});
