//! Noisy Turkish social-media text normalization and rating-partitioned
//! n-gram lexicons.
//!
//! The crate is organized the way a review flows through it:
//!
//! - [`tokenizer`]: Turkish lowercasing, noise stripping, stopword removal
//!   and repeat collapse.
//! - [`similarity`]: Levenshtein and gestalt (Ratcliff/Obershelp) metrics.
//! - [`corrector`]: the correction cascade, including the `2^n` diacritic
//!   toggle search.
//! - [`lexicon`]: dictionary, stopword, abbreviation and stemmer resources.
//! - [`ngram`]: per-class n-gram tables with exclusive and shared lists.
//! - [`pipeline`]: JSONL ingestion and the shard-parallel build.
//! - [`bench`]: metric comparison tables.

pub mod bench;
pub mod corrector;
pub mod error;
pub mod lexicon;
pub mod ngram;
pub mod pipeline;
pub mod similarity;
pub mod tokenizer;

pub use corrector::{correct_word, CorrectionResult, CorrectorConfig, Method};
pub use error::{Error, Result};
pub use lexicon::{Dictionary, LexiconResources, Stemmer, SuffixStemmer};
pub use ngram::{NgramKey, NgramTable};
pub use pipeline::{run_pipeline, JobConfig, PipelineReport};
pub use tokenizer::{RawReview, Rating, Token};
