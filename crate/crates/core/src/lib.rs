//! `croloc`: bug localization for code bases whose comments, strings and bug
//! reports mix Japanese and English.
//!
//! Japanese comment and string segments are translated in place, sources and
//! reports are indexed with tf-idf, and files are ranked with VSM, rVSM or
//! BugLocator. Runs are written in TREC format and scored against qrels.
//!
//! ## Examples
//!
//! ```text
//! examples/
//! ├── extract_spans.rs           # Lex Java/C# comments and string literals
//! ├── detect_japanese.rs         # Japanese detection and segment splitting
//! ├── translate_glossary.rs      # Byte-safe glossary translation of a source file
//! ├── service_translator.rs      # HTTP translation backend with retries
//! ├── build_index.rs             # Tokenize, index, save and reload
//! ├── rank_buglocator.rs         # VSM, rVSM and BugLocator on a small corpus
//! ├── evaluate_run.rs            # MAP, MRR and Success@N from a run and qrels
//! ├── link_oracles.rs            # Qrels from commit messages
//! └── cross_lingual_pipeline.rs  # The whole pipeline, with and without translation
//! ```
//!
//! ```bash
//! cargo run -p croloc --example extract_spans
//! cargo run -p croloc --example detect_japanese
//! cargo run -p croloc --example translate_glossary
//! cargo run -p croloc --example service_translator
//! cargo run -p croloc --example build_index
//! cargo run -p croloc --example rank_buglocator
//! cargo run -p croloc --example evaluate_run
//! cargo run -p croloc --example link_oracles
//! cargo run -p croloc --example cross_lingual_pipeline
//! ```
//!
//! ## Modules
//!
//! - [`corpus`]: source trees and bug reports
//! - [`extract`]: span lexing, Japanese detection, re-embedding
//! - [`translate`]: identity, glossary and HTTP backends with a cache
//! - [`index`]: tokenizer and tf-idf index
//! - [`rank`]: scoring, ranking and TREC runs
//! - [`eval`]: qrels, runs, metrics and commit linking
//! - [`pipeline`]: the stages behind the `croloc` binary

pub mod corpus;
pub mod diagnostic;
pub mod extract;
pub mod translate;
pub mod index;
pub mod rank;
pub mod eval;
pub mod pipeline;
