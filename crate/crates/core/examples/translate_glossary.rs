//! Translate the Japanese comments and strings of one source file with the
//! glossary backend, leaving every other byte alone.
//!
//! ```bash
//! cargo run -p croloc --example translate_glossary
//! ```

use std::path::Path;

use croloc::corpus::{load_source_tree, LoadOptions};
use croloc::translate::{Glossary, GlossaryBackend, TranslationCache, Translator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let project = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/project");
    let glossary = Glossary::load(&project.join("glossary.tsv"))?;
    println!("glossary: {} entries", glossary.len());

    let tree = load_source_tree(&project.join("repo"), &LoadOptions::default())?;
    let doc = tree
        .corpus
        .get("src/main/java/jp/example/shop/zaiko/ZaikoHikiate.java")
        .ok_or("fixture file missing")?;

    let backend = GlossaryBackend::new(glossary);
    let cache = TranslationCache::in_memory();
    let translator = Translator::new(&backend).with_cache(&cache);
    let out = translator.translate_document(doc)?;

    for (before, after) in doc.raw_text.lines().zip(out.value.raw_text.lines()) {
        if before != after {
            println!("- {before}\n+ {after}");
        }
    }
    println!("{:?}", out.stats);

    // The second pass is served from the cache.
    let again = translator.translate_document(doc)?;
    assert_eq!(again.value, out.value);
    println!("{:?}", again.stats);
    Ok(())
}
