//! Tokenize and index the fixture project's sources, save the index and
//! load it back.
//!
//! ```bash
//! cargo run -p croloc --example build_index
//! ```

use std::path::Path;

use croloc::corpus::{load_source_tree, LoadOptions};
use croloc::index::{read_index, tokenize, write_index, Index, TokenizerOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let options = TokenizerOptions::default();
    println!("{:?}", tokenize("ZaikoHikiate.hikiate(orderId, MAX_RETRY_COUNT) // the stock", &options));

    let repo = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/project/repo");
    let corpus = load_source_tree(&repo, &LoadOptions::default())?.corpus;
    let index = Index::from_corpus(&corpus, options)?;
    println!(
        "{} documents, {} terms, lengths {}..={}",
        index.len(),
        index.stats.len(),
        index.c_min,
        index.c_max
    );

    let mut rare: Vec<(&str, f64)> = (0..index.stats.len() as u32)
        .map(|id| (index.stats.term(id), index.stats.idf(id)))
        .collect();
    rare.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(b.0)));
    println!("most common terms: {:?}", &rare[..5]);

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("index.json");
    write_index(&index, &path)?;
    let loaded = read_index(&path)?;
    assert_eq!(loaded, index);
    println!("round-tripped through {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());
    Ok(())
}
