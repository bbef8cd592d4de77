//! Build qrels by linking commit messages to bug ids.
//!
//! ```bash
//! cargo run -p croloc --example link_oracles
//! ```

use std::path::Path;

use croloc::corpus::extension_set;
use croloc::eval::{link_oracles_file, referenced_ids};
use regex::Regex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pattern = Regex::new(r"\b([A-Z][A-Z0-9]*-\d+)\b")?;
    println!("{:?}", referenced_ids("Fix B-101 and B-115: 在庫引当", std::slice::from_ref(&pattern)));

    let commits = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/project/commits.jsonl");
    let qrels = link_oracles_file(&commits, &[pattern], &extension_set(["java", "cs"]))?;
    println!("{} bug ids linked", qrels.len());
    print!("{qrels}");
    Ok(())
}
