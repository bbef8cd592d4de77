//! Run the whole pipeline on the fixture project twice, with and without
//! translating the sources, and compare the scores.
//!
//! ```bash
//! cargo run -p croloc --example cross_lingual_pipeline
//! ```

use std::path::Path;

use croloc::pipeline::{
    cmd_eval, cmd_extract, cmd_index, cmd_locate, cmd_translate, LocateOptions, ProjectConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = tempfile::tempdir()?;
    let mut config = ProjectConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/project/croloc.json"))?;
    config.output_dir = out.path().to_path_buf();
    config.cache = Some(out.path().join("translation-cache.jsonl"));

    let extracted = cmd_extract(&config)?;
    println!("extract: {} files, {} spans, {} Japanese", extracted.files, extracted.spans, extracted.japanese_spans);
    let translated = cmd_translate(&config)?;
    println!("translate: {} texts via {}", translated.stats.texts, translated.backend);

    for translated_sources in [false, true] {
        cmd_index(&config, translated_sources)?;
        let options = LocateOptions {
            translated_sources,
            ..Default::default()
        };
        let located = cmd_locate(&config, &options)?;
        let report = cmd_eval(&config, &located.output, config.mode)?;
        let label = if translated_sources { "translated sources" } else { "original sources" };
        println!("\n{label}:\n{report}");
    }
    Ok(())
}
