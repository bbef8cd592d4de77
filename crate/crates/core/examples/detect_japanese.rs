//! Classify strings as Japanese and split out the Japanese runs.
//!
//! ```bash
//! cargo run -p croloc --example detect_japanese
//! ```

use croloc::extract::{detect_japanese, japanese_segments, JapaneseDetector};

fn main() {
    for text in [
        "在庫引当",
        "ひらがな",
        "ﾊﾝｶｸ",
        "plain ASCII",
        "café naïve",
        "fix 注文 total when カート is empty",
        "",
    ] {
        let runs: Vec<String> = japanese_segments(text).into_iter().map(|s| s.text).collect();
        println!("{:<40} {:<5} {runs:?}", format!("{text:?}"), detect_japanese(text));
    }

    // Kana only: ideographs no longer count.
    let kana = JapaneseDetector::with_ranges(vec![0x3040..=0x309F, 0x30A0..=0x30FF]);
    println!("kana-only detector on 在庫: {}", kana.detect("在庫"));
    println!("kana-only detector on カート: {}", kana.detect("カート"));
}
