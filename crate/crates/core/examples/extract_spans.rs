//! Lex Java and C# sources and list their comment and string spans, with the
//! Japanese segments inside each.
//!
//! ```bash
//! cargo run -p croloc --example extract_spans
//! ```

use croloc::corpus::Language;
use croloc::extract::{extract_spans, japanese_segments};

const JAVA: &str = r#"/** 在庫を引き当てる。 */
class ZaikoHikiate {
    // 数量が足りない場合は例外
    String msg = "在庫不足: \"" + code + "\"";
    char c = '"'; // not a string start
}
"#;

const CSHARP: &str = r#"var path = @"C:\注文\""data"".csv";
var text = $"合計 {total} 円"; /* 税込 */
var raw = """
    "引用" は そのまま
    """;
"#;

fn show(name: &str, text: &str, language: Language) {
    println!("== {name}");
    let extraction = extract_spans(text, language);
    for span in &extraction.spans {
        println!(
            "{:>4}..{:<4} {:<15} {:?}",
            span.byte_start,
            span.byte_end,
            format!("{:?}", span.kind),
            span.text
        );
        for seg in japanese_segments(&span.text) {
            println!("{:>12} japanese {:?}", "", seg.text);
        }
    }
    for d in &extraction.diagnostics {
        println!("warning: {d}");
    }
}

fn main() {
    show("ZaikoHikiate.java", JAVA, Language::Java);
    show("Report.cs", CSHARP, Language::CSharp);
    show("Unterminated.java", "/* 閉じられていない", Language::Java);
}
