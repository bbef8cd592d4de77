//! Rank a small in-memory corpus with VSM, rVSM and BugLocator, then write
//! a TREC run.
//!
//! ```bash
//! cargo run -p croloc --example rank_buglocator
//! ```

use chrono::{TimeZone, Utc};
use croloc::corpus::{BugReport, Corpus, Language};
use croloc::index::{Index, TokenizerOptions};
use croloc::rank::{write_run, Alpha, Locator, Technique};

fn report(id: &str, text: &str, day: u32, fixed: Option<&[&str]>) -> BugReport {
    let at = Utc.with_ymd_and_hms(2023, 5, day, 9, 0, 0).unwrap();
    BugReport {
        id: id.into(),
        summary: text.into(),
        description: String::new(),
        reported_at: at,
        resolved_at: fixed.map(|_| at + chrono::Duration::days(1)),
        fixed_files: fixed.map(|f| f.iter().map(|s| s.to_string()).collect()),
        functional: true,
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = Corpus::from_sources(
        ".",
        [
            ("stock/Allocate.java", Language::Java, "// allocate stock for an order\nclass Allocate { int stock; int quantity; }"),
            ("stock/Receive.java", Language::Java, "// receive stock from a supplier\nclass Receive { int stock; }"),
            (
                "order/Cancel.java",
                Language::Java,
                "// cancel an order and return the allocated stock to the shelf, then notify the customer\nclass Cancel { void cancel(Order order) { refund(order); restock(order); notifyCustomer(order); } }",
            ),
            ("tax/Tax.java", Language::Java, "// consumption tax rounding\nclass Tax { long round(long yen) { return yen; } }"),
        ],
    )?;
    let index = Index::from_corpus(&corpus, TokenizerOptions::default())?;

    let history = [
        report("B-1", "stock quantity negative after allocate", 1, Some(&["stock/Allocate.java"])),
        report("B-2", "cancelled order stock not returned", 3, Some(&["order/Cancel.java", "stock/Allocate.java"])),
    ];
    let query = report("B-3", "stock goes wrong when an order is cancelled", 10, None);

    let mut rankings = Vec::new();
    for technique in Technique::ALL {
        let locator = Locator::new(&index, technique)
            .with_history(&history)
            .alpha(Alpha::new(0.3)?);
        let ranking = locator.locate(&query)?;
        println!("{technique}:");
        for e in &ranking.entries {
            println!("  {} {:<20} {:.4}", e.rank, e.path, e.score);
        }
        if technique == Technique::BugLocator {
            rankings.push(ranking);
        }
    }
    write_run(std::io::stdout().lock(), &rankings, "example", 3)?;
    Ok(())
}
