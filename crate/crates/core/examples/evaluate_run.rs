//! Score a TREC run against graded qrels in both oracle modes.
//!
//! ```bash
//! cargo run -p croloc --example evaluate_run
//! ```

use croloc::eval::{average_precision, evaluate, Mode, Qrels, Run};

const RUN: &str = "\
B-1 Q0 src/Allocate.java 1 0.91 demo
B-1 Q0 src/Receive.java 2 0.40 demo
B-1 Q0 src/Cancel.java 3 0.35 demo
B-2 Q0 src/Tax.java 1 0.77 demo
B-2 Q0 src/Cancel.java 2 0.52 demo
B-2 Q0 src/Allocate.java 3 0.10 demo
";

// Grade 2: file changed by the fix. Grade 1: indirectly related.
const QRELS: &str = "\
B-1 0 src/Allocate.java 2
B-1 0 src/Cancel.java 2
B-2 0 src/Cancel.java 1
B-2 0 src/Allocate.java 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let run = Run::parse(RUN.as_bytes())?;
    let qrels = Qrels::parse(QRELS.as_bytes())?;

    // Relevant files at ranks 1 and 3 of two: (1/1 + 2/3) / 2.
    let oracle = qrels.oracle("B-1", Mode::DirectOnly);
    println!("AP(B-1) = {:.4}\n", average_precision(&run.ranked("B-1"), &oracle).unwrap_or(0.0));

    for mode in [Mode::DirectOnly, Mode::DirectPlusIndirect] {
        let report = evaluate(&run, &qrels, mode)?;
        println!("{report}");
    }
    println!("{}", evaluate(&run, &qrels, Mode::DirectOnly)?.to_json());
    Ok(())
}
