use std::io::{self, Write};

use super::Ranking;

pub const DEFAULT_TOP_K: usize = 100;

/// Write rankings as a TREC run: `qid Q0 path rank score tag`, keeping the
/// first `top_k` entries per query (`0` keeps all).
pub fn write_run<W: Write>(mut out: W, rankings: &[Ranking], tag: &str, top_k: usize) -> io::Result<()> {
    let limit = if top_k == 0 { usize::MAX } else { top_k };
    for ranking in rankings {
        for e in ranking.entries.iter().take(limit) {
            writeln!(out, "{} Q0 {} {} {} {}", ranking.query_id, e.path, e.rank, e.score, tag)?;
        }
    }
    out.flush()
}
