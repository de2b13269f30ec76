//! Compiles every corpus system to the other side and checks that both sides
//! agree.
//!
//! ```bash
//! cargo run --release --example corpus_roundtrip -- crates/core/corpus
//! ```

use std::path::PathBuf;

use chevdioph::group::DEFAULT_ELEMENT_CAP;
use chevdioph::reduce::{load_corpus, run_roundtrip, DEFAULT_ASSIGNMENT_BUDGET};

fn main() -> chevdioph::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus"));
    let entries = load_corpus(&dir)?;
    let report = run_roundtrip(&entries, DEFAULT_ELEMENT_CAP, DEFAULT_ASSIGNMENT_BUDGET)?;
    for e in &report.entries {
        println!("{:<42} {:<6} -> {:<6} {}", e.name, e.pair.source.to_string(), e.pair.target.to_string(), if e.passed() { "ok" } else { "FAIL" });
    }
    println!("all agree: {}", report.all_passed());
    Ok(())
}
