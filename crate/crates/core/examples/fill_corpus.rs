//! Expand the printed formulas of a corpus file into coefficients, in place.
//!
//! cargo run -p sextics-core --example fill_corpus -- corpus/sextics.json

use sextics::database::{fill_coefficients, parse_corpus_file};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "corpus/sextics.json".into());
    let text = std::fs::read_to_string(&path).expect("readable corpus");
    let mut file = parse_corpus_file(&text).expect("well-formed corpus");
    for r in &mut file.records {
        if let Err(e) = fill_coefficients(r) {
            eprintln!("record {}: {e}", r.id);
            std::process::exit(1);
        }
    }
    let mut out = serde_json::to_string_pretty(&file).expect("serializable");
    out.push('\n');
    std::fs::write(&path, out).expect("writable corpus");
}
