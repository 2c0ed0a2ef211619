//! Parse a JSON instance (ensemble + instrument) and run the full analyze
//! pipeline — the same path as `tradeoff-lab analyze`.
//!
//! Usage: `cargo run --example analyze_instance [path/to/instance.json]`
//! (defaults to the bundled non-orthogonal von Neumann instance).

use tradeoff_lab::harness::schema::{parse_instance, write_instance};
use tradeoff_lab::harness::{analyze, AnalyzeConfig};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("instance file readable"),
        None => include_str!("../instances/vonneumann_nonorthogonal.json").to_string(),
    };
    let instance = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("invalid instance: {e}");
            std::process::exit(2);
        }
    };
    println!(
        "parsed ensemble with {} entries on d={}, instrument with {} outcomes\n",
        instance.ensemble.len(),
        instance.ensemble.d(),
        instance.instrument.n_outcomes()
    );
    let report = analyze(&instance, &AnalyzeConfig::default()).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    // instances round-trip: write(read(x)) re-parses to the same numbers
    let rewritten = write_instance(&instance);
    assert!(parse_instance(&rewritten).is_ok());
}
