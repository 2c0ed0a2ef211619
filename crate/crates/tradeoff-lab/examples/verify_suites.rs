//! Run the randomized verification suites programmatically (small budget);
//! the `tradeoff-lab verify` subcommand exposes the same machinery.

use tradeoff_lab::harness::suites::{run_suite, SuiteConfig, SuiteKind};

fn main() {
    let cfg = SuiteConfig {
        trials: 10,
        seed: 1,
        dims: vec![2],
    };
    for kind in [
        SuiteKind::Lemma1,
        SuiteKind::Eq18,
        SuiteKind::Eq22,
        SuiteKind::Cw,
        SuiteKind::EtaOracle,
        SuiteKind::Pinsker,
    ] {
        let result = run_suite(kind, &cfg).unwrap();
        print!("{}", result.render_table());
        println!();
        assert!(result.passed(), "suite {} failed", result.suite);
    }
}
