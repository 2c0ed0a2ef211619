//! The continuous transition from quantum to classical: sweep the angle of
//! the uniform two-state source {|0>, cos θ|0> + sin θ|1>} under a fixed
//! von Neumann instrument. At θ = π/2 (orthogonal) the source is reducible
//! and average fidelity decouples from quantum disturbance; as θ shrinks
//! the source becomes irreducible and every disturbance notion ties
//! together. Same output as `tradeoff-lab scan --family two-state-angle`.

use tradeoff_lab::harness::scan::run_scan;

fn main() {
    let (rows, csv) = run_scan("two-state-angle", 10).unwrap();
    print!("{csv}");
    let first = &rows[0];
    let last = &rows[rows.len() - 1];
    eprintln!(
        "\northogonal endpoint: zeta = {}, f_av = {:.6}, delta = {:.6}",
        first.zeta, first.f_av, first.delta
    );
    eprintln!(
        "small-angle end:     zeta = {:.6}, f_av = {:.6}, delta = {:.6}",
        last.zeta, last.f_av, last.delta
    );
}
