//! Eigenbasis+MUB ("Christandl–Winter" style) ensembles: for these sources
//! the entropy-defect loss sandwiches the quantum disturbance,
//! Δχ ≤ δ ≤ 2Δχ — much tighter than the general fidelity-based chain.

use tradeoff_lab::disturbance::{cw_sandwich_check, entropy_defect_loss, quantum_disturbance};
use tradeoff_lab::ensemble::christandl_winter_ensemble;
use tradeoff_lab::instrument::{random_instrument, QuantumInstrument};
use tradeoff_lab::qmat::DensityOperator;
use tradeoff_lab::random;

fn main() {
    let rho = DensityOperator::maximally_mixed(2);
    let s = christandl_winter_ensemble(&rho).unwrap();
    println!("CW ensemble of I/2: {} pure entries", s.len());
    for e in s.entries() {
        println!("  p = {:.4}  label {}", e.p, e.label);
    }

    let vn = QuantumInstrument::von_neumann(2);
    let delta = quantum_disturbance(&rho, &vn).unwrap();
    let (delta_chi, _) = entropy_defect_loss(&s, &vn).unwrap();
    println!("\nvon Neumann instrument: Δχ = {delta_chi:.6}, δ = {delta:.6}");
    println!("sandwich: {delta_chi:.4} ≤ {delta:.4} ≤ {:.4} (upper side tight here)", 2.0 * delta_chi);

    println!("\nsandwich margins over random instruments and full-rank states:");
    let mut rng = random::rng_from_seed(99);
    for d in [2usize, 3] {
        let mut worst = f64::INFINITY;
        for seed in 0..20u64 {
            let rho = random::density_full_rank(&mut rng, d, 0.05);
            let instr = random_instrument(1000 * d as u64 + seed, d, 2, 2).unwrap();
            let (lo, hi) = cw_sandwich_check(&rho, &instr).unwrap();
            worst = worst.min(lo).min(hi);
        }
        println!("  d = {d}: worst margin over 20 instances = {worst:+.3e}");
        assert!(worst >= -1e-7);
    }
}
