//! Informationally complete POVMs and their dual frames: operator
//! reconstruction X = Σ_m Tr[X P_m] K_m, the computed frame constant
//! max‖K_m‖₁, and the norm bound Σ p(x)‖ϱ_x - ϱ_s‖₁ ≤ c·√(2I) that makes
//! accessible information and quantum information gain equivalent.

use tradeoff_lab::ensemble::Ensemble;
use tradeoff_lab::info_gain::{
    build_dual_frame, frame_for_dim, frame_norm_bound, info_equivalence_report, mub_povm,
    sic_povm_qubit, SearchBudget,
};
use tradeoff_lab::instrument::random_instrument;
use tradeoff_lab::qmat::{hermitian_part, trace_norm, DensityOperator};
use tradeoff_lab::random;

fn main() {
    for (name, povm) in [
        ("qubit 3-MUB (6 elements)", mub_povm(2).unwrap()),
        ("qubit SIC (4 elements)", sic_povm_qubit()),
        ("qutrit 4-MUB (12 elements)", mub_povm(3).unwrap()),
    ] {
        let frame = build_dual_frame(&povm).unwrap();
        let mut rng = random::rng_from_seed(7);
        let d = povm.d();
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let h = hermitian_part(&random::ginibre(&mut rng, d, d));
            worst = worst.max(trace_norm(&(frame.reconstruct(&h) - &h)).unwrap());
        }
        println!(
            "{name:<28} frame_const = {:>8.4}   worst reconstruction error = {worst:.2e}",
            frame.frame_const()
        );
    }

    // an incomplete frame is rejected: two MUBs span only 3 of 4 operator dims
    let two_mub = tradeoff_lab::ensemble::Povm::from_bases(
        &tradeoff_lab::info_gain::mub_bases(2).unwrap()[0..2],
    )
    .unwrap();
    println!("\ntwo-basis POVM: {:?}", build_dual_frame(&two_mub).err().unwrap());

    // the information chain I_acc ≤ ι ≤ t(c·√(2 I_frame)) on one instance
    let rho = DensityOperator::maximally_mixed(2);
    let instr = random_instrument(21, 2, 2, 1).unwrap();
    let frame = frame_for_dim(2).unwrap();
    let rep = info_equivalence_report(&rho, &instr, &frame, &SearchBudget::default()).unwrap();
    println!("\ninformation chain on a random single-Kraus instrument:");
    println!("  I_acc lower bound (POVM search) = {:.6}", rep.i_acc_lower);
    println!("  quantum information gain ι      = {:.6}", rep.iota);
    println!("  t(min(1, c·√(2·I_frame)))       = {:.6}{}", rep.t_bound,
        if rep.saturated { "  [argument clamped to 1]" } else { "" });
    println!("  norm bound: {:.6} ≤ {:.6}", rep.norm_bound_lhs, rep.norm_bound_rhs);

    // the norm bound on an arbitrary ensemble
    let s = Ensemble::zero_plus_uniform();
    let (lhs, rhs, i_frame) = frame_norm_bound(&s, &frame).unwrap();
    println!("\nnorm bound for uniform {{|0>, |+>}} measured by the 3-MUB frame:");
    println!("  Σ p(x)‖ϱ_x - ϱ_s‖₁ = {lhs:.6} ≤ c·√(2·{i_frame:.6}) = {rhs:.6}");
}
