//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible under `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use tradeoff_lab::disturbance::{
    cw_sandwich_check, optimize_recovery_average, optimize_recovery_entanglement,
    quantum_disturbance, OptimizerConfig,
};
use tradeoff_lab::ensemble::{eta, eta_exhaustive, exhaustive_cap, Ensemble};
use tradeoff_lab::harness::suites::{run_suite, SuiteConfig, SuiteKind};
use tradeoff_lab::info_gain::{
    build_dual_frame, frame_for_dim, frame_norm_bound, mub_povm, mutual_information,
    quantum_info_gain, sic_povm_qubit,
};
use tradeoff_lab::instrument::{
    random_instrument_with, Channel, OutcomeBranch, QuantumInstrument,
};
use tradeoff_lab::qmat::{
    cr, hermitian_part, purify, relative_entropy, trace_norm, CMat, DensityOperator, PureState,
};
use tradeoff_lab::random;

fn conclude(name: &str, pass: bool, detail: String) {
    println!(
        "[acceptance] {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{name}: {detail}");
}

#[test]
fn criterion_01_lemma1_exact_identity() {
    let started = Instant::now();
    let cfg = SuiteConfig {
        trials: 100,
        seed: 11,
        dims: vec![2, 3],
    };
    let result = run_suite(SuiteKind::Lemma1, &cfg).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let worst = result.checks[0].worst_slack;
    conclude(
        "criterion 1: Lemma-1 identity |δ-Δχ-χ(Ẽ(s))| ≤ 1e-8 on 200 instances",
        result.passed() && elapsed <= 60.0,
        format!("worst margin {worst:+.3e}, elapsed {elapsed:.1}s"),
    );
}

#[test]
fn criterion_02_inequivalence_example() {
    let s = Ensemble::uniform_qubit_pair_orthogonal();
    let instr = QuantumInstrument::von_neumann(2);
    let rho = s.average_state();
    let cfg = OptimizerConfig::default();

    let fav = optimize_recovery_average(&s, &instr, &cfg, &[]).unwrap().fidelity;
    let (_, mi) = mutual_information(&s, &instr).unwrap();
    let delta = quantum_disturbance(&rho, &instr).unwrap();
    let iota = quantum_info_gain(&rho, &instr).unwrap();
    let irr = eta(&s, None).unwrap();

    let pass = (fav - 1.0).abs() <= 1e-6
        && (mi - 1.0).abs() <= 1e-9
        && (delta - 1.0).abs() <= 1e-9
        && (iota - 1.0).abs() <= 1e-9
        && (delta - iota).abs() <= 1e-8
        && irr.zeta == 0.0;
    conclude(
        "criterion 2: orthogonal ensemble + von Neumann inequivalence example",
        pass,
        format!(
            "f_av={fav:.9} I={mi:.9} δ={delta:.9} ι={iota:.9} ζ={}",
            irr.zeta
        ),
    );
}

#[test]
fn criterion_03_theorem_one_chain() {
    let irr = eta(&Ensemble::zero_plus_uniform(), None).unwrap();
    let zeta_ok = (irr.zeta - 2f64.sqrt() / 8.0).abs() < 1e-12;
    let cfg = SuiteConfig {
        trials: 100,
        seed: 13,
        dims: vec![2],
    };
    let result = run_suite(SuiteKind::Theorem1, &cfg).unwrap();
    let worst = result
        .checks
        .iter()
        .map(|c| c.worst_slack)
        .fold(f64::INFINITY, f64::min);
    conclude(
        "criterion 3: Theorem-1 chain on 100 single- + 100 multi-Kraus instruments",
        zeta_ok && result.passed(),
        format!("ζ={:.9}, worst chain margin {worst:+.3e}", irr.zeta),
    );
}

#[test]
fn criterion_04_eq18_with_equality_class() {
    let cfg = SuiteConfig {
        trials: 100,
        seed: 17,
        dims: vec![2, 3],
    };
    let result = run_suite(SuiteKind::Eq18, &cfg).unwrap();
    conclude(
        "criterion 4: δ ≥ ι with single-Kraus equality (200 trials, d=2,3)",
        result.passed(),
        format!(
            "worst margins {:?}",
            result
                .checks
                .iter()
                .map(|c| format!("{}: {:+.3e}", c.name, c.worst_slack))
                .collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_05_eq22_decomposition() {
    let cfg = SuiteConfig {
        trials: 100,
        seed: 19,
        dims: vec![2, 3],
    };
    let result = run_suite(SuiteKind::Eq22, &cfg).unwrap();
    conclude(
        "criterion 5: χ(M(s)) = I + Σ p(m)χ(s̄_m) within 1e-9 (200 instances)",
        result.passed(),
        format!("worst residual margin {:+.3e}", result.checks[0].worst_slack),
    );
}

#[test]
fn criterion_06_cw_sandwich() {
    let mut states: Vec<DensityOperator> = vec![DensityOperator::maximally_mixed(2)];
    let mut rng = random::rng_from_seed(23);
    for _ in 0..10 {
        states.push(random::density_full_rank(&mut rng, 2, 0.05));
    }
    for _ in 0..10 {
        states.push(random::density_full_rank(&mut rng, 3, 0.05));
    }
    let mut worst = f64::INFINITY;
    let mut checked = 0usize;
    for (si, rho) in states.iter().enumerate() {
        let d = rho.d();
        for trial in 0..50u64 {
            let mut irng = random::rng_from_seed(29 ^ (si as u64) << 8 ^ trial);
            let n_out = 2 + (trial % 2) as usize;
            let kraus = 1 + (trial % 2) as usize;
            let instr = random_instrument_with(&mut irng, d, n_out, kraus).unwrap();
            let (lo, hi) = cw_sandwich_check(rho, &instr).unwrap();
            worst = worst.min(lo).min(hi);
            checked += 1;
        }
    }
    conclude(
        "criterion 6: Δχ ≤ δ ≤ 2Δχ for eigenbasis+MUB ensembles",
        worst >= -1e-7,
        format!("{checked} instances, worst margin {worst:+.3e}"),
    );
}

#[test]
fn criterion_07_frame_machinery_and_pinsker() {
    // dual-frame reconstruction for 3-MUB and SIC POVMs
    let mut recon_worst = 0.0f64;
    for povm in [mub_povm(2).unwrap(), sic_povm_qubit()] {
        let frame = build_dual_frame(&povm).unwrap();
        let mut rng = random::rng_from_seed(31);
        for _ in 0..20 {
            let h = hermitian_part(&random::ginibre(&mut rng, 2, 2));
            let err = trace_norm(&(frame.reconstruct(&h) - &h)).unwrap();
            recon_worst = recon_worst.max(err);
        }
    }
    // Pinsker on 200 random pairs
    let mut rng = random::rng_from_seed(37);
    let mut pinsker_worst = f64::INFINITY;
    for trial in 0..200 {
        let d = 2 + trial % 3;
        let a = random::density(&mut rng, d);
        let b = random::density(&mut rng, d);
        let dkl = relative_entropy(&a, &b).unwrap();
        if dkl.is_finite() {
            let tn = trace_norm(&(a.matrix() - b.matrix())).unwrap();
            pinsker_worst = pinsker_worst.min(2.0 * dkl - tn * tn);
        }
    }
    // computed-constant norm bound on 100 random qubit ensembles
    let frame = frame_for_dim(2).unwrap();
    let mut norm_worst = f64::INFINITY;
    for trial in 0..100u64 {
        let mut erng = random::rng_from_seed(41 ^ trial);
        let k = 2 + (trial % 3) as usize;
        let probs = random::simplex_point(&mut erng, k);
        let entries: Vec<tradeoff_lab::ensemble::EnsembleEntry> = probs
            .iter()
            .enumerate()
            .map(|(i, &p)| tradeoff_lab::ensemble::EnsembleEntry {
                label: i.to_string(),
                p,
                state: random::density(&mut erng, 2),
            })
            .collect();
        let s = Ensemble::new(entries).unwrap();
        let (lhs, rhs, _) = frame_norm_bound(&s, &frame).unwrap();
        norm_worst = norm_worst.min(rhs - lhs);
    }
    let pass = recon_worst <= 1e-8 && pinsker_worst >= -1e-9 && norm_worst >= -1e-7;
    conclude(
        "criterion 7: frame reconstruction, Pinsker, computed-constant norm bound",
        pass,
        format!(
            "recon {recon_worst:.3e}, pinsker margin {pinsker_worst:+.3e}, norm margin {norm_worst:+.3e}"
        ),
    );
}

#[test]
fn criterion_08_eta_oracle_equivalence() {
    // hand cases with frozen derived values
    let zp = eta(&Ensemble::zero_plus_uniform(), None).unwrap().eta;
    let hand1 = (zp - 0.35355339059327373).abs() < 1e-12;
    let tri = Ensemble::uniform_pure(vec![
        PureState::basis(0, 2),
        PureState::basis(1, 2),
        PureState::qubit_angle(std::f64::consts::FRAC_PI_4),
    ])
    .unwrap();
    let tri_eta = eta(&tri, None).unwrap().eta;
    let hand2 = (tri_eta - 0.23570226039551584).abs() < 1e-12;
    let orth = eta(&Ensemble::uniform_qubit_pair_orthogonal(), None)
        .unwrap()
        .eta;
    let hand3 = orth == 0.0;

    let mut rng = random::rng_from_seed(43);
    let mut mismatches = 0usize;
    for trial in 0..50 {
        let k = 2 + trial % 4;
        let states: Vec<PureState> = (0..k).map(|_| random::pure_state(&mut rng, 2)).collect();
        let s = Ensemble::uniform_pure(states).unwrap();
        let cap = exhaustive_cap(k);
        let dp = eta(&s, Some(cap)).unwrap().eta;
        let brute = eta_exhaustive(&s, cap).unwrap();
        if dp != brute {
            mismatches += 1;
        }
    }
    conclude(
        "criterion 8: DP η equals exhaustive enumeration (50 random + hand cases)",
        hand1 && hand2 && hand3 && mismatches == 0,
        format!(
            "η(0,+)={zp:.12}, η(0,1,+)={tri_eta:.12}, η(orth)={orth}, mismatches={mismatches}"
        ),
    );
}

#[test]
fn criterion_09_recovery_optimizer_calibration() {
    let cfg = OptimizerConfig::default();
    let mm = DensityOperator::maximally_mixed(2);

    // identity instrument
    let id = QuantumInstrument::identity_instrument(2);
    let f_id = optimize_recovery_entanglement(&mm, &id, &cfg).unwrap().fidelity;

    // brute-force oracle for the von Neumann instrument, computed before
    // consulting the optimizer: per-branch maximum over a large pool of
    // explicit recovery channels (random CPTP draws, random unitaries,
    // identity), each evaluated exactly
    let vn = QuantumInstrument::von_neumann(2);
    let mut candidates: Vec<Channel> = vec![Channel::identity(2)];
    let mut rng = random::rng_from_seed(47);
    for seed in 0..400u64 {
        let k = 1 + (seed % 4) as usize;
        let ch_instr = random_instrument_with(&mut rng, 2, 1, k).unwrap();
        candidates.push(Channel::new(ch_instr.branch(0).kraus().to_vec()).unwrap());
        candidates.push(Channel::new(vec![random::haar_unitary(&mut rng, 2)]).unwrap());
    }
    let mut oracle = 0.0;
    for m in 0..vn.n_outcomes() {
        let best_branch = candidates
            .iter()
            .map(|cand| branch_fidelity_value(&mm, &vn, m, cand))
            .fold(0.0f64, f64::max);
        oracle += best_branch;
    }
    let f_vn = optimize_recovery_entanglement(&mm, &vn, &cfg).unwrap().fidelity;

    // unitary-branch instrument
    let mut urng = random::rng_from_seed(53);
    let u0 = random::haar_unitary(&mut urng, 2) * cr(0.5f64.sqrt());
    let u1 = random::haar_unitary(&mut urng, 2) * cr(0.5f64.sqrt());
    let uinstr = QuantumInstrument::new(vec![
        OutcomeBranch::new("u0", vec![u0]).unwrap(),
        OutcomeBranch::new("u1", vec![u1]).unwrap(),
    ])
    .unwrap();
    let f_u = optimize_recovery_entanglement(&mm, &uinstr, &cfg).unwrap().fidelity;

    let pass = (f_id - 1.0).abs() <= 1e-6
        && (f_vn - 0.5).abs() <= 1e-3
        && (f_vn - oracle).abs() <= 1e-3
        && f_u >= 1.0 - 1e-5;
    conclude(
        "criterion 9: recovery-optimizer calibration (identity, von Neumann, unitary)",
        pass,
        format!("f_id={f_id:.9} f_vn={f_vn:.9} oracle={oracle:.9} f_unitary={f_u:.9}"),
    );
}

// entanglement-fidelity contribution of branch m under a given recovery:
// ⟨Ψ|(I ⊗ R∘E_m)(Ψ)|Ψ⟩  (independent oracle path, no Choi machinery)
fn branch_fidelity_value(
    rho: &DensityOperator,
    instr: &QuantumInstrument,
    m: usize,
    recovery: &Channel,
) -> f64 {
    let d = rho.d();
    let psi = purify(rho).unwrap();
    let proj = psi.projector();
    let id_r = CMat::identity(d, d);
    let branch = instr.branch(m);
    let mut omega = CMat::zeros(d * branch.out_dim(), d * branch.out_dim());
    for k in branch.kraus() {
        let ext = id_r.kronecker(k);
        omega += &ext * &proj * ext.adjoint();
    }
    let recovered = recovery.apply_to_right_factor(&omega, d).unwrap();
    (psi.amplitudes().adjoint() * &recovered * psi.amplitudes())[(0, 0)].re
}

#[test]
fn criterion_10_end_to_end_cli() {
    let bin = env!("CARGO_BIN_EXE_tradeoff-lab");
    let started = Instant::now();
    let verify = std::process::Command::new(bin)
        .args([
            "verify", "--suite", "all", "--trials", "50", "--seed", "1", "--dims", "2,3",
        ])
        .output()
        .expect("verify runs");
    let elapsed = started.elapsed().as_secs_f64();
    let verify_ok = verify.status.success() && elapsed <= 300.0;

    let scan = std::process::Command::new(bin)
        .args(["scan", "--family", "two-state-angle", "--steps", "20"])
        .output()
        .expect("scan runs");
    let stdout = String::from_utf8_lossy(&scan.stdout);
    let rows: Vec<&str> = stdout.lines().skip(1).filter(|l| !l.is_empty()).collect();
    let mut scan_ok = scan.status.success() && rows.len() == 20;
    if let Some(first) = rows.first() {
        let fields: Vec<&str> = first.split(',').collect();
        let get = |i: usize| fields[i].parse::<f64>().unwrap();
        // orthogonal endpoint must match criterion 2
        scan_ok &= (get(3) - 1.0).abs() <= 1e-6 // f_av
            && (get(5) - 1.0).abs() <= 1e-9 // delta
            && (get(6) - 1.0).abs() <= 1e-9 // iota
            && get(2) == 0.0; // zeta
    } else {
        scan_ok = false;
    }
    conclude(
        "criterion 10: end-to-end verify --suite all and scan endpoint",
        verify_ok && scan_ok,
        format!(
            "verify exit={:?} in {elapsed:.1}s, scan rows={}",
            verify.status.code(),
            rows.len()
        ),
    );
}
