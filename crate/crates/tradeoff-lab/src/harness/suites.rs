//! Randomized verification suites behind `tradeoff-lab verify`.
//!
//! Every suite draws per-trial RNGs as `seed ⊕ trial-index`, evaluates its
//! identity or inequality with explicit slack, and reports the worst margin
//! seen. Failures carry a standalone reproduction command. Trials run in
//! parallel (capped by `TRADEOFF_LAB_THREADS`) and are assembled in trial
//! order, so output is deterministic for a fixed command line.

use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::disturbance::{
    cw_sandwich_check, entropy_defect_loss, eq17_lower_check, eq18_check, lemma1_identity_check,
    theorem_one_report, OptimizerConfig,
};
use crate::ensemble::{eta, eta_exhaustive, exhaustive_cap, Ensemble, EnsembleEntry};
use crate::info_gain::{
    accessible_info_lower, build_dual_frame, frame_for_dim, frame_norm_bound, mub_povm,
    quantum_info_gain, sic_povm_qubit, t_bound, SearchBudget,
};
use crate::instrument::{random_instrument_with, QuantumInstrument};
use crate::qmat::{hermitian_part, relative_entropy, trace_norm, DensityOperator, PureState};
use crate::random;
use crate::{Error, Result};

/// The verification suites exposed on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Lemma1,
    Theorem1,
    Eq9,
    Eq17,
    Eq18,
    Eq22,
    Cw,
    EtaOracle,
    Frame,
    Pinsker,
    All,
}

impl SuiteKind {
    pub const ALL_NAMES: [&'static str; 11] = [
        "lemma1",
        "theorem1",
        "eq9",
        "eq17",
        "eq18",
        "eq22",
        "cw",
        "eta-oracle",
        "frame",
        "pinsker",
        "all",
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Lemma1 => "lemma1",
            SuiteKind::Theorem1 => "theorem1",
            SuiteKind::Eq9 => "eq9",
            SuiteKind::Eq17 => "eq17",
            SuiteKind::Eq18 => "eq18",
            SuiteKind::Eq22 => "eq22",
            SuiteKind::Cw => "cw",
            SuiteKind::EtaOracle => "eta-oracle",
            SuiteKind::Frame => "frame",
            SuiteKind::Pinsker => "pinsker",
            SuiteKind::All => "all",
        }
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lemma1" => SuiteKind::Lemma1,
            "theorem1" => SuiteKind::Theorem1,
            "eq9" => SuiteKind::Eq9,
            "eq17" => SuiteKind::Eq17,
            "eq18" => SuiteKind::Eq18,
            "eq22" => SuiteKind::Eq22,
            "cw" => SuiteKind::Cw,
            "eta-oracle" => SuiteKind::EtaOracle,
            "frame" => SuiteKind::Frame,
            "pinsker" => SuiteKind::Pinsker,
            "all" => SuiteKind::All,
            other => {
                return Err(Error::Unknown {
                    kind: "suite",
                    name: other.to_string(),
                })
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 50,
            seed: 1,
            dims: vec![2, 3],
        }
    }
}

/// One named check aggregated over its trials. `worst_slack` is the most
/// adverse margin observed (sign convention per check: violations are
/// values below `-tolerance`).
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub worst_slack: f64,
    pub tolerance: f64,
    pub failed_repros: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
    /// Wall-clock seconds; excluded from serialized output so identical
    /// command lines stay byte-identical.
    #[serde(skip)]
    pub runtime_seconds: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// Fixed-format summary table (deterministic for a fixed command line).
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (trials={} seed={} dims={:?}; per-trial rng = seed xor trial-index)\n",
            self.suite, self.trials, self.seed, self.dims
        ));
        out.push_str(&format!(
            "{:<44} {:>7} {:>9} {:>14} {:>10} {:>6}\n",
            "check", "trials", "failures", "worst_slack", "tolerance", "state"
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<44} {:>7} {:>9} {:>14} {:>10} {:>6}\n",
                c.name,
                c.trials,
                c.failures,
                format!("{:+.3e}", c.worst_slack),
                format!("{:.0e}", c.tolerance),
                if c.passed() { "PASS" } else { "FAIL" }
            ));
            for repro in &c.failed_repros {
                out.push_str(&format!("    repro: {repro}\n"));
            }
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var("TRADEOFF_LAB_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&n| n > 0);
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        builder.build().expect("thread pool")
    })
}

fn trial_seed(seed: u64, index: usize) -> u64 {
    seed ^ index as u64
}

fn repro(suite: &str, seed: u64, dim: usize) -> String {
    format!("tradeoff-lab verify --suite {suite} --trials 1 --seed {seed} --dims {dim}")
}

/// Slack samples aggregated into a [`CheckResult`]; a sample fails when its
/// slack drops below `-tolerance`.
struct SlackAgg {
    name: String,
    tolerance: f64,
    samples: Vec<(f64, String)>, // (slack, repro)
}

impl SlackAgg {
    fn new(name: impl Into<String>, tolerance: f64) -> Self {
        SlackAgg {
            name: name.into(),
            tolerance,
            samples: Vec::new(),
        }
    }

    fn add(&mut self, slack: f64, repro: String) {
        self.samples.push((slack, repro));
    }

    fn finish(self) -> CheckResult {
        let failures: Vec<&(f64, String)> = self
            .samples
            .iter()
            .filter(|(s, _)| *s < -self.tolerance || s.is_nan())
            .collect();
        CheckResult {
            name: self.name,
            trials: self.samples.len(),
            failures: failures.len(),
            worst_slack: self
                .samples
                .iter()
                .map(|(s, _)| *s)
                .fold(f64::INFINITY, f64::min),
            tolerance: self.tolerance,
            failed_repros: failures.iter().take(8).map(|(_, r)| r.clone()).collect(),
        }
    }
}

fn random_pure_ensemble(rng: &mut impl Rng, d: usize, k: usize) -> Ensemble {
    let probs = random::simplex_point(rng, k);
    let entries = probs
        .into_iter()
        .enumerate()
        .map(|(i, p)| EnsembleEntry {
            label: i.to_string(),
            p,
            state: DensityOperator::from_pure(&random::pure_state(rng, d)),
        })
        .collect();
    Ensemble::new(entries).expect("random ensemble is valid")
}

fn random_mixed_ensemble(rng: &mut impl Rng, d: usize, k: usize) -> Ensemble {
    let probs = random::simplex_point(rng, k);
    let entries = probs
        .into_iter()
        .enumerate()
        .map(|(i, p)| EnsembleEntry {
            label: i.to_string(),
            p,
            state: random::density(rng, d),
        })
        .collect();
    Ensemble::new(entries).expect("random ensemble is valid")
}

type TrialSlacks = Vec<(String, f64, String)>; // (check name, slack, repro)

fn run_trials(
    cfg: &SuiteConfig,
    body: impl Fn(usize, u64) -> Result<TrialSlacks> + Sync,
) -> Result<Vec<TrialSlacks>> {
    pool().install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| body(i, trial_seed(cfg.seed, i)))
            .collect()
    })
}

fn aggregate(names_tols: &[(&str, f64)], trials: Vec<TrialSlacks>) -> Vec<CheckResult> {
    let mut aggs: Vec<SlackAgg> = names_tols
        .iter()
        .map(|(n, t)| SlackAgg::new(*n, *t))
        .collect();
    for trial in trials {
        for (name, slack, repro) in trial {
            if let Some(agg) = aggs.iter_mut().find(|a| a.name == name) {
                agg.add(slack, repro);
            }
        }
    }
    aggs.into_iter().map(SlackAgg::finish).collect()
}

// --- individual suites ------------------------------------------------

// |δ - Δχ - χ(Ẽ(s))| ≤ 1e-8 on random pure ensembles × random instruments.
fn suite_lemma1(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let dims = cfg.dims.clone();
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let mut out = Vec::new();
        for &d in &dims {
            let k = 2 + rng.gen_range(0..4usize); // K ≤ 5
            let s = random_pure_ensemble(&mut rng, d, k);
            let n_out = 2 + rng.gen_range(0..2usize);
            let kraus = 1 + rng.gen_range(0..2usize);
            let instr = random_instrument_with(&mut rng, d, n_out, kraus)?;
            let residual = lemma1_identity_check(&s, &instr)?;
            out.push((
                "lemma1 |δ - Δχ - χ(complement)|".to_string(),
                1e-8 - residual,
                repro("lemma1", ts, d),
            ));
        }
        Ok(out)
    })?;
    Ok(aggregate(
        &[("lemma1 |δ - Δχ - χ(complement)|", 0.0)],
        trials,
    ))
}

// Theorem-1 chain on uniform {|0⟩,|+⟩} for single- and multi-Kraus draws.
fn suite_theorem1(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let opt = OptimizerConfig::default();
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let s = Ensemble::zero_plus_uniform();
        let mut out = Vec::new();
        for multi in [false, true] {
            let n_out = 2 + rng.gen_range(0..2usize);
            let kraus = if multi { 2 } else { 1 };
            let instr = random_instrument_with(&mut rng, 2, n_out, kraus)?;
            let rep = theorem_one_report(&s, &instr, &opt)?;
            let tag = if multi { "multi" } else { "single" };
            out.push((
                format!("theorem1a (1-f_av)²/4 ≤ (1-f_e)²/4 [{tag}]"),
                rep.slack_a,
                repro("theorem1", ts, 2),
            ));
            out.push((
                format!("theorem1b (1-f_e)²/4 ≤ δ [{tag}]"),
                rep.slack_b,
                repro("theorem1", ts, 2),
            ));
            if rep.rhs_applicable {
                out.push((
                    format!("theorem1c δ ≤ f(ε') where applicable [{tag}]"),
                    rep.slack_c.unwrap_or(f64::INFINITY),
                    repro("theorem1", ts, 2),
                ));
            }
        }
        Ok(out)
    })?;
    Ok(aggregate(
        &[
            ("theorem1a (1-f_av)²/4 ≤ (1-f_e)²/4 [single]", 1e-7),
            ("theorem1b (1-f_e)²/4 ≤ δ [single]", 1e-7),
            ("theorem1c δ ≤ f(ε') where applicable [single]", 1e-7),
            ("theorem1a (1-f_av)²/4 ≤ (1-f_e)²/4 [multi]", 1e-7),
            ("theorem1b (1-f_e)²/4 ≤ δ [multi]", 1e-7),
            ("theorem1c δ ≤ f(ε') where applicable [multi]", 1e-7),
        ],
        trials,
    ))
}

// Holevo side and frame-instantiated upper side of the information chain.
fn suite_eq9(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let dims: Vec<usize> = cfg.dims.iter().copied().filter(|&d| d >= 2).collect();
    let frames: Vec<_> = dims
        .iter()
        .map(|&d| frame_for_dim(d).map(|f| (d, f)))
        .collect::<Result<_>>()?;
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let mut out = Vec::new();
        for (d, frame) in &frames {
            let rho = random::density(&mut rng, *d);
            let n_out = 2 + rng.gen_range(0..2usize);
            let kraus = 1 + rng.gen_range(0..2usize);
            let instr = random_instrument_with(&mut rng, *d, n_out, kraus)?;
            let budget = SearchBudget {
                grid_points: 400,
                restarts: 120,
                refine_iters: 40,
                seed: ts,
            };
            let iota = quantum_info_gain(&rho, &instr)?;
            let lower = accessible_info_lower(&rho, &instr, &budget)?;
            out.push((
                "eq9 Holevo: I_acc_lower ≤ ι".to_string(),
                iota - lower,
                repro("eq9", ts, *d),
            ));
            let reference = crate::info_gain::reference_ensemble(&rho, &instr)?;
            let (lhs, rhs, i_frame) = frame_norm_bound(&reference, frame)?;
            out.push((
                "eq9 norm bound Σp‖τ-ϱ‖₁ ≤ c√(2I)".to_string(),
                rhs - lhs,
                repro("eq9", ts, *d),
            ));
            let arg = frame.frame_const() * (2.0 * i_frame).sqrt();
            if arg <= 1.0 {
                let t = t_bound(arg, *d)?;
                out.push((
                    "eq9 ι ≤ t(c√(2I)) where unsaturated".to_string(),
                    t - iota,
                    repro("eq9", ts, *d),
                ));
            }
        }
        Ok(out)
    })?;
    Ok(aggregate(
        &[
            ("eq9 Holevo: I_acc_lower ≤ ι", 1e-9),
            ("eq9 norm bound Σp‖τ-ϱ‖₁ ≤ c√(2I)", 1e-7),
            ("eq9 ι ≤ t(c√(2I)) where unsaturated", 1e-7),
        ],
        trials,
    ))
}

// δ ≥ (1-F̄_e)²/4 on random states × instruments.
fn suite_eq17(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let opt = OptimizerConfig::default();
    let dims = cfg.dims.clone();
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let mut out = Vec::new();
        for &d in &dims {
            let rho = random::density(&mut rng, d);
            let n_out = 2 + rng.gen_range(0..2usize);
            let kraus = 1 + rng.gen_range(0..2usize);
            let instr = random_instrument_with(&mut rng, d, n_out, kraus)?;
            let slack = eq17_lower_check(&rho, &instr, &opt)?;
            out.push((
                "eq17 δ ≥ (1-f_e)²/4".to_string(),
                slack,
                repro("eq17", ts, d),
            ));
        }
        Ok(out)
    })?;
    Ok(aggregate(&[("eq17 δ ≥ (1-f_e)²/4", 1e-7)], trials))
}

// ι ≤ δ always; equality for single-Kraus instruments.
fn suite_eq18(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let dims = cfg.dims.clone();
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let mut out = Vec::new();
        for &d in &dims {
            let rho = random::density(&mut rng, d);
            let n_out = 2 + rng.gen_range(0..2usize);
            let single = random_instrument_with(&mut rng, d, n_out, 1)?;
            let (slack, is_single) = eq18_check(&rho, &single)?;
            debug_assert!(is_single);
            out.push((
                "eq18 single-Kraus equality |δ-ι|".to_string(),
                1e-8 - slack.abs(),
                repro("eq18", ts, d),
            ));
            let multi = random_instrument_with(&mut rng, d, n_out, 2)?;
            let (slack, _) = eq18_check(&rho, &multi)?;
            out.push((
                "eq18 δ ≥ ι".to_string(),
                slack,
                repro("eq18", ts, d),
            ));
        }
        Ok(out)
    })?;
    Ok(aggregate(
        &[
            ("eq18 single-Kraus equality |δ-ι|", 0.0),
            ("eq18 δ ≥ ι", 1e-9),
        ],
        trials,
    ))
}

// χ(M(s)) = I(X:X̂) + Σ_m p(m) χ(s̄_m) decomposition identity.
fn suite_eq22(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let dims = cfg.dims.clone();
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let mut out = Vec::new();
        for &d in &dims {
            let k = 2 + rng.gen_range(0..3usize);
            let s = if rng.gen_bool(0.5) {
                random_pure_ensemble(&mut rng, d, k)
            } else {
                random_mixed_ensemble(&mut rng, d, k)
            };
            let n_out = 2 + rng.gen_range(0..2usize);
            let kraus = 1 + rng.gen_range(0..2usize);
            let instr = random_instrument_with(&mut rng, d, n_out, kraus)?;
            let (_, dec) = entropy_defect_loss(&s, &instr)?;
            out.push((
                "eq22 |χ(M(s)) - I - Σ p(m)χ(s̄_m)|".to_string(),
                1e-9 - dec.identity_residual,
                repro("eq22", ts, d),
            ));
        }
        Ok(out)
    })?;
    Ok(aggregate(
        &[("eq22 |χ(M(s)) - I - Σ p(m)χ(s̄_m)|", 0.0)],
        trials,
    ))
}

// Δχ ≤ δ ≤ 2Δχ for eigenbasis+MUB ensembles of full-rank states.
fn suite_cw(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let dims = cfg.dims.clone();
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let mut out = Vec::new();
        for &d in &dims {
            let n_out = 2 + rng.gen_range(0..2usize);
            let kraus = 1 + rng.gen_range(0..2usize);
            let instr = random_instrument_with(&mut rng, d, n_out, kraus)?;
            let mm = DensityOperator::maximally_mixed(d);
            let (lo, hi) = cw_sandwich_check(&mm, &instr)?;
            out.push(("cw Δχ ≤ δ (maximally mixed)".to_string(), lo, repro("cw", ts, d)));
            out.push(("cw δ ≤ 2Δχ (maximally mixed)".to_string(), hi, repro("cw", ts, d)));
            let rho = random::density_full_rank(&mut rng, d, 0.05);
            let (lo, hi) = cw_sandwich_check(&rho, &instr)?;
            out.push(("cw Δχ ≤ δ (random full-rank)".to_string(), lo, repro("cw", ts, d)));
            out.push(("cw δ ≤ 2Δχ (random full-rank)".to_string(), hi, repro("cw", ts, d)));
        }
        Ok(out)
    })?;
    Ok(aggregate(
        &[
            ("cw Δχ ≤ δ (maximally mixed)", 1e-7),
            ("cw δ ≤ 2Δχ (maximally mixed)", 1e-7),
            ("cw Δχ ≤ δ (random full-rank)", 1e-7),
            ("cw δ ≤ 2Δχ (random full-rank)", 1e-7),
        ],
        trials,
    ))
}

// DP η equals exhaustive-walk enumeration exactly at matched caps.
fn suite_eta_oracle(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    // fixed hand cases first
    let mut hand = SlackAgg::new("eta hand values", 0.0);
    {
        let zp = Ensemble::zero_plus_uniform();
        let expect = (1.0 / 2f64.sqrt()) / 2.0;
        let got = eta(&zp, None)?.eta;
        hand.add(
            if (got - expect).abs() < 1e-12 { 0.0 } else { -1.0 },
            repro("eta-oracle", cfg.seed, 2),
        );
        let tri = Ensemble::uniform_pure(vec![
            PureState::basis(0, 2),
            PureState::basis(1, 2),
            PureState::qubit_angle(std::f64::consts::FRAC_PI_4),
        ])?;
        let expect = (1.0 / 2f64.sqrt()) / 3.0;
        let got = eta(&tri, None)?.eta;
        hand.add(
            if (got - expect).abs() < 1e-12 { 0.0 } else { -1.0 },
            repro("eta-oracle", cfg.seed, 2),
        );
        let orth = Ensemble::uniform_qubit_pair_orthogonal();
        let got = eta(&orth, None)?.eta;
        hand.add(
            if got == 0.0 { 0.0 } else { -1.0 },
            repro("eta-oracle", cfg.seed, 2),
        );
    }
    checks.push(hand.finish());

    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let k = 2 + rng.gen_range(0..4usize); // K ≤ 5
        let states: Vec<PureState> = (0..k).map(|_| random::pure_state(&mut rng, 2)).collect();
        let s = Ensemble::uniform_pure(states)?;
        let cap = exhaustive_cap(k);
        let dp = eta(&s, Some(cap))?.eta;
        let brute = eta_exhaustive(&s, cap)?;
        Ok(vec![(
            "eta DP equals exhaustive enumeration".to_string(),
            if dp == brute { 0.0 } else { -(dp - brute).abs() },
            repro("eta-oracle", ts, 2),
        )])
    })?;
    checks.extend(aggregate(
        &[("eta DP equals exhaustive enumeration", 0.0)],
        trials,
    ));
    Ok(checks)
}

// Dual-frame reconstruction and the computed-constant norm bound.
fn suite_frame(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let mut recon = SlackAgg::new("frame reconstruction (3-MUB and SIC)", 0.0);
    for (tag, povm) in [("mub", mub_povm(2)?), ("sic", sic_povm_qubit())] {
        let frame = build_dual_frame(&povm)?;
        let mut rng = random::rng_from_seed(cfg.seed ^ 0xF0F0);
        for i in 0..20 {
            let h = hermitian_part(&random::ginibre(&mut rng, 2, 2));
            let err = trace_norm(&(frame.reconstruct(&h) - h))?;
            recon.add(
                1e-8 - err,
                format!("{} ({tag} frame, draw {i})", repro("frame", cfg.seed, 2)),
            );
        }
    }
    checks.push(recon.finish());

    let frame = frame_for_dim(2)?;
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let k = 2 + rng.gen_range(0..3usize);
        let s = random_mixed_ensemble(&mut rng, 2, k);
        let (lhs, rhs, _) = frame_norm_bound(&s, &frame)?;
        Ok(vec![(
            "frame norm bound Σp‖ϱ-ϱ_s‖₁ ≤ c√(2I)".to_string(),
            rhs - lhs,
            repro("frame", ts, 2),
        )])
    })?;
    checks.extend(aggregate(
        &[("frame norm bound Σp‖ϱ-ϱ_s‖₁ ≤ c√(2I)", 1e-7)],
        trials,
    ));
    Ok(checks)
}

// ‖ρ-σ‖₁² ≤ 2 D(ρ‖σ) on random pairs.
fn suite_pinsker(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let dims = cfg.dims.clone();
    let trials = run_trials(cfg, |_i, ts| {
        let mut rng = random::rng_from_seed(ts);
        let mut out = Vec::new();
        for &d in &dims {
            let a = random::density(&mut rng, d);
            let b = random::density(&mut rng, d);
            let dkl = relative_entropy(&a, &b)?;
            if dkl.is_finite() {
                let tn = trace_norm(&(a.matrix() - b.matrix()))?;
                out.push((
                    "pinsker ‖ρ-σ‖₁² ≤ 2D(ρ‖σ)".to_string(),
                    2.0 * dkl - tn * tn,
                    repro("pinsker", ts, d),
                ));
            }
        }
        Ok(out)
    })?;
    Ok(aggregate(&[("pinsker ‖ρ-σ‖₁² ≤ 2D(ρ‖σ)", 1e-9)], trials))
}

/// Runs one suite (or all of them) under the configured thread cap.
pub fn run_suite(kind: SuiteKind, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let started = std::time::Instant::now();
    let checks = match kind {
        SuiteKind::Lemma1 => suite_lemma1(cfg)?,
        SuiteKind::Theorem1 => suite_theorem1(cfg)?,
        SuiteKind::Eq9 => suite_eq9(cfg)?,
        SuiteKind::Eq17 => suite_eq17(cfg)?,
        SuiteKind::Eq18 => suite_eq18(cfg)?,
        SuiteKind::Eq22 => suite_eq22(cfg)?,
        SuiteKind::Cw => suite_cw(cfg)?,
        SuiteKind::EtaOracle => suite_eta_oracle(cfg)?,
        SuiteKind::Frame => suite_frame(cfg)?,
        SuiteKind::Pinsker => suite_pinsker(cfg)?,
        SuiteKind::All => {
            let mut all = Vec::new();
            for sub in [
                SuiteKind::Lemma1,
                SuiteKind::Theorem1,
                SuiteKind::Eq9,
                SuiteKind::Eq17,
                SuiteKind::Eq18,
                SuiteKind::Eq22,
                SuiteKind::Cw,
                SuiteKind::EtaOracle,
                SuiteKind::Frame,
                SuiteKind::Pinsker,
            ] {
                all.extend(run_suite(sub, cfg)?.checks);
            }
            all
        }
    };
    Ok(SuiteResult {
        suite: kind.name().to_string(),
        seed: cfg.seed,
        dims: cfg.dims.clone(),
        trials: cfg.trials,
        checks,
        runtime_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Instruments exposed for scenario checks: a fresh RNG per call keeps the
/// draws reproducible.
pub fn instrument_for_trial(seed: u64, d: usize, n_out: usize, kraus: usize) -> Result<QuantumInstrument> {
    let mut rng = random::rng_from_seed(seed);
    random_instrument_with(&mut rng, d, n_out, kraus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SuiteConfig {
        SuiteConfig {
            trials: 4,
            seed: 7,
            dims: vec![2],
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for name in SuiteKind::ALL_NAMES {
            let kind: SuiteKind = name.parse().unwrap();
            assert_eq!(kind.name(), name);
        }
        assert!(matches!(
            "bogus".parse::<SuiteKind>(),
            Err(Error::Unknown { .. })
        ));
    }

    #[test]
    fn lemma1_and_eq22_pass_small() {
        assert!(run_suite(SuiteKind::Lemma1, &tiny()).unwrap().passed());
        assert!(run_suite(SuiteKind::Eq22, &tiny()).unwrap().passed());
    }

    #[test]
    fn eta_oracle_and_pinsker_pass_small() {
        assert!(run_suite(SuiteKind::EtaOracle, &tiny()).unwrap().passed());
        assert!(run_suite(SuiteKind::Pinsker, &tiny()).unwrap().passed());
    }

    #[test]
    fn suite_results_are_deterministic() {
        let a = run_suite(SuiteKind::Lemma1, &tiny()).unwrap();
        let b = run_suite(SuiteKind::Lemma1, &tiny()).unwrap();
        assert_eq!(a.render_table(), b.render_table());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn failures_emit_reproduction_commands() {
        let mut agg = SlackAgg::new("forced", 1e-9);
        agg.add(0.5, repro("lemma1", 3, 2));
        agg.add(-1.0, repro("lemma1", 4, 2));
        let check = agg.finish();
        assert_eq!(check.failures, 1);
        assert_eq!(
            check.failed_repros,
            vec!["tradeoff-lab verify --suite lemma1 --trials 1 --seed 4 --dims 2".to_string()]
        );
        assert_eq!(check.worst_slack, -1.0);
    }
}
