//! Instance I/O, verification suites, parameter scans and bundled
//! scenarios; everything the `tradeoff-lab` binary exposes.

pub mod schema;
pub mod suites;
pub mod scan;
pub mod scenarios;

use serde::Serialize;

use crate::disturbance::{
    complement_entropy_defect, entropy_defect_loss, lemma1_identity_check,
    optimize_recovery_average, optimize_recovery_entanglement, quantum_disturbance,
    theorem_one_from_parts, OptimizerConfig, RecoveryProvenance, TheoremOneReport,
};
use crate::ensemble::{eta, Ensemble};
use crate::info_gain::{mutual_information, quantum_info_gain};
use crate::instrument::QuantumInstrument;
use crate::qmat::von_neumann_entropy;
use crate::Result;

/// A parsed problem instance: one ensemble and one instrument on the same
/// input space.
#[derive(Debug, Clone)]
pub struct Instance {
    pub ensemble: Ensemble,
    pub instrument: QuantumInstrument,
}

/// Everything `analyze` computes for one instance, with per-inequality
/// slack margins.
#[derive(Debug, Clone, Serialize)]
pub struct TradeoffReport {
    pub format: String,
    pub mutual_info: f64,
    pub iota: f64,
    pub delta: f64,
    pub delta_chi: f64,
    pub chi_complement: f64,
    pub chi_input: f64,
    pub input_entropy: f64,
    pub f_e: f64,
    /// Absent for mixed-state ensembles.
    pub f_av: Option<f64>,
    /// Absent for mixed-state ensembles (η is defined for pure sources).
    pub eta: Option<f64>,
    pub zeta: Option<f64>,
    pub witness_path: Option<Vec<String>>,
    pub single_kraus: bool,
    pub delta_exceeds_input_entropy: bool,
    pub recovery_provenance: RecoveryProvenance,
    pub optimizers_converged: bool,
    pub slacks: ReportSlacks,
    /// Full Theorem-1 chain when the ensemble is pure.
    pub theorem_one: Option<TheoremOneReport>,
    /// Absolute residual of the pure-ensemble identity δ = Δχ + χ(Ẽ(s)).
    pub lemma1_residual: Option<f64>,
    /// Audit dump of the entanglement-fidelity recovery Choi matrices,
    /// present when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovery_chois: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportSlacks {
    /// `ι - I(X:X̂)` (Holevo direction, ≥ 0).
    pub holevo: f64,
    /// `δ - ι` (≥ 0; 0 for single-Kraus).
    pub eq18: f64,
    /// `δ - (1-F̄_e)²/4` (≥ 0).
    pub eq17_lower: f64,
    /// `F̄_av - F̄_e` when f_av exists (≥ 0).
    pub eq15: Option<f64>,
    /// `Δχ` itself (≥ 0 by data processing).
    pub delta_chi_nonneg: f64,
}

/// Optimizer settings plus anything analyze-level callers may tune.
#[derive(Debug, Clone, Default)]
pub struct AnalyzeConfig {
    pub optimizer: OptimizerConfig,
    /// Include the recovery Choi matrices in the report for auditing.
    pub dump_recovery_chois: bool,
}

/// Computes every information-gain and disturbance quantity for one
/// instance.
pub fn analyze(instance: &Instance, cfg: &AnalyzeConfig) -> Result<TradeoffReport> {
    let s = &instance.ensemble;
    let instr = &instance.instrument;
    let rho_s = s.average_state();
    let (_, mi) = mutual_information(s, instr)?;
    let iota = quantum_info_gain(&rho_s, instr)?;
    let delta = quantum_disturbance(&rho_s, instr)?;
    let (delta_chi, _) = entropy_defect_loss(s, instr)?;
    let chi_complement = complement_entropy_defect(s, instr)?;
    let input_entropy = von_neumann_entropy(&rho_s);
    let pure = s.all_pure(1e-9);

    let fe_out = optimize_recovery_entanglement(&rho_s, instr, &cfg.optimizer)?;
    let fav_out = if pure {
        Some(optimize_recovery_average(
            s,
            instr,
            &cfg.optimizer,
            &[&fe_out.recovery],
        )?)
    } else {
        None
    };
    let f_av = fav_out.as_ref().map(|o| o.fidelity);
    let fav_converged = fav_out.as_ref().is_none_or(|o| o.converged);

    let irr = if pure { Some(eta(s, None)?) } else { None };
    let theorem = match &fav_out {
        Some(fav) => Some(theorem_one_from_parts(s, instr, &fe_out, fav, delta)?),
        None => None,
    };
    let lemma1 = if pure {
        Some(lemma1_identity_check(s, instr)?)
    } else {
        None
    };

    Ok(TradeoffReport {
        format: schema::FORMAT_TAG.to_string(),
        mutual_info: mi,
        iota,
        delta,
        delta_chi,
        chi_complement,
        chi_input: s.entropy_defect(),
        input_entropy,
        f_e: fe_out.fidelity,
        f_av,
        eta: irr.as_ref().map(|r| r.eta),
        zeta: irr.as_ref().map(|r| r.zeta),
        witness_path: irr
            .as_ref()
            .map(|r| r.witness_path.labels().to_vec()),
        single_kraus: instr.is_single_kraus(),
        delta_exceeds_input_entropy: delta > input_entropy + 1e-9,
        recovery_provenance: fe_out.provenance,
        optimizers_converged: fe_out.converged && fav_converged,
        slacks: ReportSlacks {
            holevo: iota - mi,
            eq18: delta - iota,
            eq17_lower: delta - (1.0 - fe_out.fidelity.min(1.0)).max(0.0).powi(2) / 4.0,
            eq15: f_av.map(|fa| fa - fe_out.fidelity),
            delta_chi_nonneg: delta_chi,
        },
        theorem_one: theorem,
        lemma1_residual: lemma1,
        recovery_chois: cfg
            .dump_recovery_chois
            .then(|| fe_out.recovery.choi_dump()),
    })
}
