//! Disturbance quantities, recovery-channel optimization and the
//! inequality-chain reports.
//!
//! Two fidelity-based disturbances, both maximized over per-outcome
//! recovery channels `R_m : Q' → Q`:
//!
//! - average output fidelity
//!   `F̄_av(s, M) = max Σ_x p(x) F(Σ_m R_m(E_m(ϱ_x)), ϱ_x)` (pure inputs);
//! - entanglement fidelity
//!   `F̄_e(ϱ_s, M) = max ⟨Ψ|Σ_m (I ⊗ R_m∘E_m)(Ψ)|Ψ⟩` for a purification Ψ
//!   of the average state.
//!
//! For pure targets both objectives are linear in the Choi matrices of the
//! recovery channels and split into independent per-branch maximizations of
//! `Tr[A_m C_m]` over the trace-preserving positive set. The branch solver
//! is projected gradient ascent with Dykstra-corrected alternating
//! projections (PSD by eigenvalue clipping, trace constraint by affine
//! correction). Soundness never rests on solver optimality: the reported
//! fidelity is always the direct re-evaluation of the returned channels,
//! and warm starts (Petz transpose channel, identity, constant) are kept as
//! candidates so the result dominates them exactly.
//!
//! Entropy-based disturbances: quantum disturbance
//! `δ = S(ϱ_s) - I_c^{R→Q'X̂}` through the channelized instrument, and the
//! entropy-defect loss `Δχ = χ(s) - χ(M(s))`, linked for pure ensembles by
//! the exact identity `δ = Δχ + χ(Ẽ(s))` with `Ẽ` the complement of the
//! channelized instrument.

use serde::Serialize;

use crate::ensemble::{
    christandl_winter_ensemble, conditional_output_ensemble, eta, image_ensemble, Ensemble,
};
use crate::info_gain::{mutual_information, quantum_info_gain};
use crate::instrument::{Channel, OutcomeBranch, QuantumInstrument};
use crate::qmat::{
    cr, eig_hermitian, entropy_of_hermitian, hermitian_part, inv_sqrt_psd, partial_trace, purify,
    sqrt_psd, trace_norm, von_neumann_entropy, CMat, CVec, DensityOperator, Keep,
};
use crate::{tol, Error, Result};

/// Per-outcome recovery channels `R_m : Q' → Q`.
#[derive(Debug, Clone)]
pub struct RecoveryChannel {
    channels: Vec<Channel>,
}

impl RecoveryChannel {
    pub fn new(channels: Vec<Channel>) -> Self {
        RecoveryChannel { channels }
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn channel(&self, m: usize) -> &Channel {
        &self.channels[m]
    }

    /// Per-outcome Choi matrices in JSON-ready `[re, im]` row-major form,
    /// for auditing optimizer output.
    pub fn choi_dump(&self) -> Vec<Vec<Vec<[f64; 2]>>> {
        self.channels
            .iter()
            .map(|ch| {
                let c = ch.choi();
                (0..c.nrows())
                    .map(|i| (0..c.ncols()).map(|j| [c[(i, j)].re, c[(i, j)].im]).collect())
                    .collect()
            })
            .collect()
    }
}

/// Where a recovery channel came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecoveryProvenance {
    Optimized,
    Petz,
    Supplied,
}

/// Optimizer result: channels, their exactly re-evaluated objective, and
/// whether the ascent stalled to convergence within the iteration cap.
#[derive(Debug, Clone)]
pub struct RecoveryOutcome {
    pub recovery: RecoveryChannel,
    pub fidelity: f64,
    pub converged: bool,
    pub provenance: RecoveryProvenance,
}

/// Knobs for the projected-ascent branch solver.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    /// Target objective tolerance; ascent stops once improvements over the
    /// stall window fall below it.
    pub tol: f64,
    pub max_iters: usize,
    pub stall_window: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            tol: 1e-5,
            max_iters: 5000,
            stall_window: 50,
        }
    }
}

// ---------------------------------------------------------------------------
// Choi-matrix plumbing for the branch solver
// ---------------------------------------------------------------------------

#[cfg(test)]
fn choi_apply(choi: &CMat, sigma: &CMat, d_in: usize, d_out: usize) -> CMat {
    let mut out = CMat::zeros(d_out, d_out);
    for q in 0..d_out {
        for qp in 0..d_out {
            let mut acc = cr(0.0);
            for i in 0..d_in {
                for j in 0..d_in {
                    acc += sigma[(i, j)] * choi[(i * d_out + q, j * d_out + qp)];
                }
            }
            out[(q, qp)] = acc;
        }
    }
    out
}

fn choi_to_kraus(choi: &CMat, d_in: usize, d_out: usize) -> Result<Vec<CMat>> {
    let (vals, vecs) = eig_hermitian(choi)?;
    let mut kraus = Vec::new();
    for (j, &l) in vals.iter().enumerate() {
        if l > tol::EIG {
            let scale = cr(l.sqrt());
            let mut k = CMat::zeros(d_out, d_in);
            for i in 0..d_in {
                for q in 0..d_out {
                    k[(q, i)] = scale * vecs[(i * d_out + q, j)];
                }
            }
            kraus.push(k);
        }
    }
    if kraus.is_empty() {
        return Err(Error::InternalError("Choi matrix has empty support".into()));
    }
    Ok(kraus)
}

/// Exact-TP channel from an approximately CPTP Choi matrix: extract Kraus,
/// then right-normalize by `(ΣK†K)^{-1/2}`.
fn channel_from_choi(choi: &CMat, d_in: usize, d_out: usize) -> Result<Channel> {
    let kraus = choi_to_kraus(choi, d_in, d_out)?;
    let mut norm = CMat::zeros(d_in, d_in);
    for k in &kraus {
        norm += k.adjoint() * k;
    }
    let defect = trace_norm(&(&norm - CMat::identity(d_in, d_in)))?;
    if defect > 1e-6 {
        return Err(Error::InternalError(format!(
            "projected Choi far from trace-preserving ({defect:.3e})"
        )));
    }
    let fix = inv_sqrt_psd(&norm)?;
    let normalized: Vec<CMat> = kraus.iter().map(|k| k * &fix).collect();
    Channel::new(normalized)
}

fn tp_projection(c: &CMat, d_in: usize, d_out: usize) -> CMat {
    let mut delta = CMat::zeros(d_in, d_in);
    for i in 0..d_in {
        for j in 0..d_in {
            let mut acc = cr(0.0);
            for q in 0..d_out {
                acc += c[(i * d_out + q, j * d_out + q)];
            }
            delta[(i, j)] = acc;
        }
    }
    delta -= CMat::identity(d_in, d_in);
    let mut out = c.clone();
    let scale = cr(1.0 / d_out as f64);
    for i in 0..d_in {
        for j in 0..d_in {
            let corr = delta[(i, j)] * scale;
            for q in 0..d_out {
                out[(i * d_out + q, j * d_out + q)] -= corr;
            }
        }
    }
    out
}

fn psd_projection(c: &CMat) -> Result<CMat> {
    let (vals, vecs) = eig_hermitian(c)?;
    let n = vals.len();
    let mut scaled = vecs.clone();
    for j in 0..n {
        let l = cr(vals[j].max(0.0));
        for i in 0..n {
            scaled[(i, j)] *= l;
        }
    }
    Ok(&scaled * vecs.adjoint())
}

/// Dykstra alternating projections onto {PSD} ∩ {Tr_out = I}.
fn project_cptp(c0: &CMat, d_in: usize, d_out: usize, max_iters: usize, eps: f64) -> Result<CMat> {
    let mut x = hermitian_part(c0);
    let n = x.nrows();
    let mut p = CMat::zeros(n, n);
    let mut q = CMat::zeros(n, n);
    for _ in 0..max_iters {
        let y = psd_projection(&hermitian_part(&(&x + &p)))?;
        p = &x + &p - &y;
        let xn = tp_projection(&(&y + &q), d_in, d_out);
        q = &y + &q - &xn;
        let moved = (&xn - &x).norm();
        x = xn;
        if moved < eps {
            // feasibility of both constraints at the fixed point
            let (vals, _) = eig_hermitian(&x)?;
            let min = vals.first().copied().unwrap_or(0.0);
            let tp_defect = {
                let proj = tp_projection(&x, d_in, d_out);
                (&proj - &x).norm()
            };
            if min > -1e-10 && tp_defect < 1e-10 {
                break;
            }
        }
    }
    Ok(x)
}

fn objective(a: &CMat, c: &CMat) -> f64 {
    (a * c).trace().re
}

/// Maximize `Tr[A C]` over CPTP Choi matrices; returns the best Choi seen
/// (always within `project_cptp` feasibility of the set) plus whether the
/// ascent stalled to convergence.
fn maximize_branch(
    a: &CMat,
    d_in: usize,
    d_out: usize,
    warm_starts: &[CMat],
    cfg: &OptimizerConfig,
) -> Result<(CMat, bool)> {
    let mut best_c = warm_starts[0].clone();
    let mut best_obj = objective(a, &best_c);
    for w in &warm_starts[1..] {
        let v = objective(a, w);
        if v > best_obj {
            best_obj = v;
            best_c = w.clone();
        }
    }
    let a_norm = a.norm().max(1e-12);
    let mut alpha = d_in as f64 / a_norm;
    let mut c = best_c.clone();
    let mut stall = 0usize;
    let mut converged = false;
    let improve_eps = cfg.tol * 1e-3;
    for _ in 0..cfg.max_iters {
        c = project_cptp(&(&c + a * cr(alpha)), d_in, d_out, 60, 1e-12)?;
        let g = objective(a, &c);
        if g > best_obj + improve_eps {
            best_obj = g;
            best_c = c.clone();
            stall = 0;
        } else {
            if g > best_obj {
                best_obj = g;
                best_c = c.clone();
            }
            stall += 1;
            if stall.is_multiple_of(20) {
                alpha *= 0.5;
            }
            if stall >= cfg.stall_window {
                converged = true;
                break;
            }
        }
    }
    // final polish projection so the Kraus extraction starts exactly feasible
    let polished = project_cptp(&best_c, d_in, d_out, 300, 1e-13)?;
    let final_c = if objective(a, &polished) >= best_obj - 1e-9 {
        polished
    } else {
        best_c
    };
    Ok((final_c, converged))
}

// ---------------------------------------------------------------------------
// Objective matrices
// ---------------------------------------------------------------------------

// Gradient matrix A for the branch objective
// g(C) = Σ_{r r' i j q q'} conj(ψ_{rq}) ψ_{r'q'} Ω_{(ri),(r'j)} C_{(iq),(jq')}
// = Tr[A C]; ψ lives on R⊗Q, Ω on R⊗Q', C on Q'⊗Q.
fn entanglement_gradient(psi: &CVec, omega: &CMat, d_r: usize, d_q: usize, d_qp: usize) -> CMat {
    let n = d_qp * d_q;
    let mut m = CMat::zeros(n, n);
    for i in 0..d_qp {
        for q in 0..d_q {
            for j in 0..d_qp {
                for qp in 0..d_q {
                    let mut acc = cr(0.0);
                    for r in 0..d_r {
                        for rp in 0..d_r {
                            acc += psi[r * d_q + q].conj()
                                * psi[rp * d_q + qp]
                                * omega[(r * d_qp + i, rp * d_qp + j)];
                        }
                    }
                    m[(i * d_q + q, j * d_q + qp)] = acc;
                }
            }
        }
    }
    hermitian_part(&m.conjugate())
}

// Gradient matrix for the average-fidelity branch objective
// h(C) = Σ_x p_x Σ_{ij qq'} (ω_x)_{ij} conj(ψ^x_q) ψ^x_{q'} C_{(iq),(jq')}.
fn average_gradient(
    weighted_pairs: &[(f64, CVec, CMat)], // (p_x, ψ_x on Q, ω_x on Q')
    d_q: usize,
    d_qp: usize,
) -> CMat {
    let n = d_qp * d_q;
    let mut m = CMat::zeros(n, n);
    for (p, psi, omega) in weighted_pairs {
        let w = cr(*p);
        for i in 0..d_qp {
            for j in 0..d_qp {
                let o = omega[(i, j)];
                if o.norm() == 0.0 {
                    continue;
                }
                for q in 0..d_q {
                    for qp in 0..d_q {
                        m[(i * d_q + q, j * d_q + qp)] +=
                            w * o * psi[q].conj() * psi[qp];
                    }
                }
            }
        }
    }
    hermitian_part(&m.conjugate())
}

// ---------------------------------------------------------------------------
// Warm starts
// ---------------------------------------------------------------------------

/// Petz transpose channel of one branch with respect to the average state:
/// `R(σ) = √ϱ_s E_m†(E_m(ϱ_s)^{-1/2} σ E_m(ϱ_s)^{-1/2}) √ϱ_s`, completed
/// off the support of `E_m(ϱ_s)` by routing to `ϱ_s`.
pub fn petz_recovery(rho_s: &DensityOperator, branch: &OutcomeBranch) -> Result<Channel> {
    if rho_s.d() != branch.in_dim() {
        return Err(Error::DimMismatch {
            left: rho_s.d(),
            right: branch.in_dim(),
            context: "state vs branch input",
        });
    }
    let e_rho = branch.apply_raw(rho_s.matrix());
    let p = e_rho.trace().re;
    if p < tol::PROB {
        return Err(Error::DegenerateBranch {
            label: branch.label().to_string(),
            prob: p,
        });
    }
    let s_inv = inv_sqrt_psd(&e_rho)?;
    let sqrt_rho = sqrt_psd(rho_s.matrix())?;
    let mut kraus: Vec<CMat> = branch
        .kraus()
        .iter()
        .map(|k| &sqrt_rho * k.adjoint() * &s_inv)
        .collect();
    // completion: send the orthocomplement of supp E_m(ϱ_s) to ϱ_s
    let (evals, evecs) = eig_hermitian(&e_rho)?;
    let (rvals, rvecs) = eig_hermitian(rho_s.matrix())?;
    for (j, &l) in evals.iter().enumerate() {
        if l <= tol::EIG {
            let w = evecs.column(j);
            for (i, &mu) in rvals.iter().enumerate() {
                if mu > tol::EIG {
                    let v = rvecs.column(i);
                    kraus.push(v.into_owned() * cr(mu.sqrt()) * w.adjoint());
                }
            }
        }
    }
    Channel::new(kraus)
}

/// Channel sending every input to `state` (used to complete recoveries and
/// as a feasible warm start).
fn constant_channel(d_in: usize, state: &DensityOperator) -> Result<Channel> {
    let (vals, vecs) = eig_hermitian(state.matrix())?;
    let mut kraus = Vec::new();
    for (i, &mu) in vals.iter().enumerate() {
        if mu > tol::EIG {
            let v = vecs.column(i).into_owned();
            for j in 0..d_in {
                kraus.push(&v * cr(mu.sqrt()) * crate::qmat::basis_ket(j, d_in).adjoint());
            }
        }
    }
    Channel::new(kraus)
}

fn identity_choi(d: usize) -> CMat {
    let mut c = CMat::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            c[(i * d + i, j * d + j)] = cr(1.0);
        }
    }
    c
}

// ---------------------------------------------------------------------------
// Direct (certificate) evaluators
// ---------------------------------------------------------------------------

/// Direct evaluation of the entanglement-fidelity objective for given
/// recovery channels: `⟨Ψ|Σ_m (I⊗R_m∘E_m)(Ψ)|Ψ⟩`.
pub fn entanglement_fidelity_of(
    rho_s: &DensityOperator,
    instr: &QuantumInstrument,
    recovery: &RecoveryChannel,
) -> Result<f64> {
    let d = rho_s.d();
    let psi = purify(rho_s)?;
    let proj = psi.projector();
    let id_r = CMat::identity(d, d);
    let mut total = 0.0;
    for (m, branch) in instr.outcomes().iter().enumerate() {
        let mut omega = CMat::zeros(d * branch.out_dim(), d * branch.out_dim());
        for k in branch.kraus() {
            let ext = id_r.kronecker(k);
            omega += &ext * &proj * ext.adjoint();
        }
        let r_m = recovery.channel(m);
        if r_m.in_dim() != branch.out_dim() || r_m.out_dim() != d {
            return Err(Error::DimMismatch {
                left: r_m.in_dim(),
                right: branch.out_dim(),
                context: "recovery channel shape",
            });
        }
        let recovered = r_m.apply_to_right_factor(&omega, d)?;
        total += (psi.amplitudes().adjoint() * &recovered * psi.amplitudes())[(0, 0)].re;
    }
    Ok(total)
}

/// Direct evaluation of the average-fidelity objective for given recovery
/// channels on a pure ensemble: `Σ_x p(x) ⟨ψ_x|Σ_m R_m(E_m(ψ_x))|ψ_x⟩`.
pub fn average_fidelity_of(
    s: &Ensemble,
    instr: &QuantumInstrument,
    recovery: &RecoveryChannel,
) -> Result<f64> {
    let states = s.pure_states(1e-9)?;
    let mut total = 0.0;
    for (e, psi) in s.entries().iter().zip(&states) {
        let mut out = CMat::zeros(s.d(), s.d());
        for (m, branch) in instr.outcomes().iter().enumerate() {
            let omega = branch.apply_raw(e.state.matrix());
            out += recovery.channel(m).apply_raw(&omega);
        }
        total += e.p * (psi.amplitudes().adjoint() * &out * psi.amplitudes())[(0, 0)].re;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Recovery optimizers
// ---------------------------------------------------------------------------

fn branch_warm_starts(
    rho_s: &DensityOperator,
    branch: &OutcomeBranch,
    extra: Option<&Channel>,
) -> Result<Vec<CMat>> {
    let d_in = branch.out_dim();
    let d_out = branch.in_dim();
    let mut starts = Vec::new();
    if let Ok(petz) = petz_recovery(rho_s, branch) {
        starts.push(petz.choi());
    }
    if d_in == d_out {
        starts.push(identity_choi(d_in));
    }
    starts.push(constant_channel(d_in, rho_s)?.choi());
    if let Some(ch) = extra {
        if ch.in_dim() == d_in && ch.out_dim() == d_out {
            starts.push(ch.choi());
        }
    }
    Ok(starts)
}

fn assemble_recovery(
    rho_s: &DensityOperator,
    instr: &QuantumInstrument,
    chois: Vec<Option<CMat>>,
) -> Result<RecoveryChannel> {
    let mut channels = Vec::with_capacity(instr.n_outcomes());
    for (branch, choi) in instr.outcomes().iter().zip(chois) {
        let d_in = branch.out_dim();
        let ch = match choi {
            Some(c) => channel_from_choi(&c, d_in, branch.in_dim())
                .or_else(|_| petz_recovery(rho_s, branch))
                .or_else(|_| constant_channel(d_in, rho_s))?,
            None => constant_channel(d_in, rho_s)?,
        };
        channels.push(ch);
    }
    Ok(RecoveryChannel::new(channels))
}

/// Maximizes the entanglement-fidelity objective branch by branch.
/// The reported value is the direct re-evaluation of the returned channels,
/// and it dominates the Petz and identity recoveries by construction.
pub fn optimize_recovery_entanglement(
    rho_s: &DensityOperator,
    instr: &QuantumInstrument,
    cfg: &OptimizerConfig,
) -> Result<RecoveryOutcome> {
    if rho_s.d() != instr.in_dim() {
        return Err(Error::DimMismatch {
            left: rho_s.d(),
            right: instr.in_dim(),
            context: "state vs instrument input",
        });
    }
    let d = rho_s.d();
    let psi = purify(rho_s)?;
    let proj = psi.projector();
    let id_r = CMat::identity(d, d);
    let mut chois = Vec::with_capacity(instr.n_outcomes());
    let mut converged = true;
    for branch in instr.outcomes() {
        let d_qp = branch.out_dim();
        let mut omega = CMat::zeros(d * d_qp, d * d_qp);
        for k in branch.kraus() {
            let ext = id_r.kronecker(k);
            omega += &ext * &proj * ext.adjoint();
        }
        if omega.trace().re <= tol::PROB {
            chois.push(None);
            continue;
        }
        let a = entanglement_gradient(psi.amplitudes(), &omega, d, d, d_qp);
        let warm = branch_warm_starts(rho_s, branch, None)?;
        let (choi, ok) = maximize_branch(&a, d_qp, d, &warm, cfg)?;
        converged &= ok;
        chois.push(Some(choi));
    }
    let recovery = assemble_recovery(rho_s, instr, chois)?;
    let fidelity = entanglement_fidelity_of(rho_s, instr, &recovery)?;
    // candidate channels must never beat the assembled optimum
    let (recovery, fidelity) =
        dominate_with_baselines(rho_s, instr, recovery, fidelity, |r| {
            entanglement_fidelity_of(rho_s, instr, r)
        })?;
    Ok(RecoveryOutcome {
        recovery,
        fidelity,
        converged,
        provenance: RecoveryProvenance::Optimized,
    })
}

/// Maximizes the average output fidelity for a pure ensemble. Mixed
/// entries are rejected: the pure case keeps the objective linear in the
/// recovery Choi matrices, which is what the branch solver certifies.
/// `extra_starts` seeds the solver (passing the entanglement-fidelity
/// optimum guarantees `f_av ≥ f_e` pointwise).
pub fn optimize_recovery_average(
    s: &Ensemble,
    instr: &QuantumInstrument,
    cfg: &OptimizerConfig,
    extra_starts: &[&RecoveryChannel],
) -> Result<RecoveryOutcome> {
    if s.d() != instr.in_dim() {
        return Err(Error::DimMismatch {
            left: s.d(),
            right: instr.in_dim(),
            context: "ensemble vs instrument input",
        });
    }
    let states = s.pure_states(1e-9)?;
    let rho_s = s.average_state();
    let d = s.d();
    let mut chois = Vec::with_capacity(instr.n_outcomes());
    let mut converged = true;
    for (m, branch) in instr.outcomes().iter().enumerate() {
        let d_qp = branch.out_dim();
        let pairs: Vec<(f64, CVec, CMat)> = s
            .entries()
            .iter()
            .zip(&states)
            .map(|(e, psi)| {
                (
                    e.p,
                    psi.amplitudes().clone(),
                    branch.apply_raw(e.state.matrix()),
                )
            })
            .collect();
        let total_weight: f64 = pairs.iter().map(|(p, _, w)| p * w.trace().re).sum();
        if total_weight <= tol::PROB {
            chois.push(None);
            continue;
        }
        let a = average_gradient(&pairs, d, d_qp);
        let mut warm = branch_warm_starts(&rho_s, branch, None)?;
        for extra in extra_starts {
            let ch = extra.channel(m);
            if ch.in_dim() == d_qp && ch.out_dim() == d {
                warm.push(ch.choi());
            }
        }
        let (choi, ok) = maximize_branch(&a, d_qp, d, &warm, cfg)?;
        converged &= ok;
        chois.push(Some(choi));
    }
    let recovery = assemble_recovery(&rho_s, instr, chois)?;
    let mut fidelity = average_fidelity_of(s, instr, &recovery)?;
    let mut best = recovery;
    for extra in extra_starts {
        let v = average_fidelity_of(s, instr, extra)?;
        if v > fidelity {
            fidelity = v;
            best = (*extra).clone();
        }
    }
    let (best, fidelity) = dominate_with_baselines(&rho_s, instr, best, fidelity, |r| {
        average_fidelity_of(s, instr, r)
    })?;
    Ok(RecoveryOutcome {
        recovery: best,
        fidelity,
        converged,
        provenance: RecoveryProvenance::Optimized,
    })
}

// Swap in the all-Petz or all-identity recovery when the solver result does
// not dominate them (exact evaluations, so the dominance invariants hold
// with zero slack).
fn dominate_with_baselines(
    rho_s: &DensityOperator,
    instr: &QuantumInstrument,
    recovery: RecoveryChannel,
    fidelity: f64,
    eval: impl Fn(&RecoveryChannel) -> Result<f64>,
) -> Result<(RecoveryChannel, f64)> {
    let mut best = recovery;
    let mut best_f = fidelity;
    let mut baselines: Vec<RecoveryChannel> = Vec::new();
    let petz: Result<Vec<Channel>> = instr
        .outcomes()
        .iter()
        .map(|b| petz_recovery(rho_s, b).or_else(|_| constant_channel(b.out_dim(), rho_s)))
        .collect();
    if let Ok(chs) = petz {
        baselines.push(RecoveryChannel::new(chs));
    }
    if instr.out_dim() == instr.in_dim() {
        baselines.push(RecoveryChannel::new(
            (0..instr.n_outcomes())
                .map(|_| Channel::identity(instr.in_dim()))
                .collect(),
        ));
    }
    for b in baselines {
        let v = eval(&b)?;
        if v > best_f {
            best_f = v;
            best = b;
        }
    }
    Ok((best, best_f))
}

/// Entanglement fidelity achieved by the all-Petz recovery (analytic
/// baseline, no optimization).
pub fn petz_entanglement_fidelity(
    rho_s: &DensityOperator,
    instr: &QuantumInstrument,
) -> Result<f64> {
    let channels: Vec<Channel> = instr
        .outcomes()
        .iter()
        .map(|b| petz_recovery(rho_s, b).or_else(|_| constant_channel(b.out_dim(), rho_s)))
        .collect::<Result<_>>()?;
    entanglement_fidelity_of(rho_s, instr, &RecoveryChannel::new(channels))
}

// ---------------------------------------------------------------------------
// Entropy-based disturbances
// ---------------------------------------------------------------------------

/// Coherent information `I_c^{A→B}(ρ^{AB}) = S(ρ^B) - S(ρ^{AB})` in bits
/// for an operator on `A ⊗ B`.
pub fn coherent_information(joint: &CMat, d_a: usize, d_b: usize) -> Result<f64> {
    let s_joint = entropy_of_hermitian(joint)?;
    let marg = partial_trace(joint, d_a, d_b, Keep::Right)?;
    let s_b = entropy_of_hermitian(&marg)?;
    Ok(s_b - s_joint)
}

/// Quantum disturbance `δ(ϱ_s, M) = S(ϱ_s) - I_c^{R→Q'X̂}` evaluated on
/// `(I ⊗ channelize(M))(Ψ)` for the canonical purification Ψ.
///
/// Nonnegativity (up to 1e-9) is enforced; the upper range claim
/// `δ ≤ S(ϱ_s)` is *not* — a one-outcome completely depolarizing
/// instrument on I/2 already reaches δ = 2·S — so callers that care test
/// [`DisturbanceReport::delta_exceeds_input_entropy`] instead.
pub fn quantum_disturbance(rho_s: &DensityOperator, instr: &QuantumInstrument) -> Result<f64> {
    if rho_s.d() != instr.in_dim() {
        return Err(Error::DimMismatch {
            left: rho_s.d(),
            right: instr.in_dim(),
            context: "state vs instrument input",
        });
    }
    let d = rho_s.d();
    let psi = purify(rho_s)?;
    let ch = instr.channelize();
    let out = ch.apply_to_right_factor(&psi.projector(), d)?;
    let ic = coherent_information(&out, d, ch.out_dim())?;
    let delta = von_neumann_entropy(rho_s) - ic;
    if delta < -1e-9 {
        return Err(Error::InternalError(format!(
            "quantum disturbance {delta:.3e} below zero"
        )));
    }
    Ok(delta)
}

/// The χ-decomposition of the channelized output,
/// `χ(M(s)) = I(X:X̂) + Σ_m p(m) χ(s̄_m)`, with the residual of that exact
/// identity carried for verification.
#[derive(Debug, Clone, Serialize)]
pub struct ChiDecomposition {
    pub chi_in: f64,
    pub chi_out: f64,
    pub mutual_info: f64,
    pub avg_conditional_chi: f64,
    pub identity_residual: f64,
}

/// Entropy-defect loss `Δχ(s, M) = χ(s) - χ(M(s))` through the channelized
/// instrument, with the decomposition identity checked internally.
pub fn entropy_defect_loss(
    s: &Ensemble,
    instr: &QuantumInstrument,
) -> Result<(f64, ChiDecomposition)> {
    if s.d() != instr.in_dim() {
        return Err(Error::DimMismatch {
            left: s.d(),
            right: instr.in_dim(),
            context: "ensemble vs instrument input",
        });
    }
    let chi_in = s.entropy_defect();
    let ch = instr.channelize();
    let image = image_ensemble(s, &ch)?;
    let chi_out = image.entropy_defect();
    let (_, mi) = mutual_information(s, instr)?;
    let probs = instr.outcome_probabilities(&s.average_state())?;
    let mut avg_cond = 0.0;
    for (m, &p_m) in probs.iter().enumerate() {
        if p_m > tol::PROB {
            if let Some(cond) = conditional_output_ensemble(s, instr, m)? {
                avg_cond += p_m * cond.entropy_defect();
            }
        }
    }
    let residual = (chi_out - mi - avg_cond).abs();
    if residual > 1e-9 {
        return Err(Error::InternalError(format!(
            "χ-decomposition identity residual {residual:.3e}"
        )));
    }
    if chi_in - chi_out < -1e-9 {
        return Err(Error::InternalError(format!(
            "entropy defect grew through the channel (Δχ = {:.3e})",
            chi_in - chi_out
        )));
    }
    Ok((
        chi_in - chi_out,
        ChiDecomposition {
            chi_in,
            chi_out,
            mutual_info: mi,
            avg_conditional_chi: avg_cond,
            identity_residual: residual,
        },
    ))
}

/// χ of the ensemble pushed through the complement of the channelized
/// instrument.
pub fn complement_entropy_defect(s: &Ensemble, instr: &QuantumInstrument) -> Result<f64> {
    let complement = instr.channelize().stinespring().complement_channel();
    Ok(image_ensemble(s, &complement)?.entropy_defect())
}

/// Absolute slack of the exact identity `δ = Δχ + χ(Ẽ(s))` for a pure
/// ensemble (`Ẽ` the complement of the channelized instrument).
pub fn lemma1_identity_check(s: &Ensemble, instr: &QuantumInstrument) -> Result<f64> {
    if !s.all_pure(1e-9) {
        return Err(Error::MixedStates(
            "the coherent-information identity needs pure input states".into(),
        ));
    }
    let delta = quantum_disturbance(&s.average_state(), instr)?;
    let (delta_chi, _) = entropy_defect_loss(s, instr)?;
    let chi_comp = complement_entropy_defect(s, instr)?;
    Ok((delta - delta_chi - chi_comp).abs())
}

// ---------------------------------------------------------------------------
// Explicit bound functions
// ---------------------------------------------------------------------------

const F1_DOMAIN_MAX: f64 = 2.0 / (std::f64::consts::E * std::f64::consts::E);

/// Refined Fannes-type bound `f₁(ε) = 2K√ε log₂(d/ε)`, valid for
/// `0 ≤ ε ≤ 2/e²`; `f₁(0) = 0`.
pub fn bound_f1(eps: f64, k_states: usize, d: usize) -> Result<f64> {
    if !(0.0..=F1_DOMAIN_MAX).contains(&eps) {
        return Err(Error::DomainError(format!(
            "f₁ defined for 0 ≤ ε ≤ 2/e² ≈ {F1_DOMAIN_MAX:.6}, got {eps}"
        )));
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * k_states as f64 * eps.sqrt() * (d as f64 / eps).log2())
}

/// Path bound `f₂(ε') = 4N√ε' log₂(d/ε')`, valid for `0 ≤ ε' ≤ 1`;
/// `f₂(0) = 0` by continuity.
pub fn bound_f2(eps_prime: f64, n_path: usize, d: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps_prime) {
        return Err(Error::DomainError(format!(
            "f₂ defined for 0 ≤ ε' ≤ 1, got {eps_prime}"
        )));
    }
    if eps_prime == 0.0 {
        return Ok(0.0);
    }
    Ok(4.0 * n_path as f64 * eps_prime.sqrt() * (d as f64 / eps_prime).log2())
}

/// Combined bound `f(ε') = 6N√ε' log₂(d/ε')` entering the three-way chain.
pub fn bound_f(eps_prime: f64, n_path: usize, d: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps_prime) {
        return Err(Error::DomainError(format!(
            "f defined for 0 ≤ ε' ≤ 1, got {eps_prime}"
        )));
    }
    if eps_prime == 0.0 {
        return Ok(0.0);
    }
    Ok(6.0 * n_path as f64 * eps_prime.sqrt() * (d as f64 / eps_prime).log2())
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// All members of the three-way chain
/// `(1-F̄_av)²/4 ≤ (1-F̄_e)²/4 ≤ δ ≤ f(√(1-F̄_av)/ζ)` for one instance.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremOneReport {
    pub f_av: f64,
    pub f_e: f64,
    pub delta: f64,
    pub eta: f64,
    pub zeta: f64,
    /// Length of the η witness path (N in the bound functions).
    pub n_path: usize,
    pub k_states: usize,
    /// `(1-F̄_av)²/4`.
    pub lhs_av: f64,
    /// `(1-F̄_e)²/4`.
    pub lhs_e: f64,
    /// `f(ε')` when applicable.
    pub rhs: Option<f64>,
    /// `ε' = √(1-F̄_av)/ζ` when ζ > 0.
    pub eps_prime: Option<f64>,
    pub zeta_positive: bool,
    /// `ε' ≤ 1` (equivalently `F̄_av ≥ 1-ζ²`).
    pub eps_prime_in_domain: bool,
    pub fav_above_threshold: bool,
    /// True when every applicability flag holds and `rhs` is asserted.
    pub rhs_applicable: bool,
    /// `ε' = 0` exactly: the bound degenerates to its f(0) = 0 limit.
    pub at_limit: bool,
    /// `lhs_e - lhs_av` (≥ 0 up to tolerance).
    pub slack_a: f64,
    /// `δ - lhs_e` (≥ 0 up to tolerance).
    pub slack_b: f64,
    /// `rhs - δ` when applicable.
    pub slack_c: Option<f64>,
    pub optimizers_converged: bool,
}

/// Evaluates the full chain on a pure ensemble. `N` is taken from the η
/// witness (falling back to the ensemble size when η = 0, where the bound
/// side is inapplicable anyway).
pub fn theorem_one_report(
    s: &Ensemble,
    instr: &QuantumInstrument,
    cfg: &OptimizerConfig,
) -> Result<TheoremOneReport> {
    let rho_s = s.average_state();
    let fe_out = optimize_recovery_entanglement(&rho_s, instr, cfg)?;
    let fav_out = optimize_recovery_average(s, instr, cfg, &[&fe_out.recovery])?;
    let delta = quantum_disturbance(&rho_s, instr)?;
    theorem_one_from_parts(s, instr, &fe_out, &fav_out, delta)
}

/// Assembles the chain report from already-computed fidelities, avoiding a
/// second optimizer pass when the caller has them.
pub fn theorem_one_from_parts(
    s: &Ensemble,
    instr: &QuantumInstrument,
    fe_out: &RecoveryOutcome,
    fav_out: &RecoveryOutcome,
    delta: f64,
) -> Result<TheoremOneReport> {
    if s.d() != instr.in_dim() {
        return Err(Error::DimMismatch {
            left: s.d(),
            right: instr.in_dim(),
            context: "ensemble vs instrument input",
        });
    }
    let irr = eta(s, None)?;
    let d = s.d();
    let k_states = s.len();
    let n_path = if irr.witness_path.is_empty() {
        k_states
    } else {
        irr.witness_path.len()
    };
    let f_av = fav_out.fidelity.min(1.0);
    let f_e = fe_out.fidelity.min(1.0);
    let lhs_av = (1.0 - f_av).max(0.0).powi(2) / 4.0;
    let lhs_e = (1.0 - f_e).max(0.0).powi(2) / 4.0;
    let zeta_positive = irr.zeta > 0.0;
    let (eps_prime, rhs, in_domain, above_threshold, at_limit) = if zeta_positive {
        let x = (1.0 - f_av).max(0.0).sqrt() / irr.zeta;
        let in_domain = x <= 1.0;
        let above = f_av >= 1.0 - irr.zeta * irr.zeta;
        let rhs = if in_domain {
            Some(bound_f(x, n_path, d)?)
        } else {
            None
        };
        (Some(x), rhs, in_domain, above, x == 0.0)
    } else {
        (None, None, false, false, false)
    };
    let rhs_applicable = zeta_positive && in_domain && above_threshold;
    Ok(TheoremOneReport {
        f_av,
        f_e,
        delta,
        eta: irr.eta,
        zeta: irr.zeta,
        n_path,
        k_states,
        lhs_av,
        lhs_e,
        rhs,
        eps_prime,
        zeta_positive,
        eps_prime_in_domain: in_domain,
        fav_above_threshold: above_threshold,
        rhs_applicable,
        at_limit,
        slack_a: lhs_e - lhs_av,
        slack_b: delta - lhs_e,
        slack_c: rhs.map(|r| r - delta),
        optimizers_converged: fe_out.converged && fav_out.converged,
    })
}

/// Lower side of the entanglement-fidelity tradeoff:
/// returns `δ - (1-F̄_e)²/4` (expected ≥ 0 up to tolerance).
pub fn eq17_lower_check(
    rho_s: &DensityOperator,
    instr: &QuantumInstrument,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let fe = optimize_recovery_entanglement(rho_s, instr, cfg)?;
    let delta = quantum_disturbance(rho_s, instr)?;
    Ok(delta - (1.0 - fe.fidelity.min(1.0)).max(0.0).powi(2) / 4.0)
}

/// The ι ≤ δ tradeoff: returns `(δ - ι, equality_expected)` where equality
/// is expected exactly for single-Kraus instruments.
pub fn eq18_check(rho_s: &DensityOperator, instr: &QuantumInstrument) -> Result<(f64, bool)> {
    let delta = quantum_disturbance(rho_s, instr)?;
    let iota = quantum_info_gain(rho_s, instr)?;
    Ok((delta - iota, instr.is_single_kraus()))
}

/// Sandwich `Δχ ≤ δ ≤ 2Δχ` for the eigenbasis+MUB ensemble of a full-rank
/// state: returns `(δ - Δχ, 2Δχ - δ)`, both expected ≥ 0 up to tolerance.
pub fn cw_sandwich_check(
    rho: &DensityOperator,
    instr: &QuantumInstrument,
) -> Result<(f64, f64)> {
    let s = christandl_winter_ensemble(rho)?;
    let delta = quantum_disturbance(rho, instr)?;
    let (delta_chi, _) = entropy_defect_loss(&s, instr)?;
    Ok((delta - delta_chi, 2.0 * delta_chi - delta))
}

/// Full disturbance summary for one (ensemble, instrument) instance.
#[derive(Debug, Clone, Serialize)]
pub struct DisturbanceReport {
    /// Recovery-optimized average output fidelity; absent for mixed-state
    /// ensembles (the optimizer contract is pure-only).
    pub f_av: Option<f64>,
    pub f_e: f64,
    pub delta: f64,
    pub delta_chi: f64,
    pub chi_complement: f64,
    pub input_entropy: f64,
    /// δ exceeding S(ϱ_s) is surfaced, not asserted away.
    pub delta_exceeds_input_entropy: bool,
    pub recovery_provenance: RecoveryProvenance,
    pub optimizers_converged: bool,
    /// Per-outcome Choi matrices of the entanglement-fidelity recovery,
    /// present when the caller asked for an audit dump.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovery_chois: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

pub fn disturbance_report(
    s: &Ensemble,
    instr: &QuantumInstrument,
    cfg: &OptimizerConfig,
    dump_chois: bool,
) -> Result<DisturbanceReport> {
    let rho_s = s.average_state();
    let fe = optimize_recovery_entanglement(&rho_s, instr, cfg)?;
    let f_av = if s.all_pure(1e-9) {
        Some(optimize_recovery_average(s, instr, cfg, &[&fe.recovery])?)
    } else {
        None
    };
    let delta = quantum_disturbance(&rho_s, instr)?;
    let (delta_chi, _) = entropy_defect_loss(s, instr)?;
    let chi_complement = complement_entropy_defect(s, instr)?;
    let input_entropy = von_neumann_entropy(&rho_s);
    let converged = fe.converged && f_av.as_ref().is_none_or(|o| o.converged);
    Ok(DisturbanceReport {
        f_av: f_av.as_ref().map(|o| o.fidelity),
        f_e: fe.fidelity,
        delta,
        delta_chi,
        chi_complement,
        input_entropy,
        delta_exceeds_input_entropy: delta > input_entropy + 1e-9,
        recovery_provenance: fe.provenance,
        optimizers_converged: converged,
        recovery_chois: dump_chois.then(|| fe.recovery.choi_dump()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::random_instrument;
    use crate::random;

    fn vn2() -> QuantumInstrument {
        QuantumInstrument::von_neumann(2)
    }

    fn mm2() -> DensityOperator {
        DensityOperator::maximally_mixed(2)
    }

    #[test]
    fn choi_apply_matches_kraus_application() {
        let mut rng = random::rng_from_seed(111);
        let instr = random_instrument(901, 3, 2, 2).unwrap();
        let branch = instr.branch(0);
        let choi = branch.choi();
        for _ in 0..5 {
            let rho = random::density(&mut rng, 3);
            let via_choi = choi_apply(&choi, rho.matrix(), 3, 3);
            let direct = branch.apply_raw(rho.matrix());
            assert!(trace_norm(&(via_choi - direct)).unwrap() < 1e-10);
        }
    }

    #[test]
    fn choi_kraus_roundtrip() {
        let ch = Channel::dephasing(2);
        let rebuilt = channel_from_choi(&ch.choi(), 2, 2).unwrap();
        let mut rng = random::rng_from_seed(113);
        for _ in 0..5 {
            let rho = random::density(&mut rng, 2);
            let a = ch.apply_raw(rho.matrix());
            let b = rebuilt.apply_raw(rho.matrix());
            assert!(trace_norm(&(a - b)).unwrap() < 1e-10);
        }
    }

    #[test]
    fn entanglement_gradient_matches_direct_evaluation() {
        // Tr[A·Choi(R)] must equal ⟨Ψ|(I⊗R∘E_m)(Ψ)|Ψ⟩ for random R
        let rho = mm2();
        let psi = purify(&rho).unwrap();
        let proj = psi.projector();
        let instr = random_instrument(117, 2, 2, 2).unwrap();
        let branch = instr.branch(0);
        let id_r = CMat::identity(2, 2);
        let mut omega = CMat::zeros(4, 4);
        for k in branch.kraus() {
            let ext = id_r.kronecker(k);
            omega += &ext * &proj * ext.adjoint();
        }
        let a = entanglement_gradient(psi.amplitudes(), &omega, 2, 2, 2);
        for seed in 0..5 {
            let r_instr = random_instrument(500 + seed, 2, 1, 3).unwrap();
            let r = Channel::new(r_instr.branch(0).kraus().to_vec()).unwrap();
            let g = objective(&a, &r.choi());
            let direct = {
                let rec = r.apply_to_right_factor(&omega, 2).unwrap();
                (psi.amplitudes().adjoint() * &rec * psi.amplitudes())[(0, 0)].re
            };
            assert!(
                (g - direct).abs() < 1e-10,
                "gradient mismatch {g} vs {direct}"
            );
        }
    }

    #[test]
    fn average_gradient_matches_direct_evaluation() {
        let s = Ensemble::zero_plus_uniform();
        let states = s.pure_states(1e-9).unwrap();
        let instr = random_instrument(119, 2, 2, 2).unwrap();
        let branch = instr.branch(1);
        let pairs: Vec<(f64, CVec, CMat)> = s
            .entries()
            .iter()
            .zip(&states)
            .map(|(e, psi)| {
                (
                    e.p,
                    psi.amplitudes().clone(),
                    branch.apply_raw(e.state.matrix()),
                )
            })
            .collect();
        let a = average_gradient(&pairs, 2, 2);
        for seed in 0..5 {
            let r_instr = random_instrument(600 + seed, 2, 1, 2).unwrap();
            let r = Channel::new(r_instr.branch(0).kraus().to_vec()).unwrap();
            let g = objective(&a, &r.choi());
            let mut direct = 0.0;
            for (p, psi, omega) in &pairs {
                let out = r.apply_raw(omega);
                let v = CVec::from_column_slice(psi.as_slice());
                direct += p * (v.adjoint() * &out * &v)[(0, 0)].re;
            }
            assert!((g - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn petz_of_identity_and_unitary_branches() {
        let mut rng = random::rng_from_seed(127);
        let rho = random::density_full_rank(&mut rng, 2, 0.1);
        let id_branch = OutcomeBranch::new("id", vec![CMat::identity(2, 2)]).unwrap();
        let petz = petz_recovery(&rho, &id_branch).unwrap();
        for _ in 0..5 {
            let x = random::density(&mut rng, 2);
            assert!(
                trace_norm(&(petz.apply_raw(x.matrix()) - x.matrix())).unwrap() < 1e-8,
                "Petz of identity branch acts as identity"
            );
        }
        let u = random::haar_unitary(&mut rng, 2);
        let u_branch = OutcomeBranch::new("u", vec![u.clone()]).unwrap();
        let petz = petz_recovery(&rho, &u_branch).unwrap();
        for _ in 0..5 {
            let x = random::density(&mut rng, 2);
            let expect = u.adjoint() * x.matrix() * &u;
            assert!(trace_norm(&(petz.apply_raw(x.matrix()) - expect)).unwrap() < 1e-8);
        }
    }

    #[test]
    fn petz_rejects_degenerate_branch() {
        let zero_branch = OutcomeBranch::new("never", vec![CMat::zeros(2, 2)]).unwrap();
        assert!(matches!(
            petz_recovery(&mm2(), &zero_branch),
            Err(Error::DegenerateBranch { .. })
        ));
    }

    #[test]
    fn optimize_entanglement_identity_instrument() {
        let id = QuantumInstrument::identity_instrument(2);
        let out = optimize_recovery_entanglement(&mm2(), &id, &OptimizerConfig::default()).unwrap();
        assert!((out.fidelity - 1.0).abs() < 1e-6, "got {}", out.fidelity);
    }

    #[test]
    fn optimize_entanglement_von_neumann_is_half() {
        let out = optimize_recovery_entanglement(&mm2(), &vn2(), &OptimizerConfig::default()).unwrap();
        assert!((out.fidelity - 0.5).abs() < 1e-4, "got {}", out.fidelity);
    }

    #[test]
    fn optimize_entanglement_unitary_branches() {
        let mut rng = random::rng_from_seed(131);
        let u0 = random::haar_unitary(&mut rng, 2) * cr(0.5f64.sqrt());
        let u1 = random::haar_unitary(&mut rng, 2) * cr(0.5f64.sqrt());
        let instr = QuantumInstrument::new(vec![
            OutcomeBranch::new("u0", vec![u0]).unwrap(),
            OutcomeBranch::new("u1", vec![u1]).unwrap(),
        ])
        .unwrap();
        let out =
            optimize_recovery_entanglement(&mm2(), &instr, &OptimizerConfig::default()).unwrap();
        assert!(out.fidelity >= 1.0 - 1e-6, "got {}", out.fidelity);
    }

    #[test]
    fn optimize_average_orthogonal_von_neumann_is_perfect() {
        let s = Ensemble::uniform_qubit_pair_orthogonal();
        let out =
            optimize_recovery_average(&s, &vn2(), &OptimizerConfig::default(), &[]).unwrap();
        assert!((out.fidelity - 1.0).abs() < 1e-6, "got {}", out.fidelity);
    }

    #[test]
    fn optimize_average_zero_plus_von_neumann_matches_closed_form() {
        // branch 0: both outputs ∝ |0⟩⟨0|, optimum λ_max(½|0⟩⟨0| + ¼|+⟩⟨+|)
        // = (3/4 + √(5/16))/2; branch 1: ¼. Total ≈ 0.904508…
        let expect = 0.25 + (0.75 + 0.3125f64.sqrt()) / 2.0;
        let s = Ensemble::zero_plus_uniform();
        let out =
            optimize_recovery_average(&s, &vn2(), &OptimizerConfig::default(), &[]).unwrap();
        assert!(
            (out.fidelity - expect).abs() < 1e-4,
            "got {} want {expect}",
            out.fidelity
        );
        assert!(out.fidelity < 1.0 - 1e-3);
    }

    #[test]
    fn optimize_average_rejects_mixed() {
        let s = Ensemble::new(vec![crate::ensemble::EnsembleEntry {
            label: "m".into(),
            p: 1.0,
            state: mm2(),
        }])
        .unwrap();
        assert!(matches!(
            optimize_recovery_average(&s, &vn2(), &OptimizerConfig::default(), &[]),
            Err(Error::MixedStates(_))
        ));
    }

    #[test]
    fn optimizer_dominates_petz_and_identity() {
        let cfg = OptimizerConfig::default();
        for seed in 0..10 {
            let instr = random_instrument(1700 + seed, 2, 2, 2).unwrap();
            let rho = mm2();
            let out = optimize_recovery_entanglement(&rho, &instr, &cfg).unwrap();
            let petz_f = petz_entanglement_fidelity(&rho, &instr).unwrap();
            assert!(out.fidelity >= petz_f - 1e-9);
            let id_rec = RecoveryChannel::new(vec![Channel::identity(2); instr.n_outcomes()]);
            let id_f = entanglement_fidelity_of(&rho, &instr, &id_rec).unwrap();
            assert!(out.fidelity >= id_f - 1e-9);
            // certificate: reported value equals re-evaluation
            let re = entanglement_fidelity_of(&rho, &instr, &out.recovery).unwrap();
            assert!((re - out.fidelity).abs() < 1e-9);
        }
    }

    #[test]
    fn petz_floor_against_optimizer() {
        // observed floor on random qubit instruments; the Petz warm start is
        // near-optimal in the high-fidelity regime
        let cfg = OptimizerConfig::default();
        let mut worst = 1.0f64;
        for seed in 0..40 {
            let instr = random_instrument(2900 + seed, 2, 2, 1).unwrap();
            let rho = mm2();
            let out = optimize_recovery_entanglement(&rho, &instr, &cfg).unwrap();
            let petz_f = petz_entanglement_fidelity(&rho, &instr).unwrap();
            if out.fidelity > 1e-6 {
                worst = worst.min(petz_f / out.fidelity);
            }
        }
        assert!(worst >= 0.9, "Petz floor degraded to {worst}");
    }

    #[test]
    fn quantum_disturbance_cases() {
        let id = QuantumInstrument::identity_instrument(2);
        assert!(quantum_disturbance(&mm2(), &id).unwrap().abs() < 1e-10);
        assert!((quantum_disturbance(&mm2(), &vn2()).unwrap() - 1.0).abs() < 1e-10);
        // completely depolarizing single-outcome instrument: I_c = -1, δ = 2
        let dep = QuantumInstrument::from_channel("d", &Channel::completely_depolarizing(2));
        let ch = dep.channelize();
        let psi = purify(&mm2()).unwrap();
        let out = ch.apply_to_right_factor(&psi.projector(), 2).unwrap();
        let ic = coherent_information(&out, 2, ch.out_dim()).unwrap();
        assert!((ic + 1.0).abs() < 1e-9, "I_c = {ic}");
        let delta = quantum_disturbance(&mm2(), &dep).unwrap();
        assert!((delta - 2.0).abs() < 1e-9);
    }

    #[test]
    fn entropy_defect_loss_cases() {
        let s = Ensemble::uniform_qubit_pair_orthogonal();
        let id = QuantumInstrument::identity_instrument(2);
        let (dchi, _) = entropy_defect_loss(&s, &id).unwrap();
        assert!(dchi.abs() < 1e-10);
        // matching von Neumann: Δχ = χ(s) - I(X:X̂) - 0 = 1 - 1 = 0
        let (dchi, dec) = entropy_defect_loss(&s, &vn2()).unwrap();
        assert!(dchi.abs() < 1e-10);
        assert!((dec.mutual_info - 1.0).abs() < 1e-10);
        assert!(dec.avg_conditional_chi.abs() < 1e-10);
    }

    #[test]
    fn lemma1_identity_on_dephasing_and_random() {
        let s = Ensemble::zero_plus_uniform();
        let deph = QuantumInstrument::from_channel("z", &Channel::dephasing(2));
        assert!(lemma1_identity_check(&s, &deph).unwrap() < 1e-9);
        // random pure ensembles vs random instruments
        let mut rng = random::rng_from_seed(137);
        for trial in 0..20 {
            let d = 2 + trial % 2;
            let k = 2 + trial % 3;
            let probs = random::simplex_point(&mut rng, k);
            let entries: Vec<crate::ensemble::EnsembleEntry> = probs
                .iter()
                .enumerate()
                .map(|(i, &p)| crate::ensemble::EnsembleEntry {
                    label: i.to_string(),
                    p,
                    state: DensityOperator::from_pure(&random::pure_state(&mut rng, d)),
                })
                .collect();
            let s = Ensemble::new(entries).unwrap();
            let instr = random_instrument(3100 + trial as u64, d, 2, 2).unwrap();
            let slack = lemma1_identity_check(&s, &instr).unwrap();
            assert!(slack < 1e-8, "Lemma-1 slack {slack} at trial {trial}");
        }
    }

    #[test]
    fn lemma1_identity_adversarial() {
        // near-orthogonal states and probabilities barely above τ_prob
        let eps = 1e-6;
        let s = Ensemble::new(vec![
            crate::ensemble::EnsembleEntry {
                label: "0".into(),
                p: 1.0 - 1e-9,
                state: DensityOperator::from_pure(&crate::qmat::PureState::basis(0, 2)),
            },
            crate::ensemble::EnsembleEntry {
                label: "tilted".into(),
                p: 1e-9,
                state: DensityOperator::from_pure(&crate::qmat::PureState::qubit_angle(
                    std::f64::consts::FRAC_PI_2 - eps,
                )),
            },
        ])
        .unwrap();
        for seed in 0..5 {
            let instr = random_instrument(7700 + seed, 2, 2, 2).unwrap();
            let slack = lemma1_identity_check(&s, &instr).unwrap();
            assert!(slack < 1e-8, "adversarial Lemma-1 slack {slack}");
        }
        let vn = vn2();
        assert!(lemma1_identity_check(&s, &vn).unwrap() < 1e-8);
    }

    #[test]
    fn bounds_f1_f2_values() {
        assert_eq!(bound_f1(0.0, 2, 2).unwrap(), 0.0);
        // 2·2·√0.01·log₂(2/0.01) = 0.4·log₂(200)
        let expect = 0.4 * 200f64.log2();
        assert!((bound_f1(0.01, 2, 2).unwrap() - expect).abs() < 1e-12);
        assert!((expect - 3.0575424759098897).abs() < 1e-12);
        assert!(bound_f1(0.5, 2, 2).is_err());

        assert_eq!(bound_f2(0.0, 2, 2).unwrap(), 0.0);
        assert!((bound_f2(0.25, 2, 2).unwrap() - 12.0).abs() < 1e-12);
        assert!(bound_f2(1.5, 2, 2).is_err());

        // monotone on the f₁ validity range, nonnegative on f₂'s
        for d in 2..=4usize {
            let mut last = 0.0;
            for i in 1..=100 {
                let x = F1_DOMAIN_MAX * i as f64 / 100.0;
                let v = bound_f1(x, 3, d).unwrap();
                assert!(v >= last - 1e-12);
                last = v;
            }
            for i in 1..=100 {
                let x = i as f64 / 100.0;
                assert!(bound_f2(x, 3, d).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn theorem_one_identity_instrument() {
        let s = Ensemble::zero_plus_uniform();
        let id = QuantumInstrument::identity_instrument(2);
        let rep = theorem_one_report(&s, &id, &OptimizerConfig::default()).unwrap();
        assert!(rep.lhs_av < 1e-9);
        assert!(rep.lhs_e < 1e-9);
        assert!(rep.delta.abs() < 1e-9);
        assert!(rep.zeta_positive);
        if let Some(rhs) = rep.rhs {
            assert!(rhs >= rep.delta - 1e-7);
        }
    }

    #[test]
    fn theorem_one_orthogonal_inequivalence() {
        // ζ = 0: lhs_av stays 0 while δ = 1 — the two disturbance notions
        // come apart and the rhs is flagged inapplicable
        let s = Ensemble::uniform_qubit_pair_orthogonal();
        let rep = theorem_one_report(&s, &vn2(), &OptimizerConfig::default()).unwrap();
        assert!(!rep.zeta_positive);
        assert!(rep.rhs.is_none());
        assert!(rep.lhs_av < 1e-9, "f_av = {}", rep.f_av);
        assert!((rep.delta - 1.0).abs() < 1e-9);
        assert!((rep.f_e - 0.5).abs() < 1e-3);
        assert!(rep.slack_a >= -1e-7);
        assert!(rep.slack_b >= -1e-7);
    }

    #[test]
    fn eq17_cases() {
        let id = QuantumInstrument::identity_instrument(2);
        let cfg = OptimizerConfig::default();
        assert!(eq17_lower_check(&mm2(), &id, &cfg).unwrap().abs() < 1e-6);
        let slack = eq17_lower_check(&mm2(), &vn2(), &cfg).unwrap();
        assert!((slack - 0.9375).abs() < 1e-3, "got {slack}");
    }

    #[test]
    fn eq18_cases() {
        let (slack, single) = eq18_check(&mm2(), &vn2()).unwrap();
        assert!(single);
        assert!(slack.abs() < 1e-8, "single-Kraus equality, got {slack}");
        let id = QuantumInstrument::identity_instrument(2);
        let (slack, single) = eq18_check(&mm2(), &id).unwrap();
        assert!(single && slack.abs() < 1e-9);
        // a branch with Kraus rank 2 opens a strict gap
        let noisy = QuantumInstrument::new(vec![
            OutcomeBranch::new(
                "noisy",
                Channel::completely_depolarizing(2)
                    .kraus()
                    .iter()
                    .map(|k| k * cr(0.5f64.sqrt()))
                    .collect(),
            )
            .unwrap(),
            OutcomeBranch::new("rest", vec![CMat::identity(2, 2) * cr(0.5f64.sqrt())]).unwrap(),
        ])
        .unwrap();
        let (slack, single) = eq18_check(&mm2(), &noisy).unwrap();
        assert!(!single);
        assert!(slack > 1e-3, "expected strict gap, got {slack}");
    }

    #[test]
    fn cw_sandwich_cases() {
        let id = QuantumInstrument::identity_instrument(2);
        let (lo, hi) = cw_sandwich_check(&mm2(), &id).unwrap();
        assert!(lo.abs() < 1e-8 && hi.abs() < 1e-8);
        // von Neumann on I/2: Δχ = 1/2, δ = 1 → slacks (1/2, 0)
        let (lo, hi) = cw_sandwich_check(&mm2(), &vn2()).unwrap();
        assert!((lo - 0.5).abs() < 1e-9, "lower slack {lo}");
        assert!(hi.abs() < 1e-9, "upper slack {hi}");
    }

    #[test]
    fn eq18_single_kraus_equality_random_d3() {
        for seed in 0..10 {
            let instr = random_instrument(3300 + seed, 3, 3, 1).unwrap();
            let mut rng = random::rng_from_seed(4400 + seed);
            let rho = random::density(&mut rng, 3);
            let (slack, single) = eq18_check(&rho, &instr).unwrap();
            assert!(single);
            assert!(slack.abs() < 1e-8, "seed {seed}: slack {slack}");
        }
    }

    #[test]
    fn redundant_kraus_split_changes_nothing() {
        // splitting E → {E/√2, E/√2} leaves the branch map unchanged
        let instr = random_instrument(151, 2, 2, 1).unwrap();
        let split = QuantumInstrument::new(
            instr
                .outcomes()
                .iter()
                .map(|b| {
                    let halved: Vec<CMat> = b
                        .kraus()
                        .iter()
                        .flat_map(|k| {
                            let h = k * cr(0.5f64.sqrt());
                            vec![h.clone(), h]
                        })
                        .collect();
                    OutcomeBranch::new(b.label(), halved).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let rho = mm2();
        let s = Ensemble::zero_plus_uniform();
        let cfg = OptimizerConfig::default();
        assert!(
            (quantum_disturbance(&rho, &instr).unwrap()
                - quantum_disturbance(&rho, &split).unwrap())
            .abs()
                < 1e-8
        );
        assert!(
            (quantum_info_gain(&rho, &instr).unwrap()
                - quantum_info_gain(&rho, &split).unwrap())
            .abs()
                < 1e-8
        );
        let fe_a = optimize_recovery_entanglement(&rho, &instr, &cfg).unwrap().fidelity;
        let fe_b = optimize_recovery_entanglement(&rho, &split, &cfg).unwrap().fidelity;
        assert!((fe_a - fe_b).abs() < 1e-4);
        let fav_a = optimize_recovery_average(&s, &instr, &cfg, &[]).unwrap().fidelity;
        let fav_b = optimize_recovery_average(&s, &split, &cfg, &[]).unwrap().fidelity;
        assert!((fav_a - fav_b).abs() < 1e-4);
        // and the split instrument still counts as single-Kraus
        assert!(split.is_single_kraus());
    }

    #[test]
    fn entanglement_fidelity_lower_bounds_every_decomposition() {
        // f_e(ϱ_s, M) ≤ f_av(s', M) for every pure decomposition s' of ϱ_s
        let cfg = OptimizerConfig::default();
        let mm = mm2();
        let decompositions = vec![
            Ensemble::uniform_qubit_pair_orthogonal(),
            Ensemble::uniform_pure(vec![
                crate::qmat::PureState::qubit_angle(std::f64::consts::FRAC_PI_4),
                crate::qmat::PureState::qubit_angle(-std::f64::consts::FRAC_PI_4),
            ])
            .unwrap(),
            crate::ensemble::christandl_winter_ensemble(&mm).unwrap(),
        ];
        for seed in [61u64, 62, 63] {
            let instr = random_instrument(seed, 2, 2, 2).unwrap();
            let fe = optimize_recovery_entanglement(&mm, &instr, &cfg).unwrap();
            for s in &decompositions {
                let fav = optimize_recovery_average(s, &instr, &cfg, &[&fe.recovery]).unwrap();
                assert!(
                    fe.fidelity <= fav.fidelity + 1e-7,
                    "seed {seed}: f_e {} > f_av {}",
                    fe.fidelity,
                    fav.fidelity
                );
            }
        }
    }

    #[test]
    fn disturbance_report_fields_consistent() {
        let s = Ensemble::zero_plus_uniform();
        let rep = disturbance_report(&s, &vn2(), &OptimizerConfig::default(), false).unwrap();
        let f_av = rep.f_av.expect("pure ensemble has f_av");
        assert!(rep.f_e <= f_av + 1e-7);
        assert!(rep.delta >= 0.0 && rep.delta <= 2.0 * rep.input_entropy + 1e-9);
        assert!(rep.delta_chi >= -1e-9);
        assert!(rep.recovery_chois.is_none());
        let dumped = disturbance_report(&s, &vn2(), &OptimizerConfig::default(), true).unwrap();
        let chois = dumped.recovery_chois.expect("dump requested");
        assert_eq!(chois.len(), 2);
        assert_eq!(chois[0].len(), 4);
    }
}
