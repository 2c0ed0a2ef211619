//! Ensembles, POVMs, their duality, entropy defect and irreducibility.
//!
//! A source is an ensemble `s = {p(x), ϱ_x}`. For a purification `|Ψ⟩` of
//! its average state, ensembles with that average are in one-to-one
//! correspondence with POVMs on the reference via
//! `p(x) ϱ_x = Tr_R[(R_x ⊗ I) Ψ]`; [`ensemble_from_povm`] implements that
//! map. Because the purification is the canonical one of
//! [`crate::qmat::purify`], the resulting states are related to the POVM
//! vectors by a basis-dependent transpose; labels follow that convention.
//!
//! The irreducibility measures η and ζ maximize, over *complete paths*
//! (label sequences containing every state at least once, repeats allowed),
//! the bottleneck consecutive overlap divided by the path length. The
//! maximization is a subset dynamic program; an exhaustive walk enumerator
//! is kept alongside as an independent oracle.

use crate::instrument::QuantumInstrument;
use crate::qmat::{
    cr, eig_hermitian, partial_trace, trace_norm, BipartitePureState, CMat, DensityOperator,
    HilbertDim, Keep, PureState,
};
use crate::{tol, Error, Result};

/// One weighted state of an ensemble.
#[derive(Debug, Clone)]
pub struct EnsembleEntry {
    pub label: String,
    pub p: f64,
    pub state: DensityOperator,
}

/// Probability-weighted list of states on a common space.
#[derive(Debug, Clone)]
pub struct Ensemble {
    entries: Vec<EnsembleEntry>,
    dim: HilbertDim,
}

impl Ensemble {
    pub fn new(entries: Vec<EnsembleEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParams("ensemble needs ≥ 1 entry".into()));
        }
        let d = entries[0].state.d();
        let mut total = 0.0;
        for e in &entries {
            if e.state.d() != d {
                return Err(Error::DimMismatch {
                    left: e.state.d(),
                    right: d,
                    context: "ensemble state dimensions",
                });
            }
            if e.p <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "entry '{}' has nonpositive probability {}",
                    e.label, e.p
                )));
            }
            total += e.p;
        }
        if (total - 1.0).abs() > tol::TR {
            return Err(Error::InvalidParams(format!(
                "ensemble probabilities sum to {total}"
            )));
        }
        Ok(Ensemble {
            entries,
            dim: HilbertDim::new(d)?,
        })
    }

    /// Uniform ensemble of pure states, labels given by index.
    pub fn uniform_pure(states: Vec<PureState>) -> Result<Self> {
        let k = states.len();
        let entries = states
            .into_iter()
            .enumerate()
            .map(|(i, psi)| EnsembleEntry {
                label: i.to_string(),
                p: 1.0 / k as f64,
                state: DensityOperator::from_pure(&psi),
            })
            .collect();
        Ensemble::new(entries)
    }

    /// Uniform `{|0⟩, |1⟩}` on a qubit.
    pub fn uniform_qubit_pair_orthogonal() -> Self {
        Ensemble::uniform_pure(vec![PureState::basis(0, 2), PureState::basis(1, 2)])
            .expect("valid ensemble")
    }

    /// Uniform `{|0⟩, |+⟩}` on a qubit.
    pub fn zero_plus_uniform() -> Self {
        Ensemble::uniform_pure(vec![
            PureState::basis(0, 2),
            PureState::qubit_angle(std::f64::consts::FRAC_PI_4),
        ])
        .expect("valid ensemble")
    }

    /// `{p₀: |0⟩, 1-p₀: cos θ|0⟩ + sin θ|1⟩}`.
    pub fn two_state_angle(theta: f64, p0: f64) -> Result<Self> {
        Ensemble::new(vec![
            EnsembleEntry {
                label: "0".into(),
                p: p0,
                state: DensityOperator::from_pure(&PureState::basis(0, 2)),
            },
            EnsembleEntry {
                label: "theta".into(),
                p: 1.0 - p0,
                state: DensityOperator::from_pure(&PureState::qubit_angle(theta)),
            },
        ])
    }

    pub fn entries(&self) -> &[EnsembleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> HilbertDim {
        self.dim
    }

    pub fn d(&self) -> usize {
        self.dim.get()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.p).collect()
    }

    pub fn min_probability(&self) -> f64 {
        self.entries.iter().map(|e| e.p).fold(f64::INFINITY, f64::min)
    }

    /// `ϱ_s = Σ_x p(x) ϱ_x`.
    pub fn average_state(&self) -> DensityOperator {
        let d = self.d();
        let mut m = CMat::zeros(d, d);
        for e in &self.entries {
            m += e.state.matrix() * cr(e.p);
        }
        DensityOperator::from_output(m).expect("convex mix of states")
    }

    /// Entropy defect (Holevo χ): `S(ϱ_s) - Σ_x p(x) S(ϱ_x)` in bits.
    pub fn entropy_defect(&self) -> f64 {
        let avg = crate::qmat::von_neumann_entropy(&self.average_state());
        let cond: f64 = self
            .entries
            .iter()
            .map(|e| e.p * crate::qmat::von_neumann_entropy(&e.state))
            .sum();
        avg - cond
    }

    pub fn all_pure(&self, tolerance: f64) -> bool {
        self.entries.iter().all(|e| e.state.is_pure(tolerance))
    }

    /// Extracts the states as pure vectors; errors if any entry is mixed
    /// beyond `tolerance` purity gap.
    pub fn pure_states(&self, tolerance: f64) -> Result<Vec<PureState>> {
        self.entries
            .iter()
            .map(|e| {
                e.state.as_pure(tolerance).map_err(|_| {
                    Error::MixedStates(format!(
                        "entry '{}' has purity {:.9}",
                        e.label,
                        e.state.purity()
                    ))
                })
            })
            .collect()
    }
}

/// Outcome-indexed positive operators summing to identity.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<(String, CMat)>,
    dim: HilbertDim,
}

impl Povm {
    pub fn new(elements: Vec<(String, CMat)>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidParams("POVM needs ≥ 1 element".into()));
        }
        let d = elements[0].1.nrows();
        let mut sum = CMat::zeros(d, d);
        for (label, el) in &elements {
            if el.nrows() != d || el.ncols() != d {
                return Err(Error::DimMismatch {
                    left: el.nrows(),
                    right: d,
                    context: "POVM element dimensions",
                });
            }
            let (vals, _) = eig_hermitian(el)?;
            if let Some(&min) = vals.first() {
                if min < -tol::PSD {
                    return Err(Error::InvalidParams(format!(
                        "POVM element '{label}' has negative eigenvalue {min:.3e}"
                    )));
                }
            }
            sum += el;
        }
        let defect = trace_norm(&(sum - CMat::identity(d, d)))?;
        if defect > tol::HERM * d as f64 {
            return Err(Error::InvalidParams(format!(
                "POVM does not resolve identity (defect {defect:.3e})"
            )));
        }
        Ok(Povm {
            elements,
            dim: HilbertDim::new(d)?,
        })
    }

    pub fn computational(d: usize) -> Self {
        let elements = (0..d)
            .map(|i| (i.to_string(), PureState::basis(i, d).projector()))
            .collect();
        Povm::new(elements).expect("projective POVM")
    }

    /// Rank-one POVM from the columns of one or more bases, each basis
    /// weighted by `1/n_bases`.
    pub fn from_bases(bases: &[CMat]) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::InvalidParams("need ≥ 1 basis".into()));
        }
        let n = bases.len() as f64;
        let d = bases[0].nrows();
        let mut elements = Vec::new();
        for (b_idx, basis) in bases.iter().enumerate() {
            for j in 0..d {
                let v = basis.column(j).into_owned();
                elements.push((format!("b{b_idx}v{j}"), &v * v.adjoint() * cr(1.0 / n)));
            }
        }
        Povm::new(elements)
    }

    pub fn elements(&self) -> &[(String, CMat)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> HilbertDim {
        self.dim
    }

    pub fn d(&self) -> usize {
        self.dim.get()
    }

    /// Outcome distribution of measuring `rho`.
    pub fn probabilities(&self, rho: &DensityOperator) -> Result<Vec<f64>> {
        if rho.d() != self.d() {
            return Err(Error::DimMismatch {
                left: rho.d(),
                right: self.d(),
                context: "POVM measurement input",
            });
        }
        Ok(self
            .elements
            .iter()
            .map(|(_, el)| (el * rho.matrix()).trace().re.max(0.0))
            .collect())
    }
}

/// Fourier matrix `F_{kj} = ω^{kj}/√d`; its columns form a basis mutually
/// unbiased with the computational one in any dimension.
pub fn fourier_matrix(d: usize) -> CMat {
    let omega = 2.0 * std::f64::consts::PI / d as f64;
    let scale = 1.0 / (d as f64).sqrt();
    CMat::from_fn(d, d, |k, j| {
        let phase = omega * (k * j) as f64;
        crate::qmat::c(phase.cos() * scale, phase.sin() * scale)
    })
}

/// Ensemble induced on the system by measuring the reference of `psi` with
/// `povm` (Eq.-(5)-style duality): `p(x) ϱ_x = Tr_R[(R_x ⊗ I) Ψ]`.
/// Elements with probability ≤ `tol::PROB` are dropped.
pub fn ensemble_from_povm(psi: &BipartitePureState, povm: &Povm) -> Result<Ensemble> {
    let (d_r, d_q) = psi.dims();
    if povm.d() != d_r {
        return Err(Error::DimMismatch {
            left: povm.d(),
            right: d_r,
            context: "POVM acts on the reference factor",
        });
    }
    let proj = psi.projector();
    let id_q = CMat::identity(d_q, d_q);
    let mut entries = Vec::new();
    for (label, el) in povm.elements() {
        let weighted = el.kronecker(&id_q) * &proj;
        let raw = partial_trace(&weighted, d_r, d_q, Keep::Right)?;
        let p = raw.trace().re;
        if p > tol::PROB {
            entries.push(EnsembleEntry {
                label: label.clone(),
                p,
                state: DensityOperator::from_output(raw * cr(1.0 / p))?,
            });
        }
    }
    // renormalize away the dropped τ_prob mass
    let total: f64 = entries.iter().map(|e| e.p).sum();
    for e in &mut entries {
        e.p /= total;
    }
    let ensemble = Ensemble::new(entries)?;
    let avg = ensemble.average_state();
    let expect = psi.marginal(Keep::Right)?;
    let defect = trace_norm(&(avg.matrix() - expect.matrix()))?;
    if defect > 1e-9 {
        return Err(Error::InternalError(format!(
            "induced ensemble average deviates from marginal by {defect:.3e}"
        )));
    }
    Ok(ensemble)
}

/// Eigenbasis + mutually-unbiased-basis ensemble for a full-rank state:
/// a rank-one POVM with `2d` elements (each basis weighted by 1/2) measured
/// on the reference of the canonical purification, giving `2d` pure states
/// averaging to `rho`.
pub fn christandl_winter_ensemble(rho: &DensityOperator) -> Result<Ensemble> {
    let d = rho.d();
    let spectrum = rho.spectrum()?;
    if let Some(&min) = spectrum.first() {
        if min < tol::EIG {
            return Err(Error::RankDeficient { eigenvalue: min });
        }
    }
    let psi = crate::qmat::purify(rho)?;
    let rho_r = psi.marginal(Keep::Left)?;
    let (_, e_basis) = eig_hermitian(rho_r.matrix())?;
    let f_basis = &e_basis * fourier_matrix(d);
    let mut elements = Vec::with_capacity(2 * d);
    for j in 0..d {
        let v = e_basis.column(j).into_owned();
        elements.push((format!("e{j}"), &v * v.adjoint() * cr(0.5)));
    }
    for j in 0..d {
        let v = f_basis.column(j).into_owned();
        elements.push((format!("f{j}"), &v * v.adjoint() * cr(0.5)));
    }
    let povm = Povm::new(elements)?;
    ensemble_from_povm(&psi, &povm)
}

/// A sequence of ensemble labels containing every state at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletePath {
    indices: Vec<usize>,
    labels: Vec<String>,
}

impl CompletePath {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Result of the η/ζ optimization; `zeta = eta · min_p` exactly.
#[derive(Debug, Clone)]
pub struct IrreducibilityResult {
    pub eta: f64,
    pub zeta: f64,
    pub witness_path: CompletePath,
    pub min_p: f64,
}

fn overlap_matrix(states: &[PureState]) -> Vec<Vec<f64>> {
    let k = states.len();
    let mut w = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let o = states[i].overlap(&states[j]).norm();
                // roundoff must not manufacture irreducibility
                w[i][j] = if o < tol::OVERLAP { 0.0 } else { o };
            }
        }
    }
    w
}

fn path_from_indices(indices: Vec<usize>, s: &Ensemble) -> CompletePath {
    let labels = indices
        .iter()
        .map(|&i| s.entries()[i].label.clone())
        .collect();
    CompletePath { indices, labels }
}

/// η(s): maximum over complete paths of (bottleneck overlap) / (length).
///
/// Dynamic program over (visited subset, last state, walk length) keeping
/// the best achievable bottleneck per tuple. Walks may repeat states. The
/// default cap `n_max = K²` is sufficient: at any overlap threshold a
/// complete walk of at most `1 + (K-1)²` states exists whenever one exists
/// at all, and longer walks only lower the ratio. Single-state ensembles
/// return η = 1 by convention (the bottleneck is an empty minimum).
///
/// Returns η = 0 with an empty witness when the overlap graph is
/// disconnected. Errors with [`Error::MixedStates`] on impure entries.
pub fn eta(s: &Ensemble, n_max: Option<usize>) -> Result<IrreducibilityResult> {
    let states = s.pure_states(1e-9)?;
    let k = states.len();
    let min_p = s.min_probability();
    if k == 1 {
        let witness = path_from_indices(vec![0], s);
        return Ok(IrreducibilityResult {
            eta: 1.0,
            zeta: min_p,
            witness_path: witness,
            min_p,
        });
    }
    if k > 20 {
        return Err(Error::InvalidParams(format!(
            "complete-path optimization is exponential in the ensemble size ({k} states)"
        )));
    }
    let cap = n_max.unwrap_or(k * k).max(k);
    let w = overlap_matrix(&states);
    let full: usize = (1usize << k) - 1;
    let n_masks = 1usize << k;

    // value[mask * k + last]: best bottleneck over walks of the current
    // length visiting exactly `mask` and ending at `last`
    let neg = f64::NEG_INFINITY;
    let mut value = vec![neg; n_masks * k];
    for i in 0..k {
        value[(1usize << i) * k + i] = f64::INFINITY;
    }
    // parent[len][mask*k + last] = (predecessor mask, predecessor state)
    let mut parents: Vec<Vec<(u32, u32)>> = vec![vec![(u32::MAX, u32::MAX); n_masks * k]];

    let mut best: Option<(f64, usize, usize)> = None; // (eta, length, last)

    for len in 2..=cap {
        let mut next = vec![neg; n_masks * k];
        let mut parent = vec![(u32::MAX, u32::MAX); n_masks * k];
        for mask in 1..=full {
            for last in 0..k {
                let v = value[mask * k + last];
                if v == neg {
                    continue;
                }
                for (j, &weight) in w[last].iter().enumerate() {
                    if weight <= 0.0 {
                        continue;
                    }
                    let nv = v.min(weight);
                    let nmask = mask | (1usize << j);
                    let slot = nmask * k + j;
                    // strict improvement keeps the first (lowest-index) writer
                    // on ties, making the witness deterministic
                    if nv > next[slot] {
                        next[slot] = nv;
                        parent[slot] = (mask as u32, last as u32);
                    }
                }
            }
        }
        for last in 0..k {
            let v = next[full * k + last];
            if v > 0.0 && v != neg {
                let candidate = v / len as f64;
                let better = match best {
                    None => true,
                    Some((b, bl, blast)) => {
                        candidate > b || (candidate == b && (len < bl || (len == bl && last < blast)))
                    }
                };
                if better {
                    best = Some((candidate, len, last));
                }
            }
        }
        parents.push(parent);
        value = next;
    }

    match best {
        None => Ok(IrreducibilityResult {
            eta: 0.0,
            zeta: 0.0,
            witness_path: CompletePath {
                indices: vec![],
                labels: vec![],
            },
            min_p,
        }),
        Some((eta_val, len, last)) => {
            let mut indices = vec![0usize; len];
            let mut mask = full;
            let mut cur = last;
            for step in (0..len).rev() {
                indices[step] = cur;
                if step == 0 {
                    break;
                }
                let (pmask, plast) = parents[step][mask * k + cur];
                debug_assert!(plast != u32::MAX, "witness backtrack broke");
                mask = pmask as usize;
                cur = plast as usize;
            }
            let witness = path_from_indices(indices, s);
            Ok(IrreducibilityResult {
                eta: eta_val,
                zeta: eta_val * min_p,
                witness_path: witness,
                min_p,
            })
        }
    }
}

/// ζ(s) = η(s) · min_x p(x).
pub fn zeta(s: &Ensemble, n_max: Option<usize>) -> Result<IrreducibilityResult> {
    eta(s, n_max)
}

/// Largest walk cap (≤ K²) for which exhaustive enumeration stays cheap
/// (~K^cap prefixes bounded by 2·10⁶): oracle runs use matched caps on
/// both the DP and the enumerator.
pub fn exhaustive_cap(k: usize) -> usize {
    let mut l = 1usize;
    let mut count = k as f64;
    while l < k * k && count * k as f64 <= 2e6 {
        l += 1;
        count *= k as f64;
    }
    l.max(k)
}

/// Brute-force enumeration of every walk of length ≤ `n_max`; independent
/// oracle for the DP. Exponential in `n_max` — use small caps.
pub fn eta_exhaustive(s: &Ensemble, n_max: usize) -> Result<f64> {
    let states = s.pure_states(1e-9)?;
    let k = states.len();
    if k == 1 {
        return Ok(1.0);
    }
    let w = overlap_matrix(&states);
    let full: usize = (1usize << k) - 1;
    let mut best = 0.0f64;
    // stack of (mask, last, bottleneck, length)
    let mut stack: Vec<(usize, usize, f64, usize)> = (0..k)
        .map(|i| (1usize << i, i, f64::INFINITY, 1usize))
        .collect();
    while let Some((mask, last, bottleneck, len)) = stack.pop() {
        if mask == full && len >= 2 && bottleneck > 0.0 {
            let candidate = bottleneck / len as f64;
            if candidate > best {
                best = candidate;
            }
        }
        if len == n_max {
            continue;
        }
        for (j, &weight) in w[last].iter().enumerate() {
            let nb = bottleneck.min(weight);
            stack.push((mask | (1usize << j), j, nb, len + 1));
        }
    }
    Ok(best)
}

/// Conditional output ensemble after outcome `m`:
/// `s̄_m = {p(x|m), E_m(ϱ_x)/p(m|x)}`, average `E_m(ϱ_s)/p(m)`.
/// Returns `None` when `p(m) ≤ tol::PROB`.
pub fn conditional_output_ensemble(
    s: &Ensemble,
    instr: &QuantumInstrument,
    m: usize,
) -> Result<Option<Ensemble>> {
    if s.d() != instr.in_dim() {
        return Err(Error::DimMismatch {
            left: s.d(),
            right: instr.in_dim(),
            context: "ensemble vs instrument input",
        });
    }
    let branch = instr.branch(m);
    let mut entries = Vec::new();
    let mut p_m = 0.0;
    for e in s.entries() {
        let raw = branch.apply_raw(e.state.matrix());
        let p_mx = raw.trace().re.max(0.0);
        p_m += e.p * p_mx;
        if e.p * p_mx > tol::PROB {
            entries.push(EnsembleEntry {
                label: e.label.clone(),
                p: e.p * p_mx,
                state: DensityOperator::from_output(raw * cr(1.0 / p_mx))?,
            });
        }
    }
    if p_m <= tol::PROB || entries.is_empty() {
        return Ok(None);
    }
    for e in &mut entries {
        e.p /= p_m;
    }
    let total: f64 = entries.iter().map(|e| e.p).sum();
    for e in &mut entries {
        e.p /= total;
    }
    Ok(Some(Ensemble::new(entries)?))
}

/// Image ensemble `{p(x), E(ϱ_x)}` of an ensemble through a channel.
pub fn image_ensemble(s: &Ensemble, ch: &crate::instrument::Channel) -> Result<Ensemble> {
    let entries = s
        .entries()
        .iter()
        .map(|e| {
            Ok(EnsembleEntry {
                label: e.label.clone(),
                p: e.p,
                state: ch.apply(&e.state)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(entries)
}
