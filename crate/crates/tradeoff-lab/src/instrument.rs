//! Quantum instruments, channels, Stinespring dilations and complements.
//!
//! An instrument is stored in Kraus form: one [`OutcomeBranch`] per
//! classical outcome, each branch a nonempty list of Kraus operators.
//! The branches jointly satisfy `Σ_m Σ_k E_{m,k}† E_{m,k} = I`.
//! [`QuantumInstrument::channelize`] turns the instrument into a channel
//! with hybrid quantum-classical output `Q' ⊗ X̂`, where the outcome
//! register `X̂` is an orthonormal computational basis of dimension
//! equal to the number of outcomes.

use rand::Rng;

use crate::qmat::{
    basis_ket, cr, eig_hermitian, partial_trace, trace_norm, CMat, DensityOperator, Keep,
};
use crate::random;
use crate::{tol, Error, Result};

/// One outcome of an instrument: a completely positive map in Kraus form.
#[derive(Debug, Clone)]
pub struct OutcomeBranch {
    label: String,
    kraus: Vec<CMat>,
}

impl OutcomeBranch {
    pub fn new(label: impl Into<String>, kraus: Vec<CMat>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidParams("branch needs ≥ 1 Kraus operator".into()));
        }
        let (r, c) = (kraus[0].nrows(), kraus[0].ncols());
        for k in &kraus {
            if k.nrows() != r || k.ncols() != c {
                return Err(Error::DimMismatch {
                    left: k.nrows() * k.ncols(),
                    right: r * c,
                    context: "Kraus operator shapes within a branch",
                });
            }
        }
        Ok(OutcomeBranch {
            label: label.into(),
            kraus,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn in_dim(&self) -> usize {
        self.kraus[0].ncols()
    }

    pub fn out_dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    /// `E_m(ρ) = Σ_k E ρ E†` (unnormalized).
    pub fn apply_raw(&self, rho: &CMat) -> CMat {
        let mut out = CMat::zeros(self.out_dim(), self.out_dim());
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        out
    }

    /// `E_m†(σ)` in the Heisenberg picture, `Σ_k E† σ E`.
    pub fn apply_adjoint_raw(&self, sigma: &CMat) -> CMat {
        let mut out = CMat::zeros(self.in_dim(), self.in_dim());
        for k in &self.kraus {
            out += k.adjoint() * sigma * k;
        }
        out
    }

    /// `Σ_k E† E`, the branch's POVM element.
    pub fn effect(&self) -> CMat {
        let mut out = CMat::zeros(self.in_dim(), self.in_dim());
        for k in &self.kraus {
            out += k.adjoint() * k;
        }
        out
    }

    /// Choi matrix on `in ⊗ out`, `Σ_{ij} |i⟩⟨j| ⊗ E(|i⟩⟨j|)`.
    pub fn choi(&self) -> CMat {
        choi_of_kraus(&self.kraus, self.in_dim(), self.out_dim())
    }

    /// Kraus rank from Choi eigenvalues at threshold `tol::RANK`; a branch
    /// listing the same operator twice still counts as rank one.
    pub fn kraus_rank(&self) -> usize {
        let choi = self.choi();
        let (vals, _) = eig_hermitian(&choi).expect("Choi is Hermitian");
        vals.iter().filter(|&&l| l > tol::RANK).count()
    }
}

pub(crate) fn choi_of_kraus(kraus: &[CMat], in_dim: usize, out_dim: usize) -> CMat {
    let n = in_dim * out_dim;
    let mut choi = CMat::zeros(n, n);
    for k in kraus {
        // vec(K) over (in, out): component (i*out + q) = K[q, i]
        let mut v = nalgebra::DVector::zeros(n);
        for i in 0..in_dim {
            for q in 0..out_dim {
                v[i * out_dim + q] = k[(q, i)];
            }
        }
        choi += &v * v.adjoint();
    }
    choi
}

/// A completely positive trace-preserving map in Kraus form.
#[derive(Debug, Clone)]
pub struct Channel {
    kraus: Vec<CMat>,
    in_dim: usize,
    out_dim: usize,
}

impl Channel {
    pub fn new(kraus: Vec<CMat>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidParams("channel needs ≥ 1 Kraus operator".into()));
        }
        let (out_dim, in_dim) = (kraus[0].nrows(), kraus[0].ncols());
        let mut norm = CMat::zeros(in_dim, in_dim);
        for k in &kraus {
            if k.nrows() != out_dim || k.ncols() != in_dim {
                return Err(Error::DimMismatch {
                    left: k.nrows(),
                    right: out_dim,
                    context: "Kraus operator shapes within a channel",
                });
            }
            norm += k.adjoint() * k;
        }
        let defect = trace_norm(&(norm - CMat::identity(in_dim, in_dim)))?;
        if defect > tol::HERM * (in_dim as f64) {
            return Err(Error::InvalidParams(format!(
                "channel is not trace-preserving (‖ΣK†K - I‖₁ = {defect:.3e})"
            )));
        }
        Ok(Channel {
            kraus,
            in_dim,
            out_dim,
        })
    }

    /// Skips the trace-preservation check for maps known TP by construction.
    pub(crate) fn new_unchecked(kraus: Vec<CMat>, in_dim: usize, out_dim: usize) -> Self {
        Channel {
            kraus,
            in_dim,
            out_dim,
        }
    }

    pub fn identity(d: usize) -> Self {
        Channel::new_unchecked(vec![CMat::identity(d, d)], d, d)
    }

    /// Computational-basis dephasing: Kraus `{|i⟩⟨i|}`.
    pub fn dephasing(d: usize) -> Self {
        let kraus = (0..d)
            .map(|i| {
                let e = basis_ket(i, d);
                &e * e.adjoint()
            })
            .collect();
        Channel::new_unchecked(kraus, d, d)
    }

    /// Completely depolarizing channel, `ρ ↦ I/d`.
    pub fn completely_depolarizing(d: usize) -> Self {
        let mut kraus = Vec::with_capacity(d * d);
        let scale = cr(1.0 / (d as f64).sqrt());
        for i in 0..d {
            for j in 0..d {
                let m = basis_ket(i, d) * basis_ket(j, d).adjoint() * scale;
                kraus.push(m);
            }
        }
        Channel::new_unchecked(kraus, d, d)
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn apply_raw(&self, rho: &CMat) -> CMat {
        let mut out = CMat::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        out
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.d() != self.in_dim {
            return Err(Error::DimMismatch {
                left: rho.d(),
                right: self.in_dim,
                context: "channel input",
            });
        }
        DensityOperator::from_output(self.apply_raw(rho.matrix()))
    }

    /// `(I_ref ⊗ E)` applied to an operator on `ref ⊗ in`.
    pub fn apply_to_right_factor(&self, big: &CMat, dim_ref: usize) -> Result<CMat> {
        let n_in = dim_ref * self.in_dim;
        if big.nrows() != n_in || big.ncols() != n_in {
            return Err(Error::DimMismatch {
                left: big.nrows(),
                right: n_in,
                context: "extended channel input",
            });
        }
        let n_out = dim_ref * self.out_dim;
        let mut out = CMat::zeros(n_out, n_out);
        let id = CMat::identity(dim_ref, dim_ref);
        for k in &self.kraus {
            let big_k = id.kronecker(k);
            out += &big_k * big * big_k.adjoint();
        }
        Ok(out)
    }

    pub fn choi(&self) -> CMat {
        choi_of_kraus(&self.kraus, self.in_dim, self.out_dim)
    }

    /// Stinespring dilation `V|φ⟩ = Σ_k (K_k|φ⟩) ⊗ |k⟩_A` with ancilla
    /// dimension equal to the Kraus count; `V†V = I` by trace preservation.
    pub fn stinespring(&self) -> StinespringDilation {
        let anc = self.kraus.len();
        let rows = self.out_dim * anc;
        let mut v = CMat::zeros(rows, self.in_dim);
        for (k_idx, k) in self.kraus.iter().enumerate() {
            for q in 0..self.out_dim {
                for i in 0..self.in_dim {
                    v[(q * anc + k_idx, i)] = k[(q, i)];
                }
            }
        }
        StinespringDilation {
            isometry: v,
            in_dim: self.in_dim,
            out_dim: self.out_dim,
            anc_dim: anc,
        }
    }
}

/// Isometry `V : Q → Q' ⊗ A` reproducing a channel as `Tr_A[VρV†]`.
#[derive(Debug, Clone)]
pub struct StinespringDilation {
    isometry: CMat,
    in_dim: usize,
    out_dim: usize,
    anc_dim: usize,
}

impl StinespringDilation {
    pub fn isometry(&self) -> &CMat {
        &self.isometry
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn anc_dim(&self) -> usize {
        self.anc_dim
    }

    /// `VρV†` on `Q' ⊗ A`.
    pub fn conjugate(&self, rho: &CMat) -> CMat {
        &self.isometry * rho * self.isometry.adjoint()
    }

    /// Tracing out the ancilla recovers the dilated channel.
    pub fn channel_output(&self, rho: &CMat) -> Result<CMat> {
        partial_trace(&self.conjugate(rho), self.out_dim, self.anc_dim, Keep::Left)
    }

    /// Complement channel `Ẽ : Q → A`, `Ẽ(ρ) = Tr_{Q'}[VρV†]`, with Kraus
    /// operators `F_q = (⟨q| ⊗ I_A) V`.
    pub fn complement_channel(&self) -> Channel {
        let mut kraus = Vec::with_capacity(self.out_dim);
        for q in 0..self.out_dim {
            let mut f = CMat::zeros(self.anc_dim, self.in_dim);
            for a in 0..self.anc_dim {
                for i in 0..self.in_dim {
                    f[(a, i)] = self.isometry[(q * self.anc_dim + a, i)];
                }
            }
            kraus.push(f);
        }
        Channel::new_unchecked(kraus, self.in_dim, self.anc_dim)
    }
}

/// Outcome-indexed family of CP maps summing to a channel.
#[derive(Debug, Clone)]
pub struct QuantumInstrument {
    outcomes: Vec<OutcomeBranch>,
    in_dim: usize,
    out_dim: usize,
}

impl QuantumInstrument {
    pub fn new(outcomes: Vec<OutcomeBranch>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidParams("instrument needs ≥ 1 outcome".into()));
        }
        let in_dim = outcomes[0].in_dim();
        let out_dim = outcomes[0].out_dim();
        let mut norm = CMat::zeros(in_dim, in_dim);
        for b in &outcomes {
            if b.in_dim() != in_dim || b.out_dim() != out_dim {
                return Err(Error::DimMismatch {
                    left: b.in_dim(),
                    right: in_dim,
                    context: "branch dimensions within an instrument",
                });
            }
            norm += b.effect();
        }
        let defect = trace_norm(&(norm - CMat::identity(in_dim, in_dim)))?;
        if defect > tol::HERM * (in_dim as f64) {
            return Err(Error::InvalidParams(format!(
                "instrument is not normalized (‖Σ E†E - I‖₁ = {defect:.3e})"
            )));
        }
        Ok(QuantumInstrument {
            outcomes,
            in_dim,
            out_dim,
        })
    }

    /// Trivial one-outcome instrument wrapping a channel.
    pub fn from_channel(label: impl Into<String>, ch: &Channel) -> Self {
        QuantumInstrument {
            outcomes: vec![OutcomeBranch {
                label: label.into(),
                kraus: ch.kraus().to_vec(),
            }],
            in_dim: ch.in_dim(),
            out_dim: ch.out_dim(),
        }
    }

    pub fn identity_instrument(d: usize) -> Self {
        QuantumInstrument::from_channel("id", &Channel::identity(d))
    }

    /// Computational-basis von Neumann instrument: branches `ρ ↦ |m⟩⟨m|ρ|m⟩⟨m|`.
    pub fn von_neumann(d: usize) -> Self {
        let outcomes = (0..d)
            .map(|m| {
                let e = basis_ket(m, d);
                OutcomeBranch {
                    label: m.to_string(),
                    kraus: vec![&e * e.adjoint()],
                }
            })
            .collect();
        QuantumInstrument {
            outcomes,
            in_dim: d,
            out_dim: d,
        }
    }

    /// Von Neumann instrument projecting onto the columns of `basis`.
    pub fn von_neumann_in_basis(basis: &CMat) -> Result<Self> {
        let d = basis.nrows();
        if basis.ncols() != d {
            return Err(Error::NotSquare {
                rows: basis.nrows(),
                cols: basis.ncols(),
            });
        }
        let outcomes = (0..d)
            .map(|m| {
                let v = basis.column(m).into_owned();
                OutcomeBranch {
                    label: m.to_string(),
                    kraus: vec![&v * v.adjoint()],
                }
            })
            .collect();
        QuantumInstrument::new(outcomes)
    }

    pub fn outcomes(&self) -> &[OutcomeBranch] {
        &self.outcomes
    }

    pub fn n_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn branch(&self, m: usize) -> &OutcomeBranch {
        &self.outcomes[m]
    }

    /// Outcome probability and normalized post-measurement state;
    /// `None` state when `p(m|ρ) ≤ tol::PROB`.
    pub fn apply_branch(
        &self,
        m: usize,
        rho: &DensityOperator,
    ) -> Result<(f64, Option<DensityOperator>)> {
        if rho.d() != self.in_dim {
            return Err(Error::DimMismatch {
                left: rho.d(),
                right: self.in_dim,
                context: "instrument input",
            });
        }
        let raw = self.outcomes[m].apply_raw(rho.matrix());
        let p = raw.trace().re.max(0.0);
        if p <= tol::PROB {
            return Ok((p, None));
        }
        let sigma = DensityOperator::from_output(raw * cr(1.0 / p))?;
        Ok((p.min(1.0), Some(sigma)))
    }

    pub fn outcome_probabilities(&self, rho: &DensityOperator) -> Result<Vec<f64>> {
        if rho.d() != self.in_dim {
            return Err(Error::DimMismatch {
                left: rho.d(),
                right: self.in_dim,
                context: "instrument input",
            });
        }
        Ok(self
            .outcomes
            .iter()
            .map(|b| (b.effect() * rho.matrix()).trace().re.clamp(0.0, 1.0))
            .collect())
    }

    /// The instrument as a channel `Q → Q' ⊗ X̂` with Kraus operators
    /// `E_{m,k} ⊗ |m⟩`; the outcome register is the computational basis of
    /// an `n_outcomes`-dimensional space, so outputs are exactly
    /// block-diagonal across register sectors.
    pub fn channelize(&self) -> Channel {
        let n = self.n_outcomes();
        let rows = self.out_dim * n;
        let mut kraus = Vec::new();
        for (m, branch) in self.outcomes.iter().enumerate() {
            for k in branch.kraus() {
                let mut big = CMat::zeros(rows, self.in_dim);
                for q in 0..self.out_dim {
                    for i in 0..self.in_dim {
                        big[(q * n + m, i)] = k[(q, i)];
                    }
                }
                kraus.push(big);
            }
        }
        Channel::new_unchecked(kraus, self.in_dim, rows)
    }

    /// Extracts the per-outcome diagonal blocks of an operator on `Q' ⊗ X̂`
    /// and verifies that off-register-block leakage stays below `tol::HERM`.
    pub fn register_blocks(&self, big: &CMat) -> Result<Vec<CMat>> {
        let n = self.n_outcomes();
        let dq = self.out_dim;
        if big.nrows() != dq * n {
            return Err(Error::DimMismatch {
                left: big.nrows(),
                right: dq * n,
                context: "hybrid output operator",
            });
        }
        let mut blocks = Vec::with_capacity(n);
        let mut leakage = 0.0f64;
        for m in 0..n {
            let mut block = CMat::zeros(dq, dq);
            for a in 0..dq {
                for b in 0..dq {
                    block[(a, b)] = big[(a * n + m, b * n + m)];
                }
            }
            blocks.push(block);
        }
        for a in 0..dq * n {
            for b in 0..dq * n {
                if a % n != b % n {
                    leakage = leakage.max(big[(a, b)].norm());
                }
            }
        }
        if leakage > tol::HERM {
            return Err(Error::InternalError(format!(
                "off-register-block leakage {leakage:.3e}"
            )));
        }
        Ok(blocks)
    }

    /// True iff every branch has Kraus rank one (multiplicity-free).
    pub fn is_single_kraus(&self) -> bool {
        self.outcomes.iter().all(|b| b.kraus_rank() <= 1)
    }

    /// Total number of listed Kraus operators across branches.
    pub fn total_kraus(&self) -> usize {
        self.outcomes.iter().map(|b| b.kraus().len()).sum()
    }
}

/// Haar-random instrument: a Haar isometry from `Q` into
/// `Q' ⊗ (outcome register) ⊗ (multiplicity register)`, partitioned into
/// branches. Normalization holds by the isometric condition. Deterministic
/// given the seed.
pub fn random_instrument(
    seed: u64,
    d: usize,
    n_outcomes: usize,
    kraus_per_outcome: usize,
) -> Result<QuantumInstrument> {
    if d < 1 || n_outcomes < 1 || kraus_per_outcome < 1 {
        return Err(Error::InvalidParams(
            "random_instrument parameters must be ≥ 1".into(),
        ));
    }
    let mut rng = random::rng_from_seed(seed);
    random_instrument_with(&mut rng, d, n_outcomes, kraus_per_outcome)
}

/// As [`random_instrument`] but drawing from a caller-provided RNG.
pub fn random_instrument_with(
    rng: &mut impl Rng,
    d: usize,
    n_outcomes: usize,
    kraus_per_outcome: usize,
) -> Result<QuantumInstrument> {
    if d < 1 || n_outcomes < 1 || kraus_per_outcome < 1 {
        return Err(Error::InvalidParams(
            "random_instrument parameters must be ≥ 1".into(),
        ));
    }
    let rows = d * n_outcomes * kraus_per_outcome;
    let v = random::haar_isometry(rng, rows, d);
    // row index (q, m, k) = q*(n*kp) + m*kp + k
    let mut outcomes = Vec::with_capacity(n_outcomes);
    for m in 0..n_outcomes {
        let mut kraus = Vec::with_capacity(kraus_per_outcome);
        for k_idx in 0..kraus_per_outcome {
            let mut k = CMat::zeros(d, d);
            for q in 0..d {
                for i in 0..d {
                    k[(q, i)] = v[(q * n_outcomes * kraus_per_outcome + m * kraus_per_outcome + k_idx, i)];
                }
            }
            kraus.push(k);
        }
        outcomes.push(OutcomeBranch::new(m.to_string(), kraus)?);
    }
    QuantumInstrument::new(outcomes)
}
