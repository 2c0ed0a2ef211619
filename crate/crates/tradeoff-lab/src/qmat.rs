//! Dense complex-matrix layer and quantum-state primitives.
//!
//! Everything downstream (instruments, ensembles, information measures)
//! consumes the types and operations defined here. Matrices are
//! [`nalgebra::DMatrix`] over `Complex<f64>`; dimensions stay small
//! (d ≤ ~16), so dense eigendecompositions are used throughout.
//!
//! Conventions:
//! - all logarithms are base 2 and all entropic quantities are in bits;
//! - eigenvalues are reported in ascending order with deterministic
//!   (index) tie-breaks;
//! - bipartite indices are row-major, `index = left * dim_right + right`,
//!   matching [`DMatrix::kronecker`] with the left factor first.

use nalgebra::{Complex, DMatrix, DVector};

use crate::{tol, Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Dimension of a finite Hilbert space. The purifying reference space is
/// always chosen isomorphic to the system space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HilbertDim(usize);

impl HilbertDim {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("Hilbert dimension must be ≥ 1".into()));
        }
        Ok(HilbertDim(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl std::fmt::Display for HilbertDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Complex trace.
pub fn trace(m: &CMat) -> C64 {
    m.trace()
}

/// Real part of the trace (the imaginary part is checked to be roundoff).
pub fn trace_re(m: &CMat) -> f64 {
    m.trace().re
}

/// Max elementwise deviation from Hermiticity.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

pub fn is_hermitian(m: &CMat, tolerance: f64) -> bool {
    m.is_square() && hermiticity_defect(m) <= tolerance
}

/// `(m + m†)/2`, exact Hermitian part.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * cr(0.5)
}

/// Computational basis column vector `|i⟩` in dimension `d`.
pub fn basis_ket(i: usize, d: usize) -> CVec {
    let mut v = CVec::zeros(d);
    v[i] = cr(1.0);
    v
}

/// Outer product `|a⟩⟨b|`.
pub fn outer(a: &CVec, b: &CVec) -> CMat {
    a * b.adjoint()
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending, paired
/// orthonormal eigenvector columns. Reconstruction `VΛV†` is accurate to
/// ~1e-14 at the dimensions used here.
pub fn eig_hermitian(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let defect = hermiticity_defect(m);
    if defect > tol::HERM {
        return Err(Error::NonHermitian { deviation: defect });
    }
    let se = hermitian_part(m).symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    // ascending eigenvalues, index tie-break keeps the order deterministic
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Ok((eigenvalues, vectors))
}

/// `f(m)` for Hermitian `m` via the spectral decomposition, applying `f`
/// to eigenvalues.
pub fn hermitian_map(m: &CMat, f: impl Fn(f64) -> f64) -> Result<CMat> {
    let (vals, vecs) = eig_hermitian(m)?;
    let n = vals.len();
    let mut scaled = vecs.clone();
    for j in 0..n {
        let s = cr(f(vals[j]));
        for i in 0..n {
            scaled[(i, j)] *= s;
        }
    }
    Ok(&scaled * vecs.adjoint())
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below
/// `tol::EIG` are treated as exact zeros; sqrt would otherwise amplify
/// order-1e-17 roundoff on projector spectra to ~1e-9 errors.
pub fn sqrt_psd(m: &CMat) -> Result<CMat> {
    hermitian_map(m, |l| if l > tol::EIG { l.sqrt() } else { 0.0 })
}

/// Pseudo-inverse square root of a Hermitian PSD matrix; eigenvalues below
/// `tol::EIG` are treated as exact zeros.
pub fn inv_sqrt_psd(m: &CMat) -> Result<CMat> {
    hermitian_map(m, |l| if l > tol::EIG { 1.0 / l.sqrt() } else { 0.0 })
}

/// Trace norm `‖m‖₁ = Tr|m| = Σ singular values` of a square matrix.
pub fn trace_norm(m: &CMat) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let svd = m.clone().svd(false, false);
    Ok(svd.singular_values.iter().sum())
}

/// Which tensor factor [`partial_trace`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    Left,
    Right,
}

/// Partial trace of an operator on a bipartite space with factor
/// dimensions `(dim_left, dim_right)`, row-major indexing.
pub fn partial_trace(m: &CMat, dim_left: usize, dim_right: usize, keep: Keep) -> Result<CMat> {
    let n = dim_left * dim_right;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimMismatch {
            left: m.nrows(),
            right: n,
            context: "partial trace factorization",
        });
    }
    match keep {
        Keep::Left => {
            let mut out = CMat::zeros(dim_left, dim_left);
            for a in 0..dim_left {
                for b in 0..dim_left {
                    let mut acc = cr(0.0);
                    for k in 0..dim_right {
                        acc += m[(a * dim_right + k, b * dim_right + k)];
                    }
                    out[(a, b)] = acc;
                }
            }
            Ok(out)
        }
        Keep::Right => {
            let mut out = CMat::zeros(dim_right, dim_right);
            for a in 0..dim_right {
                for b in 0..dim_right {
                    let mut acc = cr(0.0);
                    for k in 0..dim_left {
                        acc += m[(k * dim_right + a, k * dim_right + b)];
                    }
                    out[(a, b)] = acc;
                }
            }
            Ok(out)
        }
    }
}

/// A normalized pure state vector.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: CVec,
}

impl PureState {
    pub fn new(amplitudes: CVec) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol::TR {
            return Err(Error::InvalidState(format!(
                "pure state norm {norm} deviates from 1"
            )));
        }
        Ok(PureState { amplitudes })
    }

    /// Normalizes the given vector; errors on (near-)zero input.
    pub fn normalized(v: CVec) -> Result<Self> {
        let norm = v.norm();
        if norm < tol::EIG {
            return Err(Error::InvalidState("cannot normalize zero vector".into()));
        }
        Ok(PureState {
            amplitudes: v / cr(norm),
        })
    }

    pub fn basis(i: usize, d: usize) -> Self {
        PureState {
            amplitudes: basis_ket(i, d),
        }
    }

    /// `cos θ |0⟩ + sin θ |1⟩` on a qubit.
    pub fn qubit_angle(theta: f64) -> Self {
        PureState {
            amplitudes: CVec::from_vec(vec![cr(theta.cos()), cr(theta.sin())]),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    pub fn projector(&self) -> CMat {
        outer(&self.amplitudes, &self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &PureState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

/// A positive, unit-trace Hermitian operator on a labeled space.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: CMat,
    dim: HilbertDim,
}

impl DensityOperator {
    /// Validates Hermiticity (≤ `tol::HERM`), positivity (eigenvalues
    /// ≥ -`tol::PSD`) and unit trace (± `tol::TR`).
    pub fn new(matrix: CMat) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let defect = hermiticity_defect(&matrix);
        if defect > tol::HERM {
            return Err(Error::NonHermitian { deviation: defect });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::TR || tr.im.abs() > tol::TR {
            return Err(Error::InvalidState(format!(
                "trace {:.12} + {:.3e}i deviates from 1",
                tr.re, tr.im
            )));
        }
        let (vals, _) = eig_hermitian(&matrix)?;
        if let Some(&min) = vals.first() {
            if min < -tol::PSD {
                return Err(Error::InvalidState(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        let dim = HilbertDim::new(matrix.nrows())?;
        Ok(DensityOperator { matrix, dim })
    }

    /// Internal constructor for operators that are states by construction
    /// (marginals, channel outputs). Symmetrizes, renormalizes the trace and
    /// fails only on gross violations, so conditional states with tiny
    /// weights do not trip the strict tolerance checks.
    pub(crate) fn from_output(matrix: CMat) -> Result<Self> {
        let m = hermitian_part(&matrix);
        let tr = m.trace().re;
        if !(tr.is_finite()) || (tr - 1.0).abs() > 1e-6 {
            return Err(Error::InternalError(format!(
                "constructed state has trace {tr:.12}"
            )));
        }
        let m = m * cr(1.0 / tr);
        let dim = HilbertDim::new(m.nrows())?;
        Ok(DensityOperator { matrix: m, dim })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        DensityOperator {
            matrix: psi.projector(),
            dim: HilbertDim(psi.dim()),
        }
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityOperator {
            matrix: CMat::identity(d, d) * cr(1.0 / d as f64),
            dim: HilbertDim(d),
        }
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let d = probs.len();
        let mut m = CMat::zeros(d, d);
        for (i, &p) in probs.iter().enumerate() {
            m[(i, i)] = cr(p);
        }
        DensityOperator::new(m)
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dim(&self) -> HilbertDim {
        self.dim
    }

    pub fn d(&self) -> usize {
        self.dim.get()
    }

    /// Ascending eigenvalues.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(eig_hermitian(&self.matrix)?.0)
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn is_pure(&self, tolerance: f64) -> bool {
        (self.purity() - 1.0).abs() <= tolerance
    }

    /// Dominant eigenvector as a pure state; errors if the state is not
    /// pure within `tolerance` (purity gap).
    pub fn as_pure(&self, tolerance: f64) -> Result<PureState> {
        if !self.is_pure(tolerance) {
            return Err(Error::MixedStates(format!(
                "purity {:.12} below 1",
                self.purity()
            )));
        }
        let (vals, vecs) = eig_hermitian(&self.matrix)?;
        let top = vals.len() - 1;
        let v = vecs.column(top).into_owned();
        PureState::normalized(v)
    }
}

/// Pure state on reference ⊗ system, row-major index `r * dim_right + q`.
#[derive(Debug, Clone)]
pub struct BipartitePureState {
    amplitudes: CVec,
    dim_left: HilbertDim,
    dim_right: HilbertDim,
}

impl BipartitePureState {
    pub fn new(amplitudes: CVec, dim_left: usize, dim_right: usize) -> Result<Self> {
        if amplitudes.len() != dim_left * dim_right {
            return Err(Error::DimMismatch {
                left: amplitudes.len(),
                right: dim_left * dim_right,
                context: "bipartite amplitude length",
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol::TR {
            return Err(Error::InvalidState(format!(
                "bipartite state norm {norm} deviates from 1"
            )));
        }
        Ok(BipartitePureState {
            amplitudes,
            dim_left: HilbertDim::new(dim_left)?,
            dim_right: HilbertDim::new(dim_right)?,
        })
    }

    /// `(|00⟩ + |11⟩ + …)/√d`.
    pub fn maximally_entangled(d: usize) -> Self {
        let mut v = CVec::zeros(d * d);
        let a = cr(1.0 / (d as f64).sqrt());
        for i in 0..d {
            v[i * d + i] = a;
        }
        BipartitePureState {
            amplitudes: v,
            dim_left: HilbertDim(d),
            dim_right: HilbertDim(d),
        }
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_left.get(), self.dim_right.get())
    }

    pub fn projector(&self) -> CMat {
        outer(&self.amplitudes, &self.amplitudes)
    }

    /// Marginal on the kept factor.
    pub fn marginal(&self, keep: Keep) -> Result<DensityOperator> {
        let m = partial_trace(
            &self.projector(),
            self.dim_left.get(),
            self.dim_right.get(),
            keep,
        )?;
        DensityOperator::from_output(m)
    }

    /// Applies `u ⊗ I` (unitary on the left factor).
    pub fn apply_left(&self, u: &CMat) -> Result<BipartitePureState> {
        let (dl, dr) = self.dims();
        if u.nrows() != dl || u.ncols() != dl {
            return Err(Error::DimMismatch {
                left: u.nrows(),
                right: dl,
                context: "unitary on left factor",
            });
        }
        let mut out = CVec::zeros(dl * dr);
        for r in 0..dl {
            for q in 0..dr {
                let mut acc = cr(0.0);
                for rp in 0..dl {
                    acc += u[(r, rp)] * self.amplitudes[rp * dr + q];
                }
                out[r * dr + q] = acc;
            }
        }
        BipartitePureState::new(out, dl, dr)
    }
}

/// Shannon entropy (bits) of a nonnegative vector that sums to ~1; entries
/// below `tol::EIG` contribute zero.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > tol::EIG)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Von Neumann entropy `S(ρ) = -Tr[ρ log₂ ρ]` in bits.
///
/// Eigenvalues in `[-tol::PSD, 0)` are clamped to zero and the spectrum is
/// renormalized before taking logs, guarding against roundoff negatives.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    entropy_of_hermitian(rho.matrix()).expect("validated state")
}

/// Entropy of a raw Hermitian PSD matrix with unit trace (used internally
/// for marginals that are states by construction).
pub(crate) fn entropy_of_hermitian(m: &CMat) -> Result<f64> {
    let (vals, _) = eig_hermitian(m)?;
    let clamped: Vec<f64> = vals.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidState("zero spectrum".into()));
    }
    Ok(shannon_entropy(
        &clamped.iter().map(|&l| l / total).collect::<Vec<_>>(),
    ))
}

/// Uhlmann fidelity `F(ρ,σ) = (Tr|√ρ √σ|)²`, symmetric, in [0,1].
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.d() != sigma.d() {
        return Err(Error::DimMismatch {
            left: rho.d(),
            right: sigma.d(),
            context: "fidelity arguments",
        });
    }
    let a = sqrt_psd(rho.matrix())?;
    let b = sqrt_psd(sigma.matrix())?;
    let f = trace_norm(&(&a * &b))?;
    Ok((f * f).clamp(0.0, 1.0 + 1e-9).min(1.0))
}

/// Quantum relative entropy `D(ρ‖σ) = Tr[ρ log₂ ρ - ρ log₂ σ]` in bits;
/// `+∞` when the support of ρ is not contained in the support of σ
/// (membership tested at `tol::EIG`).
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.d() != sigma.d() {
        return Err(Error::DimMismatch {
            left: rho.d(),
            right: sigma.d(),
            context: "relative entropy arguments",
        });
    }
    let (svals, svecs) = eig_hermitian(sigma.matrix())?;
    // weight of ρ on the null space of σ
    let mut null_weight = 0.0;
    for (j, &l) in svals.iter().enumerate() {
        if l <= tol::EIG {
            let v = svecs.column(j);
            let w = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
            null_weight += w.max(0.0);
        }
    }
    if null_weight > 1e-10 {
        return Ok(f64::INFINITY);
    }
    // -S(ρ) - Tr[ρ log₂ σ] evaluated in σ's eigenbasis
    let s_rho = entropy_of_hermitian(rho.matrix())?;
    let mut cross = 0.0;
    for (j, &l) in svals.iter().enumerate() {
        if l > tol::EIG {
            let v = svecs.column(j);
            let w = (v.adjoint() * rho.matrix() * v)[(0, 0)].re.max(0.0);
            cross += w * l.log2();
        }
    }
    Ok((-s_rho - cross).max(0.0))
}

/// Canonical purification `|Ψ⟩ = Σ_i √λ_i |i⟩_R |v_i⟩_Q`.
///
/// Eigenpairs of ρ are taken in ascending-eigenvalue order (index
/// tie-break); pairs with λ ≤ `tol::EIG` are dropped and reference basis
/// indices 0,1,… are assigned to the kept pairs in that order, so a pure
/// input purifies to `|0⟩_R ⊗ |ψ⟩_Q`. The reference is isomorphic to the
/// system. Downstream quantities (ι, δ, F̄_e) are purification-independent;
/// fixing the construction just makes runs reproducible.
pub fn purify(rho: &DensityOperator) -> Result<BipartitePureState> {
    let d = rho.d();
    let (vals, vecs) = eig_hermitian(rho.matrix())?;
    let mut amps = CVec::zeros(d * d);
    let mut r_index = 0usize;
    for (j, &l) in vals.iter().enumerate() {
        if l > tol::EIG {
            let coeff = cr(l.sqrt());
            for q in 0..d {
                amps[r_index * d + q] = coeff * vecs[(q, j)];
            }
            r_index += 1;
        }
    }
    if r_index == 0 {
        return Err(Error::InvalidState("state has empty support".into()));
    }
    let norm = amps.norm();
    amps /= cr(norm);
    BipartitePureState::new(amps, d, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qubit_plus() -> PureState {
        PureState::qubit_angle(std::f64::consts::FRAC_PI_4)
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let (vals, _) = eig_hermitian(&CMat::identity(2, 2)).unwrap();
        assert_eq!(vals, vec![1.0, 1.0]);
        let m = DensityOperator::diagonal(&[0.25, 0.75]).unwrap();
        let (vals, _) = eig_hermitian(m.matrix()).unwrap();
        assert!((vals[0] - 0.25).abs() < 1e-14 && (vals[1] - 0.75).abs() < 1e-14);
    }

    #[test]
    fn eig_random_hermitian_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random::ginibre(&mut rng, 4, 4);
            let h = hermitian_part(&g);
            let (vals, vecs) = eig_hermitian(&h).unwrap();
            let mut lam = CMat::zeros(4, 4);
            for i in 0..4 {
                lam[(i, i)] = cr(vals[i]);
            }
            let rec = &vecs * lam * vecs.adjoint();
            assert!(trace_norm(&(&h - rec)).unwrap() <= 1e-10);
            let gram = vecs.adjoint() * &vecs - CMat::identity(4, 4);
            assert!(gram.map(|z| z.norm()).max() <= 1e-10);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = CMat::identity(2, 2);
        m[(0, 1)] = cr(0.5);
        assert!(matches!(
            eig_hermitian(&m),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn entropy_pure_mixed_and_diagonal() {
        let psi = qubit_plus();
        assert!(von_neumann_entropy(&DensityOperator::from_pure(&psi)).abs() < 1e-12);
        let mm = DensityOperator::maximally_mixed(2);
        assert!((von_neumann_entropy(&mm) - 1.0).abs() < 1e-12);
        // scalar oracle: -Σ λ log₂ λ
        let expect = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
        let rho = DensityOperator::diagonal(&[0.25, 0.75]).unwrap();
        assert!((von_neumann_entropy(&rho) - expect).abs() < 1e-12);
        assert!((expect - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn fidelity_basics() {
        let rho = DensityOperator::diagonal(&[0.3, 0.7]).unwrap();
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-9);
        let zero = DensityOperator::from_pure(&PureState::basis(0, 2));
        let one = DensityOperator::from_pure(&PureState::basis(1, 2));
        assert!(fidelity(&zero, &one).unwrap() < 1e-12);
        // pure target: F(I/2, |0⟩⟨0|) = ⟨0| I/2 |0⟩ = 1/2
        let mm = DensityOperator::maximally_mixed(2);
        assert!((fidelity(&mm, &zero).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn fidelity_pure_target_matches_expectation_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let rho = random::density(&mut rng, 3);
            let psi = random::pure_state(&mut rng, 3);
            let direct = (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())[(0, 0)].re;
            let f = fidelity(&rho, &DensityOperator::from_pure(&psi)).unwrap();
            assert!((f - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn trace_norm_cases() {
        assert!(trace_norm(&CMat::zeros(3, 3)).unwrap() < 1e-15);
        let p0 = PureState::basis(0, 2).projector();
        let p1 = PureState::basis(1, 2).projector();
        assert!((trace_norm(&(p0 - p1)).unwrap() - 2.0).abs() < 1e-12);
        // independent oracle: sqrt of eigenvalues of m†m
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random::density(&mut rng, 3);
            let b = random::density(&mut rng, 3);
            let m = a.matrix() - b.matrix();
            let gram = m.adjoint() * &m;
            let (vals, _) = eig_hermitian(&gram).unwrap();
            let oracle: f64 = vals.iter().map(|&l| l.max(0.0).sqrt()).sum();
            assert!((trace_norm(&m).unwrap() - oracle).abs() < 1e-10);
        }
    }

    #[test]
    fn relative_entropy_cases() {
        let rho = DensityOperator::diagonal(&[0.25, 0.75]).unwrap();
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-10);
        let zero = DensityOperator::from_pure(&PureState::basis(0, 2));
        let mm = DensityOperator::maximally_mixed(2);
        // closed form -log₂(1/2) = 1 bit
        assert!((relative_entropy(&zero, &mm).unwrap() - 1.0).abs() < 1e-10);
        let one = DensityOperator::from_pure(&PureState::basis(1, 2));
        assert!(relative_entropy(&zero, &one).unwrap().is_infinite());
    }

    #[test]
    fn partial_trace_product_and_entangled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random::density(&mut rng, 2);
        let b = random::density(&mut rng, 3);
        let prod = a.matrix().kronecker(b.matrix());
        let back = partial_trace(&prod, 2, 3, Keep::Left).unwrap();
        assert!(trace_norm(&(back - a.matrix())).unwrap() < 1e-10);
        let back_r = partial_trace(&prod, 2, 3, Keep::Right).unwrap();
        assert!(trace_norm(&(back_r - b.matrix())).unwrap() < 1e-10);

        let bell = BipartitePureState::maximally_entangled(2);
        let marg = bell.marginal(Keep::Left).unwrap();
        assert!(
            trace_norm(&(marg.matrix() - DensityOperator::maximally_mixed(2).matrix())).unwrap()
                < 1e-12
        );
    }

    #[test]
    fn partial_trace_schmidt_spectra_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let psi = random::bipartite_pure(&mut rng, 3, 3);
            let l = psi.marginal(Keep::Left).unwrap();
            let r = psi.marginal(Keep::Right).unwrap();
            let sl = l.spectrum().unwrap();
            let sr = r.spectrum().unwrap();
            for (a, b) in sl.iter().zip(sr.iter()) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn purify_conventions() {
        // pure input → |0⟩_R factor
        let psi = qubit_plus();
        let rho = DensityOperator::from_pure(&psi);
        let big = purify(&rho).unwrap();
        for q in 0..2 {
            assert!(big.amplitudes()[2 + q].norm() < 1e-12);
        }
        // I/2 → Schmidt coefficients (1/√2, 1/√2)
        let mm = DensityOperator::maximally_mixed(2);
        let big = purify(&mm).unwrap();
        let marg = big.marginal(Keep::Right).unwrap();
        assert!(trace_norm(&(marg.matrix() - mm.matrix())).unwrap() < 1e-10);
        // diag(0.25, 0.75) → Schmidt coefficients ascending (0.5, 0.866025…)
        let rho = DensityOperator::diagonal(&[0.25, 0.75]).unwrap();
        let big = purify(&rho).unwrap();
        let r_marg = big.marginal(Keep::Left).unwrap();
        let schmidt: Vec<f64> = r_marg
            .spectrum()
            .unwrap()
            .iter()
            .rev()
            .map(|l| l.max(0.0).sqrt())
            .collect();
        // reference weights sorted descending: r=0 carries λ=0.25 term
        let w0 = (big.amplitudes()[0].norm_sqr() + big.amplitudes()[1].norm_sqr()).sqrt();
        let w1 = (big.amplitudes()[2].norm_sqr() + big.amplitudes()[3].norm_sqr()).sqrt();
        assert!((w0 - 0.5).abs() < 1e-12);
        assert!((w1 - 0.8660254037844386).abs() < 1e-12);
        assert!((schmidt[0] - 0.8660254037844386).abs() < 1e-12);
    }

    #[test]
    fn purify_marginal_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for d in 2..=4 {
            for _ in 0..10 {
                let rho = random::density(&mut rng, d);
                let psi = purify(&rho).unwrap();
                let back = psi.marginal(Keep::Right).unwrap();
                assert!(trace_norm(&(back.matrix() - rho.matrix())).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn entropy_concavity_spot_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let d = 2 + (rand::Rng::gen_range(&mut rng, 0..3)) as usize;
            let a = random::density(&mut rng, d);
            let b = random::density(&mut rng, d);
            let mix =
                DensityOperator::from_output((a.matrix() + b.matrix()) * cr(0.5)).unwrap();
            let lhs = von_neumann_entropy(&mix);
            let rhs = 0.5 * von_neumann_entropy(&a) + 0.5 * von_neumann_entropy(&b);
            assert!(lhs >= rhs - 1e-9);
        }
    }

    #[test]
    fn fidelity_trace_distance_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let d = 2 + (rand::Rng::gen_range(&mut rng, 0..3)) as usize;
            let a = random::density(&mut rng, d);
            let b = random::density(&mut rng, d);
            let f = fidelity(&a, &b).unwrap();
            assert!((f - fidelity(&b, &a).unwrap()).abs() < 1e-9, "symmetry");
            let td = 0.5 * trace_norm(&(a.matrix() - b.matrix())).unwrap();
            assert!(1.0 - f.sqrt() <= td + 1e-9);
            assert!(td <= (1.0 - f).max(0.0).sqrt() + 1e-9);
        }
    }

    #[test]
    fn pinsker_inequality_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let d = 2 + (rand::Rng::gen_range(&mut rng, 0..3)) as usize;
            let a = random::density(&mut rng, d);
            let b = random::density(&mut rng, d);
            let dkl = relative_entropy(&a, &b).unwrap();
            if dkl.is_finite() {
                let tn = trace_norm(&(a.matrix() - b.matrix())).unwrap();
                assert!(tn * tn <= 2.0 * dkl + 1e-9);
            }
        }
    }
}
