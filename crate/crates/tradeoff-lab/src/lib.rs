//! # tradeoff-lab
//!
//! Numerical laboratory for information–disturbance tradeoffs of
//! finite-dimensional quantum instruments.
//!
//! A quantum instrument is an outcome-indexed family of completely positive
//! maps summing to a channel: it models a measurement that returns both a
//! classical readout and a post-measurement state. For an input ensemble
//! `s = {p(x), ϱ_x}` and an instrument `M = {E_m}` this crate computes
//!
//! - **information gains**: classical mutual information `I(X:X̂)`, a
//!   grid/restart lower bound on accessible information, and the quantum
//!   information gain `ι` (entropy defect of the ensemble induced on a
//!   purifying reference system);
//! - **disturbances**: recovery-optimized average output fidelity `F̄_av`,
//!   recovery-optimized entanglement fidelity `F̄_e`, the quantum disturbance
//!   `δ` (coherent-information loss through the channelized instrument), and
//!   the entropy-defect loss `Δχ`;
//! - **irreducibility**: `η(s)` and `ζ(s)` via bottleneck optimization over
//!   complete paths of ensemble states;
//! - **inequality chains** connecting all of the above, checked numerically
//!   with explicit slack on constructed and randomized instances, including
//!   the exact identity `δ = Δχ + χ(Ẽ(s))` for pure ensembles and the
//!   sandwich `Δχ ≤ δ ≤ 2Δχ` for eigenbasis+MUB ("Christandl–Winter" style)
//!   ensembles.
//!
//! All entropic quantities are in bits (`log₂` throughout). Every value is
//! immutable after construction and every operation is a pure function, so
//! the whole crate is safe for concurrent use.
//!
//! ## Layout
//!
//! - [`qmat`] — dense complex matrices, density operators, purification,
//!   entropies, fidelity, trace norm.
//! - [`instrument`] — instruments, channels, Stinespring dilations,
//!   complement channels, channelization.
//! - [`ensemble`] — ensembles, POVMs, the ensemble/POVM duality, entropy
//!   defect, complete-path irreducibility.
//! - [`info_gain`] — mutual information, accessible-information search,
//!   quantum information gain, informationally complete frames.
//! - [`disturbance`] — recovery-channel optimization, fidelities, quantum
//!   disturbance, entropy-defect loss, tradeoff reports.
//! - [`random`] — seeded Haar/Ginibre generators for randomized suites.
//! - [`harness`] — JSON instance I/O, verification suites, parameter scans,
//!   bundled scenarios; drives the `tradeoff-lab` CLI.
//!
//! ## Quick start
//!
//! ```
//! use tradeoff_lab::ensemble::Ensemble;
//! use tradeoff_lab::instrument::QuantumInstrument;
//! use tradeoff_lab::info_gain::mutual_information;
//!
//! // uniform {|0>, |1>} measured in the computational basis: one full bit
//! let s = Ensemble::uniform_qubit_pair_orthogonal();
//! let m = QuantumInstrument::von_neumann(2);
//! let (_joint, bits) = mutual_information(&s, &m).unwrap();
//! assert!((bits - 1.0).abs() < 1e-12);
//! ```
//!
//! Runnable demonstrations of each capability live in `examples/`; the
//! `tradeoff-lab` binary exposes the same machinery as `analyze`, `verify`,
//! `scan` and `examples` subcommands.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod qmat;
pub mod instrument;
pub mod ensemble;
pub mod info_gain;
pub mod disturbance;
pub mod random;
pub mod harness;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right} ({context})")]
    DimMismatch {
        left: usize,
        right: usize,
        context: &'static str,
    },

    #[error("not Hermitian (max |m - m†| element = {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("operation requires pure states: {0}")]
    MixedStates(String),

    #[error("state is rank deficient (eigenvalue {eigenvalue:.3e} below cutoff)")]
    RankDeficient { eigenvalue: f64 },

    #[error("POVM is not informationally complete (frame rank {rank} < {needed})")]
    NotInfoComplete { rank: usize, needed: usize },

    #[error("argument outside domain: {0}")]
    DomainError(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("branch '{label}' has negligible probability ({prob:.3e})")]
    DegenerateBranch { label: String, prob: f64 },

    #[error("internal consistency violation: {0}")]
    InternalError(String),

    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },

    #[error("unknown {kind}: '{name}'")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Central numerical tolerances. Double precision at d ≤ 8 leaves at least
/// three digits of headroom over the tightest of these.
pub mod tol {
    /// Hermiticity tolerance for operator inputs.
    pub const HERM: f64 = 1e-9;
    /// Trace / norm tolerance for states.
    pub const TR: f64 = 1e-9;
    /// Most-negative admissible eigenvalue of a positive operator.
    pub const PSD: f64 = 1e-9;
    /// Eigenvalues below this count as exact zeros (support membership,
    /// 0·log 0 handling, pseudo-inverses).
    pub const EIG: f64 = 1e-12;
    /// Outcome probabilities below this are treated as impossible.
    pub const PROB: f64 = 1e-12;
    /// Eigenvalue threshold for operator-rank decisions (Choi rank, frame rank).
    pub const RANK: f64 = 1e-9;
    /// State overlaps below this are exact zeros for path connectivity.
    pub const OVERLAP: f64 = 1e-12;
}
