//! Seeded random generators for states, unitaries and isometries.
//!
//! Everything takes an explicit RNG so randomized suites are reproducible;
//! per-trial RNGs are derived as `seed ⊕ trial-index` by the harness.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::qmat::{cr, c, BipartitePureState, CMat, CVec, DensityOperator, PureState};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian entries (Ginibre ensemble).
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    DMatrix::from_fn(rows, cols, |_, _| {
        c(
            rand_distr_normal(rng),
            rand_distr_normal(rng),
        )
    })
}

// Box-Muller; avoids pulling in rand_distr for one function.
fn rand_distr_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Haar-random isometry: modified Gram-Schmidt on a tall Ginibre matrix.
/// The positive-diagonal R convention makes the distribution Haar.
pub fn haar_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rng, rows, cols);
    let mut q = CMat::zeros(rows, cols);
    for j in 0..cols {
        let mut v: CVec = g.column(j).into_owned();
        for i in 0..j {
            let qi = q.column(i);
            let overlap = qi.dotc(&v);
            v -= qi.into_owned() * overlap;
        }
        let norm = v.norm();
        q.set_column(j, &(v / cr(norm)));
    }
    q
}

pub fn haar_unitary(rng: &mut impl Rng, d: usize) -> CMat {
    haar_isometry(rng, d, d)
}

/// Full-rank (a.s.) random density operator, `GG†/Tr`.
pub fn density(rng: &mut impl Rng, d: usize) -> DensityOperator {
    let g = ginibre(rng, d, d);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::new(m * cr(1.0 / tr)).expect("Ginibre state is valid")
}

/// Random density operator with spectrum bounded away from zero.
pub fn density_full_rank(rng: &mut impl Rng, d: usize, floor: f64) -> DensityOperator {
    let rho = density(rng, d);
    let mixed =
        rho.matrix() * cr(1.0 - floor) + CMat::identity(d, d) * cr(floor / d as f64);
    DensityOperator::new(mixed).expect("floored state is valid")
}

pub fn pure_state(rng: &mut impl Rng, d: usize) -> PureState {
    let v = ginibre(rng, d, 1).column(0).into_owned();
    PureState::normalized(v).expect("Gaussian vector is nonzero a.s.")
}

pub fn bipartite_pure(rng: &mut impl Rng, dl: usize, dr: usize) -> BipartitePureState {
    let v = ginibre(rng, dl * dr, 1).column(0).into_owned();
    let norm = v.norm();
    BipartitePureState::new(v / cr(norm), dl, dr).expect("normalized")
}

/// Probability vector from the uniform simplex (normalized exponentials).
pub fn simplex_point(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k)
        .map(|_| -(rng.gen_range(f64::EPSILON..1.0f64)).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}
