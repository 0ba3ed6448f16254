// each test binary uses its own subset of this shared module
#![allow(dead_code)]

//! Shared test oracles, independent of the library's computation paths.
//!
//! The entanglement oracles work on the full density matrix: negativity via
//! the partial-transpose trace norm, EOF via the eigenvalues of the
//! numerically reduced density matrix. Correlator oracles are direct
//! formula translations over plain arrays.

use nalgebra::DMatrix;
use rand::RngExt;
use tanglemetry::SchmidtState;

/// Density matrix of the pure state `Σ c_i |ii⟩` as a `d²×d²` real matrix.
fn density_matrix(state: &SchmidtState) -> DMatrix<f64> {
    let d = state.dim();
    let c = state.coeffs();
    let mut psi = vec![0.0; d * d];
    for i in 0..d {
        psi[i * d + i] = c[i];
    }
    DMatrix::from_fn(d * d, d * d, |r, s| psi[r] * psi[s])
}

/// Negativity by brute force: `(‖ρ^{T_B}‖₁ - 1)/2` from the eigenvalues of
/// the partially transposed density matrix.
pub fn brute_negativity(state: &SchmidtState) -> f64 {
    let d = state.dim();
    let rho = density_matrix(state);
    let mut pt = DMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    // <a b| rho^{T_B} |c e> = <a e| rho |c b>
                    pt[(a * d + b, c * d + e)] = rho[(a * d + e, c * d + b)];
                }
            }
        }
    }
    let trace_norm: f64 = pt
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .sum();
    (trace_norm - 1.0) / 2.0
}

/// EOF by brute force: von Neumann entropy (bits) of the numerically
/// computed reduced density matrix.
pub fn brute_eof(state: &SchmidtState) -> f64 {
    let d = state.dim();
    let rho = density_matrix(state);
    let mut reduced = DMatrix::zeros(d, d);
    for a in 0..d {
        for c in 0..d {
            let mut sum = 0.0;
            for b in 0..d {
                sum += rho[(a * d + b, c * d + b)];
            }
            reduced[(a, c)] = sum;
        }
    }
    reduced
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .filter(|l| **l > 1e-15)
        .map(|l| -l * l.log2())
        .sum()
}

/// Pearson correlation straight from the definition, over a row-major
/// probability matrix.
pub fn direct_pcc(probs: &[f64], d: usize, eigs: &[f64]) -> f64 {
    let p = |i: usize, j: usize| probs[i * d + j];
    let mut mean_a = 0.0;
    let mut mean_b = 0.0;
    let mut mean_aa = 0.0;
    let mut mean_bb = 0.0;
    let mut mean_ab = 0.0;
    for i in 0..d {
        for j in 0..d {
            mean_a += eigs[i] * p(i, j);
            mean_b += eigs[j] * p(i, j);
            mean_aa += eigs[i] * eigs[i] * p(i, j);
            mean_bb += eigs[j] * eigs[j] * p(i, j);
            mean_ab += eigs[i] * eigs[j] * p(i, j);
        }
    }
    (mean_ab - mean_a * mean_b)
        / ((mean_aa - mean_a * mean_a).sqrt() * (mean_bb - mean_b * mean_b).sqrt())
}

/// Plug-in mutual information straight from the definition, in bits.
pub fn direct_mi(probs: &[f64], d: usize) -> f64 {
    let p = |i: usize, j: usize| probs[i * d + j];
    let row: Vec<f64> = (0..d).map(|i| (0..d).map(|j| p(i, j)).sum()).collect();
    let col: Vec<f64> = (0..d).map(|j| (0..d).map(|i| p(i, j)).sum()).collect();
    let mut info = 0.0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..d {
        for j in 0..d {
            if p(i, j) > 0.0 {
                info += p(i, j) * (p(i, j) / (row[i] * col[j])).log2();
            }
        }
    }
    info
}

pub fn normalized(weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| w / total).collect()
}

/// Random pure state covering the whole coefficient simplex.
pub fn random_state(rng: &mut impl rand::Rng, d: usize) -> SchmidtState {
    loop {
        let mut v: Vec<f64> = (0..d).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for x in v.iter_mut() {
            *x = (*x / norm).abs();
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        if let Ok(s) = SchmidtState::new(v) {
            return s;
        }
    }
}

pub fn random_qutrit(rng: &mut impl rand::Rng) -> SchmidtState {
    random_state(rng, 3)
}

/// Representative published-style matrices (image plane, focal plane).
pub const IMAGE_MATRIX: [f64; 9] = [
    0.281, 0.024, 0.003, //
    0.006, 0.287, 0.014, //
    0.002, 0.006, 0.376,
];
pub const FOCAL_MATRIX: [f64; 9] = [
    0.344, 0.017, 0.017, //
    0.008, 0.017, 0.260, //
    0.017, 0.302, 0.017,
];
