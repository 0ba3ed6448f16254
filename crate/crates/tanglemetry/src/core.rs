//! Foundational value types: Schmidt states, measurement bases, observables,
//! joint distributions, coincidence-count matrices, and repeat statistics.
//!
//! All types are immutable after construction and validate their invariants
//! at the boundary, so downstream code can assume well-formed inputs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance on `Σ c_i² = 1` when constructing a [`SchmidtState`].
pub const STATE_NORM_TOL: f64 = 1e-12;
/// Tolerance on the total probability of a [`JointDistribution`] assembled
/// from arithmetic.
pub const DIST_NORM_TOL: f64 = 1e-9;
/// Tolerance on basis orthonormality (Gram matrix vs identity).
pub const BASIS_ORTHO_TOL: f64 = 1e-12;

/// Eigenvalue assignment used for both measurement planes: outcomes in
/// position order carry eigenvalues 0, 1, -1.
pub const STANDARD_QUTRIT_EIGENVALUES: [f64; 3] = [0.0, 1.0, -1.0];

#[derive(Debug, Error)]
pub enum Error {
    #[error("squared coefficients sum to {sum_sq} instead of 1")]
    Normalization { sum_sq: f64 },
    #[error("coefficient {index} is negative ({value})")]
    NegativeCoefficient { index: usize, value: f64 },
    #[error("{0}")]
    Domain(String),
    #[error("expected dimension {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("degenerate variance on the {side} marginal; correlation undefined")]
    DegenerateVariance { side: &'static str },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("count matrix has zero total; cannot normalize")]
    EmptyMatrix,
    #[error("gradient formulas are undefined at the boundary: {0}")]
    Boundary(String),
    #[error("profile spans {span_um} um but one fringe period is {period_um} um")]
    InsufficientSpan { span_um: f64, period_um: f64 },
    #[error("parse error in {path} line {line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("expected a 3x3 matrix, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Pure bipartite qudit state `Σ c_i |ii⟩` stored as its nonnegative Schmidt
/// coefficients.
///
/// Phases are absorbed into the Schmidt decomposition, so real nonnegative
/// coefficients are fully general here. Construction rejects unnormalized
/// input instead of silently rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtState {
    coeffs: Vec<f64>,
}

impl SchmidtState {
    /// Builds a state from Schmidt coefficients `c_0..c_{d-1}`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 Schmidt coefficients, got {}",
                coeffs.len()
            )));
        }
        for (index, &value) in coeffs.iter().enumerate() {
            if value < 0.0 || !value.is_finite() {
                return Err(Error::NegativeCoefficient { index, value });
            }
        }
        let sum_sq: f64 = coeffs.iter().map(|c| c * c).sum();
        if (sum_sq - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::Normalization { sum_sq });
        }
        Ok(Self { coeffs })
    }

    /// Builds a qutrit state from `(c_0, c_1)`, deriving
    /// `c_2 = sqrt(1 - c_0² - c_1²)`.
    pub fn from_two_coeffs(c0: f64, c1: f64) -> Result<Self> {
        for (index, &value) in [c0, c1].iter().enumerate() {
            if value < 0.0 || !value.is_finite() {
                return Err(Error::NegativeCoefficient { index, value });
            }
        }
        let s = c0 * c0 + c1 * c1;
        if s > 1.0 {
            return Err(Error::Domain(format!(
                "c0^2 + c1^2 = {s} exceeds 1; no valid third coefficient"
            )));
        }
        Self::new(vec![c0, c1, (1.0 - s).sqrt()])
    }

    /// The maximally entangled state in dimension `d`: all `c_i = 1/sqrt(d)`.
    pub fn maximally_entangled(d: usize) -> Self {
        let c = 1.0 / (d as f64).sqrt();
        // Normalization holds to machine precision for any reasonable d.
        Self::new(vec![c; d]).expect("uniform coefficients are normalized")
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// Which measurement basis a [`Basis`] value represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    Computational,
    GeneralizedSigmaX,
    ConjugateSigmaX,
    Custom,
}

/// An orthonormal complex measurement basis of dimension `d`.
///
/// `vectors[i][k]` is the amplitude `⟨k|b_i⟩` of basis ket `i` on
/// computational ket `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    vectors: Vec<Vec<Complex64>>,
    label: BasisLabel,
}

impl Basis {
    /// The computational basis in dimension `d`.
    pub fn computational(d: usize) -> Self {
        let vectors = (0..d)
            .map(|i| {
                (0..d)
                    .map(|k| {
                        if i == k {
                            Complex64::new(1.0, 0.0)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            vectors,
            label: BasisLabel::Computational,
        }
    }

    /// The generalized sigma-x basis for qutrits:
    ///
    /// ```text
    /// |b_0⟩ = (|0⟩ +   |1⟩ +   |2⟩)/√3
    /// |b_1⟩ = (|0⟩ + ω |1⟩ + ω²|2⟩)/√3
    /// |b_2⟩ = (|0⟩ + ω²|1⟩ + ω |2⟩)/√3
    /// ```
    ///
    /// with `ω = e^{2iπ/3}`. It is mutually unbiased to the computational
    /// basis: every overlap has squared magnitude 1/3.
    pub fn generalized_sigma_x() -> Self {
        let omega = Complex64::new(-0.5, 0.75f64.sqrt());
        let powers = [Complex64::new(1.0, 0.0), omega, omega.conj()];
        let norm = 1.0 / 3f64.sqrt();
        let vectors = (0..3)
            .map(|j| (0..3).map(|k| powers[(j * k) % 3] * norm).collect())
            .collect();
        Self {
            vectors,
            label: BasisLabel::GeneralizedSigmaX,
        }
    }

    /// A custom basis; rejects vectors that are not orthonormal within
    /// [`BASIS_ORTHO_TOL`].
    pub fn custom(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = vectors.len();
        if d < 2 || vectors.iter().any(|v| v.len() != d) {
            return Err(Error::Domain(
                "basis must consist of d vectors of length d (d >= 2)".into(),
            ));
        }
        let basis = Self {
            vectors,
            label: BasisLabel::Custom,
        };
        basis.check_orthonormal()?;
        Ok(basis)
    }

    /// Entrywise complex conjugate of every basis vector.
    ///
    /// For the generalized sigma-x basis this maps `b_0 → b_0` and swaps
    /// `b_1 ↔ b_2`; conjugation is an involution on any basis.
    pub fn conjugate(&self) -> Self {
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|z| z.conj()).collect())
            .collect();
        let label = match self.label {
            BasisLabel::GeneralizedSigmaX => BasisLabel::ConjugateSigmaX,
            BasisLabel::ConjugateSigmaX => BasisLabel::GeneralizedSigmaX,
            other => other,
        };
        Self { vectors, label }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn label(&self) -> BasisLabel {
        self.label
    }

    /// Amplitude `⟨k|b_i⟩`.
    pub fn amplitude(&self, i: usize, k: usize) -> Complex64 {
        self.vectors[i][k]
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    fn check_orthonormal(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                let inner: Complex64 = (0..d)
                    .map(|k| self.vectors[i][k].conj() * self.vectors[j][k])
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (inner - expected).norm() > BASIS_ORTHO_TOL {
                    return Err(Error::Domain(format!(
                        "basis vectors {i} and {j} are not orthonormal: <{i}|{j}> = {inner}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A measurement basis together with a real eigenvalue per outcome.
#[derive(Debug, Clone)]
pub struct Observable {
    basis: Basis,
    eigenvalues: Vec<f64>,
}

impl Observable {
    pub fn new(basis: Basis, eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.len() != basis.dim() {
            return Err(Error::Dimension {
                expected: basis.dim(),
                actual: eigenvalues.len(),
            });
        }
        Ok(Self { basis, eigenvalues })
    }

    /// The assignment used throughout: eigenvalues (0, 1, -1) in basis order.
    pub fn standard_qutrit(basis: Basis) -> Result<Self> {
        Self::new(basis, STANDARD_QUTRIT_EIGENVALUES.to_vec())
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// A `d×d` joint outcome probability matrix for a pair of local measurements.
///
/// Rows index the first party's outcome, columns the second's.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    probs: Vec<f64>,
    dim: usize,
    row_label: String,
    col_label: String,
}

impl JointDistribution {
    /// Validates and wraps a row-major probability matrix.
    pub fn new(
        probs: Vec<f64>,
        dim: usize,
        row_label: impl Into<String>,
        col_label: impl Into<String>,
    ) -> Result<Self> {
        if probs.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                actual: probs.len(),
            });
        }
        if let Some(p) = probs.iter().find(|p| **p < 0.0 || !p.is_finite()) {
            return Err(Error::Domain(format!("negative probability entry {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > DIST_NORM_TOL {
            return Err(Error::Normalization { sum_sq: total });
        }
        Ok(Self {
            probs,
            dim,
            row_label: row_label.into(),
            col_label: col_label.into(),
        })
    }

    /// Normalizes a nonnegative weight matrix (e.g. coincidence counts) into
    /// a joint distribution by dividing by the grand total.
    pub fn from_weights(
        weights: &[f64],
        dim: usize,
        row_label: impl Into<String>,
        col_label: impl Into<String>,
    ) -> Result<Self> {
        if weights.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                actual: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| **w < 0.0 || !w.is_finite()) {
            return Err(Error::Domain(format!("negative weight entry {w}")));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::EmptyMatrix);
        }
        let probs = weights.iter().map(|w| w / total).collect();
        Ok(Self {
            probs,
            dim,
            row_label: row_label.into(),
            col_label: col_label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prob(&self, row: usize, col: usize) -> f64 {
        self.probs[row * self.dim + col]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn row_marginals(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.prob(i, j)).sum())
            .collect()
    }

    pub fn col_marginals(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.prob(i, j)).sum())
            .collect()
    }

    pub fn row_label(&self) -> &str {
        &self.row_label
    }

    pub fn col_label(&self) -> &str {
        &self.col_label
    }
}

/// Optional detector coordinates attached to a [`CountMatrix`], in
/// micrometres along each scan axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorPositions {
    pub rows_um: Vec<f64>,
    pub cols_um: Vec<f64>,
}

/// A `d×d` matrix of nonnegative integer coincidence counts with acquisition
/// metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct CountMatrix {
    counts: Vec<u64>,
    dim: usize,
    /// Accumulation time per cell, in seconds.
    pub accumulation_time_s: f64,
    pub positions: Option<DetectorPositions>,
}

impl CountMatrix {
    pub fn new(counts: Vec<u64>, dim: usize, accumulation_time_s: f64) -> Result<Self> {
        if counts.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                actual: counts.len(),
            });
        }
        Ok(Self {
            counts,
            dim,
            accumulation_time_s,
            positions: None,
        })
    }

    pub fn with_positions(mut self, positions: DetectorPositions) -> Self {
        self.positions = Some(positions);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, row: usize, col: usize) -> u64 {
        self.counts[row * self.dim + col]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// A repeat-run estimate: sample mean, sample standard deviation and the
/// number of runs it was formed from.
///
/// `std` uses the n-1 denominator and is 0 when `n_samples == 1`, so either
/// the spread or the standard error of the mean can be reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError {
    pub mean: f64,
    pub std: f64,
    pub n_samples: usize,
}

impl EstimateWithError {
    /// Standard error of the mean, `std / sqrt(n)`.
    pub fn std_of_mean(&self) -> f64 {
        self.std / (self.n_samples as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3_INV: f64 = 0.5773502691896258;

    #[test]
    fn accepts_normalized_states() {
        let s = SchmidtState::new(vec![SQRT3_INV; 3]).unwrap();
        assert_eq!(s.dim(), 3);
        // unsorted coefficients stay in input order
        let s = SchmidtState::new(vec![0.3, 0.8, 0.27f64.sqrt()]).unwrap();
        assert_eq!(s.coeffs()[1], 0.8);
    }

    #[test]
    fn rejects_unnormalized_and_negative() {
        assert!(matches!(
            SchmidtState::new(vec![0.5, 0.5, 0.5]),
            Err(Error::Normalization { .. })
        ));
        assert!(matches!(
            SchmidtState::new(vec![-0.1, 0.99498743710662]),
            Err(Error::NegativeCoefficient { index: 0, .. })
        ));
        assert!(matches!(
            SchmidtState::new(vec![1.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn from_two_coeffs_fills_in_third() {
        let s = SchmidtState::from_two_coeffs(0.1, 0.1).unwrap();
        assert!((s.coeffs()[2] - 0.98f64.sqrt()).abs() < 1e-15);
        let s = SchmidtState::from_two_coeffs(1.0, 0.0).unwrap();
        assert_eq!(s.coeffs(), &[1.0, 0.0, 0.0]);
        assert!(matches!(
            SchmidtState::from_two_coeffs(0.8, 0.8),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn two_coeff_constructor_agrees_with_direct() {
        for (c0, c1) in [(0.3, 0.8), (0.1, 0.1), (0.9, 0.3), (0.5, 0.1)] {
            let a = SchmidtState::from_two_coeffs(c0, c1).unwrap();
            let c2 = (1.0 - c0 * c0 - c1 * c1).sqrt();
            let b = SchmidtState::new(vec![c0, c1, c2]).unwrap();
            for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
                assert!((x - y).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn sigma_x_basis_matches_closed_form() {
        let b = Basis::generalized_sigma_x();
        let norm = 1.0 / 3f64.sqrt();
        for j in 0..3 {
            assert!((b.amplitude(j, 0) - Complex64::new(norm, 0.0)).norm() < 1e-15);
        }
        // second component of |b_1> is omega/sqrt(3)
        let expected = Complex64::new(-0.5, 0.75f64.sqrt()) * norm;
        assert!((b.amplitude(1, 1) - expected).norm() < 1e-15);
    }

    #[test]
    fn bases_are_orthonormal() {
        for basis in [Basis::computational(3), Basis::generalized_sigma_x()] {
            let d = basis.dim();
            for i in 0..d {
                for j in 0..d {
                    let inner: Complex64 = (0..d)
                        .map(|k| basis.amplitude(i, k).conj() * basis.amplitude(j, k))
                        .sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((inner - expected).norm() < 1e-12, "Gram({i},{j}) = {inner}");
                }
            }
        }
    }

    #[test]
    fn conjugate_swaps_sigma_x_vectors() {
        let b = Basis::generalized_sigma_x();
        let c = b.conjugate();
        assert_eq!(c.label(), BasisLabel::ConjugateSigmaX);
        for k in 0..3 {
            assert!((c.amplitude(1, k) - b.amplitude(2, k)).norm() < 1e-15);
            assert!((c.amplitude(2, k) - b.amplitude(1, k)).norm() < 1e-15);
            assert!((c.amplitude(0, k) - b.amplitude(0, k)).norm() < 1e-15);
        }
        // computational basis is real, hence fixed by conjugation
        let comp = Basis::computational(3);
        assert_eq!(comp.conjugate().vectors, comp.vectors);
    }

    #[test]
    fn double_conjugation_is_identity() {
        for basis in [Basis::computational(4), Basis::generalized_sigma_x()] {
            let twice = basis.conjugate().conjugate();
            for i in 0..basis.dim() {
                for k in 0..basis.dim() {
                    assert!((twice.amplitude(i, k) - basis.amplitude(i, k)).norm() <= 1e-15);
                }
            }
            assert_eq!(twice.label(), basis.label());
        }
    }

    #[test]
    fn custom_basis_rejects_non_orthonormal() {
        let v = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)],
        ];
        assert!(Basis::custom(v).is_err());
    }

    #[test]
    fn observable_requires_matching_lengths() {
        let b = Basis::computational(3);
        assert!(Observable::new(b.clone(), vec![0.0, 1.0]).is_err());
        let o = Observable::standard_qutrit(b).unwrap();
        assert_eq!(o.eigenvalues(), &[0.0, 1.0, -1.0]);
    }

    #[test]
    fn distribution_validation() {
        let d = JointDistribution::new(vec![0.25; 4], 2, "A", "B").unwrap();
        assert_eq!(d.row_marginals(), vec![0.5, 0.5]);
        assert!(JointDistribution::new(vec![0.5; 4], 2, "A", "B").is_err());
        assert!(JointDistribution::new(vec![1.5, -0.5, 0.0, 0.0], 2, "A", "B").is_err());
    }

    #[test]
    fn weights_normalize_exactly() {
        let w = vec![2.0, 0.0, 0.0, 6.0];
        let d = JointDistribution::from_weights(&w, 2, "A", "B").unwrap();
        assert_eq!(d.prob(0, 0), 0.25);
        assert_eq!(d.prob(1, 1), 0.75);
        assert!(matches!(
            JointDistribution::from_weights(&[0.0; 4], 2, "A", "B"),
            Err(Error::EmptyMatrix)
        ));
    }

    #[test]
    fn count_matrix_totals() {
        let m = CountMatrix::new(vec![1, 2, 3, 4, 5, 6, 7, 8, 9], 3, 90.0).unwrap();
        assert_eq!(m.total(), 45);
        assert_eq!(m.count(2, 1), 8);
    }
}
