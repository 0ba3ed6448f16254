//! Monte Carlo generation of coincidence-count matrices and the end-to-end
//! pipeline: state → counts → correlator estimates → entanglement measures.
//!
//! Counting follows independent-accumulation physics: every cell is an
//! independent Poisson variable, so the grand total is itself random around
//! the configured mean. Everything is deterministic under a fixed seed, with
//! per-repeat sub-seeds so repeats stay independent and parallelizable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::core::{
    CountMatrix, Error, EstimateWithError, JointDistribution, Result, SchmidtState,
    STANDARD_QUTRIT_EIGENVALUES,
};
use crate::entanglement::{negativity_from_mp, negativity_from_pcc};
use crate::estimators::{
    certify_by_pcc_sum, diagonal_matching, mutual_information, mutual_predictability,
    normalize_counts, pcc, repeat_statistics, CertificationResult,
};
use crate::measurement::{joint_computational, joint_sigma_x_conjugate};

/// Configuration of a counting run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    /// Mean total coincidences per matrix.
    pub total_coincidences: u64,
    /// Number of matrices per basis configuration.
    pub n_repeats: usize,
    /// Fraction of counts that are uniform accidentals, in [0, 1).
    pub background_rate: f64,
    pub seed: u64,
    /// Accumulation time per cell, seconds; carried as metadata.
    pub accumulation_time_s: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            total_coincidences: 100_000,
            n_repeats: 5,
            background_rate: 0.0,
            seed: 0,
            accumulation_time_s: 90.0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.total_coincidences == 0 {
            return Err(Error::Domain("total_coincidences must be positive".into()));
        }
        if self.n_repeats == 0 {
            return Err(Error::Domain("n_repeats must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.background_rate) {
            return Err(Error::Domain(format!(
                "background_rate {} outside [0, 1)",
                self.background_rate
            )));
        }
        Ok(())
    }
}

/// Stable sub-seed derivation (splitmix64 finalizer) so that repeat `k` of a
/// run is a pure function of `(seed, k)`.
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sample_with_rng(
    dist: &JointDistribution,
    cfg: &SimConfig,
    rng: &mut ChaCha8Rng,
) -> CountMatrix {
    let d = dist.dim();
    let cells = (d * d) as f64;
    let total = cfg.total_coincidences as f64;
    let counts = dist
        .probs()
        .iter()
        .map(|&p| {
            let mean =
                total * ((1.0 - cfg.background_rate) * p + cfg.background_rate / cells);
            if mean <= 0.0 {
                0
            } else {
                let draw: f64 = Poisson::new(mean)
                    .expect("positive finite Poisson mean")
                    .sample(rng);
                draw as u64
            }
        })
        .collect();
    CountMatrix::new(counts, d, cfg.accumulation_time_s).expect("d*d counts")
}

/// Draws one coincidence-count matrix with independent Poisson cells of mean
/// `total·((1-background)·p_ij + background/d²)`, seeded from `cfg.seed`.
pub fn sample_count_matrix(dist: &JointDistribution, cfg: &SimConfig) -> Result<CountMatrix> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(sample_with_rng(dist, cfg, &mut rng))
}

/// Per-repeat count matrices for one basis configuration, with sub-seeds
/// derived from `(cfg.seed, stream, repeat)`.
pub(crate) fn sample_repeats(
    dist: &JointDistribution,
    cfg: &SimConfig,
    stream: u64,
) -> Vec<CountMatrix> {
    (0..cfg.n_repeats)
        .map(|r| {
            let sub = derive_seed(cfg.seed, stream * 0x1_0000 + r as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(sub);
            sample_with_rng(dist, cfg, &mut rng)
        })
        .collect()
}

/// Stream tags separating the two simulated basis configurations.
pub(crate) const STREAM_FOCAL: u64 = 0;
pub(crate) const STREAM_IMAGE: u64 = 1;

/// Aggregated output of [`run_pipeline`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineResult {
    /// Negativity inferred from the sigma-x Pearson correlation magnitude.
    pub n_from_pcc: EstimateWithError,
    /// Negativity inferred from mutual predictability.
    pub n_from_mp: EstimateWithError,
    /// Entanglement of formation inferred from computational-basis mutual
    /// information.
    pub eof_from_mi: EstimateWithError,
    /// Two-correlator certification built from the mean correlation
    /// magnitudes of both planes.
    pub certification: CertificationResult,
}

/// Simulates `n_repeats` pairs of count matrices (sigma-x against its
/// conjugate, and computational on both sides), estimates PCC, MP and MI on
/// each, maps them to Negativity and EOF, and aggregates with repeat
/// statistics.
///
/// Estimator failures propagate: a product state, for example, yields a
/// degenerate-variance error from the computational-basis correlation.
pub fn run_pipeline(state: &SchmidtState, cfg: &SimConfig) -> Result<PipelineResult> {
    cfg.validate()?;
    let focal_dist = joint_sigma_x_conjugate(state)?;
    let image_dist = joint_computational(state);
    let eigs = STANDARD_QUTRIT_EIGENVALUES;
    let matching = diagonal_matching(3);

    let mut n_pcc = Vec::with_capacity(cfg.n_repeats);
    let mut n_mp = Vec::with_capacity(cfg.n_repeats);
    let mut eof_mi = Vec::with_capacity(cfg.n_repeats);
    let mut abs_pcc_focal = Vec::with_capacity(cfg.n_repeats);
    let mut abs_pcc_image = Vec::with_capacity(cfg.n_repeats);

    let focal_counts = sample_repeats(&focal_dist, cfg, STREAM_FOCAL);
    let image_counts = sample_repeats(&image_dist, cfg, STREAM_IMAGE);
    for (focal, image) in focal_counts.iter().zip(&image_counts) {
        let focal = normalize_counts(focal)?;
        let image = normalize_counts(image)?;

        let pcc_focal = pcc(&focal, &eigs, &eigs)?;
        n_pcc.push(negativity_from_pcc(pcc_focal.abs())?);
        abs_pcc_focal.push(pcc_focal.abs());

        let mp = mutual_predictability(&focal, &matching)?;
        n_mp.push(negativity_from_mp(mp)?);

        let pcc_image = pcc(&image, &eigs, &eigs)?;
        abs_pcc_image.push(pcc_image.abs());
        eof_mi.push(mutual_information(&image));
    }

    let mean_abs = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    Ok(PipelineResult {
        n_from_pcc: repeat_statistics(&n_pcc)?,
        n_from_mp: repeat_statistics(&n_mp)?,
        eof_from_mi: repeat_statistics(&eof_mi)?,
        certification: certify_by_pcc_sum(mean_abs(&abs_pcc_image), mean_abs(&abs_pcc_focal))?,
    })
}
