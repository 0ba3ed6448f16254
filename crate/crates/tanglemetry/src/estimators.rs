//! Statistical correlators over joint distributions: Pearson correlation,
//! mutual predictability, plug-in mutual information, plus count
//! normalization, the two-correlator entanglement certification criterion,
//! and repeat-run statistics.

use serde::{Deserialize, Serialize};

use crate::core::{CountMatrix, Error, EstimateWithError, JointDistribution, Result};

/// Variance below this is treated as degenerate: the observable carries no
/// information about that marginal and the correlation is undefined.
pub const VARIANCE_FLOOR: f64 = 1e-15;

/// Result of the two-correlator certification test: entanglement is
/// certified when `|C1| + |C2|` strictly exceeds 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificationResult {
    pub pcc_sum: f64,
    pub certified: bool,
    pub threshold: f64,
}

/// Pearson correlation coefficient of the two outcome variables under
/// `dist`, with eigenvalues `eigs_a` (rows) and `eigs_b` (columns).
///
/// Returns a value in [-1, 1]. Fails with `DegenerateVariance` when either
/// marginal variance is below [`VARIANCE_FLOOR`], e.g. for a product state
/// concentrated on a single outcome.
pub fn pcc(dist: &JointDistribution, eigs_a: &[f64], eigs_b: &[f64]) -> Result<f64> {
    let d = dist.dim();
    if eigs_a.len() != d {
        return Err(Error::Dimension {
            expected: d,
            actual: eigs_a.len(),
        });
    }
    if eigs_b.len() != d {
        return Err(Error::Dimension {
            expected: d,
            actual: eigs_b.len(),
        });
    }
    let pa = dist.row_marginals();
    let pb = dist.col_marginals();
    let mean_a: f64 = eigs_a.iter().zip(&pa).map(|(e, p)| e * p).sum();
    let mean_b: f64 = eigs_b.iter().zip(&pb).map(|(e, p)| e * p).sum();
    let var_a: f64 = eigs_a
        .iter()
        .zip(&pa)
        .map(|(e, p)| (e - mean_a) * (e - mean_a) * p)
        .sum();
    let var_b: f64 = eigs_b
        .iter()
        .zip(&pb)
        .map(|(e, p)| (e - mean_b) * (e - mean_b) * p)
        .sum();
    if var_a <= VARIANCE_FLOOR {
        return Err(Error::DegenerateVariance { side: "row" });
    }
    if var_b <= VARIANCE_FLOOR {
        return Err(Error::DegenerateVariance { side: "column" });
    }
    let mut cov = 0.0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..d {
        for j in 0..d {
            cov += (eigs_a[i] - mean_a) * (eigs_b[j] - mean_b) * dist.prob(i, j);
        }
    }
    Ok((cov / (var_a * var_b).sqrt()).clamp(-1.0, 1.0))
}

/// The identity matching `{(0,0), (1,1), ..., (d-1,d-1)}`.
pub fn diagonal_matching(d: usize) -> Vec<(usize, usize)> {
    (0..d).map(|i| (i, i)).collect()
}

/// The physically correlated cells when the generalized sigma-x basis is
/// measured on both arms: `{(0,0), (1,2), (2,1)}`.
///
/// Measuring the conjugate basis on the second arm moves these cells onto
/// the diagonal, which is why this matching extracts the same quantity from
/// a both-sides sigma-x matrix.
pub fn sigma_x_both_matching() -> Vec<(usize, usize)> {
    vec![(0, 0), (1, 2), (2, 1)]
}

/// Mutual predictability: the summed probability of the matched outcome
/// pairs.
///
/// `matching` must select exactly `d` cells with all rows distinct and all
/// columns distinct.
pub fn mutual_predictability(
    dist: &JointDistribution,
    matching: &[(usize, usize)],
) -> Result<f64> {
    let d = dist.dim();
    if matching.len() != d {
        return Err(Error::InvalidMatching(format!(
            "need exactly {d} cell pairs, got {}",
            matching.len()
        )));
    }
    let mut rows_seen = vec![false; d];
    let mut cols_seen = vec![false; d];
    for &(r, c) in matching {
        if r >= d || c >= d {
            return Err(Error::InvalidMatching(format!(
                "cell ({r},{c}) out of range for dimension {d}"
            )));
        }
        if rows_seen[r] {
            return Err(Error::InvalidMatching(format!("row {r} repeated")));
        }
        if cols_seen[c] {
            return Err(Error::InvalidMatching(format!("column {c} repeated")));
        }
        rows_seen[r] = true;
        cols_seen[c] = true;
    }
    Ok(matching.iter().map(|&(r, c)| dist.prob(r, c)).sum())
}

/// Plug-in (maximum likelihood) mutual information of the joint outcome
/// distribution, in bits. Zero-probability cells contribute zero; no
/// finite-sample bias correction is applied.
pub fn mutual_information(dist: &JointDistribution) -> f64 {
    let d = dist.dim();
    let pa = dist.row_marginals();
    let pb = dist.col_marginals();
    let mut info = 0.0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..d {
        for j in 0..d {
            let p = dist.prob(i, j);
            if p > 0.0 {
                info += p * (p / (pa[i] * pb[j])).log2();
            }
        }
    }
    info.max(0.0)
}

/// Normalizes a coincidence-count matrix into a joint distribution by
/// dividing by the grand total.
pub fn normalize_counts(counts: &CountMatrix) -> Result<JointDistribution> {
    let weights: Vec<f64> = counts.counts().iter().map(|&c| c as f64).collect();
    JointDistribution::from_weights(&weights, counts.dim(), "signal", "idler")
}

/// Applies the certification criterion to two Pearson correlations measured
/// in mutually unbiased bases: `|pcc1| + |pcc2| > 1` certifies entanglement.
pub fn certify_by_pcc_sum(pcc1: f64, pcc2: f64) -> Result<CertificationResult> {
    for p in [pcc1, pcc2] {
        if p.abs() > 1.0 + 1e-9 || !p.is_finite() {
            return Err(Error::Domain(format!(
                "correlation {p} lies outside [-1, 1]"
            )));
        }
    }
    let pcc_sum = pcc1.abs() + pcc2.abs();
    Ok(CertificationResult {
        pcc_sum,
        certified: pcc_sum > 1.0,
        threshold: 1.0,
    })
}

/// Mean and sample standard deviation (n-1 denominator) of repeated runs.
/// A single value yields std 0.
pub fn repeat_statistics(values: &[f64]) -> Result<EstimateWithError> {
    if values.is_empty() {
        return Err(Error::Domain("repeat statistics of an empty list".into()));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n == 1 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (n as f64 - 1.0)).sqrt()
    };
    Ok(EstimateWithError {
        mean,
        std,
        n_samples: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::SchmidtState;
    use crate::entanglement::negativity;
    use crate::measurement::{joint_computational, joint_sigma_x_both, joint_sigma_x_conjugate};
    use crate::test_util::{random_qutrit, random_state, FOCAL_MATRIX, IMAGE_MATRIX};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const EIGS: [f64; 3] = [0.0, 1.0, -1.0];

    #[test]
    fn pcc_magnitude_equals_negativity_in_sigma_x() {
        let s = SchmidtState::new(vec![0.3, 0.8, 0.27f64.sqrt()]).unwrap();
        let d = joint_sigma_x_both(&s).unwrap();
        let c = pcc(&d, &EIGS, &EIGS).unwrap();
        assert!((c - (-0.8115767664977295)).abs() < 1e-12);
        assert!((c.abs() - negativity(&s).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn pcc_is_one_in_computational_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let s = random_qutrit(&mut rng);
            // need two nonzero coefficients for nonzero variance
            if s.coeffs().iter().filter(|c| **c > 1e-3).count() < 2 {
                continue;
            }
            let d = joint_computational(&s);
            let c = pcc(&d, &EIGS, &EIGS).unwrap();
            assert!((c - 1.0).abs() < 1e-12);
            // arbitrary non-degenerate eigenvalue assignments work too
            let e2 = [2.5, -0.7, 0.4];
            let c = pcc(&d, &e2, &e2).unwrap();
            assert!((c - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pcc_on_published_image_matrix() {
        let d = JointDistribution::from_weights(&IMAGE_MATRIX, 3, "signal", "idler").unwrap();
        let c = pcc(&d, &EIGS, &EIGS).unwrap();
        assert!((c - 0.9173114039523589).abs() < 1e-12);
    }

    #[test]
    fn pcc_degenerate_variance() {
        let product = SchmidtState::new(vec![1.0, 0.0, 0.0]).unwrap();
        let d = joint_computational(&product);
        assert!(matches!(
            pcc(&d, &EIGS, &EIGS),
            Err(Error::DegenerateVariance { .. })
        ));
    }

    #[test]
    fn pcc_affine_invariance_up_to_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let s = random_qutrit(&mut rng);
            let d = joint_sigma_x_both(&s).unwrap();
            let base = pcc(&d, &EIGS, &EIGS).unwrap();
            let scaled: Vec<f64> = EIGS.iter().map(|e| 3.7 * e + 0.9).collect();
            let flipped: Vec<f64> = EIGS.iter().map(|e| -2.0 * e + 0.1).collect();
            assert!((pcc(&d, &scaled, &EIGS).unwrap() - base).abs() < 1e-12);
            assert!((pcc(&d, &flipped, &EIGS).unwrap() + base).abs() < 1e-12);
        }
    }

    #[test]
    fn mp_is_one_third_for_sigma_x_both() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let diag = diagonal_matching(3);
        for _ in 0..500 {
            let s = random_qutrit(&mut rng);
            let d = joint_sigma_x_both(&s).unwrap();
            let mp = mutual_predictability(&d, &diag).unwrap();
            assert!((mp - 1.0 / 3.0).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn mp_tracks_negativity_in_conjugate_config() {
        let me = SchmidtState::maximally_entangled(3);
        let d = joint_sigma_x_conjugate(&me).unwrap();
        let mp = mutual_predictability(&d, &diagonal_matching(3)).unwrap();
        assert!((mp - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mp_on_published_focal_matrix() {
        let d = JointDistribution::from_weights(&FOCAL_MATRIX, 3, "signal", "idler").unwrap();
        let mp = mutual_predictability(&d, &sigma_x_both_matching()).unwrap();
        // 0.344 + 0.260 + 0.302, normalized by the 0.999 total
        assert!((mp - 0.9069069069069069).abs() < 1e-12);
    }

    #[test]
    fn mp_rejects_bad_matchings() {
        let d = JointDistribution::new(vec![1.0 / 9.0; 9], 3, "A", "B").unwrap();
        assert!(mutual_predictability(&d, &[(0, 0), (1, 1)]).is_err());
        assert!(mutual_predictability(&d, &[(0, 0), (1, 1), (3, 2)]).is_err());
        assert!(mutual_predictability(&d, &[(0, 0), (0, 1), (2, 2)]).is_err());
        assert!(mutual_predictability(&d, &[(0, 0), (1, 0), (2, 2)]).is_err());
    }

    #[test]
    fn mi_equals_eof_for_computational_basis() {
        let s = SchmidtState::from_two_coeffs(0.1, 0.1).unwrap();
        let d = joint_computational(&s);
        assert!((mutual_information(&d) - 0.16144054254182055).abs() < 1e-12);
    }

    #[test]
    fn mi_vanishes_for_product_distributions() {
        // independent joint: p_ij = a_i * b_j
        let a = [0.5, 0.3, 0.2];
        let b = [0.1, 0.6, 0.3];
        let mut probs = vec![0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                probs[i * 3 + j] = a[i] * b[j];
            }
        }
        let d = JointDistribution::new(probs, 3, "A", "B").unwrap();
        assert!(mutual_information(&d).abs() < 1e-12);
    }

    #[test]
    fn mi_on_published_image_matrix() {
        let d = JointDistribution::from_weights(&IMAGE_MATRIX, 3, "signal", "idler").unwrap();
        assert!((mutual_information(&d) - 1.2397788348410737).abs() < 1e-12);
    }

    #[test]
    fn normalize_counts_behaviour() {
        let m = CountMatrix::new(vec![0, 0, 0, 0, 7, 0, 0, 0, 0], 3, 90.0).unwrap();
        let d = normalize_counts(&m).unwrap();
        assert_eq!(d.prob(1, 1), 1.0);

        let m = CountMatrix::new(vec![5; 9], 3, 90.0).unwrap();
        let d = normalize_counts(&m).unwrap();
        assert!((d.prob(0, 2) - 1.0 / 9.0).abs() < 1e-15);

        let m = CountMatrix::new(vec![0; 9], 3, 90.0).unwrap();
        assert!(matches!(normalize_counts(&m), Err(Error::EmptyMatrix)));

        // counts proportional to a probability matrix reproduce it
        let counts: Vec<u64> = IMAGE_MATRIX.iter().map(|p| (p * 1000.0) as u64).collect();
        let m = CountMatrix::new(counts, 3, 90.0).unwrap();
        let d = normalize_counts(&m).unwrap();
        let reference =
            JointDistribution::from_weights(&IMAGE_MATRIX, 3, "signal", "idler").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((d.prob(i, j) - reference.prob(i, j)).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn certification_threshold_is_strict() {
        let r = certify_by_pcc_sum(0.848, 0.904).unwrap();
        assert!(r.certified);
        assert!((r.pcc_sum - 1.752).abs() < 1e-12);

        let r = certify_by_pcc_sum(1.0, 1.0).unwrap();
        assert!(r.certified);
        assert_eq!(r.pcc_sum, 2.0);

        let r = certify_by_pcc_sum(0.5, 0.5).unwrap();
        assert!(!r.certified, "boundary value must not certify");

        assert!(certify_by_pcc_sum(1.1, 0.0).is_err());
    }

    #[test]
    fn repeat_statistics_conventions() {
        let r = repeat_statistics(&[0.9, 0.9, 0.9]).unwrap();
        assert_eq!(r.mean, 0.9);
        assert_eq!(r.std, 0.0);

        let r = repeat_statistics(&[0.902, 0.904, 0.906, 0.903, 0.905]).unwrap();
        assert!((r.mean - 0.904).abs() < 1e-12);
        assert!((r.std - 0.0015811388300841912).abs() < 1e-10);
        assert_eq!(r.n_samples, 5);

        let r = repeat_statistics(&[0.85]).unwrap();
        assert_eq!((r.mean, r.std, r.n_samples), (0.85, 0.0, 1));

        assert!(repeat_statistics(&[]).is_err());
    }

    #[test]
    fn mp_of_conjugate_equals_negativity_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..500 {
            let s = random_qutrit(&mut rng);
            let d = joint_sigma_x_conjugate(&s).unwrap();
            let mp = mutual_predictability(&d, &diagonal_matching(3)).unwrap();
            let n = negativity(&s).unwrap();
            assert!((mp - (1.0 + 2.0 * n) / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mi_equals_eof_across_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for d in [2usize, 3, 4, 5] {
            for _ in 0..200 {
                let s = random_state(&mut rng, d);
                let dist = joint_computational(&s);
                let mi = mutual_information(&dist);
                let e = crate::entanglement::eof(&s);
                assert!((mi - e).abs() < 1e-12, "d={d}: MI {mi} vs EOF {e}");
            }
        }
    }
}
