//! Exact joint outcome distributions of a Schmidt state under the
//! measurement configurations of the apparatus: computational (which-slit)
//! on both sides, generalized sigma-x on both sides, and sigma-x against its
//! complex conjugate.
//!
//! `joint_general` implements the Born rule for arbitrary local bases; the
//! specialized functions are closed forms of the same quantity and are
//! cross-checked against it in tests.

use num_complex::Complex64;

use crate::core::{Basis, Error, JointDistribution, Result, SchmidtState};

/// Joint distribution when both parties measure in the computational basis:
/// diagonal with entries `c_i²`.
pub fn joint_computational(state: &SchmidtState) -> JointDistribution {
    let d = state.dim();
    let mut probs = vec![0.0; d * d];
    for (i, c) in state.coeffs().iter().enumerate() {
        probs[i * d + i] = c * c;
    }
    JointDistribution::new(probs, d, "computational", "computational")
        .expect("squared Schmidt coefficients sum to 1")
}

/// Sum of pairwise coefficient products `c_0c_1 + c_1c_2 + c_0c_2`.
///
/// This combination controls every sigma-x joint probability; for qutrits it
/// equals the negativity of the state.
fn pairwise_sum(state: &SchmidtState) -> f64 {
    let c = state.coeffs();
    c[0] * c[1] + c[1] * c[2] + c[0] * c[2]
}

fn require_qutrit(state: &SchmidtState) -> Result<()> {
    if state.dim() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            actual: state.dim(),
        });
    }
    Ok(())
}

/// Joint distribution with the generalized sigma-x basis on both sides.
///
/// The three correlated cells `(b0,b0)`, `(b1,b2)`, `(b2,b1)` each carry
/// `(1 + 2(c0c1 + c1c2 + c0c2))/9`; the remaining six cells each carry
/// `(1 - (c0c1 + c1c2 + c0c2))/9`. All marginals are uniform.
pub fn joint_sigma_x_both(state: &SchmidtState) -> Result<JointDistribution> {
    require_qutrit(state)?;
    let s = pairwise_sum(state);
    let correlated = (1.0 + 2.0 * s) / 9.0;
    // rounding can push s a few ulp past 1 for the maximally entangled state
    let rest = ((1.0 - s) / 9.0).max(0.0);
    let mut probs = vec![rest; 9];
    for (i, j) in [(0, 0), (1, 2), (2, 1)] {
        probs[i * 3 + j] = correlated;
    }
    JointDistribution::new(probs, 3, "sigma_x", "sigma_x")
}

/// Joint distribution with the generalized sigma-x basis on one side and its
/// complex conjugate on the other.
///
/// Conjugation swaps the second party's outcomes `b_1 ↔ b_2`, so the
/// correlated cells move onto the diagonal: `P(b_i, b̄_i)` is the same for
/// all `i` and equals `(1 + 2(c0c1 + c1c2 + c0c2))/9`.
pub fn joint_sigma_x_conjugate(state: &SchmidtState) -> Result<JointDistribution> {
    require_qutrit(state)?;
    let both = joint_sigma_x_both(state)?;
    let swap = [0usize, 2, 1];
    let mut probs = vec![0.0; 9];
    for i in 0..3 {
        for j in 0..3 {
            probs[i * 3 + j] = both.prob(i, swap[j]);
        }
    }
    JointDistribution::new(probs, 3, "sigma_x", "conj_sigma_x")
}

/// Born-rule joint distribution for arbitrary local bases:
/// `P(i,j) = |Σ_k c_k ⟨a_i|k⟩⟨b_j|k⟩|²`.
pub fn joint_general(
    state: &SchmidtState,
    basis_a: &Basis,
    basis_b: &Basis,
) -> Result<JointDistribution> {
    let d = state.dim();
    if basis_a.dim() != d {
        return Err(Error::Dimension {
            expected: d,
            actual: basis_a.dim(),
        });
    }
    if basis_b.dim() != d {
        return Err(Error::Dimension {
            expected: d,
            actual: basis_b.dim(),
        });
    }
    let c = state.coeffs();
    let mut probs = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            let amp: Complex64 = (0..d)
                .map(|k| basis_a.amplitude(i, k).conj() * basis_b.amplitude(j, k).conj() * c[k])
                .sum();
            probs[i * d + j] = amp.norm_sqr();
        }
    }
    JointDistribution::new(
        probs,
        d,
        format!("{:?}", basis_a.label()),
        format!("{:?}", basis_b.label()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{random_qutrit, random_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn computational_is_diagonal_in_squares() {
        let s = SchmidtState::new(vec![0.3, 0.8, 0.27f64.sqrt()]).unwrap();
        let d = joint_computational(&s);
        assert!((d.prob(0, 0) - 0.09).abs() < 1e-15);
        assert!((d.prob(1, 1) - 0.64).abs() < 1e-15);
        assert!((d.prob(2, 2) - 0.27).abs() < 1e-12);
        assert_eq!(d.prob(0, 1), 0.0);

        let product = SchmidtState::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(joint_computational(&product).prob(0, 0), 1.0);
    }

    #[test]
    fn sigma_x_both_closed_form_cells() {
        // maximally entangled: three cells of 1/3, six of 0
        let me = SchmidtState::maximally_entangled(3);
        let d = joint_sigma_x_both(&me).unwrap();
        for (i, j) in [(0, 0), (1, 2), (2, 1)] {
            assert!((d.prob(i, j) - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(d.prob(1, 1).abs() < 1e-12);

        // Schmidt coefficients (0.3, 0.8, sqrt(0.27)) have pairwise sum 0.81158
        let s = SchmidtState::new(vec![0.3, 0.8, 0.27f64.sqrt()]).unwrap();
        let d = joint_sigma_x_both(&s).unwrap();
        assert!((d.prob(0, 0) - 0.2914615036661621).abs() < 1e-12);
        assert!((d.prob(2, 1) - 0.2914615036661621).abs() < 1e-12);
        assert!((d.prob(0, 1) - 0.020935914833585614).abs() < 1e-12);
    }

    #[test]
    fn sigma_x_both_rejects_non_qutrits() {
        let s = SchmidtState::maximally_entangled(4);
        assert!(matches!(
            joint_sigma_x_both(&s),
            Err(Error::Dimension { expected: 3, .. })
        ));
    }

    #[test]
    fn conjugate_diagonal_cells_are_equal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let s = random_qutrit(&mut rng);
            let d = joint_sigma_x_conjugate(&s).unwrap();
            assert!((d.prob(0, 0) - d.prob(1, 1)).abs() < 1e-15);
            assert!((d.prob(0, 0) - d.prob(2, 2)).abs() < 1e-15);
        }
        let me = SchmidtState::maximally_entangled(3);
        let d = joint_sigma_x_conjugate(&me).unwrap();
        assert!((d.prob(0, 0) - 1.0 / 3.0).abs() < 1e-12);
        assert!(d.prob(0, 1).abs() < 1e-12);
    }

    #[test]
    fn conjugate_is_column_swapped_both() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let swap = [0usize, 2, 1];
        for _ in 0..100 {
            let s = random_qutrit(&mut rng);
            let both = joint_sigma_x_both(&s).unwrap();
            let conj = joint_sigma_x_conjugate(&s).unwrap();
            for i in 0..3 {
                for (j, &sj) in swap.iter().enumerate() {
                    assert!((conj.prob(i, j) - both.prob(i, sj)).abs() <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn general_reproduces_specializations() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let comp = Basis::computational(3);
        let sx = Basis::generalized_sigma_x();
        let sx_conj = sx.conjugate();
        for _ in 0..300 {
            let s = random_qutrit(&mut rng);
            let via_comp = joint_general(&s, &comp, &comp).unwrap();
            let closed = joint_computational(&s);
            let via_sx = joint_general(&s, &sx, &sx).unwrap();
            let closed_sx = joint_sigma_x_both(&s).unwrap();
            let via_conj = joint_general(&s, &sx, &sx_conj).unwrap();
            let closed_conj = joint_sigma_x_conjugate(&s).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((via_comp.prob(i, j) - closed.prob(i, j)).abs() < 1e-12);
                    assert!((via_sx.prob(i, j) - closed_sx.prob(i, j)).abs() < 1e-12);
                    assert!((via_conj.prob(i, j) - closed_conj.prob(i, j)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn distributions_are_normalized_with_uniform_sigma_x_marginals() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..1000 {
            let s = random_qutrit(&mut rng);
            let d = joint_sigma_x_both(&s).unwrap();
            let total: f64 = d.probs().iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
            assert!(d.probs().iter().all(|p| *p >= 0.0));
            for m in d.row_marginals().iter().chain(d.col_marginals().iter()) {
                assert!((m - 1.0 / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn general_works_beyond_qutrits() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for d in [2usize, 4, 5] {
            let comp = Basis::computational(d);
            for _ in 0..50 {
                let s = random_state(&mut rng, d);
                let dist = joint_general(&s, &comp, &comp).unwrap();
                let closed = joint_computational(&s);
                for i in 0..d {
                    for j in 0..d {
                        assert!((dist.prob(i, j) - closed.prob(i, j)).abs() < 1e-12);
                    }
                }
            }
        }
        let s = SchmidtState::maximally_entangled(3);
        assert!(joint_general(&s, &Basis::computational(4), &Basis::computational(3)).is_err());
    }
}
