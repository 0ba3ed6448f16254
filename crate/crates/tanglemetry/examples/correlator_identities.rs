//! The three correlator <-> entanglement-measure identities, evaluated on
//! exact joint distributions.
//!
//! Run: cargo run --example correlator_identities

use tanglemetry::{
    certify_by_pcc_sum, diagonal_matching, eof, joint_computational, joint_sigma_x_both,
    joint_sigma_x_conjugate, mutual_information, mutual_predictability, negativity, pcc,
    SchmidtState, STANDARD_QUTRIT_EIGENVALUES,
};

fn main() -> Result<(), tanglemetry::Error> {
    let eigs = STANDARD_QUTRIT_EIGENVALUES;
    let states = [
        ("maximally entangled", SchmidtState::maximally_entangled(3)),
        ("(0.3, 0.8, ...)", SchmidtState::from_two_coeffs(0.3, 0.8)?),
        ("(0.1, 0.1, ...)", SchmidtState::from_two_coeffs(0.1, 0.1)?),
        ("(0.9, 0.3, ...)", SchmidtState::from_two_coeffs(0.9, 0.3)?),
    ];

    println!("correlator identities for pure qutrit states");
    println!("{:-<78}", "");
    for (label, state) in &states {
        let n = negativity(state)?;
        let e = eof(state);

        // |PCC| in the sigma-x basis on both arms equals the Negativity
        let sx = joint_sigma_x_both(state)?;
        let pcc_x = pcc(&sx, &eigs, &eigs)?;

        // MP against the conjugate basis is (1 + 2N)/3
        let conj = joint_sigma_x_conjugate(state)?;
        let mp = mutual_predictability(&conj, &diagonal_matching(3))?;

        // computational-basis MI equals the entanglement of formation
        let comp = joint_computational(state);
        let mi = mutual_information(&comp);

        // computational-basis PCC is 1, so |C1| + |C2| = 1 + N certifies
        let pcc_z = pcc(&comp, &eigs, &eigs)?;
        let cert = certify_by_pcc_sum(pcc_z, pcc_x)?;

        println!("{label}");
        println!("  N = {n:.4}   E = {e:.4} bits");
        println!("  |PCC(sigma_x, sigma_x)| = {:.4}  (= N)", pcc_x.abs());
        println!(
            "  MP(sigma_x, conj)       = {mp:.4}  ((1+2N)/3 = {:.4})",
            (1.0 + 2.0 * n) / 3.0
        );
        println!("  MI(computational)       = {mi:.4}  (= E)");
        println!(
            "  |C1| + |C2| = {:.4} > 1  ->  certified: {}",
            cert.pcc_sum, cert.certified
        );
        println!();
    }
    Ok(())
}
