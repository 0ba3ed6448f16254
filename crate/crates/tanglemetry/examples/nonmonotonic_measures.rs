//! Two states on which Negativity and EOF disagree about which is more
//! entangled, plus the gradient structure behind the effect.
//!
//! Run: cargo run --example nonmonotonic_measures

use tanglemetry::{eof, find_nonmonotonic_pair, measure_gradients, negativity, SchmidtState};

fn main() -> Result<(), tanglemetry::Error> {
    let a = SchmidtState::from_two_coeffs(0.4, 0.9)?;
    let b = SchmidtState::from_two_coeffs(0.5, 0.1)?;
    let candidates = vec![a.clone(), b.clone(), SchmidtState::maximally_entangled(3)];

    for (label, s) in [("A = (0.4, 0.9, ...)", &a), ("B = (0.5, 0.1, ...)", &b)] {
        println!(
            "{label}: E = {:.4} bits, N = {:.4}",
            eof(s),
            negativity(s)?
        );
    }
    println!();

    let pairs = find_nonmonotonic_pair(&candidates)?;
    println!("non-monotonic pairs among {} candidates: {}", candidates.len(), pairs.len());
    for (s, t) in &pairs {
        println!(
            "  E orders ({:.4} vs {:.4}) opposite to N ({:.4} vs {:.4})",
            eof(s),
            eof(t),
            negativity(s)?,
            negativity(t)?
        );
    }
    println!();

    // both measures have stationary derivatives only at the balanced state
    let balanced = SchmidtState::from_two_coeffs(1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt())?;
    let g = measure_gradients(&balanced)?;
    println!(
        "gradients at the balanced state: dE/dc0 = {:.2e}, dN/dc0 = {:.2e}",
        g.d_e_dc0, g.d_n_dc0
    );
    let g = measure_gradients(&a)?;
    println!(
        "gradients at state A:            dE/dc0 = {:+.4},   dN/dc0 = {:+.4}",
        g.d_e_dc0, g.d_n_dc0
    );
    Ok(())
}
