//! How differently Negativity and EOF report the distance to the maximally
//! entangled state: reference rows plus the located peak of the gap.
//!
//! Run: cargo run --example deviation_scan

use tanglemetry::{deviation_report, scan_max_delta_q, SchmidtState};

fn main() -> Result<(), tanglemetry::Error> {
    println!("{:>7} {:>7} {:>8} {:>8} {:>9} {:>9} {:>9}", "c0", "c1", "E", "N", "Q_E %", "Q_N %", "dQ %");
    for (c0, c1) in [
        (0.1, 0.1),
        (0.3, 0.8),
        (0.5774, 0.5774),
        (0.6, 0.6),
        (0.9, 0.3),
    ] {
        let r = deviation_report(&SchmidtState::from_two_coeffs(c0, c1)?)?;
        println!(
            "{c0:>7.4} {c1:>7.4} {:>8.4} {:>8.4} {:>9.4} {:>9.4} {:>9.4}",
            r.e, r.n, r.q_e, r.q_n, r.delta_q
        );
    }
    println!();

    let max = scan_max_delta_q(0.001)?;
    println!(
        "peak gap among balanced states: dQ = {:.3}% at c0 = c1 = {:.4}",
        max.delta_q, max.c0
    );
    println!("(both deviations vanish together only at c0 = c1 = c2 = 1/sqrt(3))");
    Ok(())
}
