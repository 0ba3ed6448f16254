//! Re-analyzes a pair of representative measured coincidence matrices (one
//! per plane) into entanglement estimates, certification and deviations.
//!
//! Run: cargo run --example table_reanalysis

use tanglemetry::io::{analyze_matrices, render_report_table, AnalysisConfig};
use tanglemetry::JointDistribution;

// 3x3 normalized coincidence matrices; rows are signal-arm positions,
// columns idler-arm positions.
const IMAGE_PLANE: [f64; 9] = [
    0.281, 0.024, 0.003, //
    0.006, 0.287, 0.014, //
    0.002, 0.006, 0.376,
];
const FOCAL_PLANE: [f64; 9] = [
    0.344, 0.017, 0.017, //
    0.008, 0.017, 0.260, //
    0.017, 0.302, 0.017,
];

fn main() -> Result<(), tanglemetry::Error> {
    let image = [JointDistribution::from_weights(
        &IMAGE_PLANE,
        3,
        "signal",
        "idler",
    )?];
    let focal = [JointDistribution::from_weights(
        &FOCAL_PLANE,
        3,
        "signal",
        "idler",
    )?];
    let report = analyze_matrices(
        &image,
        &focal,
        &AnalysisConfig::default(),
        vec!["<embedded image matrix>".into(), "<embedded focal matrix>".into()],
    )?;
    print!("{}", render_report_table(&report));
    println!();
    println!("report as JSON:");
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
