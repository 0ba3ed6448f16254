//! Detector positions and detection profiles of the triple-slit apparatus:
//! where the basis states live in each plane, what the coincidence fringes
//! look like, and the fringe visibility.
//!
//! Run: cargo run --example diffraction_profiles

use tanglemetry::{
    eigen_positions, focal_coincidence_profile, image_plane_profile, sigma_z_operator_positions,
    theta_of_position, visibility, OpticsGeometry, SchmidtState,
};

fn main() -> Result<(), tanglemetry::Error> {
    let geom = OpticsGeometry::default();
    println!(
        "geometry: a = {} um, d = {} um, lambda = {} um, f = {} mm",
        geom.slit_width_um, geom.slit_separation_um, geom.wavelength_um, geom.focal_length_mm
    );
    println!("fringe period lambda*f/d = {} um", geom.fringe_period_um());

    let [x1, x2, x3] = eigen_positions(&geom);
    println!("sigma-x eigen positions (focal plane): {x1}, {x2}, {x3} um");
    println!(
        "  phases there: {:.4}, {:.4}, {:.4} rad",
        theta_of_position(x1, &geom),
        theta_of_position(x2, &geom),
        theta_of_position(x3, &geom)
    );
    let [p, z, m] = sigma_z_operator_positions(&geom);
    println!("sigma-z slit-image centers (image plane): {p}, {z}, {m} um");
    println!();

    let me = SchmidtState::maximally_entangled(3);
    let focal = focal_coincidence_profile(&me, &geom, -1215.0, 1215.0, 7.5)?;
    let v = visibility(&focal, geom.fringe_period_um())?;
    println!(
        "maximally entangled focal profile: {} samples, visibility = {v:.4}",
        focal.samples().len()
    );

    // a coarse ASCII rendering of the central fringes
    println!("normalized coincidence profile (ascii, +/-700 um):");
    for &(x, value) in focal.samples() {
        if x.abs() <= 700.0 && (x / 37.5).fract().abs() < 1e-9 {
            let bar = "#".repeat((value * 50.0).round() as usize);
            println!("  {x:>7.1} um | {bar}");
        }
    }
    println!();

    let skewed = SchmidtState::from_two_coeffs(0.3, 0.8)?;
    let image = image_plane_profile(&skewed, &geom, 5.0, -250.0, 250.0, 10.0)?;
    println!("image-plane profile of (0.3, 0.8, ...): peaks weighted 0.09 : 0.64 : 0.27");
    for &(x, value) in image.samples() {
        if (x / 50.0).fract().abs() < 1e-9 {
            let bar = "#".repeat((value * 50.0).round() as usize);
            println!("  {x:>7.1} um | {bar}");
        }
    }
    Ok(())
}
