//! # tanglemetry
//!
//! Certification and quantification of entanglement in spatial-bin photonic
//! qutrits from statistical correlators, without state tomography.
//!
//! For a pure bipartite qutrit with Schmidt coefficients `(c0, c1, c2)`,
//! three measurable correlators pin down the two standard entanglement
//! measures exactly:
//!
//! - the Pearson correlation of generalized sigma-x outcomes on both arms
//!   has magnitude equal to the Negativity `N = c0c1 + c1c2 + c0c2`;
//! - the mutual predictability of sigma-x against its complex conjugate is
//!   `(1 + 2N)/3`;
//! - the mutual information of computational-basis outcomes equals the
//!   entanglement of formation `E = -Σ c_i² log₂ c_i²` (in any dimension).
//!
//! The crate models the triple-slit SPDC apparatus that realizes these
//! measurements (image plane = which-slit, focal plane = interference
//! phase), simulates its Poisson counting noise end to end, and quantifies
//! how differently `N` and `E` report the distance to the maximally
//! entangled state.
//!
//! ## Modules
//!
//! - [`core`]: states, bases, observables, distributions, counts.
//! - [`measurement`]: exact joint outcome distributions.
//! - [`estimators`]: PCC, mutual predictability, mutual information,
//!   certification, repeat statistics.
//! - [`entanglement`]: Negativity, EOF, inverse maps, deviation reports,
//!   gradients, non-monotonicity and the deviation-gap scan.
//! - [`photon_sim`]: Poisson coincidence sampling and the full Monte Carlo
//!   pipeline.
//! - [`optics`]: detector positions, diffraction profiles, visibility.
//! - [`io`]: CSV formats, analysis reports, config files.
//! - [`cli`]: the `tanglemetry` binary (`analyze`, `simulate`, `scan`,
//!   `profile`, `certify`).
//!
//! ## Examples
//!
//! One runnable example per capability, under `examples/`:
//!
//! ```bash
//! cargo run --example correlator_identities   # correlator <-> measure maps
//! cargo run --example table_reanalysis        # re-analyze published-style matrices
//! cargo run --example monte_carlo_pipeline    # counts -> estimates round trip
//! cargo run --example deviation_scan          # where N and EOF disagree most
//! cargo run --example nonmonotonic_measures   # opposite orderings of N and EOF
//! cargo run --example diffraction_profiles    # detector positions and fringes
//! ```

pub mod cli;
pub mod core;
pub mod entanglement;
pub mod estimators;
pub mod io;
pub mod measurement;
pub mod optics;
pub mod photon_sim;

pub use crate::core::{
    Basis, BasisLabel, CountMatrix, DetectorPositions, Error, EstimateWithError,
    JointDistribution, Observable, Result, SchmidtState, STANDARD_QUTRIT_EIGENVALUES,
};
pub use crate::entanglement::{
    deviation_report, eof, find_nonmonotonic_pair, measure_gradients, negativity,
    negativity_from_mp, negativity_from_pcc, scan_max_delta_q, DeviationReport, MeasureGradient,
    ScanMaximum,
};
pub use crate::estimators::{
    certify_by_pcc_sum, diagonal_matching, mutual_information, mutual_predictability,
    normalize_counts, pcc, repeat_statistics, sigma_x_both_matching, CertificationResult,
};
pub use crate::measurement::{
    joint_computational, joint_general, joint_sigma_x_both, joint_sigma_x_conjugate,
};
pub use crate::optics::{
    eigen_positions, focal_coincidence_profile, image_plane_profile, sigma_z_operator_positions,
    theta_of_position, visibility, OpticsGeometry, Profile,
};
pub use crate::photon_sim::{run_pipeline, sample_count_matrix, PipelineResult, SimConfig};
