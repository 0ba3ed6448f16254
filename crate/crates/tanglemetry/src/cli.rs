//! Command-line interface: `analyze`, `simulate`, `scan`, `profile` and
//! `certify` subcommands over the library.
//!
//! Exit codes: 0 success, 2 parse/shape errors (including unreadable files),
//! 3 domain/validation errors, 4 degenerate-statistics errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::core::{Error, JointDistribution, Result, SchmidtState};
use crate::entanglement::{deviation_report, scan_max_delta_q};
use crate::estimators::{certify_by_pcc_sum, pcc};
use crate::io::{
    analyze_matrices, atomic_write, read_matrix_csv, render_profile_csv, render_report_table,
    write_count_matrix_csv, AnalysisConfig, RunConfig, SimulationManifest,
};
use crate::measurement::{joint_computational, joint_sigma_x_both};
use crate::optics::{
    eigen_positions, focal_coincidence_profile, image_plane_profile, sigma_z_operator_positions,
};
use crate::photon_sim::{sample_repeats, SimConfig, STREAM_FOCAL, STREAM_IMAGE};

#[derive(Parser)]
#[command(
    name = "tanglemetry",
    version,
    about = "Certify and quantify spatial-bin qutrit entanglement from coincidence statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Plane {
    Image,
    Focal,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze measured 3x3 count matrices from both planes into
    /// entanglement estimates, certification and deviation numbers.
    Analyze {
        /// Image-plane (which-slit) matrix CSVs.
        #[arg(long, required = true, num_args = 1..)]
        image: Vec<PathBuf>,
        /// Focal-plane (interference) matrix CSVs.
        #[arg(long, required = true, num_args = 1..)]
        focal: Vec<PathBuf>,
        /// Eigenvalues assigned to outcomes in position order, both planes
        /// (comma separated, e.g. 0,1,-1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eigs: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value = "table")]
        format: ReportFormat,
        /// Directory for report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate coincidence-count matrices for a qutrit state and write them
    /// as CSVs plus a manifest.
    Simulate {
        #[arg(long)]
        c0: f64,
        #[arg(long)]
        c1: f64,
        /// Mean total coincidences per matrix (e.g. 1e5; default from the
        /// config file or 1e5).
        #[arg(long)]
        total: Option<f64>,
        /// Matrices per basis configuration (default 5).
        #[arg(long)]
        repeats: Option<usize>,
        /// RNG seed (default 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Uniform accidental fraction in [0, 1) (default 0).
        #[arg(long)]
        background: Option<f64>,
        /// JSON run-config file carrying simulation defaults.
        #[arg(long)]
        geometry: Option<PathBuf>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate both measures and their percentage deviations over a
    /// coefficient grid and locate the deviation-gap peak.
    Scan {
        /// Grid step in coefficient space, in (0, 0.01].
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        /// Directory for scan.csv; written to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a detection profile for a qutrit state in either plane.
    Profile {
        #[arg(long, value_enum)]
        plane: Plane,
        #[arg(long)]
        c0: f64,
        #[arg(long)]
        c1: f64,
        /// Total scan span in um, centered on zero.
        #[arg(long, default_value_t = 4000.0)]
        range: f64,
        /// Step in um; defaults to 10 (image) or 30 (focal).
        #[arg(long)]
        step: Option<f64>,
        /// Gaussian detector kernel width for the image plane, um.
        #[arg(long, default_value_t = 0.0)]
        detector_sigma: f64,
        /// JSON run-config file carrying geometry overrides.
        #[arg(long)]
        geometry: Option<PathBuf>,
        /// Directory for profile.csv; written to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the two-correlator certification verdict for one image-plane
    /// and one focal-plane matrix.
    Certify {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        focal: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eigs: Option<Vec<f64>>,
    },
}

/// Parses and runs, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here as non-errors
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with the process arguments.
pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Shape { .. } | Error::Io(_) | Error::Json(_) => 2,
        Error::DegenerateVariance { .. } => 4,
        _ => 3,
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Analyze {
            image,
            focal,
            eigs,
            format,
            out,
        } => cmd_analyze(&image, &focal, eigs, format, out.as_deref()),
        Command::Simulate {
            c0,
            c1,
            total,
            repeats,
            seed,
            background,
            geometry,
            out,
        } => cmd_simulate(
            c0,
            c1,
            total,
            repeats,
            seed,
            background,
            geometry.as_deref(),
            &out,
        ),
        Command::Scan { step, out } => cmd_scan(step, out.as_deref()),
        Command::Profile {
            plane,
            c0,
            c1,
            range,
            step,
            detector_sigma,
            geometry,
            out,
        } => cmd_profile(
            plane,
            c0,
            c1,
            range,
            step,
            detector_sigma,
            geometry.as_deref(),
            out.as_deref(),
        ),
        Command::Certify { image, focal, eigs } => cmd_certify(&image, &focal, eigs),
    }
}

fn load_distributions(paths: &[PathBuf]) -> Result<Vec<JointDistribution>> {
    paths
        .iter()
        .map(|p| read_matrix_csv(p)?.to_distribution())
        .collect()
}

fn analysis_config(eigs: Option<Vec<f64>>) -> Result<AnalysisConfig> {
    let mut config = AnalysisConfig::default();
    if let Some(e) = eigs {
        if e.len() != 3 {
            return Err(Error::Domain(format!(
                "--eigs needs exactly 3 comma-separated values, got {}",
                e.len()
            )));
        }
        config.eigs_image = e.clone();
        config.eigs_focal = e;
    }
    Ok(config)
}

fn ensure_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn cmd_analyze(
    image: &[PathBuf],
    focal: &[PathBuf],
    eigs: Option<Vec<f64>>,
    format: ReportFormat,
    out: Option<&Path>,
) -> Result<()> {
    let image_dists = load_distributions(image)?;
    let focal_dists = load_distributions(focal)?;
    let inputs = image
        .iter()
        .chain(focal.iter())
        .map(|p| p.display().to_string())
        .collect();
    let report = analyze_matrices(&image_dists, &focal_dists, &analysis_config(eigs)?, inputs)?;
    match format {
        ReportFormat::Table => print!("{}", render_report_table(&report)),
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    if let Some(dir) = out {
        ensure_out_dir(dir)?;
        let path = dir.join("report.json");
        atomic_write(&path, &serde_json::to_string_pretty(&report)?)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn parse_total(total: f64) -> Result<u64> {
    if !(total >= 1.0 && total.is_finite() && total <= 1e15 && total.fract() == 0.0) {
        return Err(Error::Domain(format!(
            "total {total} must be a positive integer count"
        )));
    }
    Ok(total as u64)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    c0: f64,
    c1: f64,
    total: Option<f64>,
    repeats: Option<usize>,
    seed: Option<u64>,
    background: Option<f64>,
    geometry: Option<&Path>,
    out: &Path,
) -> Result<()> {
    let state = SchmidtState::from_two_coeffs(c0, c1)?;
    // file config supplies defaults, explicit flags win
    let mut cfg = match geometry {
        Some(path) => RunConfig::load(path)?.sim,
        None => SimConfig::default(),
    };
    if let Some(t) = total {
        cfg.total_coincidences = parse_total(t)?;
    }
    if let Some(r) = repeats {
        cfg.n_repeats = r;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(b) = background {
        cfg.background_rate = b;
    }
    cfg.validate()?;
    ensure_out_dir(out)?;

    // the focal plane measures the sigma-x observable on both arms
    let focal_dist = joint_sigma_x_both(&state)?;
    let image_dist = joint_computational(&state);
    let focal_matrices = sample_repeats(&focal_dist, &cfg, STREAM_FOCAL);
    let image_matrices = sample_repeats(&image_dist, &cfg, STREAM_IMAGE);

    let mut manifest = SimulationManifest {
        coeffs: state.coeffs().to_vec(),
        sim: cfg,
        image_files: Vec::new(),
        focal_files: Vec::new(),
    };
    for (r, matrix) in image_matrices.iter().enumerate() {
        let name = format!("image_r{r}.csv");
        write_count_matrix_csv(
            &out.join(&name),
            matrix,
            &[format!("plane image, repeat {r}, seed {}", cfg.seed)],
        )?;
        manifest.image_files.push(name);
    }
    for (r, matrix) in focal_matrices.iter().enumerate() {
        let name = format!("focal_r{r}.csv");
        write_count_matrix_csv(
            &out.join(&name),
            matrix,
            &[format!("plane focal, repeat {r}, seed {}", cfg.seed)],
        )?;
        manifest.focal_files.push(name);
    }
    atomic_write(
        &out.join("manifest.json"),
        &serde_json::to_string_pretty(&manifest)?,
    )?;
    println!(
        "wrote {} matrices + manifest.json to {}",
        manifest.image_files.len() + manifest.focal_files.len(),
        out.display()
    );
    Ok(())
}

fn cmd_scan(step: f64, out: Option<&Path>) -> Result<()> {
    let maximum = scan_max_delta_q(step)?;
    let mut csv = String::new();
    csv.push_str(&format!(
        "# balanced-line interior peak: delta_q {:.4}% at c0 = c1 = {:.4}\n",
        maximum.delta_q, maximum.c0
    ));
    csv.push_str("c0,c1,e,n,q_e,q_n,delta_q\n");
    let mut i = 1usize;
    loop {
        let c0 = i as f64 * step;
        if c0 >= 1.0 {
            break;
        }
        let mut j = 1usize;
        loop {
            let c1 = j as f64 * step;
            if c0 * c0 + c1 * c1 >= 1.0 {
                break;
            }
            let state = SchmidtState::from_two_coeffs(c0, c1)?;
            let r = deviation_report(&state)?;
            csv.push_str(&format!(
                "{c0:.6},{c1:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                r.e, r.n, r.q_e, r.q_n, r.delta_q
            ));
            j += 1;
        }
        i += 1;
    }
    match out {
        Some(dir) => {
            ensure_out_dir(dir)?;
            let path = dir.join("scan.csv");
            atomic_write(&path, &csv)?;
            println!(
                "maximum delta_q = {:.4}% at c0 = c1 = {:.4} ({})",
                maximum.delta_q,
                maximum.c0,
                path.display()
            );
        }
        None => print!("{csv}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_profile(
    plane: Plane,
    c0: f64,
    c1: f64,
    range: f64,
    step: Option<f64>,
    detector_sigma: f64,
    geometry: Option<&Path>,
    out: Option<&Path>,
) -> Result<()> {
    let state = SchmidtState::from_two_coeffs(c0, c1)?;
    let config = match geometry {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let geom = config.geometry;
    geom.validate()?;
    if !(range > 0.0 && range.is_finite()) {
        return Err(Error::Domain(format!("range {range} must be positive")));
    }
    let (half, step) = (
        range / 2.0,
        step.unwrap_or(match plane {
            Plane::Image => 10.0,
            Plane::Focal => 30.0,
        }),
    );
    let (profile, annotations) = match plane {
        Plane::Focal => {
            let p = focal_coincidence_profile(&state, &geom, -half, half, step)?;
            let [x1, x2, x3] = eigen_positions(&geom);
            (
                p,
                vec![
                    format!("plane focal, fringe period {} um", geom.fringe_period_um()),
                    format!("eigen positions (um): {x1} {x2} {x3}"),
                ],
            )
        }
        Plane::Image => {
            let p = image_plane_profile(&state, &geom, detector_sigma, -half, half, step)?;
            let [plus, zero, minus] = sigma_z_operator_positions(&geom);
            (
                p,
                vec![format!(
                    "plane image, slit-image centers (um): {plus} {zero} {minus}"
                )],
            )
        }
    };
    let csv = render_profile_csv(&profile, &annotations);
    match out {
        Some(dir) => {
            ensure_out_dir(dir)?;
            let path = dir.join("profile.csv");
            atomic_write(&path, &csv)?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_certify(image: &Path, focal: &Path, eigs: Option<Vec<f64>>) -> Result<()> {
    let config = analysis_config(eigs)?;
    let image_dist = read_matrix_csv(image)?.to_distribution()?;
    let focal_dist = read_matrix_csv(focal)?.to_distribution()?;
    let c1 = pcc(&image_dist, &config.eigs_image, &config.eigs_image)?;
    let c2 = pcc(&focal_dist, &config.eigs_focal, &config.eigs_focal)?;
    let result = certify_by_pcc_sum(c1, c2)?;
    println!("|C1| + |C2| = {:.4}", result.pcc_sum);
    println!("threshold   = {:.0}", result.threshold);
    println!(
        "verdict     = {}",
        if result.certified {
            "entangled"
        } else {
            "not certified"
        }
    );
    Ok(())
}
