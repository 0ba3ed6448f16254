//! File formats and report assembly: count-matrix CSV, profile CSV, the
//! analysis report (JSON + table), the simulation manifest and the run
//! configuration file.
//!
//! Count-matrix CSV is three data rows of three comma-separated nonnegative
//! numbers. Leading `#` lines are comments; `# key value` comments written
//! by this crate carry acquisition metadata and round-trip through the
//! reader. All writes go through a temp-file-plus-rename so readers never
//! observe partial output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::core::{
    CountMatrix, DetectorPositions, Error, EstimateWithError, JointDistribution, Result,
};
use crate::entanglement::{negativity_from_mp, negativity_from_pcc, DeviationReport};
use crate::estimators::{
    certify_by_pcc_sum, mutual_information, mutual_predictability, pcc, repeat_statistics,
    sigma_x_both_matching, CertificationResult,
};
use crate::optics::{OpticsGeometry, Profile};
use crate::photon_sim::SimConfig;

/// A raw rectangular matrix read from CSV, plus any recognized metadata
/// comments.
#[derive(Debug, Clone, PartialEq)]
pub struct RawMatrix {
    pub values: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
    pub accumulation_time_s: Option<f64>,
    pub row_positions_um: Option<Vec<f64>>,
    pub col_positions_um: Option<Vec<f64>>,
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn parse_num_list(text: &str) -> Option<Vec<f64>> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().ok())
        .collect()
}

/// Reads a comma-separated nonnegative matrix. `#` lines are skipped, except
/// that `# <key> <value>` metadata written by [`write_count_matrix_csv`] is
/// recognized and returned.
pub fn read_matrix_csv(path: &Path) -> Result<RawMatrix> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    let mut accumulation_time_s = None;
    let mut row_positions_um = None;
    let mut col_positions_um = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut parts = comment.trim().splitn(2, char::is_whitespace);
            match (parts.next(), parts.next()) {
                (Some("accumulation_time_s"), Some(v)) => {
                    accumulation_time_s = v.trim().parse::<f64>().ok();
                }
                (Some("row_positions_um"), Some(v)) => {
                    row_positions_um = parse_num_list(v);
                }
                (Some("col_positions_um"), Some(v)) => {
                    col_positions_um = parse_num_list(v);
                }
                _ => {}
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        match cols {
            None => cols = Some(fields.len()),
            Some(c) if c != fields.len() => {
                return Err(parse_err(
                    path,
                    line_no,
                    format!("expected {c} fields, found {}", fields.len()),
                ));
            }
            _ => {}
        }
        for field in fields {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(path, line_no, format!("not a number: '{field}'")))?;
            if v < 0.0 || !v.is_finite() {
                return Err(parse_err(path, line_no, format!("negative value {v}")));
            }
            values.push(v);
        }
        rows += 1;
    }
    let cols = cols.ok_or_else(|| parse_err(path, 1, "no data rows"))?;
    Ok(RawMatrix {
        values,
        rows,
        cols,
        accumulation_time_s,
        row_positions_um,
        col_positions_um,
    })
}

impl RawMatrix {
    /// Requires the 3x3 shape of a qutrit coincidence matrix.
    pub fn require_3x3(&self) -> Result<()> {
        if self.rows != 3 || self.cols != 3 {
            return Err(Error::Shape {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Normalizes into a joint distribution.
    pub fn to_distribution(&self) -> Result<JointDistribution> {
        self.require_3x3()?;
        JointDistribution::from_weights(&self.values, 3, "signal", "idler")
    }

    /// Interprets the matrix as integer counts. Fails if any cell is
    /// fractional.
    pub fn to_count_matrix(&self) -> Result<CountMatrix> {
        self.require_3x3()?;
        let mut counts = Vec::with_capacity(9);
        for &v in &self.values {
            if v.fract() != 0.0 || v > u64::MAX as f64 {
                return Err(Error::Domain(format!("cell {v} is not an integer count")));
            }
            counts.push(v as u64);
        }
        let mut m = CountMatrix::new(counts, 3, self.accumulation_time_s.unwrap_or(0.0))?;
        if let (Some(rows_um), Some(cols_um)) = (&self.row_positions_um, &self.col_positions_um) {
            m = m.with_positions(DetectorPositions {
                rows_um: rows_um.clone(),
                cols_um: cols_um.clone(),
            });
        }
        Ok(m)
    }
}

/// Reads a count-matrix CSV, requiring integer cells.
pub fn read_count_matrix_csv(path: &Path) -> Result<CountMatrix> {
    read_matrix_csv(path)?.to_count_matrix()
}

fn fmt_num_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes a count matrix with its metadata as comments. Extra comment lines
/// can carry run context; they are ignored by the reader.
pub fn write_count_matrix_csv(
    path: &Path,
    matrix: &CountMatrix,
    extra_comments: &[String],
) -> Result<()> {
    let d = matrix.dim();
    let mut out = String::new();
    for c in extra_comments {
        writeln!(out, "# {c}").expect("string write");
    }
    writeln!(out, "# accumulation_time_s {}", matrix.accumulation_time_s).expect("string write");
    if let Some(p) = &matrix.positions {
        writeln!(out, "# row_positions_um {}", fmt_num_list(&p.rows_um)).expect("string write");
        writeln!(out, "# col_positions_um {}", fmt_num_list(&p.cols_um)).expect("string write");
    }
    for i in 0..d {
        let row: Vec<String> = (0..d).map(|j| matrix.count(i, j).to_string()).collect();
        writeln!(out, "{}", row.join(",")).expect("string write");
    }
    atomic_write(path, &out)
}

/// Writes a two-column `position_um,value` CSV with annotation comments.
pub fn write_profile_csv(path: &Path, profile: &Profile, annotations: &[String]) -> Result<()> {
    atomic_write(path, &render_profile_csv(profile, annotations))
}

pub fn render_profile_csv(profile: &Profile, annotations: &[String]) -> String {
    let mut out = String::new();
    for a in annotations {
        writeln!(out, "# {a}").expect("string write");
    }
    writeln!(out, "position_um,value").expect("string write");
    for &(x, v) in profile.samples() {
        writeln!(out, "{x},{v}").expect("string write");
    }
    out
}

/// Writes via a temp file in the same directory plus an atomic rename.
pub fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Domain(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", file_name.to_string_lossy()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Where the numbers in an [`AnalysisReport`] came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub inputs: Vec<String>,
    pub config_hash: String,
}

/// Entanglement measures inferred from measured count matrices, with the
/// certification verdict and the deviation comparison derived from the
/// report's own values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub n_from_pcc: EstimateWithError,
    pub n_from_mp: EstimateWithError,
    pub eof_from_mi: EstimateWithError,
    pub certification: CertificationResult,
    pub deviations: DeviationReport,
    pub provenance: Provenance,
}

/// Analysis settings: eigenvalue assignments for both planes and the cell
/// matching used for mutual predictability.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisConfig {
    pub eigs_image: Vec<f64>,
    pub eigs_focal: Vec<f64>,
    pub mp_matching: Vec<(usize, usize)>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            eigs_image: crate::core::STANDARD_QUTRIT_EIGENVALUES.to_vec(),
            eigs_focal: crate::core::STANDARD_QUTRIT_EIGENVALUES.to_vec(),
            mp_matching: sigma_x_both_matching(),
        }
    }
}

impl AnalysisConfig {
    /// Stable content hash of the settings, for provenance.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

/// Runs the full analysis on normalized image-plane and focal-plane
/// matrices: PCC on both planes, MP on the focal plane, MI on the image
/// plane, mapped to Negativity and EOF and averaged across matrices.
pub fn analyze_matrices(
    image: &[JointDistribution],
    focal: &[JointDistribution],
    config: &AnalysisConfig,
    inputs: Vec<String>,
) -> Result<AnalysisReport> {
    if image.is_empty() || focal.is_empty() {
        return Err(Error::Domain(
            "need at least one matrix per measurement plane".into(),
        ));
    }
    let mut abs_pcc_image = Vec::new();
    let mut mi_values = Vec::new();
    for dist in image {
        abs_pcc_image.push(pcc(dist, &config.eigs_image, &config.eigs_image)?.abs());
        mi_values.push(mutual_information(dist));
    }
    let mut abs_pcc_focal = Vec::new();
    let mut n_mp = Vec::new();
    for dist in focal {
        abs_pcc_focal.push(pcc(dist, &config.eigs_focal, &config.eigs_focal)?.abs());
        let mp = mutual_predictability(dist, &config.mp_matching)?;
        n_mp.push(negativity_from_mp(mp)?);
    }
    let n_pcc: Result<Vec<f64>> = abs_pcc_focal
        .iter()
        .map(|&p| negativity_from_pcc(p))
        .collect();
    let n_from_pcc = repeat_statistics(&n_pcc?)?;
    let n_from_mp = repeat_statistics(&n_mp)?;
    let eof_from_mi = repeat_statistics(&mi_values)?;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let certification = certify_by_pcc_sum(mean(&abs_pcc_image), mean(&abs_pcc_focal))?;
    let deviations = DeviationReport::from_measures(eof_from_mi.mean, n_from_pcc.mean);
    Ok(AnalysisReport {
        n_from_pcc,
        n_from_mp,
        eof_from_mi,
        certification,
        deviations,
        provenance: Provenance {
            inputs,
            config_hash: config.hash(),
        },
    })
}

/// Renders the report as a fixed-width table, four decimals throughout.
pub fn render_report_table(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let row = |out: &mut String, label: &str, e: &EstimateWithError| {
        writeln!(
            out,
            "{label:<22} {:>8.4} +/- {:.4}  (n = {})",
            e.mean, e.std, e.n_samples
        )
        .expect("string write");
    };
    writeln!(out, "entanglement estimates").expect("string write");
    row(&mut out, "  N from PCC", &report.n_from_pcc);
    row(&mut out, "  N from MP", &report.n_from_mp);
    row(&mut out, "  EOF from MI (bits)", &report.eof_from_mi);
    writeln!(
        out,
        "certification            |C1| + |C2| = {:.4} vs {:.0}  ->  {}",
        report.certification.pcc_sum,
        report.certification.threshold,
        if report.certification.certified {
            "entangled"
        } else {
            "not certified"
        }
    )
    .expect("string write");
    writeln!(
        out,
        "deviation from maximal   Q_N = {:.4}%  Q_E = {:.4}%  dQ = {:.4}%",
        report.deviations.q_n, report.deviations.q_e, report.deviations.delta_q
    )
    .expect("string write");
    writeln!(out, "inputs                   {}", report.provenance.inputs.join(", "))
        .expect("string write");
    writeln!(out, "config                   {}", report.provenance.config_hash)
        .expect("string write");
    out
}

/// Optional run configuration file: geometry and simulation defaults, both
/// sections optional. Command-line flags override file values.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: OpticsGeometry,
    pub sim: SimConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.geometry.validate()?;
        config.sim.validate()?;
        Ok(config)
    }
}

/// Manifest written next to simulated count matrices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SimulationManifest {
    pub coeffs: Vec<f64>,
    pub sim: SimConfig,
    pub image_files: Vec<String>,
    pub focal_files: Vec<String>,
}

impl SimulationManifest {
    pub fn files(&self) -> impl Iterator<Item = (&str, PathBuf)> {
        let image = self
            .image_files
            .iter()
            .map(|f| ("image", PathBuf::from(f)));
        let focal = self
            .focal_files
            .iter()
            .map(|f| ("focal", PathBuf::from(f)));
        image.chain(focal)
    }
}
