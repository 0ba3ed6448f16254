//! Deterministic model of the triple-slit spatial-bin apparatus.
//!
//! The image plane (2f) resolves which slit a photon came from and realizes
//! the computational (generalized sigma-z) measurement; the focal plane (f)
//! resolves the interference phase and realizes the generalized sigma-x
//! measurement, with each basis state mapped to a detector position.

use serde::{Deserialize, Serialize};

use crate::core::{Error, Result, SchmidtState};

/// Slit-apparatus parameters. Lengths are micrometres except the lens focal
/// length, which is millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OpticsGeometry {
    pub slit_width_um: f64,
    pub slit_separation_um: f64,
    pub wavelength_um: f64,
    pub focal_length_mm: f64,
    pub n_slits: usize,
    /// Imaging magnification from the slit plane to the detector plane.
    pub magnification: f64,
}

impl Default for OpticsGeometry {
    /// The apparatus defaults: 30 um slits separated by 100 um, 810 nm
    /// photons, 75 mm transform lenses, unit magnification.
    fn default() -> Self {
        Self {
            slit_width_um: 30.0,
            slit_separation_um: 100.0,
            wavelength_um: 0.810,
            focal_length_mm: 75.0,
            n_slits: 3,
            magnification: 1.0,
        }
    }
}

impl OpticsGeometry {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("slit_width_um", self.slit_width_um),
            ("slit_separation_um", self.slit_separation_um),
            ("wavelength_um", self.wavelength_um),
            ("focal_length_mm", self.focal_length_mm),
            ("magnification", self.magnification),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.slit_separation_um <= self.slit_width_um {
            return Err(Error::Domain(format!(
                "slit separation {} must exceed slit width {}",
                self.slit_separation_um, self.slit_width_um
            )));
        }
        if self.n_slits != 3 {
            return Err(Error::Domain(format!(
                "only the 3-slit (qutrit) apparatus is modeled, got {} slits",
                self.n_slits
            )));
        }
        Ok(())
    }

    pub fn focal_length_um(&self) -> f64 {
        self.focal_length_mm * 1000.0
    }

    /// Fringe period of the slit interference in the focal plane:
    /// `λf/d` micrometres.
    pub fn fringe_period_um(&self) -> f64 {
        self.wavelength_um * self.focal_length_um() / self.slit_separation_um
    }
}

/// A sampled intensity-vs-position curve, peak-normalized to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    samples: Vec<(f64, f64)>,
}

impl Profile {
    /// Validates ordering and nonnegativity, then normalizes the peak to 1.
    pub fn from_samples(mut samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Domain("a profile needs at least 2 samples".into()));
        }
        let mut peak = 0.0f64;
        for window in samples.windows(2) {
            if window[1].0 <= window[0].0 {
                return Err(Error::Domain(
                    "profile positions must be strictly increasing".into(),
                ));
            }
        }
        for &(_, v) in &samples {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::Domain(format!("profile value {v} is invalid")));
            }
            peak = peak.max(v);
        }
        if peak <= 0.0 {
            return Err(Error::Domain("profile is identically zero".into()));
        }
        for s in samples.iter_mut() {
            s.1 /= peak;
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn span_um(&self) -> f64 {
        self.samples.last().unwrap().0 - self.samples.first().unwrap().0
    }

    /// Position of the global maximum (the first one, if ties).
    pub fn peak_position_um(&self) -> f64 {
        self.samples
            .iter()
            .fold((f64::NEG_INFINITY, 0.0), |acc, &(x, v)| {
                if v > acc.0 {
                    (v, x)
                } else {
                    acc
                }
            })
            .1
    }
}

/// Interference phase at detector position `x` in the focal plane:
/// `θ = 2πxd/(λf)`. Linear in `x` with `θ(0) = 0`.
pub fn theta_of_position(x_um: f64, geom: &OpticsGeometry) -> f64 {
    2.0 * std::f64::consts::PI * x_um * geom.slit_separation_um
        / (geom.wavelength_um * geom.focal_length_um())
}

/// Detector positions realizing the generalized sigma-x eigenstates: the
/// phases 0, 2π/3 and 4π/3, i.e. `x = 0, λf/3d, 2λf/3d`.
pub fn eigen_positions(geom: &OpticsGeometry) -> [f64; 3] {
    let period = geom.fringe_period_um();
    [0.0, period / 3.0, 2.0 * period / 3.0]
}

/// Detector positions realizing the computational (which-slit) measurement,
/// ordered by eigenvalue (+1, 0, -1): the three slit-image centers.
pub fn sigma_z_operator_positions(geom: &OpticsGeometry) -> [f64; 3] {
    let spacing = geom.slit_separation_um * geom.magnification;
    [-spacing, 0.0, spacing]
}

fn sinc(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        u.sin() / u
    }
}

fn sample_positions(x_min_um: f64, x_max_um: f64, step_um: f64) -> Result<Vec<f64>> {
    if !(step_um > 0.0 && step_um.is_finite()) {
        return Err(Error::Domain(format!("step {step_um} must be positive")));
    }
    if x_min_um >= x_max_um {
        return Err(Error::Domain(format!(
            "scan range [{x_min_um}, {x_max_um}] is empty"
        )));
    }
    let n = ((x_max_um - x_min_um) / step_um + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| x_min_um + i as f64 * step_um).collect())
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

/// Coincidence profile in the focal plane with the signal detector fixed at
/// the center of its singles profile, so the idler is projected onto the
/// Schmidt-weighted slit superposition.
///
/// The intensity at position `x` is `sinc²(πxa/λf) · |Σ_n c_n e^{-inθ(x)}|²`,
/// peak-normalized: the single-slit envelope times the three-slit fringe of
/// the local amplitudes.
pub fn focal_coincidence_profile(
    state: &SchmidtState,
    geom: &OpticsGeometry,
    x_min_um: f64,
    x_max_um: f64,
    step_um: f64,
) -> Result<Profile> {
    require_qutrit(state)?;
    geom.validate()?;
    let positions = sample_positions(x_min_um, x_max_um, step_um)?;
    let c = state.coeffs();
    let samples = positions
        .into_iter()
        .map(|x| {
            let theta = theta_of_position(x, geom);
            let envelope_arg = std::f64::consts::PI * x * geom.slit_width_um
                / (geom.wavelength_um * geom.focal_length_um());
            let (re, im) = (0..3).fold((0.0, 0.0), |(re, im), n| {
                let phase = -(n as f64) * theta;
                (re + c[n] * phase.cos(), im + c[n] * phase.sin())
            });
            let fringe = re * re + im * im;
            (x, sinc(envelope_arg).powi(2) * fringe)
        })
        .collect();
    Profile::from_samples(samples)
}

/// Singles/coincidence profile in the image plane: three slit-image peaks
/// weighted by `|c_n|²`.
///
/// Each peak is a slit image of width `a·magnification` (a top hat) smoothed
/// by a Gaussian detector kernel of width `detector_sigma_um`; a zero sigma
/// gives the bare slit images.
pub fn image_plane_profile(
    state: &SchmidtState,
    geom: &OpticsGeometry,
    detector_sigma_um: f64,
    x_min_um: f64,
    x_max_um: f64,
    step_um: f64,
) -> Result<Profile> {
    require_qutrit(state)?;
    geom.validate()?;
    if detector_sigma_um < 0.0 || !detector_sigma_um.is_finite() {
        return Err(Error::Domain(format!(
            "detector sigma {detector_sigma_um} must be nonnegative"
        )));
    }
    let positions = sample_positions(x_min_um, x_max_um, step_um)?;
    let centers = sigma_z_operator_positions(geom);
    let half_width = 0.5 * geom.slit_width_um * geom.magnification;
    let kernel = |u: f64| -> f64 {
        if detector_sigma_um == 0.0 {
            if u.abs() <= half_width {
                1.0
            } else {
                0.0
            }
        } else {
            let scale = 1.0 / (detector_sigma_um * 2f64.sqrt());
            0.5 * (statrs::function::erf::erf((u + half_width) * scale)
                - statrs::function::erf::erf((u - half_width) * scale))
        }
    };
    let c = state.coeffs();
    let samples = positions
        .into_iter()
        .map(|x| {
            let v = (0..3).map(|n| c[n] * c[n] * kernel(x - centers[n])).sum();
            (x, v)
        })
        .collect();
    Profile::from_samples(samples)
}

/// Fringe contrast `(max - min)/(max + min)` over the central fringe region:
/// the window of one fringe period centered on the profile's global peak.
///
/// Fails when the sampled range is narrower than one period.
pub fn visibility(profile: &Profile, fringe_period_um: f64) -> Result<f64> {
    if profile.samples().len() < 3 {
        return Err(Error::Domain(
            "visibility needs at least 3 profile samples".into(),
        ));
    }
    if !(fringe_period_um > 0.0 && fringe_period_um.is_finite()) {
        return Err(Error::Domain(format!(
            "fringe period {fringe_period_um} must be positive"
        )));
    }
    let span = profile.span_um();
    if span < fringe_period_um {
        return Err(Error::InsufficientSpan {
            span_um: span,
            period_um: fringe_period_um,
        });
    }
    let center = profile.peak_position_um();
    let half = 0.5 * fringe_period_um * (1.0 + 1e-12);
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for &(x, v) in profile.samples() {
        if (x - center).abs() <= half {
            max = max.max(v);
            min = min.min(v);
        }
    }
    if max + min <= 0.0 {
        return Ok(0.0);
    }
    Ok((max - min) / (max + min))
}
