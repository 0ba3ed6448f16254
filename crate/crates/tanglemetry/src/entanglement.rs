//! Entanglement measures for pure Schmidt states, the inverse maps from
//! measured correlators, percentage deviations from the maximally entangled
//! state, closed-form derivatives, and the scans that expose where the two
//! measures disagree.

use serde::{Deserialize, Serialize};

use crate::core::{Error, Result, SchmidtState};

fn require_qutrit(state: &SchmidtState) -> Result<()> {
    if state.dim() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            actual: state.dim(),
        });
    }
    Ok(())
}

/// Negativity of a pure qutrit state, normalized so the maximally entangled
/// state scores 1.
///
/// For Schmidt coefficients `(c0, c1, c2)` this closed form equals
/// `c0c1 + c1c2 + c0c2`, which is `(‖ρ^{T_B}‖₁ - 1)/2` of the partially
/// transposed 9×9 density matrix. It is 0 exactly for product states and 1
/// exactly when all coefficients equal `1/√3`.
pub fn negativity(state: &SchmidtState) -> Result<f64> {
    require_qutrit(state)?;
    let c = state.coeffs();
    Ok((c[0] * c[1] + c[1] * c[2] + c[0] * c[2]).clamp(0.0, 1.0))
}

/// Entanglement of formation of a pure state in bits: the von Neumann
/// entropy of either reduced density matrix, `-Σ c_i² log₂ c_i²`, with
/// `0·log 0 = 0`. Works in any dimension; the maximum is `log₂ d`.
pub fn eof(state: &SchmidtState) -> f64 {
    let mut e = 0.0;
    for c in state.coeffs() {
        let p = c * c;
        if p > 0.0 {
            e -= p * p.log2();
        }
    }
    e.max(0.0)
}

/// Maps a measured sigma-x Pearson correlation magnitude to Negativity.
/// The relation is the identity; only the domain is checked (a small
/// tolerance above 1 absorbs statistical overshoot).
pub fn negativity_from_pcc(pcc_magnitude: f64) -> Result<f64> {
    if !(0.0..=1.0 + 1e-9).contains(&pcc_magnitude) {
        return Err(Error::Domain(format!(
            "correlation magnitude {pcc_magnitude} outside [0, 1]"
        )));
    }
    Ok(pcc_magnitude.clamp(0.0, 1.0))
}

/// Maps a measured mutual predictability to Negativity via
/// `N = (3·MP - 1)/2`.
///
/// MP below 1/3 is inconsistent with a pure Schmidt state under the assumed
/// conjugate-basis measurement and is rejected.
pub fn negativity_from_mp(mp: f64) -> Result<f64> {
    if !((1.0 / 3.0 - 1e-9)..=1.0 + 1e-9).contains(&mp) {
        return Err(Error::Domain(format!(
            "mutual predictability {mp} outside [1/3, 1]"
        )));
    }
    Ok(((3.0 * mp - 1.0) / 2.0).clamp(0.0, 1.0))
}

/// Percentage deviations of both measures from their maximally entangled
/// values, and the gap between the two deviations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    /// Entanglement of formation, bits.
    pub e: f64,
    /// Negativity.
    pub n: f64,
    /// `(log₂3 - E)/log₂3 × 100`.
    pub q_e: f64,
    /// `(1 - N) × 100`.
    pub q_n: f64,
    /// `|Q_E - Q_N|`.
    pub delta_q: f64,
}

impl DeviationReport {
    /// Builds the report from already-known measure values, e.g. ones
    /// inferred from measured correlators.
    pub fn from_measures(e: f64, n: f64) -> Self {
        let max_e = 3f64.log2();
        let q_e = (max_e - e) / max_e * 100.0;
        let q_n = (1.0 - n) * 100.0;
        Self {
            e,
            n,
            q_e,
            q_n,
            delta_q: (q_e - q_n).abs(),
        }
    }
}

/// Deviation report for a known qutrit state.
pub fn deviation_report(state: &SchmidtState) -> Result<DeviationReport> {
    Ok(DeviationReport::from_measures(
        eof(state),
        negativity(state)?,
    ))
}

/// Closed-form rates of change of both measures with respect to the first
/// two Schmidt coefficients, treating `c2 = sqrt(1 - c0² - c1²)` as
/// dependent. All four vanish simultaneously at `c0 = c1 = 1/√3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureGradient {
    pub d_e_dc0: f64,
    pub d_e_dc1: f64,
    pub d_n_dc0: f64,
    pub d_n_dc1: f64,
}

/// Evaluates the closed-form derivatives at an interior point.
///
/// The formulas divide by coefficients, so points with any `c_i = 0` are
/// rejected as `Boundary` errors.
pub fn measure_gradients(state: &SchmidtState) -> Result<MeasureGradient> {
    require_qutrit(state)?;
    let c = state.coeffs();
    let (c0, c1, c2) = (c[0], c[1], c[2]);
    if c0 <= 0.0 || c1 <= 0.0 || c2 <= 0.0 {
        return Err(Error::Boundary(format!(
            "gradients need all coefficients positive, got ({c0}, {c1}, {c2})"
        )));
    }
    let c2_sq = c2 * c2;
    Ok(MeasureGradient {
        d_e_dc0: 2.0 * c0 * (c2_sq / (c0 * c0)).log2(),
        d_e_dc1: 2.0 * c1 * (c2_sq / (c1 * c1)).log2(),
        d_n_dc0: c1 + (1.0 - c0 * c1 - c1 * c1 - 2.0 * c0 * c0) / c2,
        d_n_dc1: c0 + (1.0 - c0 * c1 - c0 * c0 - 2.0 * c1 * c1) / c2,
    })
}

/// Finds every candidate pair on which the two measures order states
/// oppositely: `(E_s - E_t)·(N_s - N_t) < 0` beyond a 1e-9 tolerance.
pub fn find_nonmonotonic_pair(
    candidates: &[SchmidtState],
) -> Result<Vec<(SchmidtState, SchmidtState)>> {
    let mut values = Vec::with_capacity(candidates.len());
    for s in candidates {
        values.push((eof(s), negativity(s)?));
    }
    let mut pairs = Vec::new();
    for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            let de = values[i].0 - values[j].0;
            let dn = values[i].1 - values[j].1;
            if de * dn < -1e-9 {
                pairs.push((candidates[i].clone(), candidates[j].clone()));
            }
        }
    }
    Ok(pairs)
}

/// Location and value of the deviation-gap peak found by
/// [`scan_max_delta_q`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanMaximum {
    pub c0: f64,
    pub c1: f64,
    /// Peak `ΔQ`, in percentage points.
    pub delta_q: f64,
}

/// Refinement tolerance on the scan coefficient.
const SCAN_COEFF_TOL: f64 = 1e-4;

fn delta_q_balanced(t: f64) -> f64 {
    let state = SchmidtState::from_two_coeffs(t, t).expect("t stays inside the simplex");
    deviation_report(&state).expect("balanced qutrit state").delta_q
}

/// Locates the interior peak of the deviation gap `ΔQ` over balanced states
/// `(t, t, sqrt(1 - 2t²))` with `t ≤ 1/√3`, by a grid pass at `grid_step`
/// followed by golden-section refinement.
///
/// The gap has no interior maximum over the full coefficient simplex: it
/// keeps growing toward the two-level boundary where one coefficient
/// vanishes and the state degenerates to an embedded qubit pair. Among
/// balanced qutrit states whose equal coefficients are the smaller pair,
/// `ΔQ` has a single interior peak, and that is what this scan reports.
pub fn scan_max_delta_q(grid_step: f64) -> Result<ScanMaximum> {
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(Error::Domain(format!(
            "grid step {grid_step} outside (0, 0.01]"
        )));
    }
    let t_max = 1.0 / 3f64.sqrt();
    // coarse pass
    let mut best_t = grid_step;
    let mut best_v = f64::NEG_INFINITY;
    let mut k = 1usize;
    loop {
        let t = k as f64 * grid_step;
        if t > t_max {
            break;
        }
        let v = delta_q_balanced(t);
        if v > best_v {
            best_v = v;
            best_t = t;
        }
        k += 1;
    }
    // golden-section refinement in the bracketing interval
    let lo = (best_t - grid_step).max(grid_step * 1e-3);
    let hi = (best_t + grid_step).min(t_max);
    let (t, v) = golden_section_max(delta_q_balanced, lo, hi, SCAN_COEFF_TOL);
    if v >= best_v {
        Ok(ScanMaximum {
            c0: t,
            c1: t,
            delta_q: v,
        })
    } else {
        Ok(ScanMaximum {
            c0: best_t,
            c1: best_t,
            delta_q: best_v,
        })
    }
}

/// Golden-section search for the maximum of a unimodal function on
/// `[lo, hi]`, to a bracket width of `tol`.
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}
