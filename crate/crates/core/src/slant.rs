//! k-slant helices: curves whose frame vector `V_k` keeps a constant angle
//! with a fixed direction `U`.
//!
//! Frame vectors are indexed from one: `V₁ = t`, `V_{k} = n_{k−1}`. The focal
//! curve of a `k`-slant helix is an `m−k+2`-slant helix (with `1 ↦ m+1` and
//! `m+1 ↦ 1`); [`verify_focal_slant`] checks this on a concrete curve.

use serde::Serialize;

use crate::curve::Curve;
use crate::error::{GeomError, Result};
use crate::focal::{focal_curvatures, focal_curve_from_data, BOUNDARY_EXCLUSION};
use crate::frenet::frame_table;
use crate::linalg::{symmetric_eigen, SymMatrix, VectorN};
use crate::stencil::{grid_derivative, uniform_spacing};

/// `|cos θ| ≤ PERPENDICULAR_GUARD` is treated as a right angle, which the
/// definition of a slant helix excludes.
pub const PERPENDICULAR_GUARD: f64 = 1e-3;
/// Detection tolerance for curves with exact derivative oracles.
pub const ANALYTIC_SLANT_TOLERANCE: f64 = 1e-6;
/// Detection tolerance for sampled curves, including focal curves.
pub const SAMPLED_SLANT_TOLERANCE: f64 = 1e-4;
/// Largest angle (radians) between the axes of a curve and its focal curve.
pub const AXIS_ANGLE_TOLERANCE: f64 = 1e-3;
pub const MIN_SLANT_SAMPLES: usize = 8;

const UNIT_TOLERANCE: f64 = 1e-8;
/// Eigenvalues below `NULL_RELATIVE · trace + NULL_ABSOLUTE` count as zero.
const NULL_RELATIVE: f64 = 1e-12;
const NULL_ABSOLUTE: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisEstimate {
    pub axis: VectorN,
    pub cos_theta: f64,
    pub deviation: f64,
    /// The covariance had more than one (near-)zero eigenvalue; the axis was
    /// picked inside that nullspace.
    pub degenerate: bool,
}

/// Direction `U` that makes `⟨U, x_j⟩` as constant as possible over the
/// samples: the eigenvector of the sample covariance with the smallest
/// eigenvalue, oriented so the mean `⟨U, x_j⟩` is non-negative.
///
/// When the nullspace has several dimensions the axis is the normalized
/// projection of the sample mean onto it, or failing that the projection of
/// the first coordinate vector that is not orthogonal to it.
pub fn estimate_axis(samples: &[VectorN]) -> Result<AxisEstimate> {
    if samples.len() < MIN_SLANT_SAMPLES {
        return Err(GeomError::InsufficientSamples {
            needed: MIN_SLANT_SAMPLES,
            got: samples.len(),
        });
    }
    let dim = samples[0].dim();
    for (i, x) in samples.iter().enumerate() {
        x.check_dim(dim)?;
        let norm = x.norm();
        if !((norm - 1.0).abs() <= UNIT_TOLERANCE) {
            return Err(GeomError::NotUnitVector { index: i, norm });
        }
    }
    let cov = SymMatrix::covariance(samples)?;
    let eig = symmetric_eigen(&cov)?;
    let trace: f64 = eig.values.iter().sum();
    let threshold = NULL_RELATIVE * trace.max(0.0) + NULL_ABSOLUTE;
    let null: Vec<&VectorN> = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .filter(|(v, _)| **v <= threshold)
        .map(|(_, u)| u)
        .collect();
    let degenerate = null.len() > 1;
    let mut axis = if degenerate {
        let project = |x: &VectorN| {
            let mut p = VectorN::zeros(dim);
            for u in &null {
                p.axpy(x.dot(u), u);
            }
            p
        };
        let mut mean = VectorN::zeros(dim);
        for x in samples {
            mean += x;
        }
        let mean = mean.scale(1.0 / samples.len() as f64);
        std::iter::once(project(&mean))
            .chain((0..dim).map(|i| project(&VectorN::unit(dim, i))))
            .find(|p| p.norm() > 1e-8)
            .and_then(|p| p.normalized())
            .unwrap_or_else(|| eig.vectors[0].clone())
    } else {
        eig.vectors[0].clone()
    };
    let mut projections: Vec<f64> = samples.iter().map(|x| axis.dot(x)).collect();
    let mut mean = projections.iter().sum::<f64>() / projections.len() as f64;
    if mean < 0.0 {
        axis = -axis;
        projections.iter_mut().for_each(|p| *p = -*p);
        mean = -mean;
    }
    let deviation = projections.iter().map(|p| (p - mean).abs()).fold(0.0, f64::max);
    Ok(AxisEstimate {
        axis,
        cos_theta: mean,
        deviation,
        degenerate,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlantReport {
    pub k: usize,
    pub axis: VectorN,
    pub cos_theta: f64,
    pub deviation: f64,
    pub is_slant: bool,
    pub excluded_perpendicular: bool,
    pub degenerate: bool,
}

fn check_k(k: usize, dim: usize) -> Result<()> {
    if k == 0 || k > dim {
        return Err(GeomError::BadSlantIndex { k, max: dim });
    }
    Ok(())
}

fn report_from_samples(k: usize, samples: &[VectorN], tol: f64) -> Result<SlantReport> {
    let est = estimate_axis(samples)?;
    let excluded_perpendicular = est.cos_theta.abs() <= PERPENDICULAR_GUARD;
    Ok(SlantReport {
        k,
        is_slant: est.deviation < tol && !excluded_perpendicular,
        axis: est.axis,
        cos_theta: est.cos_theta,
        deviation: est.deviation,
        excluded_perpendicular,
        degenerate: est.degenerate,
    })
}

/// Tests whether `V_k` keeps a constant angle with some direction over `grid`.
pub fn is_k_slant(c: &Curve, k: usize, grid: &[f64], tol: f64) -> Result<SlantReport> {
    check_k(k, c.dim())?;
    let frames = frame_table(c, grid, c.dim())?;
    let samples: Vec<VectorN> = frames.into_iter().map(|mut f| f.frame.swap_remove(k - 1)).collect();
    report_from_samples(k, &samples, tol)
}

/// Slant reports for every `k = 1..=dim`, sharing one frame table.
pub fn slant_reports(c: &Curve, grid: &[f64], tol: f64) -> Result<Vec<SlantReport>> {
    let frames = frame_table(c, grid, c.dim())?;
    (1..=c.dim())
        .map(|k| {
            let samples: Vec<VectorN> = frames.iter().map(|f| f.frame[k - 1].clone()).collect();
            report_from_samples(k, &samples, tol)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientResiduals {
    pub s: Vec<f64>,
    /// `a_j(s) = ⟨U, V_j(s)⟩`, indexed `[j − 1][grid index]`.
    pub coefficients: Vec<Vec<f64>>,
    /// `P_i(s)`, indexed `[i − 1][grid index]`.
    pub residuals: Vec<Vec<f64>>,
    /// Sup-norm over `i` and grid points, ignoring [`BOUNDARY_EXCLUSION`]
    /// points at each end.
    pub sup_norm: f64,
}

/// Components of `dU/ds` in the Frenet frame for the constant vector `U`:
///
/// ```text
/// P₁ = a₁' − κ₁a₂,  P_i = a_i' + κ_{i−1}a_{i−1} − κ_i a_{i+1},  P_{m+1} = a_{m+1}' + κ_m a_m,
/// ```
///
/// with `a_j = ⟨U, V_j⟩` and `a_j'` from fourth-order differences on the
/// (uniform) grid. The curve should be unit speed; otherwise the curvature
/// terms are scaled by the speed so the residuals still vanish.
pub fn coefficient_residuals(c: &Curve, u: &VectorN, grid: &[f64]) -> Result<CoefficientResiduals> {
    let d = c.dim();
    u.check_dim(d)?;
    let h = uniform_spacing(grid)?;
    let frames = frame_table(c, grid, d)?;
    let coefficients: Vec<Vec<f64>> = (0..d)
        .map(|j| frames.iter().map(|f| u.dot(&f.frame[j])).collect())
        .collect();
    let derivs = coefficients
        .iter()
        .map(|a| grid_derivative(a, h))
        .collect::<Result<Vec<_>>>()?;
    let residuals: Vec<Vec<f64>> = (0..d)
        .map(|i| {
            frames
                .iter()
                .enumerate()
                .map(|(j, f)| {
                    let k = &f.curvatures;
                    let mut p = derivs[i][j];
                    if i > 0 {
                        p += f.speed * k[i - 1] * coefficients[i - 1][j];
                    }
                    if i + 1 < d {
                        p -= f.speed * k[i] * coefficients[i + 1][j];
                    }
                    p
                })
                .collect()
        })
        .collect();
    let n = grid.len();
    let lo = BOUNDARY_EXCLUSION.min(n);
    let hi = n.saturating_sub(BOUNDARY_EXCLUSION).max(lo);
    let sup_norm = residuals
        .iter()
        .flat_map(|row| row[lo..hi].iter())
        .fold(0.0f64, |m, p| m.max(p.abs()));
    Ok(CoefficientResiduals {
        s: grid.to_vec(),
        coefficients,
        residuals,
        sup_norm,
    })
}

/// Which case of the focal slant theorem applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremCase {
    /// `k = 1 ↦ m + 1`.
    I,
    /// `k = m + 1 ↦ 1`.
    II,
    /// `2 ≤ k ≤ m ↦ m − k + 2`.
    III,
}

/// Slant index of the focal curve of a `k`-slant helix in `E^{m+1}`.
pub fn focal_slant_index(k: usize, m: usize) -> Result<(usize, TheoremCase)> {
    check_k(k, m + 1)?;
    Ok(if k == 1 {
        (m + 1, TheoremCase::I)
    } else if k == m + 1 {
        (1, TheoremCase::II)
    } else {
        (m - k + 2, TheoremCase::III)
    })
}

/// Case III is stated for `2 < k < m` but its proof covers `2 ≤ k ≤ m`.
fn range_note(k: usize, m: usize, case: TheoremCase) -> Option<String> {
    (case == TheoremCase::III && (k == 2 || k == m)).then(|| {
        format!("k = {k} lies outside the stated range 2 < k < {m} of case iii; the proof covers 2 <= k <= m")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub source_tolerance: f64,
    pub focal_tolerance: f64,
    pub axis_tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            source_tolerance: ANALYTIC_SLANT_TOLERANCE,
            focal_tolerance: SAMPLED_SLANT_TOLERANCE,
            axis_tolerance: AXIS_ANGLE_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub m: usize,
    pub k: usize,
    pub focal_k: usize,
    pub case: TheoremCase,
    pub range_note: Option<String>,
    pub source: SlantReport,
    pub focal: SlantReport,
    /// Angle in radians between the two axes, up to sign.
    pub axis_angle: f64,
    pub axes_agree: bool,
    pub vertices_skipped: usize,
    pub passed: bool,
}

/// Angle between two unit vectors up to sign, accurate for small angles.
pub fn axis_angle(a: &VectorN, b: &VectorN) -> f64 {
    let chord = a.distance(b).min((a + b).norm());
    2.0 * (0.5 * chord).min(1.0).asin()
}

/// Checks that the focal curve of a `k`-slant helix is a `k'`-slant helix
/// about the same axis, with `k'` from [`focal_slant_index`].
///
/// `c` must be unit speed on a uniform grid. The focal curve is sampled on
/// the grid (vertices left out) and its frames are evaluated away from the
/// [`BOUNDARY_EXCLUSION`] points at either end.
pub fn verify_focal_slant(c: &Curve, k: usize, grid: &[f64], options: &VerifyOptions) -> Result<TheoremReport> {
    let d = c.dim();
    let m = d - 1;
    let (focal_k, case) = focal_slant_index(k, m)?;
    let source = is_k_slant(c, k, grid, options.source_tolerance)?;

    let data = focal_curvatures(c, grid)?;
    let vertices_skipped = data.iter().filter(|f| f.is_vertex).count();
    let focal = focal_curve_from_data(&data).map_err(|e| match e {
        GeomError::RegularityFailure { t, speed } => {
            GeomError::FocalNotRegular(format!("focal speed {speed:.3e} at s = {t}"))
        }
        other => other,
    })?;
    let n = data.len();
    let interior: Vec<f64> = data[BOUNDARY_EXCLUSION..n - BOUNDARY_EXCLUSION]
        .iter()
        .filter(|f| !f.is_vertex)
        .map(|f| f.s)
        .collect();
    if interior.len() < MIN_SLANT_SAMPLES {
        return Err(GeomError::FocalNotRegular(format!(
            "only {} regular interior points",
            interior.len()
        )));
    }
    let focal_report = is_k_slant(&focal, focal_k, &interior, options.focal_tolerance)?;
    let angle = axis_angle(&source.axis, &focal_report.axis);
    let axes_agree = angle < options.axis_tolerance;
    Ok(TheoremReport {
        m,
        k,
        focal_k,
        case,
        range_note: range_note(k, m, case),
        passed: source.is_slant && focal_report.is_slant && axes_agree,
        source,
        focal: focal_report,
        axis_angle: angle,
        axes_agree,
        vertices_skipped,
    })
}
