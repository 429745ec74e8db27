//! Frenet frames and curvatures from derivative stacks.
//!
//! For a Frenet curve of osculating order `d`, Gram–Schmidt applied to
//! `γ', …, γ⁽ᵈ⁾` (without normalization) gives orthogonal `v₁, …, v_d` and
//!
//! ```text
//! t = v₁/‖v₁‖,   n_{α−1} = v_α/‖v_α‖,   κ_{α−1} = ‖v_α‖ / (‖v_{α−1}‖ ‖v₁‖).
//! ```
//!
//! All curvatures produced this way are positive; orientation only shows up in
//! the handedness of the frame.

use serde::Serialize;

use crate::curve::Curve;
use crate::error::{GeomError, Result};
use crate::linalg::{gram_schmidt, VectorN};
use crate::stencil::uniform_grid;

/// Default relative tolerance of [`classify`].
pub const DEFAULT_CLASSIFY_TOLERANCE: f64 = 1e-6;

/// Mean curvatures below this make ratios meaningless.
const DIVISION_GUARD: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrenetData {
    pub s: f64,
    pub speed: f64,
    /// `t, n₁, …, n_{d−1}`.
    pub frame: Vec<VectorN>,
    /// `κ₁, …, κ_{d−1}`.
    pub curvatures: Vec<f64>,
    pub osculating_order: usize,
}

/// Frenet apparatus of order `d` at parameter `s`.
pub fn frenet_apparatus(c: &Curve, s: f64, d: usize) -> Result<FrenetData> {
    if d == 0 || d > c.dim() {
        return Err(GeomError::BadParameters(format!(
            "osculating order {d} must lie in 1..={}",
            c.dim()
        )));
    }
    let derivs = c.eval_derivatives(s, d)?;
    let gs = gram_schmidt(&derivs[1..]).map_err(|e| match e {
        GeomError::DegenerateFlag { index, .. } => GeomError::ReducedOrder { s, order: index },
        other => other,
    })?;
    let speed = gs.norms[0];
    let frame = gs
        .orthogonal
        .iter()
        .zip(&gs.norms)
        .map(|(v, n)| v.scale(1.0 / n))
        .collect();
    let curvatures = (1..d)
        .map(|a| gs.norms[a] / (gs.norms[a - 1] * speed))
        .collect();
    Ok(FrenetData {
        s,
        speed,
        frame,
        curvatures,
        osculating_order: d,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureRow {
    pub s: f64,
    /// Empty when the row is flagged.
    pub curvatures: Vec<f64>,
    pub speed: f64,
    /// Set to the first dependent derivative when the curve has reduced
    /// osculating order at `s`.
    pub reduced_order: Option<usize>,
}

impl CurvatureRow {
    pub fn is_flagged(&self) -> bool {
        self.reduced_order.is_some()
    }
}

/// Curvatures along a grid. Points where the curve has reduced osculating
/// order are kept and flagged; other failures (such as parameters outside the
/// domain) are returned as errors.
pub fn curvature_table(c: &Curve, grid: &[f64], d: usize) -> Result<Vec<CurvatureRow>> {
    grid.iter()
        .map(|&s| match frenet_apparatus(c, s, d) {
            Ok(f) => Ok(CurvatureRow {
                s,
                curvatures: f.curvatures,
                speed: f.speed,
                reduced_order: None,
            }),
            Err(GeomError::ReducedOrder { order, .. }) => Ok(CurvatureRow {
                s,
                curvatures: Vec::new(),
                speed: c.speed(s)?,
                reduced_order: Some(order),
            }),
            Err(e) => Err(e),
        })
        .collect()
}

/// Flips frame vectors so each points the same way as at the previous grid
/// point (`⟨Eᵢ(sⱼ), Eᵢ(sⱼ₋₁)⟩ ≥ 0`). Returns the number of flips.
pub fn align_frames(frames: &mut [FrenetData]) -> usize {
    let mut flips = 0;
    for j in 1..frames.len() {
        let (done, rest) = frames.split_at_mut(j);
        let prev = &done[j - 1].frame;
        for (e, p) in rest[0].frame.iter_mut().zip(prev) {
            if e.dot(p) < 0.0 {
                *e = -&*e;
                flips += 1;
            }
        }
    }
    flips
}

/// Frenet apparatus on every grid point, sign-aligned along the grid.
pub fn frame_table(c: &Curve, grid: &[f64], d: usize) -> Result<Vec<FrenetData>> {
    let mut frames = grid
        .iter()
        .map(|&s| frenet_apparatus(c, s, d))
        .collect::<Result<Vec<_>>>()?;
    align_frames(&mut frames);
    Ok(frames)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub is_w_curve: bool,
    pub is_ccr: bool,
    /// Mean of `κᵢ₊₁/κᵢ` for `i = 1..m−1`.
    pub ratios: Vec<f64>,
    /// Mean of each `κᵢ`.
    pub mean_curvatures: Vec<f64>,
    /// `(max − min)/mean` of each `κᵢ`.
    pub curvature_spread: Vec<f64>,
    /// `(max − min)/|mean|` of each ratio.
    pub ratio_spread: Vec<f64>,
}

fn relative_spread(values: &[f64]) -> (f64, f64) {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    (mean, (hi - lo) / mean.abs())
}

/// W-curve (all curvatures constant) and ccr-curve (all consecutive ratios
/// constant) tests over a grid, with full osculating order `dim`.
pub fn classify(c: &Curve, grid: &[f64], tol: f64) -> Result<Classification> {
    if grid.len() < 8 {
        return Err(GeomError::InvalidGrid(format!(
            "classification needs at least 8 points, got {}",
            grid.len()
        )));
    }
    let d = c.dim();
    let rows = grid
        .iter()
        .map(|&s| frenet_apparatus(c, s, d).map(|f| f.curvatures))
        .collect::<Result<Vec<_>>>()?;
    let m = d - 1;
    let mut mean_curvatures = Vec::with_capacity(m);
    let mut curvature_spread = Vec::with_capacity(m);
    for i in 0..m {
        let column: Vec<f64> = rows.iter().map(|r| r[i]).collect();
        let (mean, spread) = relative_spread(&column);
        if !(mean.abs() >= DIVISION_GUARD) {
            return Err(GeomError::DivisionGuard { index: i + 1, mean });
        }
        mean_curvatures.push(mean);
        curvature_spread.push(spread);
    }
    let mut ratios = Vec::with_capacity(m.saturating_sub(1));
    let mut ratio_spread = Vec::with_capacity(m.saturating_sub(1));
    for i in 0..m.saturating_sub(1) {
        let column: Vec<f64> = rows.iter().map(|r| r[i + 1] / r[i]).collect();
        let (mean, spread) = relative_spread(&column);
        ratios.push(mean);
        ratio_spread.push(spread);
    }
    Ok(Classification {
        is_w_curve: curvature_spread.iter().all(|&s| s < tol),
        is_ccr: ratio_spread.iter().all(|&s| s < tol),
        ratios,
        mean_curvatures,
        curvature_spread,
        ratio_spread,
    })
}

/// `Σⱼ Kᵢⱼ Eⱼ` with the Frenet matrix `K`: `−κᵢ Eᵢ₋₁ + κᵢ₊₁ Eᵢ₊₁`.
pub fn frenet_matrix_apply(curvatures: &[f64], frame: &[VectorN]) -> Vec<VectorN> {
    let d = frame.len();
    (0..d)
        .map(|i| {
            let mut v = VectorN::zeros(frame[0].dim());
            if i > 0 {
                v.axpy(-curvatures[i - 1], &frame[i - 1]);
            }
            if i + 1 < d {
                v.axpy(curvatures[i], &frame[i + 1]);
            }
            v
        })
        .collect()
}

/// Sup-norm of `E' − v·K·E` at `s`, with `E'` from a five-point central
/// difference of step `h` (the frames at the stencil points are sign-aligned
/// with the one at `s`).
pub fn frenet_equation_residual(c: &Curve, s: f64, h: f64) -> Result<f64> {
    let d = c.dim();
    let centre = frenet_apparatus(c, s, d)?;
    let offsets = [-2.0, -1.0, 1.0, 2.0];
    let weights = [1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0];
    let mut derivative: Vec<VectorN> = vec![VectorN::zeros(d); d];
    for (off, w) in offsets.iter().zip(weights) {
        let mut f = frenet_apparatus(c, s + off * h, d)?;
        for (e, p) in f.frame.iter_mut().zip(&centre.frame) {
            if e.dot(p) < 0.0 {
                *e = -&*e;
            }
        }
        for (acc, e) in derivative.iter_mut().zip(&f.frame) {
            acc.axpy(w / h, e);
        }
    }
    let predicted = frenet_matrix_apply(&centre.curvatures, &centre.frame);
    Ok(derivative
        .iter()
        .zip(&predicted)
        .map(|(x, y)| x.distance(&y.scale(centre.speed)))
        .fold(0.0, f64::max))
}

/// Interior grid of `n` points that leaves room for [`frenet_equation_residual`]
/// stencils of step `h`.
pub fn interior_grid(c: &Curve, n: usize, h: f64) -> Vec<f64> {
    let (a, b) = c.domain();
    uniform_grid(a + 2.0 * h, b - 2.0 * h, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_circle, make_helix, make_salkowski, AnalyticCurve, CoordinateFn};

    #[test]
    fn circle_curvature_and_inward_normal() {
        let c = make_circle(2.0).unwrap();
        for s in [0.0, 1.0, 4.0] {
            let f = frenet_apparatus(&c, s, 2).unwrap();
            assert!((f.curvatures[0] - 0.5).abs() < 1e-14);
            let p = c.position(s).unwrap();
            assert!((f.frame[1].dot(&p) + 2.0).abs() < 1e-13);
            assert!((f.speed - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn helix_curvatures() {
        let f = frenet_apparatus(&make_helix(2.0, 1.0).unwrap(), 0.0, 3).unwrap();
        assert!((f.curvatures[0] - 0.4).abs() < 1e-14);
        assert!((f.curvatures[1] - 0.2).abs() < 1e-14);
        assert_eq!(f.osculating_order, 3);
    }

    #[test]
    fn line_has_reduced_order() {
        let line = AnalyticCurve::new(
            vec![CoordinateFn::polynomial(vec![0.0, 1.0]), CoordinateFn::polynomial(vec![1.0, 2.0])],
            (0.0, 1.0),
        )
        .unwrap()
        .into_curve()
        .unwrap();
        assert!(matches!(
            frenet_apparatus(&line, 0.5, 2),
            Err(GeomError::ReducedOrder { order: 2, .. })
        ));
        let table = curvature_table(&line, &[0.0, 0.5], 2).unwrap();
        assert!(table.iter().all(|r| r.reduced_order == Some(2)));
    }

    #[test]
    fn tables() {
        let helix = make_helix(2.0, 1.0).unwrap();
        let rows = curvature_table(&helix, &helix.grid(16), 3).unwrap();
        assert_eq!(rows.len(), 16);
        for r in &rows {
            assert!((r.curvatures[0] - 0.4).abs() < 1e-13 && (r.curvatures[1] - 0.2).abs() < 1e-13);
        }
        let circle = make_circle(3.0).unwrap();
        for r in curvature_table(&circle, &circle.grid(9), 2).unwrap() {
            assert!((r.curvatures[0] - 1.0 / 3.0).abs() < 1e-14);
        }
        assert!(curvature_table(&circle, &[], 2).unwrap().is_empty());
    }

    #[test]
    fn classification_examples() {
        let helix = make_helix(2.0, 1.0).unwrap();
        let k = classify(&helix, &helix.grid(32), DEFAULT_CLASSIFY_TOLERANCE).unwrap();
        assert!(k.is_w_curve && k.is_ccr);
        assert!((k.ratios[0] - 0.5).abs() < 1e-12);

        let salkowski = make_salkowski(1.0).unwrap();
        let k = classify(&salkowski, &salkowski.grid(32), DEFAULT_CLASSIFY_TOLERANCE).unwrap();
        assert!(!k.is_w_curve);
        assert!(k.curvature_spread[0] < 1e-10);
        assert!((k.mean_curvatures[0] - 1.0).abs() < 1e-10);

        let circle = make_circle(1.0).unwrap();
        let k = classify(&circle, &circle.grid(8), DEFAULT_CLASSIFY_TOLERANCE).unwrap();
        assert!(k.is_w_curve && k.is_ccr && k.ratios.is_empty());

        assert!(classify(&circle, &circle.grid(7), 1e-6).is_err());
    }

    #[test]
    fn alignment_undoes_flips() {
        let helix = make_helix(2.0, 1.0).unwrap();
        let mut frames = frame_table(&helix, &helix.grid(10), 3).unwrap();
        let reference = frames.clone();
        frames[4].frame[1] = -&frames[4].frame[1];
        frames[7].frame[0] = -&frames[7].frame[0];
        assert_eq!(align_frames(&mut frames), 2);
        assert_eq!(frames, reference);
    }

    #[test]
    fn frenet_equations_hold_for_helix() {
        let helix = make_helix(2.0, 1.0).unwrap();
        for s in interior_grid(&helix, 11, 1e-3) {
            assert!(frenet_equation_residual(&helix, s, 1e-3).unwrap() < 1e-9);
        }
    }
}
