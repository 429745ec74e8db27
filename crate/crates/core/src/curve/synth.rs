use serde::{Deserialize, Serialize};

use super::{Curve, CurveKind, CurveOracle};
use crate::error::{GeomError, Result};
use crate::jet::Jet;
use crate::linalg::{orthonormality_defect, reorthonormalize, VectorN};
use crate::stencil::fornberg_weights;

/// Largest per-step loss of orthonormality tolerated during integration.
const MAX_FRAME_DRIFT: f64 = 1e-10;
/// Deviation allowed in the initial frame.
const FRAME_TOLERANCE: f64 = 1e-10;

/// Clamped cubic interpolating spline.
///
/// End slopes are taken from one-sided cubic finite differences on the first
/// and last four knots, so the spline reproduces cubics exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    /// Second derivatives at the knots.
    moments: Vec<f64>,
}

impl CubicSpline {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let n = knots.len();
        if values.len() != n {
            return Err(GeomError::BadParameters(format!(
                "{n} knots for {} values",
                values.len()
            )));
        }
        if n < 4 {
            return Err(GeomError::InsufficientSamples { needed: 4, got: n });
        }
        if knots.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite("spline data"));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GeomError::BadParameters("spline knots must be strictly increasing".into()));
        }
        let slope = |nodes: &[f64], vals: &[f64], z: f64| -> f64 {
            let w = fornberg_weights(z, nodes, 1);
            w.iter().zip(vals).map(|(w, v)| w[1] * v).sum()
        };
        let left = slope(&knots[..4], &values[..4], knots[0]);
        let right = slope(&knots[n - 4..], &values[n - 4..], knots[n - 1]);

        // Tridiagonal system for the moments (Thomas algorithm).
        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        let mut lower = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        diag[0] = 2.0 * h[0];
        upper[0] = h[0];
        rhs[0] = 6.0 * ((values[1] - values[0]) / h[0] - left);
        for i in 1..n - 1 {
            lower[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 6.0 * ((values[i + 1] - values[i]) / h[i] - (values[i] - values[i - 1]) / h[i - 1]);
        }
        lower[n - 1] = h[n - 2];
        diag[n - 1] = 2.0 * h[n - 2];
        rhs[n - 1] = 6.0 * (right - (values[n - 1] - values[n - 2]) / h[n - 2]);
        for i in 1..n {
            let f = lower[i] / diag[i - 1];
            diag[i] -= f * upper[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
        let mut moments = vec![0.0; n];
        moments[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            moments[i] = (rhs[i] - upper[i] * moments[i + 1]) / diag[i];
        }
        Ok(Self {
            knots,
            values,
            moments,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    /// `[f(x), f'(x), …]` up to `order`; derivatives above the third vanish.
    pub fn derivatives(&self, x: f64, order: usize) -> Vec<f64> {
        let n = self.knots.len();
        let i = self.knots.partition_point(|&k| k <= x).clamp(1, n - 1) - 1;
        let h = self.knots[i + 1] - self.knots[i];
        let (m0, m1) = (self.moments[i], self.moments[i + 1]);
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let a = self.knots[i + 1] - x;
        let b = x - self.knots[i];
        let mut out = vec![0.0; order + 1];
        out[0] = (m0 * a.powi(3) + m1 * b.powi(3)) / (6.0 * h)
            + (y0 / h - m0 * h / 6.0) * a
            + (y1 / h - m1 * h / 6.0) * b;
        if order >= 1 {
            out[1] = (-m0 * a * a + m1 * b * b) / (2.0 * h) + (y1 - y0) / h - (m1 - m0) * h / 6.0;
        }
        if order >= 2 {
            out[2] = (m0 * a + m1 * b) / h;
        }
        if order >= 3 {
            out[3] = (m1 - m0) / h;
        }
        out
    }
}

/// One curvature function `s ↦ κᵢ(s)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureFunction {
    Constant(f64),
    /// Coefficients of `c₀ + c₁s + c₂s² + …`.
    Polynomial(Vec<f64>),
    Samples(CubicSpline),
}

impl CurvatureFunction {
    /// `[κ(s), κ'(s), …, κ⁽ᵒʳᵈᵉʳ⁾(s)]`.
    pub fn derivatives(&self, s: f64, order: usize) -> Vec<f64> {
        match self {
            Self::Constant(c) => {
                let mut out = vec![0.0; order + 1];
                out[0] = *c;
                out
            }
            Self::Polynomial(coeffs) => {
                let mut current = coeffs.clone();
                let mut out = Vec::with_capacity(order + 1);
                for _ in 0..=order {
                    out.push(current.iter().rev().fold(0.0, |acc, c| acc * s + c));
                    current = current
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(k, c)| k as f64 * c)
                        .collect();
                }
                out
            }
            Self::Samples(spline) => spline.derivatives(s, order),
        }
    }

    pub fn value(&self, s: f64) -> f64 {
        self.derivatives(s, 0)[0]
    }

    fn jet(&self, s: f64, len: usize) -> Jet {
        if len == 0 {
            return Jet::zeros(0);
        }
        Jet::from_derivatives(&self.derivatives(s, len - 1))
    }
}

/// Curvatures `κ₁..κ_m` over an arc-length domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub functions: Vec<CurvatureFunction>,
    pub domain: (f64, f64),
}

impl CurvatureProfile {
    pub fn new(functions: Vec<CurvatureFunction>, domain: (f64, f64)) -> Result<Self> {
        if functions.is_empty() {
            return Err(GeomError::InvalidProfile("no curvature functions".into()));
        }
        let (a, b) = domain;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(GeomError::InvalidProfile(format!("bad domain [{a}, {b}]")));
        }
        for f in &functions {
            if let CurvatureFunction::Samples(spline) = f {
                let (lo, hi) = spline.domain();
                let slack = 1e-9 * (b - a);
                if lo > a + slack || hi < b - slack {
                    return Err(GeomError::InvalidProfile(format!(
                        "sampled curvature covers [{lo}, {hi}], profile domain is [{a}, {b}]"
                    )));
                }
            }
        }
        Ok(Self { functions, domain })
    }

    /// Number of curvatures `m`.
    pub fn order(&self) -> usize {
        self.functions.len()
    }

    pub fn values(&self, s: f64) -> Vec<f64> {
        self.functions.iter().map(|f| f.value(s)).collect()
    }

    fn validate(&self, grid: &[f64]) -> Result<()> {
        let m = self.order();
        let mut last_nonzero = false;
        for &s in grid {
            let k = self.values(s);
            if k.iter().any(|v| !v.is_finite()) {
                return Err(GeomError::NonFinite("curvature profile"));
            }
            if let Some(i) = k[..m - 1].iter().position(|&v| !(v > 0.0)) {
                return Err(GeomError::InvalidProfile(format!(
                    "kappa_{} = {} is not positive at s = {s}",
                    i + 1,
                    k[i]
                )));
            }
            last_nonzero |= k[m - 1] != 0.0;
        }
        if !last_nonzero {
            return Err(GeomError::InvalidProfile(format!(
                "kappa_{m} vanishes identically; the curve lies in a hyperplane of dimension {m}"
            )));
        }
        Ok(())
    }
}

/// `(domain length) / 4096`.
pub fn default_step(profile: &CurvatureProfile) -> f64 {
    (profile.domain.1 - profile.domain.0) / 4096.0
}

/// Derivative of each frame vector: `Eᵢ' = −κᵢ Eᵢ₋₁ + κᵢ₊₁ Eᵢ₊₁`.
fn frame_derivative(kappa: &[f64], frame: &[VectorN]) -> Vec<VectorN> {
    let d = frame.len();
    (0..d)
        .map(|i| {
            let mut v = VectorN::zeros(frame[0].dim());
            if i > 0 {
                v.axpy(-kappa[i - 1], &frame[i - 1]);
            }
            if i + 1 < d {
                v.axpy(kappa[i], &frame[i + 1]);
            }
            v
        })
        .collect()
}

/// Curve obtained by integrating the Frenet system for a curvature profile.
///
/// Positions and frames are stored at the integration nodes. Between nodes
/// both are interpolated by cubic Hermite polynomials (the frame is then
/// re-orthonormalized). Higher derivatives use `γ⁽ᵏ⁾ = Σⱼ aⱼ⁽ᵏ⁾ Eⱼ`, where the
/// coefficients obey `aⱼ⁽ᵏ⁺¹⁾ = (aⱼ⁽ᵏ⁾)' + κⱼ aⱼ₋₁⁽ᵏ⁾ − κⱼ₊₁ aⱼ₊₁⁽ᵏ⁾` starting
/// from `a⁽¹⁾ = e₀`; the recurrence runs on Taylor jets of the curvatures.
#[derive(Debug)]
pub struct SynthesizedCurve {
    profile: CurvatureProfile,
    nodes: Vec<f64>,
    positions: Vec<VectorN>,
    frames: Vec<Vec<VectorN>>,
}

impl SynthesizedCurve {
    pub fn profile(&self) -> &CurvatureProfile {
        &self.profile
    }

    /// Interpolated, re-orthonormalized Frenet frame at `s`.
    pub fn frame_at(&self, s: f64) -> Vec<VectorN> {
        self.interpolate(s).1
    }

    fn interpolate(&self, s: f64) -> (VectorN, Vec<VectorN>) {
        let n = self.nodes.len();
        let i = self.nodes.partition_point(|&x| x <= s).clamp(1, n - 1) - 1;
        let (s0, s1) = (self.nodes[i], self.nodes[i + 1]);
        let h = s1 - s0;
        let u = ((s - s0) / h).clamp(0.0, 1.0);
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        let hermite = |p0: &VectorN, d0: &VectorN, p1: &VectorN, d1: &VectorN| {
            let mut out = p0.scale(h00);
            out.axpy(h * h10, d0);
            out.axpy(h01, p1);
            out.axpy(h * h11, d1);
            out
        };
        let (f0, f1) = (&self.frames[i], &self.frames[i + 1]);
        let position = hermite(&self.positions[i], &f0[0], &self.positions[i + 1], &f1[0]);
        let d0 = frame_derivative(&self.profile.values(s0), f0);
        let d1 = frame_derivative(&self.profile.values(s1), f1);
        let mut frame: Vec<VectorN> = (0..f0.len())
            .map(|j| hermite(&f0[j], &d0[j], &f1[j], &d1[j]))
            .collect();
        reorthonormalize(&mut frame);
        (position, frame)
    }
}

impl CurveOracle for SynthesizedCurve {
    fn dim(&self) -> usize {
        self.positions[0].dim()
    }

    fn domain(&self) -> (f64, f64) {
        self.profile.domain
    }

    fn max_order(&self) -> usize {
        self.profile.order() + 2
    }

    fn derivatives(&self, s: f64, order: usize) -> Vec<VectorN> {
        let (position, frame) = self.interpolate(s);
        let d = frame.len();
        let mut out = Vec::with_capacity(order + 1);
        out.push(position);
        if order == 0 {
            return out;
        }
        let kappa: Vec<Jet> = self
            .profile
            .functions
            .iter()
            .map(|f| f.jet(s, order))
            .collect();
        let coupling = |j: usize| -> Option<&Jet> {
            // κ_j couples E_{j-1} and E_j (1-based curvature index).
            if j == 0 || j > kappa.len() {
                None
            } else {
                Some(&kappa[j - 1])
            }
        };
        let mut coeffs: Vec<Jet> = (0..d)
            .map(|j| Jet::constant(if j == 0 { 1.0 } else { 0.0 }, order))
            .collect();
        for k in 1..=order {
            let mut v = VectorN::zeros(frame[0].dim());
            for (c, e) in coeffs.iter().zip(&frame) {
                v.axpy(c.coeff(0), e);
            }
            out.push(v);
            if k == order {
                break;
            }
            let next: Vec<Jet> = (0..d)
                .map(|j| {
                    let mut a = coeffs[j].differentiate();
                    if let Some(kj) = coupling(j) {
                        a = &a + &(kj * &coeffs[j - 1]);
                    }
                    if j + 1 < d {
                        if let Some(kn) = coupling(j + 1) {
                            a = &a - &(kn * &coeffs[j + 1]);
                        }
                    }
                    a
                })
                .collect();
            coeffs = next;
        }
        out
    }
}

/// Integrates `γ' = E₀`, `Eᵢ' = −κᵢEᵢ₋₁ + κᵢ₊₁Eᵢ₊₁` over the profile domain
/// with classical RK4 at fixed `step`, re-orthonormalizing after every step.
///
/// The profile must have `dim − 1` curvatures, positive except possibly the
/// last; `initial_frame` must be orthonormal with `dim` vectors.
pub fn synthesize_from_curvatures(
    profile: &CurvatureProfile,
    dim: usize,
    initial_point: &VectorN,
    initial_frame: &[VectorN],
    step: f64,
) -> Result<Curve> {
    if dim < 2 {
        return Err(GeomError::DimensionTooSmall(dim));
    }
    if profile.order() + 1 != dim {
        return Err(GeomError::DimensionMismatch {
            expected: dim - 1,
            got: profile.order(),
        });
    }
    initial_point.check_dim(dim)?;
    if initial_frame.len() != dim {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            got: initial_frame.len(),
        });
    }
    for e in initial_frame {
        e.check_dim(dim)?;
    }
    let deviation = orthonormality_defect(initial_frame);
    if !(deviation <= FRAME_TOLERANCE) {
        return Err(GeomError::NonOrthonormalFrame { deviation });
    }
    let (a, b) = profile.domain;
    if !(step > 0.0 && step.is_finite()) {
        return Err(GeomError::BadParameters(format!("step must be positive, got {step}")));
    }
    let steps = ((b - a) / step).ceil().max(1.0) as usize;
    let h = (b - a) / steps as f64;
    let nodes: Vec<f64> = (0..=steps)
        .map(|i| if i == steps { b } else { a + h * i as f64 })
        .collect();
    profile.validate(&nodes)?;

    let rhs = |s: f64, frame: &[VectorN]| frame_derivative(&profile.values(s), frame);
    let combine = |base: &[VectorN], delta: &[VectorN], w: f64| -> Vec<VectorN> {
        base.iter()
            .zip(delta)
            .map(|(x, dx)| {
                let mut y = x.clone();
                y.axpy(w, dx);
                y
            })
            .collect()
    };

    let mut positions = Vec::with_capacity(nodes.len());
    let mut frames = Vec::with_capacity(nodes.len());
    let mut x = initial_point.clone();
    let mut frame = initial_frame.to_vec();
    reorthonormalize(&mut frame);
    positions.push(x.clone());
    frames.push(frame.clone());
    for (i, w) in nodes.windows(2).enumerate() {
        let (s, h) = (w[0], w[1] - w[0]);
        let k1 = rhs(s, &frame);
        let f2 = combine(&frame, &k1, 0.5 * h);
        let k2 = rhs(s + 0.5 * h, &f2);
        let f3 = combine(&frame, &k2, 0.5 * h);
        let k3 = rhs(s + 0.5 * h, &f3);
        let f4 = combine(&frame, &k3, h);
        let k4 = rhs(s + h, &f4);
        // γ' = E₀, so position stages reuse the frame stages.
        x.axpy(h / 6.0, &frame[0]);
        x.axpy(h / 3.0, &f2[0]);
        x.axpy(h / 3.0, &f3[0]);
        x.axpy(h / 6.0, &f4[0]);
        for j in 0..dim {
            frame[j].axpy(h / 6.0, &k1[j]);
            frame[j].axpy(h / 3.0, &k2[j]);
            frame[j].axpy(h / 3.0, &k3[j]);
            frame[j].axpy(h / 6.0, &k4[j]);
        }
        let drift = reorthonormalize(&mut frame);
        if !(drift < MAX_FRAME_DRIFT) {
            return Err(GeomError::FrameDrift { step: i + 1, drift });
        }
        positions.push(x.clone());
        frames.push(frame.clone());
    }
    Curve::new(
        SynthesizedCurve {
            profile: profile.clone(),
            nodes,
            positions,
            frames,
        },
        CurveKind::Synthesized,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn v(x: &[f64]) -> VectorN {
        VectorN::new(x.to_vec()).unwrap()
    }

    fn constant_profile(k: &[f64], length: f64) -> CurvatureProfile {
        CurvatureProfile::new(
            k.iter().map(|&c| CurvatureFunction::Constant(c)).collect(),
            (0.0, length),
        )
        .unwrap()
    }

    fn identity_frame(dim: usize) -> Vec<VectorN> {
        (0..dim).map(|i| VectorN::unit(dim, i)).collect()
    }

    #[test]
    fn spline_reproduces_cubics() {
        let knots: Vec<f64> = (0..9).map(|i| (i as f64 * 0.37).powf(1.2)).collect();
        let f = |x: f64| 2.0 - x + 0.5 * x * x - 0.3 * x * x * x;
        let spline = CubicSpline::new(knots.clone(), knots.iter().map(|&x| f(x)).collect()).unwrap();
        for x in [0.0, 0.11, 0.5, 1.3, knots[8]] {
            let d = spline.derivatives(x, 3);
            assert!((d[0] - f(x)).abs() < 1e-12);
            assert!((d[1] - (-1.0 + x - 0.9 * x * x)).abs() < 1e-11);
            assert!((d[2] - (1.0 - 1.8 * x)).abs() < 1e-10);
            assert!((d[3] + 1.8).abs() < 1e-9);
        }
    }

    #[test]
    fn polynomial_curvature_derivatives() {
        let f = CurvatureFunction::Polynomial(vec![1.0, 2.0, 3.0]);
        assert_eq!(f.derivatives(2.0, 3), vec![17.0, 14.0, 6.0, 0.0]);
    }

    #[test]
    fn unit_circle_closes() {
        let p = constant_profile(&[1.0], TAU);
        let frame = vec![v(&[0.0, 1.0]), v(&[-1.0, 0.0])];
        let c = synthesize_from_curvatures(&p, 2, &v(&[1.0, 0.0]), &frame, default_step(&p)).unwrap();
        assert_eq!(c.kind(), CurveKind::Synthesized);
        let end = c.position(TAU).unwrap();
        assert!(end.distance(&v(&[1.0, 0.0])) < 1e-8);
        let mid = c.position(TAU / 4.0 + 0.001).unwrap();
        assert!((mid.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn helix_profile_gives_helix_derivatives() {
        // κ₁ = 2/5, κ₂ = 1/5: unit-speed helix of radius 2 and pitch 1.
        let p = constant_profile(&[0.4, 0.2], 15.0);
        let c = synthesize_from_curvatures(&p, 3, &VectorN::zeros(3), &identity_frame(3), default_step(&p)).unwrap();
        assert_eq!(c.max_order(), 4);
        for s in c.grid(17) {
            let d = c.eval_derivatives(s, 4).unwrap();
            assert!((d[1].norm() - 1.0).abs() < 1e-12);
            assert!((d[2].norm() - 0.4).abs() < 1e-12);
            // For a helix |γ'''| = κ₁√(κ₁² + κ₂²) and |γ''''| = κ₁(κ₁² + κ₂²).
            assert!((d[3].norm() - 0.4 * 0.2f64.sqrt()).abs() < 1e-12);
            assert!((d[4].norm() - 0.4 * 0.2).abs() < 1e-12);
        }
        // One full turn advances 2π·b = 2π along the axis.
        let period = TAU * 5f64.sqrt();
        let chord = c.position(period).unwrap().distance(&c.position(0.0).unwrap());
        assert!((chord - TAU).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_input() {
        let p = constant_profile(&[1.0, 0.0], 1.0);
        assert!(matches!(
            synthesize_from_curvatures(&p, 3, &VectorN::zeros(3), &identity_frame(3), 0.01),
            Err(GeomError::InvalidProfile(_))
        ));
        let p = constant_profile(&[-1.0, 1.0], 1.0);
        assert!(matches!(
            synthesize_from_curvatures(&p, 3, &VectorN::zeros(3), &identity_frame(3), 0.01),
            Err(GeomError::InvalidProfile(_))
        ));
        let p = constant_profile(&[1.0], 1.0);
        let skew = vec![v(&[1.0, 0.0]), v(&[0.1, 1.0])];
        assert!(matches!(
            synthesize_from_curvatures(&p, 2, &VectorN::zeros(2), &skew, 0.01),
            Err(GeomError::NonOrthonormalFrame { .. })
        ));
        assert!(synthesize_from_curvatures(&p, 3, &VectorN::zeros(3), &identity_frame(3), 0.01).is_err());
    }

    #[test]
    fn huge_step_reports_drift() {
        let p = constant_profile(&[3.0, 2.0, 1.0], 20.0);
        assert!(matches!(
            synthesize_from_curvatures(&p, 4, &VectorN::zeros(4), &identity_frame(4), 0.5),
            Err(GeomError::FrameDrift { .. })
        ));
    }

    #[test]
    fn negative_last_curvature_allowed() {
        let p = constant_profile(&[0.4, -0.2], 5.0);
        assert!(synthesize_from_curvatures(&p, 3, &VectorN::zeros(3), &identity_frame(3), default_step(&p)).is_ok());
    }
}
