//! Closed-form curves whose coordinates are polynomials plus trigonometric waves.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Curve, CurveKind, CurveOracle};
use crate::error::{GeomError, Result};
use crate::linalg::{gram_schmidt, VectorN};

/// Derivative orders beyond this are refused; the closed forms themselves have no limit.
pub const ANALYTIC_MAX_ORDER: usize = 24;

/// `cos_amp · cos(freq·t + phase) + sin_amp · sin(freq·t + phase)`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wave {
    pub cos_amp: f64,
    pub sin_amp: f64,
    pub freq: f64,
    pub phase: f64,
}

impl Wave {
    fn derivative(&self, t: f64, k: usize) -> f64 {
        let theta = self.freq * t + self.phase;
        let (s, c) = theta.sin_cos();
        // shift by k quarter turns exactly
        let (ck, sk) = match k % 4 {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        };
        self.freq.powi(k as i32) * (self.cos_amp * ck + self.sin_amp * sk)
    }
}

/// One coordinate: `Σ pⱼ tʲ + Σ waves`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoordinateFn {
    polynomial: Vec<f64>,
    waves: Vec<Wave>,
}

impl CoordinateFn {
    pub fn polynomial(coefficients: Vec<f64>) -> Self {
        Self {
            polynomial: coefficients,
            waves: Vec::new(),
        }
    }

    pub fn cos(amp: f64, freq: f64) -> Self {
        Self::default().with_cos(amp, freq)
    }

    pub fn sin(amp: f64, freq: f64) -> Self {
        Self::default().with_sin(amp, freq)
    }

    pub fn with_cos(mut self, amp: f64, freq: f64) -> Self {
        self.waves.push(Wave {
            cos_amp: amp,
            sin_amp: 0.0,
            freq,
            phase: 0.0,
        });
        self
    }

    pub fn with_sin(mut self, amp: f64, freq: f64) -> Self {
        self.waves.push(Wave {
            cos_amp: 0.0,
            sin_amp: amp,
            freq,
            phase: 0.0,
        });
        self
    }

    pub fn with_wave(mut self, wave: Wave) -> Self {
        self.waves.push(wave);
        self
    }

    pub fn with_polynomial(mut self, coefficients: Vec<f64>) -> Self {
        self.polynomial = coefficients;
        self
    }

    fn derivative(&self, t: f64, k: usize) -> f64 {
        let mut acc = 0.0;
        // Horner on the k-th derivative of the polynomial part
        for j in (k..self.polynomial.len()).rev() {
            let falling: f64 = ((j - k + 1)..=j).map(|x| x as f64).product();
            acc = acc * t + self.polynomial[j] * falling;
        }
        acc + self.waves.iter().map(|w| w.derivative(t, k)).sum::<f64>()
    }

    fn is_finite(&self) -> bool {
        self.polynomial.iter().all(|c| c.is_finite())
            && self
                .waves
                .iter()
                .all(|w| w.cos_amp.is_finite() && w.sin_amp.is_finite() && w.freq.is_finite() && w.phase.is_finite())
    }
}

#[derive(Clone, Debug)]
pub struct AnalyticCurve {
    coords: Vec<CoordinateFn>,
    domain: (f64, f64),
}

impl AnalyticCurve {
    pub fn new(coords: Vec<CoordinateFn>, domain: (f64, f64)) -> Result<Self> {
        if coords.len() < 2 {
            return Err(GeomError::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite("analytic curve coefficients"));
        }
        Ok(Self { coords, domain })
    }

    pub fn with_domain(mut self, domain: (f64, f64)) -> Self {
        self.domain = domain;
        self
    }

    pub fn into_curve(self) -> Result<Curve> {
        Curve::new(self, CurveKind::Analytic)
    }
}

impl CurveOracle for AnalyticCurve {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn max_order(&self) -> usize {
        ANALYTIC_MAX_ORDER
    }

    fn derivatives(&self, t: f64, order: usize) -> Vec<VectorN> {
        (0..=order)
            .map(|k| VectorN::from_vec_unchecked(self.coords.iter().map(|c| c.derivative(t, k)).collect()))
            .collect()
    }
}

fn positive(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(GeomError::BadParameters(format!("{name} must be positive, got {value}")));
    }
    Ok(())
}

/// `(r cos t, r sin t)` on `[0, 2π]`.
pub fn make_circle(r: f64) -> Result<Curve> {
    positive("radius", r)?;
    AnalyticCurve::new(vec![CoordinateFn::cos(r, 1.0), CoordinateFn::sin(r, 1.0)], (0.0, TAU))?.into_curve()
}

/// `(a cos t, b sin t)` on `[0, 2π]`.
pub fn make_ellipse(a: f64, b: f64) -> Result<Curve> {
    positive("semi-axis a", a)?;
    positive("semi-axis b", b)?;
    AnalyticCurve::new(vec![CoordinateFn::cos(a, 1.0), CoordinateFn::sin(b, 1.0)], (0.0, TAU))?.into_curve()
}

/// Circular helix `(a cos t, a sin t, b t)` on `[0, 2π]`.
pub fn make_helix(a: f64, b: f64) -> Result<Curve> {
    positive("helix radius", a)?;
    if !(b.is_finite() && b != 0.0) {
        return Err(GeomError::BadParameters(format!("helix pitch must be non-zero, got {b}")));
    }
    AnalyticCurve::new(
        vec![
            CoordinateFn::cos(a, 1.0),
            CoordinateFn::sin(a, 1.0),
            CoordinateFn::polynomial(vec![0.0, b]),
        ],
        (0.0, TAU),
    )?
    .into_curve()
}

/// Curve with constant curvatures: a sum of circles `(rⱼ cos ωⱼt, rⱼ sin ωⱼt)` in
/// consecutive coordinate planes, plus `pitch · t` in the last coordinate when
/// `dim` is odd. Domain `[0, 2π]`.
pub fn make_wcurve(radii: &[f64], frequencies: &[f64], pitch: f64, dim: usize) -> Result<Curve> {
    let p = radii.len();
    if p == 0 || frequencies.len() != p {
        return Err(GeomError::BadParameters(format!(
            "need one frequency per radius (got {} radii, {} frequencies)",
            p,
            frequencies.len()
        )));
    }
    if dim != 2 * p && dim != 2 * p + 1 {
        return Err(GeomError::BadParameters(format!(
            "{p} circles fill dimension {} or {}, not {dim}",
            2 * p,
            2 * p + 1
        )));
    }
    for &r in radii {
        positive("W-curve radius", r)?;
    }
    for &w in frequencies {
        positive("W-curve frequency", w)?;
    }
    for i in 0..p {
        for j in (i + 1)..p {
            if frequencies[i] == frequencies[j] {
                return Err(GeomError::BadParameters(format!(
                    "W-curve frequencies must be pairwise distinct ({} repeats)",
                    frequencies[i]
                )));
            }
        }
    }
    if !pitch.is_finite() || (dim == 2 * p && pitch != 0.0) {
        return Err(GeomError::BadParameters(
            "a pitch coordinate needs odd ambient dimension".into(),
        ));
    }
    let mut coords = Vec::with_capacity(dim);
    for (&r, &w) in radii.iter().zip(frequencies) {
        coords.push(CoordinateFn::cos(r, w));
        coords.push(CoordinateFn::sin(r, w));
    }
    if dim == 2 * p + 1 {
        coords.push(CoordinateFn::polynomial(vec![0.0, pitch]));
    }
    AnalyticCurve::new(coords, (0.0, TAU))?.into_curve()
}

/// Default parameter range for [`make_salkowski`]: the middle 70% of
/// `(0, π/(2|n|))`, away from the torsion zero at `t = 0` and the stationary
/// point at `t = π/(2|n|)`.
pub fn salkowski_domain(param: f64) -> (f64, f64) {
    let n = param / (1.0 + param * param).sqrt();
    let end = FRAC_PI_2 / n.abs();
    (0.15 * end, 0.85 * end)
}

/// Salkowski curve with parameter `m` (`n = m/√(1+m²)`): unit curvature,
/// non-constant torsion, principal normal at constant angle with `e₃`.
///
/// ```text
/// γ(t) = 1/√(1+m²) · ( −(1−n)/(4(1+2n)) sin((1+2n)t) − (1+n)/(4(1−2n)) sin((1−2n)t) − ½ sin t,
///                       (1−n)/(4(1+2n)) cos((1+2n)t) + (1+n)/(4(1−2n)) cos((1−2n)t) + ½ cos t,
///                       cos(2nt)/(4m) )
/// ```
///
/// The constructor checks `⟨e₃, n₁⟩` for constancy (to 1e-6) on a probe grid
/// and fails if the closed form does not behave as a slant helix.
pub fn make_salkowski(param: f64) -> Result<Curve> {
    make_salkowski_on(param, salkowski_domain(param))
}

pub(crate) fn make_salkowski_on(m: f64, domain: (f64, f64)) -> Result<Curve> {
    if !(m.is_finite() && m != 0.0) {
        return Err(GeomError::BadParameters(format!("Salkowski parameter must be non-zero, got {m}")));
    }
    let n = m / (1.0 + m * m).sqrt();
    if (1.0 - 2.0 * n.abs()).abs() < 1e-9 {
        return Err(GeomError::BadParameters(
            "Salkowski parameter ±1/√3 makes the closed form singular".into(),
        ));
    }
    let scale = 1.0 / (1.0 + m * m).sqrt();
    let a = scale * (1.0 - n) / (4.0 * (1.0 + 2.0 * n));
    let b = scale * (1.0 + n) / (4.0 * (1.0 - 2.0 * n));
    let coords = vec![
        CoordinateFn::sin(-a, 1.0 + 2.0 * n)
            .with_sin(-b, 1.0 - 2.0 * n)
            .with_sin(-0.5 * scale, 1.0),
        CoordinateFn::cos(a, 1.0 + 2.0 * n)
            .with_cos(b, 1.0 - 2.0 * n)
            .with_cos(0.5 * scale, 1.0),
        CoordinateFn::cos(scale / (4.0 * m), 2.0 * n),
    ];
    let curve = AnalyticCurve::new(coords, domain)?.into_curve()?;

    let axis = VectorN::unit(3, 2);
    let mut values = Vec::new();
    for t in curve.grid(64) {
        let d = curve.eval_derivatives(t, 2)?;
        let gs = gram_schmidt(&d[1..=2]).map_err(|e| {
            GeomError::BadParameters(format!("Salkowski self-check: not curved at t = {t}: {e}"))
        })?;
        values.push(gs.orthogonal[1].dot(&axis) / gs.norms[1]);
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if hi - lo > 1e-6 {
        return Err(GeomError::BadParameters(format!(
            "Salkowski self-check failed: <e3, n1> varies by {:.3e}",
            hi - lo
        )));
    }
    Ok(curve)
}

/// Random trigonometric curve: each coordinate is
/// `Σ_{f=1..3} (a cos ft + b sin ft)/f` with `a, b` uniform in `[-1, 1]`,
/// on `[0, 2π]`. Deterministic for a given seed.
pub fn make_random_curve(dim: usize, seed: u64) -> Result<Curve> {
    if dim < 2 {
        return Err(GeomError::DimensionTooSmall(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..dim)
        .map(|_| {
            let mut c = CoordinateFn::default();
            for f in 1..=3 {
                let f = f as f64;
                c = c
                    .with_cos(rng.gen_range(-1.0..1.0) / f, f)
                    .with_sin(rng.gen_range(-1.0..1.0) / f, f);
            }
            c
        })
        .collect();
    AnalyticCurve::new(coords, (0.0, TAU))?.into_curve()
}
