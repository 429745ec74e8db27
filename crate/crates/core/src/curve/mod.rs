//! Curves with derivative oracles.
//!
//! A [`Curve`] is an immutable, cheaply clonable handle around a
//! [`CurveOracle`], which evaluates `[γ(t), γ'(t), …, γ⁽ᵏ⁾(t)]`. Three kinds of
//! oracle exist: closed-form analytic curves, sampled curves differentiated
//! with finite-difference stencils, and curves synthesized from curvature
//! functions by integrating the Frenet system.

mod analytic;
mod arclength;
mod sampled;
pub mod spec;
mod synth;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::VectorN;
use crate::quadrature;
use crate::stencil::uniform_grid;

pub use analytic::{
    make_circle, make_ellipse, make_helix, make_random_curve, make_salkowski, make_wcurve,
    salkowski_domain, AnalyticCurve, CoordinateFn, Wave, ANALYTIC_MAX_ORDER,
};
pub use arclength::ArcLengthCurve;
pub use sampled::{SampledCurve, SAMPLED_MAX_ORDER};
pub use synth::{
    default_step, synthesize_from_curvatures, CubicSpline, CurvatureFunction, CurvatureProfile,
    SynthesizedCurve,
};

/// Absolute tolerance of [`Curve::arc_length`].
pub const ARC_LENGTH_TOLERANCE: f64 = 1e-10;

/// Number of probe points used by the regularity check at construction.
const REGULARITY_PROBES: usize = 65;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Analytic,
    Sampled,
    Synthesized,
}

/// Something that can evaluate a curve and its derivatives.
///
/// `derivatives` is only called with `t` inside `domain()` and
/// `order <= max_order()`; [`Curve`] performs those checks.
pub trait CurveOracle: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;
    fn domain(&self) -> (f64, f64);
    fn max_order(&self) -> usize;
    /// Returns `order + 1` vectors: the position followed by successive derivatives.
    fn derivatives(&self, t: f64, order: usize) -> Vec<VectorN>;
}

#[derive(Clone)]
pub struct Curve {
    oracle: Arc<dyn CurveOracle>,
    kind: CurveKind,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve")
            .field("kind", &self.kind)
            .field("dim", &self.dim())
            .field("domain", &self.domain())
            .field("oracle", &self.oracle)
            .finish()
    }
}

impl Curve {
    /// Wraps an oracle after checking regularity on a probe grid.
    ///
    /// The speed must exceed `1e-10 · max(1, max‖γ‖)` at every probe point.
    pub fn new<O: CurveOracle + 'static>(oracle: O, kind: CurveKind) -> Result<Self> {
        let (a, b) = oracle.domain();
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(GeomError::BadParameters(format!(
                "curve domain [{a}, {b}] must be a finite non-empty interval"
            )));
        }
        if oracle.dim() < 2 {
            return Err(GeomError::DimensionTooSmall(oracle.dim()));
        }
        if oracle.max_order() < 1 {
            return Err(GeomError::OrderUnsupported {
                requested: 1,
                max: oracle.max_order(),
            });
        }
        let probes = uniform_grid(a, b, REGULARITY_PROBES);
        let evaluated: Vec<Vec<VectorN>> = probes.iter().map(|&t| oracle.derivatives(t, 1)).collect();
        let scale = evaluated
            .iter()
            .map(|d| d[0].as_slice().iter().fold(0.0f64, |m, x| m.max(x.abs())))
            .fold(1.0f64, f64::max);
        for (t, d) in probes.iter().zip(&evaluated) {
            if !(d[0].is_finite() && d[1].is_finite()) {
                return Err(GeomError::NonFinite("curve evaluation"));
            }
            let speed = d[1].norm();
            if !(speed > 1e-10 * scale) {
                return Err(GeomError::RegularityFailure { t: *t, speed });
            }
        }
        Ok(Self {
            oracle: Arc::new(oracle),
            kind,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.oracle.dim()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.oracle.domain()
    }

    pub fn max_order(&self) -> usize {
        self.oracle.max_order()
    }

    pub fn oracle(&self) -> &dyn CurveOracle {
        self.oracle.as_ref()
    }

    /// `n` equally spaced parameters spanning the domain.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let (a, b) = self.domain();
        uniform_grid(a, b, n)
    }

    fn check_param(&self, t: f64) -> Result<f64> {
        let (a, b) = self.domain();
        let slack = 1e-12 * (b - a).abs().max(1.0);
        if !(t >= a - slack && t <= b + slack) {
            return Err(GeomError::OutOfDomain { t, min: a, max: b });
        }
        Ok(t.clamp(a, b))
    }

    /// `[γ(t), γ'(t), …, γ⁽ᵒʳᵈᵉʳ⁾(t)]`.
    pub fn eval_derivatives(&self, t: f64, order: usize) -> Result<Vec<VectorN>> {
        let t = self.check_param(t)?;
        if order > self.max_order() {
            return Err(GeomError::OrderUnsupported {
                requested: order,
                max: self.max_order(),
            });
        }
        Ok(self.oracle.derivatives(t, order))
    }

    pub fn position(&self, t: f64) -> Result<VectorN> {
        Ok(self.eval_derivatives(t, 0)?.swap_remove(0))
    }

    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(self.eval_derivatives(t, 1)?[1].norm())
    }

    /// `∫ ‖γ'‖ dt` over `[t0, t1]`, adaptive Gauss–Kronrod to absolute tolerance 1e-10.
    pub fn arc_length(&self, t0: f64, t1: f64) -> Result<f64> {
        let t0 = self.check_param(t0)?;
        let t1 = self.check_param(t1)?;
        quadrature::integrate(
            |t| self.oracle.derivatives(t, 1)[1].norm(),
            t0,
            t1,
            ARC_LENGTH_TOLERANCE,
        )
    }

    /// The same curve on another parameter interval.
    ///
    /// Analytic curves are defined for every real parameter, so any interval is
    /// accepted; other kinds may only be restricted to a sub-interval.
    pub fn with_domain(&self, domain: (f64, f64)) -> Result<Curve> {
        let (a, b) = domain;
        if self.kind != CurveKind::Analytic {
            let (lo, hi) = self.domain();
            if a < lo || b > hi {
                return Err(GeomError::OutOfDomain {
                    t: if a < lo { a } else { b },
                    min: lo,
                    max: hi,
                });
            }
        }
        Curve::new(
            Restricted {
                inner: Arc::clone(&self.oracle),
                domain,
            },
            self.kind,
        )
    }

    /// Unit-speed reparametrization over `[0, length]`.
    pub fn reparam_to_arclength(&self) -> Result<Curve> {
        let kind = self.kind;
        Curve::new(ArcLengthCurve::new(self.clone())?, kind)
    }
}

#[derive(Debug)]
struct Restricted {
    inner: Arc<dyn CurveOracle>,
    domain: (f64, f64),
}

impl CurveOracle for Restricted {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn max_order(&self) -> usize {
        self.inner.max_order()
    }

    fn derivatives(&self, t: f64, order: usize) -> Vec<VectorN> {
        self.inner.derivatives(t, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn circle_derivatives_at_zero() {
        let c = make_circle(1.0).unwrap();
        let d = c.eval_derivatives(0.0, 2).unwrap();
        let want = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]];
        for (got, want) in d.iter().zip(want) {
            assert!((got[0] - want[0]).abs() < 1e-15 && (got[1] - want[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn line_has_vanishing_second_derivative() {
        let line = AnalyticCurve::new(
            vec![
                CoordinateFn::polynomial(vec![0.0, 1.0]),
                CoordinateFn::polynomial(vec![0.0, 2.0]),
                CoordinateFn::polynomial(vec![0.0, 3.0]),
            ],
            (-1.0, 1.0),
        )
        .unwrap();
        let line = Curve::new(line, CurveKind::Analytic).unwrap();
        let d = line.eval_derivatives(0.3, 2).unwrap();
        assert_eq!(d[1].as_slice(), &[1.0, 2.0, 3.0]);
        assert_eq!(d[2].as_slice(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn out_of_domain_and_order_errors() {
        let c = make_circle(1.0).unwrap();
        assert!(matches!(
            c.eval_derivatives(7.0, 1),
            Err(GeomError::OutOfDomain { .. })
        ));
        let s = SampledCurve::from_curve(&c, 64).unwrap();
        let s = Curve::new(s, CurveKind::Sampled).unwrap();
        assert!(matches!(
            s.eval_derivatives(1.0, 6),
            Err(GeomError::OrderUnsupported { requested: 6, max: 5 })
        ));
    }

    #[test]
    fn arc_length_examples() {
        let circle = make_circle(1.0).unwrap();
        assert!((circle.arc_length(0.0, TAU).unwrap() - TAU).abs() < 1e-9);

        let line = AnalyticCurve::new(
            vec![CoordinateFn::polynomial(vec![0.0, 1.0]), CoordinateFn::polynomial(vec![0.0])],
            (0.0, 5.0),
        )
        .unwrap();
        let line = Curve::new(line, CurveKind::Analytic).unwrap();
        assert!((line.arc_length(0.0, 5.0).unwrap() - 5.0).abs() < 1e-12);

        let helix = make_helix(2.0, 1.0).unwrap();
        let want = TAU * 5f64.sqrt();
        assert!((helix.arc_length(0.0, TAU).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn reparam_linear_rescale() {
        let c = AnalyticCurve::new(
            vec![CoordinateFn::polynomial(vec![0.0, 2.0]), CoordinateFn::polynomial(vec![0.0])],
            (0.0, 1.0),
        )
        .unwrap();
        let c = Curve::new(c, CurveKind::Analytic).unwrap();
        let r = c.reparam_to_arclength().unwrap();
        let (a, b) = r.domain();
        assert!(a == 0.0 && (b - 2.0).abs() < 1e-12);
        for s in [0.0, 0.5, 1.3, 2.0] {
            let p = r.position(s).unwrap();
            assert!((p[0] - s).abs() < 1e-12 && p[1].abs() < 1e-15);
        }
    }

    #[test]
    fn reparam_of_unit_speed_is_identity() {
        let c = make_circle(1.0).unwrap();
        let r = c.reparam_to_arclength().unwrap();
        for s in uniform_grid(0.0, TAU, 37) {
            let p = c.eval_derivatives(s, 3).unwrap();
            let q = r.eval_derivatives(s, 3).unwrap();
            for (x, y) in p.iter().zip(&q) {
                assert!(x.distance(y) < 1e-9, "at {s}: {x:?} vs {y:?}");
            }
        }
    }

    #[test]
    fn reparam_helix_matches_closed_form() {
        let helix = make_helix(2.0, 1.0).unwrap();
        let r = helix.reparam_to_arclength().unwrap();
        let w = 5f64.sqrt();
        for s in [0.0, 1.0, 3.7, PI * w] {
            let t = s / w;
            let d = r.eval_derivatives(s, 4).unwrap();
            let closed = helix.eval_derivatives(t, 4).unwrap();
            for (k, (got, want)) in d.iter().zip(&closed).enumerate() {
                let want = want.scale(w.powi(-(k as i32)));
                assert!(got.distance(&want) < 1e-10, "order {k} at s={s}");
            }
        }
    }

    #[test]
    fn reparam_speed_is_one_on_fine_grid() {
        let e = make_ellipse(3.0, 1.0).unwrap();
        let r = e.reparam_to_arclength().unwrap();
        for s in r.grid(1024) {
            assert!((r.speed(s).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn regularity_enforced() {
        let point = AnalyticCurve::new(
            vec![CoordinateFn::polynomial(vec![1.0]), CoordinateFn::polynomial(vec![2.0])],
            (0.0, 1.0),
        )
        .unwrap();
        assert!(matches!(
            Curve::new(point, CurveKind::Analytic),
            Err(GeomError::RegularityFailure { .. })
        ));
    }
}
