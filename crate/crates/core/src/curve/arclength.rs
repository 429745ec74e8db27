use super::{Curve, CurveOracle};
use crate::error::{GeomError, Result};
use crate::jet::{factorial, Jet};
use crate::linalg::VectorN;
use crate::quadrature;

const PANELS: usize = 256;
const PANEL_TOLERANCE: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 60;

/// Unit-speed reparametrization `s ↦ γ(t(s))` of a regular curve.
///
/// A table of cumulative arc length at panel boundaries is built once; `t(s)`
/// is recovered by Newton's method on the bracketing panel, falling back to
/// bisection when a step leaves the bracket. Derivatives with respect to `s`
/// follow from the chain rule, carried out on Taylor jets: the speed jet is
/// integrated into `s(t)`, reverted to `t(s)`, and composed with `γ`.
#[derive(Debug)]
pub struct ArcLengthCurve {
    base: Curve,
    knots: Vec<f64>,
    cumulative: Vec<f64>,
}

impl ArcLengthCurve {
    pub fn new(base: Curve) -> Result<Self> {
        let knots = base.grid(PANELS + 1);
        let mut cumulative = Vec::with_capacity(knots.len());
        cumulative.push(0.0);
        for w in knots.windows(2) {
            let piece = quadrature::integrate(
                |t| base.oracle().derivatives(t, 1)[1].norm(),
                w[0],
                w[1],
                PANEL_TOLERANCE,
            )?;
            let last = *cumulative.last().expect("non-empty");
            cumulative.push(last + piece);
        }
        Ok(Self {
            base,
            knots,
            cumulative,
        })
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().expect("non-empty")
    }

    pub fn base(&self) -> &Curve {
        &self.base
    }

    fn speed_at(&self, t: f64) -> f64 {
        self.base.oracle().derivatives(t, 1)[1].norm()
    }

    /// Parameter `t` with arc length `s` from the start of the domain.
    pub fn parameter_at(&self, s: f64) -> Result<f64> {
        let length = self.length();
        if !(s >= -1e-12 * length && s <= length * (1.0 + 1e-12)) {
            return Err(GeomError::OutOfDomain {
                t: s,
                min: 0.0,
                max: length,
            });
        }
        let s = s.clamp(0.0, length);
        let panel = match self.cumulative.partition_point(|&c| c <= s) {
            0 => 0,
            i => (i - 1).min(PANELS - 1),
        };
        let (mut lo, mut hi) = (self.knots[panel], self.knots[panel + 1]);
        let start = self.cumulative[panel];
        if s == start {
            return Ok(lo);
        }
        let target = s - start;
        let residual = |t: f64| -> Result<f64> {
            Ok(quadrature::integrate(|u| self.speed_at(u), self.knots[panel], t, PANEL_TOLERANCE)? - target)
        };
        let mut t = lo + (hi - lo) * target / (self.cumulative[panel + 1] - start);
        for _ in 0..NEWTON_MAX_ITER {
            let f = residual(t)?;
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = f / self.speed_at(t);
            let next = t - step;
            if step.abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) {
                return Ok(next.clamp(self.knots[panel], self.knots[panel + 1]));
            }
            t = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 4.0 * f64::EPSILON * t.abs().max(1.0) {
                return Ok(t);
            }
        }
        Err(GeomError::ConvergenceFailure {
            sweeps: NEWTON_MAX_ITER,
            off_norm: hi - lo,
        })
    }
}

impl CurveOracle for ArcLengthCurve {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, self.length())
    }

    fn max_order(&self) -> usize {
        self.base.max_order()
    }

    fn derivatives(&self, s: f64, order: usize) -> Vec<VectorN> {
        let t = self
            .parameter_at(s)
            .unwrap_or_else(|_| if s <= 0.0 { self.knots[0] } else { self.knots[PANELS] });
        let d = self.base.oracle().derivatives(t, order);
        if order == 0 {
            return d;
        }
        let dim = self.dim();
        let len = order + 1;

        // σ(t+h)² = Σᵢ γᵢ'(t+h)², as a jet of length `order`.
        let mut speed_sq = Jet::zeros(order);
        for i in 0..dim {
            let component: Vec<f64> = (1..=order).map(|k| d[k][i]).collect();
            let g = Jet::from_derivatives(&component);
            speed_sq = &speed_sq + &(&g * &g);
        }
        let arc = speed_sq.sqrt().integrate();
        let inverse = arc.revert(len);

        let mut out = vec![vec![0.0; dim]; len];
        for i in 0..dim {
            let mut coeffs: Vec<f64> = (0..=order).map(|k| d[k][i]).collect();
            coeffs[0] = 0.0;
            let composed = Jet::from_derivatives(&coeffs).compose(&inverse, len);
            out[0][i] = d[0][i];
            for (k, row) in out.iter_mut().enumerate().skip(1) {
                row[i] = composed.coeff(k) * factorial(k);
            }
        }
        out.into_iter().map(VectorN::from_vec_unchecked).collect()
    }
}
