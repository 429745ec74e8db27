use super::{Curve, CurveOracle};
use crate::error::{GeomError, Result};
use crate::linalg::VectorN;
use crate::stencil::fornberg_weights;

/// Highest derivative a sampled curve provides.
pub const SAMPLED_MAX_ORDER: usize = 5;

/// Stencil accuracy: sixth order for derivatives up to 2, fourth order for 3..=5.
fn stencil_len(order: usize) -> usize {
    let accuracy = if order <= 2 { 6 } else { 4 };
    let central = if order == 0 { 1 } else { 2 * order.div_ceil(2) - 1 };
    central + accuracy
}

/// Curve known only through samples `(tⱼ, γ(tⱼ))`.
///
/// Derivatives of order `k` come from Fornberg finite-difference stencils on
/// the sample nodes closest to `t`: seven nodes for `k ≤ 4`, nine for `k = 5`.
/// The stencil is centred on the nearest node and shifted inward at the ends,
/// so it becomes one-sided near the boundary. Between nodes the same stencils
/// act as local polynomial interpolation.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    params: Vec<f64>,
    points: Vec<VectorN>,
}

impl SampledCurve {
    pub fn new(params: Vec<f64>, points: Vec<VectorN>) -> Result<Self> {
        if params.len() != points.len() {
            return Err(GeomError::BadParameters(format!(
                "{} parameters for {} points",
                params.len(),
                points.len()
            )));
        }
        let needed = stencil_len(SAMPLED_MAX_ORDER);
        if params.len() < needed {
            return Err(GeomError::InsufficientSamples {
                needed,
                got: params.len(),
            });
        }
        if params.iter().any(|t| !t.is_finite()) {
            return Err(GeomError::NonFinite("sample parameters"));
        }
        if params.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GeomError::BadParameters(
                "sample parameters must be strictly increasing".into(),
            ));
        }
        let dim = points[0].dim();
        for p in &points {
            p.check_dim(dim)?;
            if !p.is_finite() {
                return Err(GeomError::NonFinite("sample points"));
            }
        }
        Ok(Self { params, points })
    }

    /// Samples `curve` at `n` uniformly spaced parameters.
    pub fn from_curve(curve: &Curve, n: usize) -> Result<Self> {
        let params = curve.grid(n);
        let points = params
            .iter()
            .map(|&t| curve.position(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, points)
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[VectorN] {
        &self.points
    }

    fn window(&self, t: f64, len: usize) -> std::ops::Range<usize> {
        let n = self.params.len();
        let nearest = match self.params.binary_search_by(|p| p.total_cmp(&t)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) if i >= n => n - 1,
            Err(i) => {
                if t - self.params[i - 1] <= self.params[i] - t {
                    i - 1
                } else {
                    i
                }
            }
        };
        let start = nearest.saturating_sub(len / 2).min(n - len);
        start..start + len
    }
}

impl CurveOracle for SampledCurve {
    fn dim(&self) -> usize {
        self.points[0].dim()
    }

    fn domain(&self) -> (f64, f64) {
        (self.params[0], self.params[self.params.len() - 1])
    }

    fn max_order(&self) -> usize {
        SAMPLED_MAX_ORDER
    }

    fn derivatives(&self, t: f64, order: usize) -> Vec<VectorN> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(order + 1);
        let mut cache: Option<(usize, std::ops::Range<usize>, Vec<Vec<f64>>)> = None;
        for k in 0..=order {
            let len = stencil_len(k);
            let fresh = match &cache {
                Some((cached_len, _, _)) => *cached_len != len,
                None => true,
            };
            if fresh {
                let range = self.window(t, len);
                let top = (0..=order).filter(|&j| stencil_len(j) == len).max().unwrap_or(k);
                let weights = fornberg_weights(t, &self.params[range.clone()], top);
                cache = Some((len, range, weights));
            }
            let (_, range, weights) = cache.as_ref().expect("stencil cached");
            let mut acc = vec![0.0; dim];
            for (w, p) in weights.iter().zip(&self.points[range.clone()]) {
                for (a, x) in acc.iter_mut().zip(p.as_slice()) {
                    *a += w[k] * x;
                }
            }
            out.push(VectorN::from_vec_unchecked(acc));
        }
        out
    }
}
