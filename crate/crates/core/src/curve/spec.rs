//! Declarative curve description, as read from JSON files by the CLI.
//!
//! ```json
//! { "type": "wcurve", "dim": 5, "params": [1, 1, 1, 2, 1] }
//! { "type": "curvatures", "dim": 3,
//!   "curvatures": [[0.0, 0.4, 0.2], [0.1, 0.4, 0.2], ...] }
//! ```
//!
//! | type         | params                                   | other fields                       |
//! |--------------|------------------------------------------|------------------------------------|
//! | `circle`     | `[r]`                                    |                                    |
//! | `helix`      | `[a, b]`                                 |                                    |
//! | `wcurve`     | `[r₁..r_p, ω₁..ω_p]`, then `pitch` if `dim` is odd | `dim` required           |
//! | `salkowski`  | `[m]`                                    |                                    |
//! | `samples`    | none                                     | `samples`: rows `[t, x₁, …, x_d]`  |
//! | `curvatures` | none, or constant `[κ₁..κ_m]`            | `curvatures`: rows `[s, κ₁, …, κ_m]`; optional `initial_point`, `initial_frame`, `step` |
//!
//! `domain` overrides the default parameter interval of analytic families and
//! is the arc-length interval of constant-curvature profiles.

use serde::{Deserialize, Serialize};

use super::{
    default_step, make_circle, make_helix, make_salkowski, make_wcurve, synthesize_from_curvatures,
    Curve, CurveKind, CubicSpline, CurvatureFunction, CurvatureProfile, SampledCurve,
};
use crate::error::{GeomError, Result};
use crate::linalg::VectorN;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveType {
    Circle,
    Helix,
    Wcurve,
    Salkowski,
    Samples,
    Curvatures,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(rename = "type")]
    pub curve_type: CurveType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvatures: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_point: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_frame: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

fn bad(msg: impl Into<String>) -> GeomError {
    GeomError::BadParameters(msg.into())
}

impl CurveSpec {
    fn empty(curve_type: CurveType) -> Self {
        Self {
            curve_type,
            dim: None,
            params: Vec::new(),
            domain: None,
            samples: None,
            curvatures: None,
            initial_point: None,
            initial_frame: None,
            step: None,
        }
    }

    /// A `samples` spec holding `points` at parameters `params`.
    pub fn from_samples(params: &[f64], points: &[VectorN]) -> Self {
        let rows = params
            .iter()
            .zip(points)
            .map(|(t, p)| std::iter::once(*t).chain(p.as_slice().iter().copied()).collect())
            .collect();
        Self {
            dim: points.first().map(VectorN::dim),
            samples: Some(rows),
            ..Self::empty(CurveType::Samples)
        }
    }

    fn check_dim(&self, want: usize) -> Result<()> {
        match self.dim {
            Some(d) if d != want => Err(GeomError::DimensionMismatch { expected: want, got: d }),
            _ => Ok(()),
        }
    }

    fn params_exact(&self, n: usize, defaults: &[f64]) -> Result<Vec<f64>> {
        match self.params.len() {
            0 => Ok(defaults.to_vec()),
            len if len == n => Ok(self.params.clone()),
            len => Err(bad(format!("{:?} takes {n} params, got {len}", self.curve_type))),
        }
    }

    fn override_domain(&self, curve: Curve) -> Result<Curve> {
        match self.domain {
            Some([a, b]) => curve.with_domain((a, b)),
            None => Ok(curve),
        }
    }

    /// Curvature profile of a `curvatures` spec.
    pub fn profile(&self) -> Result<CurvatureProfile> {
        if self.curve_type != CurveType::Curvatures {
            return Err(bad("only a curvatures spec has a curvature profile"));
        }
        match (&self.curvatures, self.params.is_empty()) {
            (Some(rows), true) => {
                let width = rows.first().map_or(0, Vec::len);
                if width < 2 {
                    return Err(bad("curvature rows need [s, kappa_1, ...]"));
                }
                if let Some(i) = rows.iter().position(|r| r.len() != width) {
                    return Err(bad(format!("curvature row {i} has {} entries, expected {width}", rows[i].len())));
                }
                let s: Vec<f64> = rows.iter().map(|r| r[0]).collect();
                let functions = (1..width)
                    .map(|j| CubicSpline::new(s.clone(), rows.iter().map(|r| r[j]).collect()).map(CurvatureFunction::Samples))
                    .collect::<Result<Vec<_>>>()?;
                let domain = match self.domain {
                    Some([a, b]) => (a, b),
                    None => (s[0], s[s.len() - 1]),
                };
                CurvatureProfile::new(functions, domain)
            }
            (None, false) => {
                let [a, b] = self
                    .domain
                    .ok_or_else(|| bad("constant curvatures need a domain"))?;
                CurvatureProfile::new(
                    self.params.iter().map(|&k| CurvatureFunction::Constant(k)).collect(),
                    (a, b),
                )
            }
            (Some(_), false) => Err(bad("give either curvature rows or constant params, not both")),
            (None, true) => Err(bad("curvatures spec needs rows or constant params")),
        }
    }

    pub fn build(&self) -> Result<Curve> {
        match self.curve_type {
            CurveType::Circle => {
                self.check_dim(2)?;
                let p = self.params_exact(1, &[1.0])?;
                self.override_domain(make_circle(p[0])?)
            }
            CurveType::Helix => {
                self.check_dim(3)?;
                let p = self.params_exact(2, &[2.0, 1.0])?;
                self.override_domain(make_helix(p[0], p[1])?)
            }
            CurveType::Salkowski => {
                self.check_dim(3)?;
                let p = self.params_exact(1, &[1.0])?;
                match self.domain {
                    Some([a, b]) => super::analytic::make_salkowski_on(p[0], (a, b)),
                    None => make_salkowski(p[0]),
                }
            }
            CurveType::Wcurve => {
                let dim = self.dim.ok_or_else(|| bad("wcurve needs dim"))?;
                if dim < 2 {
                    return Err(GeomError::DimensionTooSmall(dim));
                }
                let circles = dim / 2;
                let want = 2 * circles + dim % 2;
                if self.params.len() != want {
                    return Err(bad(format!(
                        "wcurve in dimension {dim} takes {want} params (radii, frequencies{}), got {}",
                        if dim % 2 == 1 { ", pitch" } else { "" },
                        self.params.len()
                    )));
                }
                let pitch = if dim % 2 == 1 { self.params[want - 1] } else { 0.0 };
                self.override_domain(make_wcurve(
                    &self.params[..circles],
                    &self.params[circles..2 * circles],
                    pitch,
                    dim,
                )?)
            }
            CurveType::Samples => {
                let rows = self.samples.as_ref().ok_or_else(|| bad("samples spec needs samples"))?;
                let width = rows.first().map_or(0, Vec::len);
                if width < 3 {
                    return Err(bad("sample rows need [t, x_1, ..., x_d] with d >= 2"));
                }
                self.check_dim(width - 1)?;
                let mut params = Vec::with_capacity(rows.len());
                let mut points = Vec::with_capacity(rows.len());
                for (i, r) in rows.iter().enumerate() {
                    if r.len() != width {
                        return Err(bad(format!("sample row {i} has {} entries, expected {width}", r.len())));
                    }
                    params.push(r[0]);
                    points.push(VectorN::new(r[1..].to_vec())?);
                }
                let curve = Curve::new(SampledCurve::new(params, points)?, CurveKind::Sampled)?;
                self.override_domain(curve)
            }
            CurveType::Curvatures => {
                let profile = self.profile()?;
                let dim = profile.order() + 1;
                self.check_dim(dim)?;
                let point = match &self.initial_point {
                    Some(p) => VectorN::new(p.clone())?,
                    None => VectorN::zeros(dim),
                };
                let frame = match &self.initial_frame {
                    Some(rows) => rows
                        .iter()
                        .map(|r| VectorN::new(r.clone()))
                        .collect::<Result<Vec<_>>>()?,
                    None => (0..dim).map(|i| VectorN::unit(dim, i)).collect(),
                };
                let step = self.step.unwrap_or_else(|| default_step(&profile));
                synthesize_from_curvatures(&profile, dim, &point, &frame, step)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(json: &str) -> Result<Curve> {
        let spec: CurveSpec = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
        spec.build()
    }

    #[test]
    fn builds_each_family() {
        assert_eq!(parse(r#"{"type":"circle","params":[2]}"#).unwrap().dim(), 2);
        assert_eq!(parse(r#"{"type":"helix","params":[2,1],"domain":[0,12]}"#).unwrap().domain(), (0.0, 12.0));
        assert_eq!(parse(r#"{"type":"wcurve","dim":5,"params":[1,1,1,2,1]}"#).unwrap().dim(), 5);
        assert_eq!(parse(r#"{"type":"salkowski","params":[1]}"#).unwrap().dim(), 3);
        let c = parse(r#"{"type":"curvatures","params":[0.4,0.2],"domain":[0,3]}"#).unwrap();
        assert_eq!(c.kind(), CurveKind::Synthesized);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_params() {
        assert!(serde_json::from_str::<CurveSpec>(r#"{"type":"circle","radius":2}"#).is_err());
        assert!(parse(r#"{"type":"helix","params":[2]}"#).is_err());
        assert!(parse(r#"{"type":"wcurve","dim":4,"params":[1,1,1,2,1]}"#).is_err());
        assert!(parse(r#"{"type":"circle","dim":3}"#).is_err());
    }

    #[test]
    fn samples_round_trip() {
        let helix = make_helix(2.0, 1.0).unwrap();
        let params = helix.grid(64);
        let points: Vec<VectorN> = params.iter().map(|&t| helix.position(t).unwrap()).collect();
        let spec = CurveSpec::from_samples(&params, &points);
        let text = serde_json::to_string(&spec).unwrap();
        let back = parse(&text).unwrap();
        assert_eq!(back.kind(), CurveKind::Sampled);
        assert!(back.position(params[10]).unwrap().distance(&points[10]) < 1e-15);
    }
}
