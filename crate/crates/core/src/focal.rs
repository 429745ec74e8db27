//! Focal curvatures and the focal curve.
//!
//! The focal curve `C = γ + c₁n₁ + … + c_m n_m` collects the centres of the
//! osculating hyperspheres. For a unit-speed curve the focal curvatures obey
//!
//! ```text
//! c₁ = 1/κ₁,   c_{i+1} = (c_i' + κ_i c_{i−1}) / κ_{i+1}   (c₀ = 0),
//! ```
//!
//! and `C' = (c_m' + c_{m−1}κ_m) n_m`. Points where that factor vanishes are
//! vertices: the focal curve is singular there.

use serde::Serialize;

use crate::curve::{Curve, CurveKind, SampledCurve};
use crate::error::{GeomError, Result};
use crate::frenet::frenet_apparatus;
use crate::linalg::{solve_linear, SquareMatrix, VectorN};
use crate::stencil::{grid_derivative, uniform_spacing};

/// `|c_m' + c_{m−1}κ_m|` below this marks a vertex.
pub const VERTEX_TOLERANCE: f64 = 1e-10;
/// Allowed deviation of the speed from 1.
pub const UNIT_SPEED_TOLERANCE: f64 = 1e-6;
pub const MIN_FOCAL_GRID: usize = 64;
/// Grid points at each end left out of tolerance checks (one-sided stencils).
pub const BOUNDARY_EXCLUSION: usize = 3;
/// `|⟨a, b⟩| > 1 − ALIGNMENT_TOLERANCE` counts as aligned.
pub const ALIGNMENT_TOLERANCE: f64 = 1e-6;

fn sign(x: f64) -> i8 {
    if x < 0.0 {
        -1
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FocalData {
    pub s: f64,
    /// `c₁, …, c_m`.
    pub focal_curvatures: Vec<f64>,
    pub focal_point: VectorN,
    /// Focal speed `|c_m' + c_{m−1}κ_m|`.
    #[serde(rename = "A")]
    pub a: f64,
    pub epsilon: i8,
    /// `δ_α = sign((−1)^α ε κ_m)`, `α = 1..m`.
    pub deltas: Vec<i8>,
    /// Radius of the osculating hypersphere, `√Σc_i²`.
    pub radius: f64,
    pub is_vertex: bool,
    /// Curvatures `κ₁..κ_m` of the curve at `s`.
    pub curvatures: Vec<f64>,
    /// Frenet frame `t, n₁, …, n_m` of the curve at `s`.
    #[serde(skip)]
    pub frame: Vec<VectorN>,
    #[serde(skip)]
    pub position: VectorN,
}

fn check_grid(grid: &[f64]) -> Result<f64> {
    if grid.len() < MIN_FOCAL_GRID {
        return Err(GeomError::InvalidGrid(format!(
            "focal curvatures need at least {MIN_FOCAL_GRID} grid points, got {}",
            grid.len()
        )));
    }
    uniform_spacing(grid)
}

/// Focal data of a unit-speed generic curve along a uniform grid.
///
/// `c_i'` is taken by fourth-order finite differences over the grid, so values
/// within [`BOUNDARY_EXCLUSION`] points of either end are less accurate.
pub fn focal_curvatures(c: &Curve, grid: &[f64]) -> Result<Vec<FocalData>> {
    let h = check_grid(grid)?;
    let d = c.dim();
    let m = d - 1;
    let mut frames = Vec::with_capacity(grid.len());
    for &s in grid {
        let f = frenet_apparatus(c, s, d).map_err(|e| match e {
            GeomError::ReducedOrder { s, order } => GeomError::NotGeneric { s, order },
            other => other,
        })?;
        if (f.speed - 1.0).abs() > UNIT_SPEED_TOLERANCE {
            return Err(GeomError::NotUnitSpeed { s, speed: f.speed });
        }
        frames.push(f);
    }
    let table: Vec<Vec<f64>> = frames.iter().map(|f| f.curvatures.clone()).collect();
    let kappa = |i: usize, j: usize| table[j][i - 1];

    // coeffs[i][j] = c_i(s_j), with c₀ ≡ 0 in row 0.
    let n = grid.len();
    let mut coeffs = vec![vec![0.0; n]; m + 1];
    coeffs[1] = (0..n).map(|j| 1.0 / kappa(1, j)).collect();
    for i in 1..m {
        let deriv = grid_derivative(&coeffs[i], h)?;
        coeffs[i + 1] = (0..n)
            .map(|j| (deriv[j] + kappa(i, j) * coeffs[i - 1][j]) / kappa(i + 1, j))
            .collect();
    }
    let last_deriv = grid_derivative(&coeffs[m], h)?;

    let mut out = Vec::with_capacity(n);
    for (j, f) in frames.into_iter().enumerate() {
        let q = last_deriv[j] + coeffs[m - 1][j] * kappa(m, j);
        let epsilon = sign(q);
        let kappa_m = f.curvatures[m - 1];
        let deltas = (1..=m)
            .map(|alpha| {
                let parity = if alpha % 2 == 0 { 1.0 } else { -1.0 };
                sign(parity * f64::from(epsilon) * kappa_m)
            })
            .collect();
        let focal: Vec<f64> = (1..=m).map(|i| coeffs[i][j]).collect();
        let position = c.position(grid[j])?;
        let mut point = position.clone();
        for (ci, ni) in focal.iter().zip(&f.frame[1..]) {
            point.axpy(*ci, ni);
        }
        out.push(FocalData {
            s: grid[j],
            radius: focal.iter().map(|x| x * x).sum::<f64>().sqrt(),
            focal_curvatures: focal,
            focal_point: point,
            a: q.abs(),
            epsilon,
            deltas,
            is_vertex: q.abs() < VERTEX_TOLERANCE,
            curvatures: f.curvatures,
            frame: f.frame,
            position,
        });
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Centre of the osculating hypersphere from the contact conditions
/// `dᵏ/dθᵏ ½‖q − γ(θ)‖² = 0` at `θ = s`, `k = 1..m+1`.
///
/// With `y = q − γ(s)` these read
/// `⟨γ⁽ᵏ⁾, y⟩ = ½ Σ_{j=1}^{k−1} C(k, j) ⟨γ⁽ʲ⁾, γ⁽ᵏ⁻ʲ⁾⟩`, a linear system in
/// `y`. Contact conditions are invariant under reparametrization, so the
/// curve need not be unit speed.
pub fn osculating_center_oracle(c: &Curve, s: f64) -> Result<VectorN> {
    let d = c.dim();
    let g = c.eval_derivatives(s, d)?;
    let mut rows = Vec::with_capacity(d);
    let mut rhs = Vec::with_capacity(d);
    for k in 1..=d {
        let mut b = 0.0;
        for j in 1..k {
            b += 0.5 * binomial(k, j) * g[j].dot(&g[k - j]);
        }
        // Row equilibration: derivative norms grow geometrically with k.
        let scale = g[k].norm();
        if scale == 0.0 {
            return Err(GeomError::SingularSystem { column: k - 1, pivot: 0.0 });
        }
        rows.push(g[k].as_slice().iter().map(|x| x / scale).collect());
        rhs.push(b / scale);
    }
    let y = solve_linear(&SquareMatrix::from_rows(&rows)?, &VectorN::new(rhs)?)?;
    Ok(&g[0] + &y)
}

/// The focal curve as a sampled curve through the focal points.
///
/// Vertices are left out of the samples. A curve whose focal set is a single
/// point (e.g. a circle) has vertices everywhere and is rejected with
/// [`GeomError::RegularityFailure`].
pub fn focal_curve(c: &Curve, grid: &[f64]) -> Result<Curve> {
    let data = focal_curvatures(c, grid)?;
    focal_curve_from_data(&data)
}

pub fn focal_curve_from_data(data: &[FocalData]) -> Result<Curve> {
    let (params, points): (Vec<f64>, Vec<VectorN>) = data
        .iter()
        .filter(|f| !f.is_vertex)
        .map(|f| (f.s, f.focal_point.clone()))
        .unzip();
    if params.len() < MIN_FOCAL_GRID / 2 {
        let worst = data
            .iter()
            .min_by(|x, y| x.a.total_cmp(&y.a))
            .ok_or(GeomError::InsufficientSamples { needed: MIN_FOCAL_GRID, got: 0 })?;
        return Err(GeomError::RegularityFailure {
            t: worst.s,
            speed: worst.a,
        });
    }
    Curve::new(SampledCurve::new(params, points)?, CurveKind::Sampled)
}

/// `c_m' − (R_m²)'/(2c_m) + κ_m c_{m−1}` on the grid, `None` where
/// `|c_m| < floor`. For `m = 1` the term `c₀` is zero.
pub fn last_line_residuals(data: &[FocalData], floor: f64) -> Result<Vec<Option<f64>>> {
    let grid: Vec<f64> = data.iter().map(|f| f.s).collect();
    let h = uniform_spacing(&grid)?;
    let m = data.first().map_or(0, |f| f.focal_curvatures.len());
    if m == 0 {
        return Ok(Vec::new());
    }
    let cm: Vec<f64> = data.iter().map(|f| f.focal_curvatures[m - 1]).collect();
    let r2: Vec<f64> = data.iter().map(|f| f.radius * f.radius).collect();
    let cm_prime = grid_derivative(&cm, h)?;
    let r2_prime = grid_derivative(&r2, h)?;
    Ok(data
        .iter()
        .enumerate()
        .map(|(j, f)| {
            if cm[j].abs() < floor {
                return None;
            }
            let prev = if m >= 2 { f.focal_curvatures[m - 2] } else { 0.0 };
            Some(cm_prime[j] - r2_prime[j] / (2.0 * cm[j]) + f.curvatures[m - 1] * prev)
        })
        .collect())
}

/// Which fixed-sign frame table of the focal curve was observed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignPattern {
    /// `T = n_m, N_α = (−1)^α n_{m−α}` for `α < m`, `N_m = t`.
    Even,
    /// Same as `Even` except `N_m = −t`.
    Odd,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FocalRelations {
    pub m: usize,
    pub points_checked: usize,
    /// `max |K_i − κ_{m−i+1}/A|` over points and `i`.
    pub curvature_residual: f64,
    /// `max |K_i A / κ_{m−i+1} − 1|`.
    pub curvature_relative_residual: f64,
    /// Largest relative pairwise disagreement among `K_i / κ_{m−i+1}`.
    pub chain_spread: f64,
    /// `max ‖T − ε n_m‖`.
    pub tangent_residual: f64,
    /// `max ‖N_α − δ_α n_{m−α}‖` for `α = 1..m`, with `n₀ = t`.
    pub normal_residuals: Vec<f64>,
    /// Smallest `|⟨T, n_m⟩|` over the grid.
    pub tangent_alignment: f64,
    /// Smallest `|⟨N_α, n_{m−α}⟩|` over the grid, `α = 1..m`.
    pub normal_alignment: Vec<f64>,
    /// Points with `ε = +1` and `ε = −1`.
    pub epsilon_counts: (usize, usize),
    /// Points where `N_m = +t` and where `N_m = −t`.
    pub last_normal_counts: (usize, usize),
    pub sign_pattern: SignPattern,
    /// `m` is even and the even table holds, or `m` is odd and the odd table holds.
    pub pattern_matches_parity: bool,
}

/// Compares the focal curve's own Frenet apparatus, computed directly from
/// the sampled focal curve, with the curvatures and frame predicted from `γ`.
///
/// Points within [`BOUNDARY_EXCLUSION`] of either end and vertices are skipped.
pub fn focal_relations_check(c: &Curve, grid: &[f64]) -> Result<FocalRelations> {
    let data = focal_curvatures(c, grid)?;
    let focal = focal_curve_from_data(&data)?;
    let d = c.dim();
    let m = d - 1;
    let interior = data.len().saturating_sub(BOUNDARY_EXCLUSION);
    let mut report = FocalRelations {
        m,
        points_checked: 0,
        curvature_residual: 0.0,
        curvature_relative_residual: 0.0,
        chain_spread: 0.0,
        tangent_residual: 0.0,
        normal_residuals: vec![0.0; m],
        tangent_alignment: 1.0,
        normal_alignment: vec![1.0; m],
        epsilon_counts: (0, 0),
        last_normal_counts: (0, 0),
        sign_pattern: SignPattern::Neither,
        pattern_matches_parity: false,
    };
    let mut even = true;
    let mut odd = true;
    for f in data[BOUNDARY_EXCLUSION.min(interior)..interior].iter().filter(|f| !f.is_vertex) {
        let big = frenet_apparatus(&focal, f.s, d)?;
        report.points_checked += 1;
        let ratios: Vec<f64> = (1..=m).map(|i| big.curvatures[i - 1] / f.curvatures[m - i]).collect();
        for (i, r) in ratios.iter().enumerate() {
            let predicted = f.curvatures[m - 1 - i] / f.a;
            report.curvature_residual = report.curvature_residual.max((big.curvatures[i] - predicted).abs());
            report.curvature_relative_residual = report.curvature_relative_residual.max((r * f.a - 1.0).abs());
        }
        let mean = ratios.iter().sum::<f64>() / m as f64;
        for x in &ratios {
            for y in &ratios {
                report.chain_spread = report.chain_spread.max((x - y).abs() / mean.abs());
            }
        }

        let n = &f.frame;
        let t_big = &big.frame[0];
        report.tangent_residual = report
            .tangent_residual
            .max(t_big.distance(&n[m].scale(f64::from(f.epsilon))));
        let align_t = t_big.dot(&n[m]);
        report.tangent_alignment = report.tangent_alignment.min(align_t.abs());
        even &= align_t > 1.0 - ALIGNMENT_TOLERANCE;
        odd &= align_t > 1.0 - ALIGNMENT_TOLERANCE;
        for alpha in 1..=m {
            let target = &n[m - alpha];
            let big_n = &big.frame[alpha];
            let predicted = target.scale(f64::from(f.deltas[alpha - 1]));
            report.normal_residuals[alpha - 1] = report.normal_residuals[alpha - 1].max(big_n.distance(&predicted));
            let align = big_n.dot(target);
            report.normal_alignment[alpha - 1] = report.normal_alignment[alpha - 1].min(align.abs());
            let fixed = if alpha % 2 == 0 { 1.0 } else { -1.0 };
            if alpha < m {
                even &= fixed * align > 1.0 - ALIGNMENT_TOLERANCE;
                odd &= fixed * align > 1.0 - ALIGNMENT_TOLERANCE;
            } else {
                even &= align > 1.0 - ALIGNMENT_TOLERANCE;
                odd &= align < -(1.0 - ALIGNMENT_TOLERANCE);
                if align >= 0.0 {
                    report.last_normal_counts.0 += 1;
                } else {
                    report.last_normal_counts.1 += 1;
                }
            }
        }
        if f.epsilon > 0 {
            report.epsilon_counts.0 += 1;
        } else {
            report.epsilon_counts.1 += 1;
        }
    }
    if report.points_checked == 0 {
        return Err(GeomError::FocalNotRegular("no regular interior grid points".into()));
    }
    report.sign_pattern = match (even, odd) {
        (true, _) => SignPattern::Even,
        (false, true) => SignPattern::Odd,
        _ => SignPattern::Neither,
    };
    report.pattern_matches_parity = match report.sign_pattern {
        SignPattern::Even => m % 2 == 0,
        SignPattern::Odd => m % 2 == 1,
        SignPattern::Neither => false,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_circle, make_ellipse, make_helix};

    #[test]
    fn circle_focal_point_is_centre() {
        let c = make_circle(2.0).unwrap().reparam_to_arclength().unwrap();
        let data = focal_curvatures(&c, &c.grid(64)).unwrap();
        for f in &data {
            assert!((f.focal_curvatures[0] - 2.0).abs() < 1e-8);
            assert!(f.focal_point.norm() < 1e-8);
            assert!(f.is_vertex || f.a < 1e-6);
        }
        for s in [0.0, 1.0, 5.0] {
            assert!(osculating_center_oracle(&c, s).unwrap().norm() < 1e-8);
        }
        assert!(matches!(
            focal_curve(&c, &c.grid(64)),
            Err(GeomError::RegularityFailure { .. })
        ));
    }

    #[test]
    fn helix_focal_data() {
        let c = make_helix(2.0, 1.0).unwrap().reparam_to_arclength().unwrap();
        let data = focal_curvatures(&c, &c.grid(128)).unwrap();
        for f in &data {
            assert!((f.focal_curvatures[0] - 2.5).abs() < 1e-8);
            assert!(f.focal_curvatures[1].abs() < 1e-6);
            assert!((f.a - 0.5).abs() < 1e-6);
            assert!((f.radius - 2.5).abs() < 1e-8);
            assert!(!f.is_vertex);
        }
        let oracle = osculating_center_oracle(&c, 0.0).unwrap();
        let want = &data[0].position + &data[0].frame[1].scale(2.5);
        assert!(oracle.distance(&want) < 1e-9);
        // Coaxial helix of radius b²/a = 0.5.
        for f in &data {
            let p = f.focal_point.as_slice();
            assert!(((p[0] * p[0] + p[1] * p[1]).sqrt() - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn ellipse_evolute_curvature() {
        let c = make_ellipse(3.0, 1.0).unwrap().with_domain((0.3, 1.3)).unwrap();
        let c = c.reparam_to_arclength().unwrap();
        let report = focal_relations_check(&c, &c.grid(256)).unwrap();
        assert!(report.curvature_relative_residual < 1e-4, "{report:?}");
    }

    #[test]
    fn oracle_rejects_non_generic_point() {
        let line = crate::curve::AnalyticCurve::new(
            vec![
                crate::curve::CoordinateFn::polynomial(vec![0.0, 1.0]),
                crate::curve::CoordinateFn::polynomial(vec![0.0, 0.0, 1.0]),
                crate::curve::CoordinateFn::polynomial(vec![0.0]),
            ],
            (0.0, 1.0),
        )
        .unwrap()
        .into_curve()
        .unwrap();
        assert!(osculating_center_oracle(&line, 0.5).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(4, 0), 1.0);
    }

    #[test]
    fn grid_requirements() {
        let c = make_helix(2.0, 1.0).unwrap();
        assert!(matches!(focal_curvatures(&c, &c.grid(32)), Err(GeomError::InvalidGrid(_))));
        assert!(matches!(focal_curvatures(&c, &c.grid(64)), Err(GeomError::NotUnitSpeed { .. })));
    }
}
