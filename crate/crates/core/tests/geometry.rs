use focal_geom::curve::{make_circle, make_ellipse, make_helix, make_salkowski, make_wcurve, AnalyticCurve, CoordinateFn};
use focal_geom::focal::{focal_curvatures, focal_relations_check, osculating_center_oracle, BOUNDARY_EXCLUSION};
use focal_geom::frenet::{frame_table, frenet_apparatus, frenet_equation_residual, interior_grid};
use focal_geom::linalg::orthonormality_defect;
use focal_geom::slant::{
    axis_angle, coefficient_residuals, focal_slant_index, is_k_slant, slant_reports, verify_focal_slant,
    TheoremCase, VerifyOptions, ANALYTIC_SLANT_TOLERANCE,
};
use focal_geom::{Curve, VectorN};
use proptest::prelude::*;

fn builtins() -> Vec<(&'static str, Curve)> {
    vec![
        ("circle", make_circle(2.0).unwrap()),
        ("ellipse", make_ellipse(3.0, 1.0).unwrap()),
        ("helix", make_helix(2.0, 1.0).unwrap()),
        ("wcurve4", make_wcurve(&[1.0, 1.0], &[1.0, 2.0], 0.0, 4).unwrap()),
        ("wcurve5", make_wcurve(&[1.0, 1.0], &[1.0, 2.0], 1.0, 5).unwrap()),
        ("salkowski", make_salkowski(1.0).unwrap()),
    ]
}

/// `(cos t, sin t, ½cos 2t, ½sin 2t + t/5)`, generic in E⁴ on `[0.2, 1.4]`.
fn generic_e4() -> Curve {
    AnalyticCurve::new(
        vec![
            CoordinateFn::cos(1.0, 1.0),
            CoordinateFn::sin(1.0, 1.0),
            CoordinateFn::cos(0.5, 2.0),
            CoordinateFn::sin(0.5, 2.0).with_polynomial(vec![0.0, 0.2]),
        ],
        (0.2, 1.4),
    )
    .unwrap()
    .into_curve()
    .unwrap()
}

fn unit(c: &Curve) -> Curve {
    c.reparam_to_arclength().unwrap()
}

fn interior(grid: &[f64]) -> &[f64] {
    &grid[BOUNDARY_EXCLUSION..grid.len() - BOUNDARY_EXCLUSION]
}

#[test]
fn frames_are_orthonormal() {
    for (name, c) in builtins().into_iter().chain([("generic4", generic_e4())]) {
        let frames = frame_table(&c, &c.grid(512), c.dim()).unwrap();
        let worst = frames.iter().map(|f| orthonormality_defect(&f.frame)).fold(0.0, f64::max);
        assert!(worst < 1e-8, "{name}: defect {worst:.3e}");
    }
}

#[test]
fn frenet_equations_hold_along_unit_speed_curves() {
    for (name, c) in builtins().into_iter().chain([("generic4", generic_e4())]) {
        let u = unit(&c);
        let h = 1e-3;
        let worst = interior_grid(&u, 64, h)
            .iter()
            .map(|&s| frenet_equation_residual(&u, s, h).unwrap())
            .fold(0.0, f64::max);
        assert!(worst < 1e-5, "{name}: residual {worst:.3e}");
    }
}

#[test]
fn curvatures_are_parametrization_invariant() {
    for (name, c) in builtins().into_iter().chain([("generic4", generic_e4())]) {
        let u = unit(&c);
        let (a, _) = c.domain();
        for &t in &c.grid(33) {
            let s = c.arc_length(a, t).unwrap().min(u.domain().1);
            let k_t = frenet_apparatus(&c, t, c.dim()).unwrap().curvatures;
            let k_s = frenet_apparatus(&u, s, c.dim()).unwrap().curvatures;
            for (x, y) in k_t.iter().zip(&k_s) {
                assert!((x - y).abs() < 1e-7, "{name} at t = {t}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn focal_recursion_matches_osculating_centre_oracle() {
    for (name, c) in builtins().into_iter().chain([("generic4", generic_e4())]) {
        let u = unit(&c);
        let data = focal_curvatures(&u, &u.grid(256)).unwrap();
        for f in interior(&data.iter().map(|f| f.s).collect::<Vec<_>>()).iter().zip(&data[BOUNDARY_EXCLUSION..]) {
            let (s, fd) = f;
            let oracle = osculating_center_oracle(&u, *s).unwrap();
            let dist = fd.focal_point.distance(&oracle);
            assert!(dist < 1e-6, "{name} at s = {s}: {dist:.3e}");
        }
    }
}

#[test]
fn radius_matches_distance_to_focal_point() {
    for (name, c) in builtins().into_iter().chain([("generic4", generic_e4())]) {
        let u = unit(&c);
        for f in focal_curvatures(&u, &u.grid(128)).unwrap() {
            let r2 = f.radius * f.radius;
            let rel = (r2 - f.focal_point.distance(&f.position).powi(2)).abs() / r2;
            assert!(rel < 1e-8, "{name} at s = {}: {rel:.3e}", f.s);
        }
    }
}

/// The focal curvatures come from sampled focal-curve derivatives. 512 points
/// balance truncation against rounding for the short Salkowski arc.
#[test]
fn focal_curvature_chain_agrees() {
    let curves = [
        ("helix", make_helix(2.0, 1.0).unwrap()),
        ("wcurve5", make_wcurve(&[1.0, 1.0], &[1.0, 2.0], 1.0, 5).unwrap()),
        ("salkowski", make_salkowski(1.0).unwrap()),
        ("generic4", generic_e4()),
    ];
    for (name, c) in curves {
        let u = unit(&c);
        let rel = focal_relations_check(&u, &u.grid(512)).unwrap();
        assert!(rel.chain_spread < 1e-4, "{name}: chain spread {:.3e}", rel.chain_spread);
        assert!(rel.pattern_matches_parity, "{name}: {:?}", rel.sign_pattern);
    }
}

#[test]
fn detector_recovers_known_axes() {
    let helix = unit(&make_helix(2.0, 1.0).unwrap());
    let w5 = unit(&make_wcurve(&[1.0, 1.0], &[1.0, 2.0], 1.0, 5).unwrap());
    let cases = [(&helix, 1, VectorN::unit(3, 2)), (&helix, 3, VectorN::unit(3, 2)), (&w5, 1, VectorN::unit(5, 4))];
    for (c, k, axis) in cases {
        let r = is_k_slant(c, k, &c.grid(256), ANALYTIC_SLANT_TOLERANCE).unwrap();
        let angle = axis_angle(&r.axis, &axis);
        assert!(angle < 1e-6, "k = {k}: axis angle {angle:.3e}");
        assert!(r.deviation < 1e-7, "k = {k}: deviation {:.3e}", r.deviation);
        assert!(r.is_slant);
    }
}

/// `a_j'` is a fourth-order grid difference; 1024 points keep its truncation
/// error on the Salkowski curve (2.4e-5 at 256 points) below the bound.
#[test]
fn slant_axis_has_small_coefficient_residuals() {
    let curves = [
        unit(&make_helix(2.0, 1.0).unwrap()),
        unit(&make_wcurve(&[1.0, 1.0], &[1.0, 2.0], 1.0, 5).unwrap()),
        unit(&make_salkowski(1.0).unwrap()),
    ];
    for c in &curves {
        let grid = c.grid(1024);
        for r in slant_reports(c, &grid, ANALYTIC_SLANT_TOLERANCE).unwrap() {
            if r.is_slant {
                let res = coefficient_residuals(c, &r.axis, &grid).unwrap();
                assert!(res.sup_norm < 10.0 * ANALYTIC_SLANT_TOLERANCE, "k = {}: {:.3e}", r.k, res.sup_norm);
            }
        }
    }
}

#[test]
fn focal_of_every_builtin_slant_helix_is_slant() {
    let curves = [
        ("helix", unit(&make_helix(2.0, 1.0).unwrap())),
        ("wcurve5", unit(&make_wcurve(&[1.0, 1.0], &[1.0, 2.0], 1.0, 5).unwrap())),
        ("salkowski", unit(&make_salkowski(1.0).unwrap())),
    ];
    let options = VerifyOptions::default();
    for (name, c) in &curves {
        let grid = c.grid(256);
        let slant: Vec<usize> = slant_reports(c, &grid, options.source_tolerance)
            .unwrap()
            .into_iter()
            .filter(|r| r.is_slant)
            .map(|r| r.k)
            .collect();
        assert!(!slant.is_empty(), "{name}");
        for k in slant {
            let report = verify_focal_slant(c, k, &grid, &options).unwrap();
            assert!(
                report.passed && report.focal.deviation < 1e-4,
                "{name} k = {k} -> {}: deviation {:.3e}, axis angle {:.3e}",
                report.focal_k,
                report.focal.deviation,
                report.axis_angle
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn helix_focal_slant_for_random_shapes(a in 0.5..3.0_f64, b in 0.2..2.0_f64) {
        let c = unit(&make_helix(a, b).unwrap());
        let grid = c.grid(256);
        for k in [1, 3] {
            let report = verify_focal_slant(&c, k, &grid, &VerifyOptions::default()).unwrap();
            prop_assert!(report.passed, "a = {a}, b = {b}, k = {k}: {report:?}");
        }
    }

    #[test]
    fn index_map_is_an_involution_in_case_iii(m in 2usize..=12, j in 0usize..11) {
        let k = 2 + j % (m - 1);
        let (fk, case) = focal_slant_index(k, m).unwrap();
        prop_assert_eq!(case, TheoremCase::III);
        prop_assert_eq!(focal_slant_index(fk, m).unwrap().0, k);
    }
}
