use focal_geom::linalg::{gram_schmidt, smallest_eigenpair, solve_linear, symmetric_eigen, SquareMatrix, SymMatrix};
use focal_geom::VectorN;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vectors(max_dim: usize) -> impl Strategy<Value = Vec<VectorN>> {
    (2..=max_dim).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-10.0..10.0_f64, dim), 1..=dim)
            .prop_map(|rows| rows.into_iter().map(|r| VectorN::new(r).unwrap()).collect())
    })
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-1.0..1.0);
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    SymMatrix::new(m)
}

fn residual(m: &SymMatrix, lambda: f64, u: &VectorN) -> f64 {
    let mu = m.matrix().mul_vec(u);
    mu.distance(&u.scale(lambda))
}

#[test]
fn smallest_eigenpair_residual_on_1000_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0_f64;
    for trial in 0..1000 {
        let n = 2 + trial % 7;
        let m = random_symmetric(&mut rng, n);
        let norm = m.matrix().frobenius_norm();
        let (lambda, u) = smallest_eigenpair(&m).unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-12);
        let r = residual(&m, lambda, &u) / norm;
        worst = worst.max(r);
        let all = symmetric_eigen(&m).unwrap();
        assert!(all.values.iter().all(|&v| v >= lambda - 1e-12 * norm));
    }
    assert!(worst < 1e-10, "worst relative residual {worst:.3e}");
}

#[test]
fn solve_round_trip_on_well_conditioned_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..500 {
        let n = 2 + trial % 7;
        let mut a = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let diag = if i == j { n as f64 + 1.0 } else { 0.0 };
                a.set(i, j, rng.gen_range(-1.0..1.0) + diag);
            }
        }
        let b = VectorN::new((0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()).unwrap();
        let x = solve_linear(&a, &b).unwrap();
        let err = a.mul_vec(&x).distance(&b);
        let scale = a.frobenius_norm() * x.norm() + b.norm();
        assert!(err <= 1e-9 * scale, "trial {trial}: {err:.3e}");
    }
}

proptest! {
    #[test]
    fn gram_schmidt_orthogonal_and_span_preserving(vs in vectors(6)) {
        let gs = match gram_schmidt(&vs) {
            Ok(gs) => gs,
            Err(_) => return Err(TestCaseError::reject("dependent input")),
        };
        let o = &gs.orthogonal;
        for i in 0..o.len() {
            prop_assert!((o[i].norm() - gs.norms[i]).abs() <= 1e-12 * gs.norms[i]);
            for j in 0..i {
                prop_assert!(o[i].dot(&o[j]).abs() <= 1e-10 * gs.norms[i] * gs.norms[j]);
            }
        }
        for p in 1..=vs.len() {
            for v in &vs[..p] {
                let mut r = v.clone();
                for q in &o[..p] {
                    r.axpy(-r.dot(q) / q.norm_squared(), q);
                }
                prop_assert!(r.norm() < 1e-10 * v.norm().max(1.0), "prefix {p}: residual {}", r.norm());
            }
        }
    }

    #[test]
    fn eigenpair_residual(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_symmetric(&mut rng, n);
        let (lambda, u) = smallest_eigenpair(&m).unwrap();
        prop_assert!(residual(&m, lambda, &u) < 1e-10 * m.matrix().frobenius_norm());
    }

    #[test]
    fn eigenvalues_of_diagonal_matrices(values in prop::collection::vec(-100.0..100.0_f64, 2..=8)) {
        let m = SymMatrix::diagonal(&values);
        let (lambda, _) = smallest_eigenpair(&m).unwrap();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert_eq!(lambda, min);
    }
}
