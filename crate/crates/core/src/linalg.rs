//! Small dense linear algebra in arbitrary dimension.
//!
//! Everything here is sized for the ambient spaces the curve code works in
//! (dimension 2 to roughly 8): vectors are plain heap slices, matrices are
//! row-major `Vec<f64>`, and the algorithms favour robustness over speed.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Relative rank tolerance used by [`gram_schmidt`].
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Sweep budget for the cyclic Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Pivot threshold for [`solve_linear`], relative to the Frobenius norm of `A`.
pub const PIVOT_TOLERANCE: f64 = 1e-13;

/// A point or direction in Euclidean space of dimension at least 2.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorN(Vec<f64>);

impl VectorN {
    /// Builds a vector, rejecting dimension < 2 and non-finite components.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(GeomError::DimensionTooSmall(components.len()));
        }
        if components.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite("vector components"));
        }
        Ok(Self(components))
    }

    pub(crate) fn from_vec_unchecked(components: Vec<f64>) -> Self {
        Self(components)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    /// The `index`-th standard basis vector (0-based).
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[index] = 1.0;
        Self(v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// `self += alpha * x`
    #[inline]
    pub fn axpy(&mut self, alpha: f64, x: &Self) {
        debug_assert_eq!(self.dim(), x.dim());
        for (a, b) in self.0.iter_mut().zip(&x.0) {
            *a += alpha * b;
        }
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self(self.0.iter().map(|c| c * alpha).collect())
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale(1.0 / n))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(GeomError::DimensionMismatch {
                expected,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for VectorN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl Index<usize> for VectorN {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &VectorN {
    type Output = VectorN;
    fn add(self, rhs: &VectorN) -> VectorN {
        VectorN(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &VectorN {
    type Output = VectorN;
    fn sub(self, rhs: &VectorN) -> VectorN {
        VectorN(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for VectorN {
    type Output = VectorN;
    fn add(self, rhs: VectorN) -> VectorN {
        &self + &rhs
    }
}

impl Sub for VectorN {
    type Output = VectorN;
    fn sub(self, rhs: VectorN) -> VectorN {
        &self - &rhs
    }
}

impl AddAssign<&VectorN> for VectorN {
    fn add_assign(&mut self, rhs: &VectorN) {
        self.axpy(1.0, rhs);
    }
}

impl SubAssign<&VectorN> for VectorN {
    fn sub_assign(&mut self, rhs: &VectorN) {
        self.axpy(-1.0, rhs);
    }
}

impl Mul<f64> for &VectorN {
    type Output = VectorN;
    fn mul(self, rhs: f64) -> VectorN {
        self.scale(rhs)
    }
}

impl Mul<f64> for VectorN {
    type Output = VectorN;
    fn mul(self, rhs: f64) -> VectorN {
        self.scale(rhs)
    }
}

impl Neg for &VectorN {
    type Output = VectorN;
    fn neg(self) -> VectorN {
        self.scale(-1.0)
    }
}

impl Neg for VectorN {
    type Output = VectorN;
    fn neg(self) -> VectorN {
        self.scale(-1.0)
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GeomError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite("matrix entries"));
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &VectorN) -> VectorN {
        let n = self.n;
        VectorN::from_vec_unchecked(
            (0..n)
                .map(|i| (0..n).map(|j| self.get(i, j) * x[j]).sum())
                .collect(),
        )
    }
}

/// Symmetric matrix; symmetry is enforced at construction by averaging.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix(SquareMatrix);

impl SymMatrix {
    pub fn new(m: SquareMatrix) -> Self {
        let n = m.size();
        let mut s = m;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (s.get(i, j) + s.get(j, i));
                s.set(i, j, avg);
                s.set(j, i, avg);
            }
        }
        Self(s)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        SquareMatrix::from_rows(rows).map(Self::new)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = SquareMatrix::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        Self(m)
    }

    /// Mean-centred sample covariance `1/N Σ (x - x̄)(x - x̄)ᵀ`.
    ///
    /// Samples are accumulated in input order.
    pub fn covariance(samples: &[VectorN]) -> Result<Self> {
        let first = samples.first().ok_or(GeomError::InsufficientSamples {
            needed: 1,
            got: 0,
        })?;
        let n = first.dim();
        for s in samples {
            s.check_dim(n)?;
        }
        let count = samples.len() as f64;
        let mut mean = VectorN::zeros(n);
        for s in samples {
            mean += s;
        }
        let mean = mean.scale(1.0 / count);
        let mut cov = SquareMatrix::zeros(n);
        for s in samples {
            let d = s - &mean;
            for i in 0..n {
                for j in i..n {
                    let v = cov.get(i, j) + d[i] * d[j];
                    cov.set(i, j, v);
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let v = cov.get(i, j) / count;
                cov.set(i, j, v);
                cov.set(j, i, v);
            }
        }
        Ok(Self(cov))
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }
}

/// Output of [`gram_schmidt`]: mutually orthogonal, *unnormalized* vectors and their norms.
#[derive(Clone, Debug)]
pub struct GramSchmidt {
    pub orthogonal: Vec<VectorN>,
    pub norms: Vec<f64>,
}

/// Modified Gram–Schmidt without normalization.
///
/// `orthogonal[i]` is the component of `vectors[i]` orthogonal to the span of
/// the earlier inputs. Each vector is re-projected twice against the already
/// accepted directions, which keeps orthogonality at rounding level even for
/// the strongly graded derivative stacks of high-order curves.
///
/// Vector `α` (1-based) is rejected with [`GeomError::DegenerateFlag`] when its
/// orthogonal part has norm below `RANK_TOLERANCE * ‖v₁‖^α`.
pub fn gram_schmidt(vectors: &[VectorN]) -> Result<GramSchmidt> {
    let Some(first) = vectors.first() else {
        return Ok(GramSchmidt {
            orthogonal: Vec::new(),
            norms: Vec::new(),
        });
    };
    let dim = first.dim();
    if vectors.len() > dim {
        return Err(GeomError::TooManyVectors {
            count: vectors.len(),
            dim,
        });
    }
    let mut orthogonal: Vec<VectorN> = Vec::with_capacity(vectors.len());
    let mut norms = Vec::with_capacity(vectors.len());
    let mut scale = 0.0;
    for (idx, v) in vectors.iter().enumerate() {
        v.check_dim(dim)?;
        if !v.is_finite() {
            return Err(GeomError::NonFinite("gram_schmidt input"));
        }
        let mut w = v.clone();
        for _pass in 0..2 {
            for u in &orthogonal {
                let coeff = w.dot(u) / u.norm_squared();
                w.axpy(-coeff, u);
            }
        }
        let norm = w.norm();
        if idx == 0 {
            scale = norm;
        }
        let alpha = idx as i32 + 1;
        let tolerance = RANK_TOLERANCE * scale.powi(alpha);
        if norm == 0.0 || !(norm >= tolerance) {
            return Err(GeomError::DegenerateFlag {
                index: idx + 1,
                norm,
                tolerance,
            });
        }
        orthogonal.push(w);
        norms.push(norm);
    }
    Ok(GramSchmidt { orthogonal, norms })
}

/// Orthonormalizes a full set of vectors in place (modified Gram–Schmidt).
///
/// Returns the largest deviation `|⟨eᵢ, eⱼ⟩ − δᵢⱼ|` of the input, measured before
/// the correction.
pub(crate) fn reorthonormalize(frame: &mut [VectorN]) -> f64 {
    let drift = orthonormality_defect(frame);
    for i in 0..frame.len() {
        for j in 0..i {
            let (head, tail) = frame.split_at_mut(i);
            let c = tail[0].dot(&head[j]);
            tail[0].axpy(-c, &head[j]);
        }
        let n = frame[i].norm();
        frame[i] = frame[i].scale(1.0 / n);
    }
    drift
}

/// `max |⟨eᵢ, eⱼ⟩ − δᵢⱼ|` over all pairs.
pub fn orthonormality_defect(frame: &[VectorN]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..frame.len() {
        for j in i..frame.len() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((frame[i].dot(&frame[j]) - target).abs());
        }
    }
    worst
}

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// Unit eigenvectors, `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<VectorN>,
}

/// Cyclic Jacobi rotations.
pub fn symmetric_eigen(m: &SymMatrix) -> Result<SymmetricEigen> {
    let n = m.size();
    let mut a = m.matrix().clone();
    if a.data.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite("symmetric matrix"));
    }
    let mut v = SquareMatrix::identity(n);
    let frob = a.frobenius_norm();
    let off_norm = |a: &SquareMatrix| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                s += a.get(p, q) * a.get(p, q);
            }
        }
        s.sqrt()
    };

    let mut converged = frob == 0.0 || off_norm(&a) <= 1e-15 * frob;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(GeomError::ConvergenceFailure {
                sweeps,
                off_norm: off_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
        converged = off_norm(&a) <= 1e-15 * frob;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = order
        .iter()
        .map(|&j| VectorN::from_vec_unchecked((0..n).map(|k| v.get(k, j)).collect()))
        .collect();
    Ok(SymmetricEigen { values, vectors })
}

/// Eigenpair with the smallest eigenvalue; the eigenvector has unit norm.
pub fn smallest_eigenpair(m: &SymMatrix) -> Result<(f64, VectorN)> {
    let eig = symmetric_eigen(m)?;
    let value = eig.values[0];
    let vector = eig.vectors.into_iter().next().expect("non-empty matrix");
    Ok((value, vector))
}

/// Gaussian elimination with partial pivoting.
pub fn solve_linear(a: &SquareMatrix, b: &VectorN) -> Result<VectorN> {
    let n = a.size();
    b.check_dim(n)?;
    let norm = a.frobenius_norm();
    let mut m = a.data.clone();
    let mut rhs = b.as_slice().to_vec();
    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, m[r * n + col]))
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
            .expect("non-empty column");
        if !(pivot.abs() >= PIVOT_TOLERANCE * norm) || pivot == 0.0 {
            return Err(GeomError::SingularSystem { column: col, pivot });
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            rhs.swap(col, pivot_row);
        }
        for r in (col + 1)..n {
            let factor = m[r * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                m[r * n + k] -= factor * m[col * n + k];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in (row + 1)..n {
            acc -= m[row * n + k] * x[k];
        }
        x[row] = acc / m[row * n + row];
    }
    VectorN::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> VectorN {
        VectorN::new(c.to_vec()).unwrap()
    }

    fn assert_vec_close(a: &VectorN, b: &[f64], tol: f64) {
        assert_eq!(a.dim(), b.len());
        for i in 0..b.len() {
            assert!((a[i] - b[i]).abs() < tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn vector_rejects_bad_input() {
        assert!(matches!(
            VectorN::new(vec![1.0]),
            Err(GeomError::DimensionTooSmall(1))
        ));
        assert!(VectorN::new(vec![1.0, f64::NAN]).is_err());
        assert!(VectorN::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn gram_schmidt_orthonormal_input() {
        let gs = gram_schmidt(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        assert_vec_close(&gs.orthogonal[0], &[1.0, 0.0], 1e-15);
        assert_vec_close(&gs.orthogonal[1], &[0.0, 1.0], 1e-15);
        assert_eq!(gs.norms, vec![1.0, 1.0]);
    }

    #[test]
    fn gram_schmidt_removes_projection() {
        let gs = gram_schmidt(&[v(&[1.0, 0.0]), v(&[1.0, 1.0])]).unwrap();
        assert_vec_close(&gs.orthogonal[1], &[0.0, 1.0], 1e-15);
        assert_eq!(gs.norms, vec![1.0, 1.0]);
    }

    #[test]
    fn gram_schmidt_keeps_norms_unnormalized() {
        let gs = gram_schmidt(&[
            v(&[2.0, 0.0, 0.0]),
            v(&[2.0, 3.0, 0.0]),
            v(&[1.0, 1.0, 5.0]),
        ])
        .unwrap();
        assert_vec_close(&gs.orthogonal[0], &[2.0, 0.0, 0.0], 1e-14);
        assert_vec_close(&gs.orthogonal[1], &[0.0, 3.0, 0.0], 1e-14);
        assert_vec_close(&gs.orthogonal[2], &[0.0, 0.0, 5.0], 1e-14);
        for (got, want) in gs.norms.iter().zip([2.0, 3.0, 5.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn gram_schmidt_flags_dependent_vector() {
        let err = gram_schmidt(&[v(&[1.0, 2.0, 0.0]), v(&[2.0, 4.0, 0.0])]).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateFlag { index: 2, .. }));
    }

    #[test]
    fn gram_schmidt_tolerance_scales_with_first_norm() {
        // ‖v₁‖ = 100, so the second vector needs ‖v₂‖ ≥ 1e-8 · 100² = 1e-4
        let err = gram_schmidt(&[v(&[100.0, 0.0]), v(&[0.0, 5e-5])]).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateFlag { index: 2, .. }));
        assert!(gram_schmidt(&[v(&[100.0, 0.0]), v(&[0.0, 2e-4])]).is_ok());
    }

    #[test]
    fn gram_schmidt_rejects_excess_vectors() {
        let err = gram_schmidt(&[v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])]).unwrap_err();
        assert!(matches!(err, GeomError::TooManyVectors { .. }));
    }

    #[test]
    fn eigen_identity() {
        let (lambda, u) = smallest_eigenpair(&SymMatrix::new(SquareMatrix::identity(3))).unwrap();
        assert!((lambda - 1.0).abs() < 1e-15);
        assert!((u.norm() - 1.0).abs() < 1e-15);
        let m = SquareMatrix::identity(3);
        assert!((&m.mul_vec(&u) - &u.scale(lambda)).norm() < 1e-14);
    }

    #[test]
    fn eigen_diagonal() {
        let (lambda, u) = smallest_eigenpair(&SymMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert!((lambda - 1.0).abs() < 1e-15);
        assert!((u[1].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eigen_covariance_nullspace() {
        // Centring {e1, e2} leaves rank one; the symmetric set keeps rank two.
        let cov = SymMatrix::covariance(&[
            v(&[1.0, 0.0, 0.0]),
            v(&[0.0, 1.0, 0.0]),
            v(&[-1.0, 0.0, 0.0]),
            v(&[0.0, -1.0, 0.0]),
        ])
        .unwrap();
        let (lambda, u) = smallest_eigenpair(&cov).unwrap();
        assert!(lambda.abs() < 1e-15);
        assert!((u[2].abs() - 1.0).abs() < 1e-12);

        let cov = SymMatrix::covariance(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])]).unwrap();
        let (lambda, u) = smallest_eigenpair(&cov).unwrap();
        assert!(lambda.abs() < 1e-15);
        assert!((u[0] - u[1]).abs() < 1e-12 && (u.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_values_sorted_and_orthonormal() {
        let m = SymMatrix::from_rows(&[
            vec![4.0, 1.0, -2.0, 2.0],
            vec![1.0, 2.0, 0.0, 1.0],
            vec![-2.0, 0.0, 3.0, -2.0],
            vec![2.0, 1.0, -2.0, -1.0],
        ])
        .unwrap();
        let eig = symmetric_eigen(&m).unwrap();
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(orthonormality_defect(&eig.vectors) < 1e-13);
        let trace: f64 = eig.values.iter().sum();
        assert!((trace - 8.0).abs() < 1e-12);
    }

    #[test]
    fn solve_identity() {
        let x = solve_linear(&SquareMatrix::identity(2), &v(&[4.0, 5.0])).unwrap();
        assert_vec_close(&x, &[4.0, 5.0], 1e-15);
    }

    #[test]
    fn solve_diagonal() {
        let a = SquareMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let x = solve_linear(&a, &v(&[2.0, 8.0])).unwrap();
        assert_vec_close(&x, &[1.0, 2.0], 1e-15);
    }

    #[test]
    fn solve_two_by_two() {
        let a = SquareMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        let x = solve_linear(&a, &v(&[3.0, 1.0])).unwrap();
        assert_vec_close(&x, &[2.0, 1.0], 1e-15);
    }

    #[test]
    fn solve_detects_singular() {
        let a = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(
            solve_linear(&a, &v(&[1.0, 1.0])),
            Err(GeomError::SingularSystem { .. })
        ));
    }

    #[test]
    fn solve_needs_pivoting() {
        let a = SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let x = solve_linear(&a, &v(&[7.0, 3.0])).unwrap();
        assert_vec_close(&x, &[3.0, 7.0], 1e-15);
    }
}
