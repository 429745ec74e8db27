//! Truncated Taylor series ("jets") in one variable.
//!
//! A jet of length `n` stores `f(x₀ + h) = Σ_{k<n} c_k h^k`. Arithmetic on jets
//! propagates derivatives exactly (up to rounding), which is how the
//! arc-length reparametrization and the synthesized-curve oracle rebuild
//! high-order derivatives through the chain rule.

use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet(Vec<f64>);

/// `k!` as f64.
pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

impl Jet {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn constant(value: f64, len: usize) -> Self {
        let mut j = Self::zeros(len);
        if len > 0 {
            j.0[0] = value;
        }
        j
    }

    /// Taylor coefficients straight from a list of derivatives `[f, f', f'', …]`.
    pub fn from_derivatives(derivs: &[f64]) -> Self {
        Self(
            derivs
                .iter()
                .enumerate()
                .map(|(k, d)| d / factorial(k))
                .collect(),
        )
    }

    pub fn from_coefficients(coeffs: Vec<f64>) -> Self {
        Self(coeffs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.0.get(k).copied().unwrap_or(0.0)
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative_at_origin(&self, k: usize) -> f64 {
        self.coeff(k) * factorial(k)
    }

    pub fn truncate(mut self, len: usize) -> Self {
        self.0.resize(len, 0.0);
        self
    }

    /// d/dh; the result is one coefficient shorter.
    pub fn differentiate(&self) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    /// Antiderivative vanishing at h = 0; the result is one coefficient longer.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(0.0);
        out.extend(self.0.iter().enumerate().map(|(k, c)| c / (k + 1) as f64));
        Self(out)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self(self.0.iter().map(|c| c * alpha).collect())
    }

    pub fn sqrt(&self) -> Self {
        let n = self.0.len();
        let mut out = vec![0.0; n];
        if n == 0 {
            return Self(out);
        }
        out[0] = self.0[0].sqrt();
        for k in 1..n {
            let mut acc = self.0[k];
            for j in 1..k {
                acc -= out[j] * out[k - j];
            }
            out[k] = acc / (2.0 * out[0]);
        }
        Self(out)
    }

    pub fn recip(&self) -> Self {
        let n = self.0.len();
        let mut out = vec![0.0; n];
        if n == 0 {
            return Self(out);
        }
        out[0] = 1.0 / self.0[0];
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += self.0.get(j).copied().unwrap_or(0.0) * out[k - j];
            }
            out[k] = -acc / self.0[0];
        }
        Self(out)
    }

    /// `self ∘ inner` where `inner(0) = 0`, truncated to `len` coefficients.
    pub fn compose(&self, inner: &Jet, len: usize) -> Self {
        debug_assert!(inner.coeff(0) == 0.0, "inner jet must vanish at origin");
        let inner = inner.clone().truncate(len);
        let mut result = Self::zeros(len);
        let mut power = Self::constant(1.0, len);
        for (k, &c) in self.0.iter().enumerate() {
            if k >= len && k > 0 {
                break;
            }
            if c != 0.0 {
                for (r, p) in result.0.iter_mut().zip(&power.0) {
                    *r += c * p;
                }
            }
            power = &power * &inner;
        }
        result
    }

    /// Series reversion: for `self(0) = 0`, `self'(0) ≠ 0`, returns `g` with
    /// `self(g(x)) = x + O(x^len)`.
    pub fn revert(&self, len: usize) -> Self {
        let a1 = self.coeff(1);
        let mut g = Self::zeros(len);
        if len > 1 {
            g.0[1] = 1.0 / a1;
        }
        for k in 2..len {
            let comp = self.compose(&g, k + 1);
            g.0[k] -= comp.coeff(k) / a1;
        }
        g
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let n = self.len().max(rhs.len());
        Jet((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let n = self.len().max(rhs.len());
        Jet((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

/// Cauchy product truncated to the shorter operand's length.
impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.len().min(rhs.len());
        let mut out = vec![0.0; n];
        for (i, a) in self.0.iter().take(n).enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.0.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Jet(out)
    }
}
