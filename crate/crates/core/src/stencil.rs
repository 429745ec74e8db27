//! Finite-difference stencils.

use crate::error::{GeomError, Result};

/// Fornberg's algorithm: weights `w[j][k]` such that
/// `f⁽ᵏ⁾(z) ≈ Σⱼ w[j][k] f(nodes[j])` for `k = 0..=max_order`.
pub fn fornberg_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; max_order + 1]; n];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c
}

/// `n` equally spaced points covering `[a, b]` inclusive.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + h * i as f64 })
                .collect()
        }
    }
}

/// Spacing of a uniform grid, or an error if the grid is not uniform.
pub fn uniform_spacing(grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(GeomError::InvalidGrid("fewer than two points".into()));
    }
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    if !(h > 0.0) {
        return Err(GeomError::InvalidGrid("grid must be strictly increasing".into()));
    }
    for (i, w) in grid.windows(2).enumerate() {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h {
            return Err(GeomError::InvalidGrid(format!(
                "non-uniform spacing at index {i}"
            )));
        }
    }
    Ok(h)
}

/// First derivative of uniformly sampled values, fourth-order accurate.
///
/// Central five-point stencils in the interior and one-sided fourth-order
/// stencils on the two points at each end.
pub fn grid_derivative(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 5 {
        return Err(GeomError::InvalidGrid(format!(
            "need at least 5 points to differentiate, got {n}"
        )));
    }
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2])
            / (12.0 * h);
    }
    let nodes = [0.0, 1.0, 2.0, 3.0, 4.0];
    for (pos, z) in [(0usize, 0.0), (1, 1.0)] {
        let w = fornberg_weights(z, &nodes, 1);
        let head: f64 = (0..5).map(|j| w[j][1] * values[j]).sum();
        let tail: f64 = (0..5).map(|j| w[j][1] * values[n - 1 - j]).sum();
        out[pos] = head / h;
        out[n - 1 - pos] = -tail / h;
    }
    Ok(out)
}
