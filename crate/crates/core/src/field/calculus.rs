use super::{FieldError, Grid, GridFunction};
use ndarray::Array2;

/// Weight of the L2 term in the weighted Sobolev norm
/// mu * |f|_L2^2 + |grad f|_L2^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevWeight {
    mu: f64,
}

impl SobolevWeight {
    pub fn new(mu: f64) -> Result<Self, FieldError> {
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(FieldError::Config(format!("mu must be >= 0, got {mu}")));
        }
        Ok(Self { mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// First-derivative matrix on a uniform axis: second-order central stencil at
/// interior nodes, one-sided second-order at the two boundary nodes.
pub(crate) fn derivative_matrix_1d(n: usize, h: f64) -> Array2<f64> {
    let mut d = Array2::<f64>::zeros((n, n));
    let inv2h = 1.0 / (2.0 * h);
    d[[0, 0]] = -3.0 * inv2h;
    d[[0, 1]] = 4.0 * inv2h;
    d[[0, 2]] = -inv2h;
    for i in 1..n - 1 {
        d[[i, i - 1]] = -inv2h;
        d[[i, i + 1]] = inv2h;
    }
    d[[n - 1, n - 1]] = 3.0 * inv2h;
    d[[n - 1, n - 2]] = -4.0 * inv2h;
    d[[n - 1, n - 3]] = inv2h;
    d
}

/// Second-derivative matrix on a uniform axis: three-point stencil with
/// Neumann ghost reflection (f_{-1} = f_1) at the boundary nodes.
pub(crate) fn laplacian_matrix_1d(n: usize, h: f64) -> Array2<f64> {
    let mut d = Array2::<f64>::zeros((n, n));
    let invh2 = 1.0 / (h * h);
    d[[0, 0]] = -2.0 * invh2;
    d[[0, 1]] = 2.0 * invh2;
    for i in 1..n - 1 {
        d[[i, i - 1]] = invh2;
        d[[i, i]] = -2.0 * invh2;
        d[[i, i + 1]] = invh2;
    }
    d[[n - 1, n - 1]] = -2.0 * invh2;
    d[[n - 1, n - 2]] = 2.0 * invh2;
    d
}

/// Applies a 1-D operator matrix along one axis of a nodewise value array.
pub(crate) fn apply_axis_matrix(
    grid: &Grid,
    values: &Array2<f64>,
    axis: usize,
    op: &Array2<f64>,
) -> Array2<f64> {
    let strides = grid.strides();
    let n = grid.resolution()[axis];
    let stride = strides[axis];
    let block = stride * n;
    let total = grid.num_nodes();
    let channels = values.ncols();
    let mut out = Array2::<f64>::zeros((total, channels));
    let mut line = vec![0.0; n];
    for c in 0..channels {
        for outer in 0..total / block {
            for inner in 0..stride {
                let base = outer * block + inner;
                for k in 0..n {
                    line[k] = values[[base + k * stride, c]];
                }
                for k in 0..n {
                    let mut acc = 0.0;
                    for j in 0..n {
                        acc += op[[k, j]] * line[j];
                    }
                    out[[base + k * stride, c]] = acc;
                }
            }
        }
    }
    out
}

/// Discrete gradient. The output has `channels * dim` components laid out as
/// channel-major: component `c * dim + a` holds the derivative of channel `c`
/// along axis `a`.
pub fn gradient(f: &GridFunction) -> Result<GridFunction, FieldError> {
    let grid = f.grid().clone();
    let dim = grid.dim();
    let channels = f.channels();
    for a in 0..dim {
        if grid.resolution()[a] < 3 {
            return Err(FieldError::Config(format!(
                "gradient requires >= 3 nodes on axis {a}"
            )));
        }
    }
    let mut out = Array2::<f64>::zeros((grid.num_nodes(), channels * dim));
    for a in 0..dim {
        let h = grid.axis_spacing(a)?;
        let d = derivative_matrix_1d(grid.resolution()[a], h);
        let da = apply_axis_matrix(&grid, f.values(), a, &d);
        for i in 0..grid.num_nodes() {
            for c in 0..channels {
                out[[i, c * dim + a]] = da[[i, c]];
            }
        }
    }
    GridFunction::new(grid, out)
}

/// Discrete Laplacian: sum of per-axis second differences with Neumann ghost
/// reflection at the boundary.
pub fn laplacian(f: &GridFunction) -> Result<GridFunction, FieldError> {
    let grid = f.grid().clone();
    let mut acc = Array2::<f64>::zeros((grid.num_nodes(), f.channels()));
    for a in 0..grid.dim() {
        let h = grid.axis_spacing(a)?;
        let d = laplacian_matrix_1d(grid.resolution()[a], h);
        acc = acc + apply_axis_matrix(&grid, f.values(), a, &d);
    }
    GridFunction::new(grid, acc)
}

/// Weighted Sobolev norm squared: mu * |f|^2 + |grad f|^2 under the grid
/// quadrature.
pub fn sobolev_mu_norm_sq(f: &GridFunction, w: SobolevWeight) -> Result<f64, FieldError> {
    let g = gradient(f)?;
    let l2 = super::inner_l2(f, f)?;
    let seminorm = super::inner_l2(&g, &g)?;
    Ok(w.mu() * l2 + seminorm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{inner_l2, GridKind};
    use std::f64::consts::PI;

    #[test]
    fn gradient_of_constant_is_zero() {
        let g = Grid::build(&[[0.0, 1.0], [0.0, 1.0]], &[7, 7], GridKind::Free).unwrap();
        let f = GridFunction::constant(g, 2, 3.5);
        let df = gradient(&f).unwrap();
        assert!(df.max_abs() < 1e-13);
    }

    #[test]
    fn gradient_exact_on_affine() {
        let g = Grid::build(&[[0.0, 1.0]], &[11], GridKind::Free).unwrap();
        let f = GridFunction::from_fn(g, 1, |x, _| x[0]);
        let df = gradient(&f).unwrap();
        for v in df.values().iter() {
            assert!((v - 1.0).abs() < 1e-12, "got {v}");
        }
    }

    #[test]
    fn gradient_exact_on_quadratic() {
        let g = Grid::build(&[[0.0, 1.0]], &[11], GridKind::Free).unwrap();
        let f = GridFunction::from_fn(g.clone(), 1, |x, _| x[0] * x[0]);
        let df = gradient(&f).unwrap();
        // interior node x = 0.5 has flat index 5
        assert!((df.values()[[5, 0]] - 1.0).abs() < 1e-12);
        // one-sided boundary value at x = 0 is exact for quadratics
        assert!(df.values()[[0, 0]].abs() < 1e-12);
    }

    #[test]
    fn laplacian_of_constant_is_zero() {
        let g = Grid::build(&[[0.0, 1.0], [0.0, 2.0]], &[5, 9], GridKind::Free).unwrap();
        let f = GridFunction::constant(g, 1, -2.0);
        let lf = laplacian(&f).unwrap();
        assert!(lf.max_abs() < 1e-11);
    }

    #[test]
    fn laplacian_of_cosine_matches_analytic() {
        let g = Grid::build(&[[0.0, 1.0]], &[41], GridKind::Free).unwrap();
        let f = GridFunction::from_fn(g.clone(), 1, |x, _| (PI * x[0]).cos());
        let lf = laplacian(&f).unwrap();
        let mut worst = 0.0f64;
        for i in 1..g.num_nodes() - 1 {
            let x = g.node_coord(i)[0];
            let exact = -PI * PI * (PI * x).cos();
            worst = worst.max((lf.values()[[i, 0]] - exact).abs());
        }
        assert!(worst <= 1e-2, "max interior error {worst}");
    }

    #[test]
    fn laplacian_ghost_convention_on_linear_field() {
        // f(x) = x on 3 nodes {0, 1/2, 1}, h = 1/2. Ghost reflection gives
        // boundary value (2 f_1 - 2 f_0) / h^2 = 4 at the left node.
        let g = Grid::build(&[[0.0, 1.0]], &[3], GridKind::Free).unwrap();
        let f = GridFunction::from_fn(g, 1, |x, _| x[0]);
        let lf = laplacian(&f).unwrap();
        assert!((lf.values()[[0, 0]] - 4.0).abs() < 1e-12);
        assert!((lf.values()[[1, 0]] - 0.0).abs() < 1e-12);
        assert!((lf.values()[[2, 0]] - (-4.0)).abs() < 1e-12);
    }

    #[test]
    fn sobolev_norm_on_constants() {
        let g = Grid::build(&[[0.0, 1.0]], &[21], GridKind::Free).unwrap();
        let f = GridFunction::constant(g, 1, 1.0);
        let s0 = sobolev_mu_norm_sq(&f, SobolevWeight::new(0.0).unwrap()).unwrap();
        let s2 = sobolev_mu_norm_sq(&f, SobolevWeight::new(2.0).unwrap()).unwrap();
        assert!(s0.abs() < 1e-13);
        assert!((s2 - 2.0).abs() < 1e-13);
    }

    #[test]
    fn sobolev_norm_of_linear_field() {
        let g = Grid::build(&[[0.0, 1.0]], &[101], GridKind::Free).unwrap();
        let f = GridFunction::from_fn(g, 1, |x, _| x[0]);
        let s = sobolev_mu_norm_sq(&f, SobolevWeight::new(1.0).unwrap()).unwrap();
        assert!((s - 4.0 / 3.0).abs() < 1e-3, "got {s}");
    }

    #[test]
    fn operators_are_linear() {
        let g = Grid::build(&[[0.0, 1.0], [0.0, 1.0]], &[9, 9], GridKind::Free).unwrap();
        let f1 = GridFunction::from_fn(g.clone(), 1, |x, _| (x[0] * 3.0).sin() + x[1]);
        let f2 = GridFunction::from_fn(g.clone(), 1, |x, _| x[0] * x[1] * x[1]);
        let combo = f1.scale(2.0).axpy(-3.0, &f2).unwrap();
        for op in [gradient, laplacian] {
            let lhs = op(&combo).unwrap();
            let rhs = op(&f1).unwrap().scale(2.0).axpy(-3.0, &op(&f2).unwrap()).unwrap();
            let diff = lhs.axpy(-1.0, &rhs).unwrap();
            assert!(diff.max_abs() < 1e-10);
        }
    }

    #[test]
    fn mu_dependence_is_affine_with_l2_slope() {
        let g = Grid::build(&[[0.0, 1.0]], &[33], GridKind::Free).unwrap();
        let f = GridFunction::from_fn(g, 1, |x, _| (x[0] * 2.0).cos());
        let l2 = inner_l2(&f, &f).unwrap();
        let s_at = |mu: f64| sobolev_mu_norm_sq(&f, SobolevWeight::new(mu).unwrap()).unwrap();
        let (a, b, c) = (s_at(0.0), s_at(1.0), s_at(2.0));
        assert!((b - a - l2).abs() < 1e-12);
        assert!((c - b - l2).abs() < 1e-12);
    }
}
