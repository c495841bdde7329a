use super::{FieldError, Grid};
use ndarray::Array2;
use std::sync::Arc;

/// Sampled vector-valued function on a tensor grid.
///
/// `values` has one row per grid node (row-major node order, last axis
/// fastest) and one column per channel.
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<Grid>,
    values: Array2<f64>,
}

impl GridFunction {
    pub fn new(grid: Arc<Grid>, values: Array2<f64>) -> Result<Self, FieldError> {
        if values.nrows() != grid.num_nodes() {
            return Err(FieldError::Shape(format!(
                "value rows {} != grid nodes {}",
                values.nrows(),
                grid.num_nodes()
            )));
        }
        if values.ncols() == 0 {
            return Err(FieldError::Shape("at least one channel required".into()));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(FieldError::Shape("non-finite value in grid function".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Arc<Grid>, channels: usize) -> Self {
        let n = grid.num_nodes();
        Self {
            grid,
            values: Array2::zeros((n, channels)),
        }
    }

    pub fn constant(grid: Arc<Grid>, channels: usize, value: f64) -> Self {
        let n = grid.num_nodes();
        Self {
            grid,
            values: Array2::from_elem((n, channels), value),
        }
    }

    /// Samples a coordinate function node by node.
    pub fn from_fn<F>(grid: Arc<Grid>, channels: usize, mut f: F) -> Self
    where
        F: FnMut(&[f64], usize) -> f64,
    {
        let n = grid.num_nodes();
        let mut values = Array2::zeros((n, channels));
        for i in 0..n {
            let x = grid.node_coord(i);
            for c in 0..channels {
                values[[i, c]] = f(&x, c);
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn channels(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<f64> {
        &mut self.values
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    /// self + alpha * other
    pub fn axpy(&self, alpha: f64, other: &GridFunction) -> Result<GridFunction, FieldError> {
        if !self.same_grid(other) || self.channels() != other.channels() {
            return Err(FieldError::Shape("axpy: grid/channel mismatch".into()));
        }
        Ok(GridFunction {
            grid: self.grid.clone(),
            values: &self.values + &(&other.values * alpha),
        })
    }

    pub fn scale(&self, alpha: f64) -> GridFunction {
        GridFunction {
            grid: self.grid.clone(),
            values: &self.values * alpha,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Quadrature-weighted L2 inner product with channelwise contraction.
pub fn inner_l2(f: &GridFunction, g: &GridFunction) -> Result<f64, FieldError> {
    if !f.same_grid(g) {
        return Err(FieldError::Shape("inner_l2: grid mismatch".into()));
    }
    if f.channels() != g.channels() {
        return Err(FieldError::Shape(format!(
            "inner_l2: channel mismatch {} vs {}",
            f.channels(),
            g.channels()
        )));
    }
    let w = f.grid().weights();
    let fv = f.values();
    let gv = g.values();
    let mut acc = 0.0;
    for i in 0..fv.nrows() {
        let mut dot = 0.0;
        for c in 0..fv.ncols() {
            dot += fv[[i, c]] * gv[[i, c]];
        }
        acc += w[i] * dot;
    }
    Ok(acc)
}

/// Quadrature-weighted L2 norm.
pub fn norm_l2(f: &GridFunction) -> f64 {
    inner_l2(f, f).expect("self inner product").max(0.0).sqrt()
}
