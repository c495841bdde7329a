use super::FieldError;
use std::sync::Arc;

/// Domain class of a grid. Price/budget grids must have strictly positive
/// coordinates; instrument and auxiliary grids are unrestricted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Axes live in (0, inf); used for the (p, z) domain.
    Positive,
    /// No sign restriction; used for instrument and auxiliary domains.
    Free,
}

/// Uniform tensor grid with trapezoidal quadrature weights normalized so the
/// total measure is one.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    kind: GridKind,
    bounds: Vec<[f64; 2]>,
    resolution: Vec<usize>,
    axes: Vec<Vec<f64>>,
    axis_weights: Vec<Vec<f64>>,
    node_weights: Vec<f64>,
}

impl Grid {
    /// Builds a uniform grid with at least 3 nodes per axis.
    pub fn build(
        bounds: &[[f64; 2]],
        resolution: &[usize],
        kind: GridKind,
    ) -> Result<Arc<Grid>, FieldError> {
        if bounds.is_empty() || bounds.len() != resolution.len() {
            return Err(FieldError::Config(format!(
                "bounds/resolution mismatch: {} axes vs {} counts",
                bounds.len(),
                resolution.len()
            )));
        }
        for (a, b) in bounds.iter().enumerate() {
            if !(b[0].is_finite() && b[1].is_finite()) || b[0] >= b[1] {
                return Err(FieldError::Domain(format!(
                    "axis {a}: invalid interval [{}, {}]",
                    b[0], b[1]
                )));
            }
            if kind == GridKind::Positive && b[0] <= 0.0 {
                return Err(FieldError::Domain(format!(
                    "axis {a}: lower bound {} must be positive on a price/budget axis",
                    b[0]
                )));
            }
        }
        for (a, &r) in resolution.iter().enumerate() {
            if r < 3 {
                return Err(FieldError::Config(format!(
                    "axis {a}: resolution {r} < 3"
                )));
            }
        }
        let axes: Vec<Vec<f64>> = bounds
            .iter()
            .zip(resolution.iter())
            .map(|(b, &r)| {
                let h = (b[1] - b[0]) / (r - 1) as f64;
                (0..r).map(|i| b[0] + h * i as f64).collect()
            })
            .collect();
        Ok(Arc::new(Self::from_axes_internal(axes, kind, bounds.to_vec())))
    }

    /// Builds a grid from explicit strictly increasing axis nodes
    /// (used when reconstructing a grid from a CSV file).
    pub fn from_axes(axes: Vec<Vec<f64>>, kind: GridKind) -> Result<Arc<Grid>, FieldError> {
        if axes.is_empty() {
            return Err(FieldError::Config("grid needs at least one axis".into()));
        }
        for (a, nodes) in axes.iter().enumerate() {
            if nodes.len() < 3 {
                return Err(FieldError::Config(format!(
                    "axis {a}: resolution {} < 3",
                    nodes.len()
                )));
            }
            if !nodes.windows(2).all(|w| w[0] < w[1]) {
                return Err(FieldError::Domain(format!(
                    "axis {a}: nodes not strictly increasing"
                )));
            }
            if kind == GridKind::Positive && nodes[0] <= 0.0 {
                return Err(FieldError::Domain(format!(
                    "axis {a}: nodes must be positive on a price/budget axis"
                )));
            }
        }
        let bounds = axes
            .iter()
            .map(|n| [n[0], *n.last().unwrap()])
            .collect::<Vec<_>>();
        Ok(Arc::new(Self::from_axes_internal(axes, kind, bounds)))
    }

    fn from_axes_internal(axes: Vec<Vec<f64>>, kind: GridKind, bounds: Vec<[f64; 2]>) -> Grid {
        let resolution: Vec<usize> = axes.iter().map(|a| a.len()).collect();
        // Per-axis trapezoid weights, each normalized to unit axis measure.
        let axis_weights: Vec<Vec<f64>> = axes
            .iter()
            .map(|nodes| {
                let n = nodes.len();
                let mut w = vec![0.0; n];
                for i in 0..n - 1 {
                    let h = nodes[i + 1] - nodes[i];
                    w[i] += 0.5 * h;
                    w[i + 1] += 0.5 * h;
                }
                let total: f64 = w.iter().sum();
                w.iter_mut().for_each(|x| *x /= total);
                w
            })
            .collect();
        let total_nodes: usize = resolution.iter().product();
        let mut node_weights = vec![0.0; total_nodes];
        let dim = resolution.len();
        let mut idx = vec![0usize; dim];
        for w in node_weights.iter_mut() {
            let mut prod = 1.0;
            for a in 0..dim {
                prod *= axis_weights[a][idx[a]];
            }
            *w = prod;
            // advance multi-index, last axis fastest
            for a in (0..dim).rev() {
                idx[a] += 1;
                if idx[a] < resolution[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        Grid {
            kind,
            bounds,
            resolution,
            axes,
            axis_weights,
            node_weights,
        }
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.resolution.len()
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn bounds(&self) -> &[[f64; 2]] {
        &self.bounds
    }

    pub fn axis_nodes(&self, axis: usize) -> &[f64] {
        &self.axes[axis]
    }

    pub fn axis_weights(&self, axis: usize) -> &[f64] {
        &self.axis_weights[axis]
    }

    pub fn num_nodes(&self) -> usize {
        self.node_weights.len()
    }

    /// Quadrature weights per node; they sum to one.
    pub fn weights(&self) -> &[f64] {
        &self.node_weights
    }

    /// Uniform spacing of an axis; errors if the axis is not uniform.
    pub fn axis_spacing(&self, axis: usize) -> Result<f64, FieldError> {
        let nodes = &self.axes[axis];
        let h = nodes[1] - nodes[0];
        for w in nodes.windows(2) {
            if ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs() {
                return Err(FieldError::Config(format!(
                    "axis {axis} is not uniform; finite-difference calculus requires uniform axes"
                )));
            }
        }
        Ok(h)
    }

    /// Row-major strides (last axis fastest).
    pub fn strides(&self) -> Vec<usize> {
        let dim = self.dim();
        let mut s = vec![1usize; dim];
        for a in (0..dim.saturating_sub(1)).rev() {
            s[a] = s[a + 1] * self.resolution[a + 1];
        }
        s
    }

    /// Multi-index of a flat node index.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let strides = self.strides();
        let mut out = vec![0usize; self.dim()];
        for a in 0..self.dim() {
            out[a] = flat / strides[a];
            flat %= strides[a];
        }
        out
    }

    /// Coordinates of a node given its flat index.
    pub fn node_coord(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .iter()
            .enumerate()
            .map(|(a, &i)| self.axes[a][i])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_interval_trapezoid_weights() {
        let g = Grid::build(&[[1.0, 2.0]], &[3], GridKind::Positive).unwrap();
        assert_eq!(g.axis_nodes(0), &[1.0, 1.5, 2.0]);
        assert_eq!(g.weights(), &[0.25, 0.5, 0.25]);
    }

    #[test]
    fn tensor_corner_weight() {
        let g = Grid::build(&[[1.0, 2.0], [1.0, 2.0]], &[3, 3], GridKind::Positive).unwrap();
        assert_eq!(g.num_nodes(), 9);
        assert!((g.weights()[0] - 0.0625).abs() < 1e-15);
        let total: f64 = g.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positive_axis_rejects_zero_lower_bound() {
        let err = Grid::build(&[[0.0, 1.0]], &[3], GridKind::Positive).unwrap_err();
        assert!(matches!(err, FieldError::Domain(_)));
    }

    #[test]
    fn resolution_below_three_rejected() {
        let err = Grid::build(&[[1.0, 2.0]], &[2], GridKind::Positive).unwrap_err();
        assert!(matches!(err, FieldError::Config(_)));
    }

    #[test]
    fn strides_and_indexing_roundtrip() {
        let g = Grid::build(
            &[[0.0, 1.0], [0.0, 1.0], [0.0, 1.0]],
            &[3, 4, 5],
            GridKind::Free,
        )
        .unwrap();
        assert_eq!(g.strides(), vec![20, 5, 1]);
        let mi = g.multi_index(37);
        assert_eq!(mi, vec![1, 3, 2]);
        let c = g.node_coord(37);
        assert!((c[0] - 0.5).abs() < 1e-15);
        assert!((c[1] - 1.0).abs() < 1e-15);
        assert!((c[2] - 0.5).abs() < 1e-15);
    }
}
