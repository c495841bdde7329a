use super::{FieldError, Grid, GridFunction};
use ndarray::Array2;
use std::sync::Arc;

/// Axis convention for consumer-demand domains: the first `dim - 1` axes of an
/// X-grid are prices and the last axis is the budget. Demand fields are
/// zero-homogeneous, so they are represented on a grid of normalized prices
/// `p / z` and expanded to the full (p, z) grid by multilinear interpolation.
#[derive(Debug, Clone)]
pub struct HomogeneousMap {
    normalized: Arc<Grid>,
    target: Arc<Grid>,
    /// Per target node: interpolation stencil (normalized node, weight).
    rows: Vec<Vec<(usize, f64)>>,
}

/// Per-axis bounds of p/z over all nodes of a (p, z) grid.
pub fn normalized_price_bounds(target: &Grid) -> Vec<[f64; 2]> {
    let dim = target.dim();
    assert!(dim >= 2, "target grid needs price axes plus a budget axis");
    let k = dim - 1;
    let zb = target.bounds()[k];
    (0..k)
        .map(|a| {
            let pb = target.bounds()[a];
            [pb[0] / zb[1], pb[1] / zb[0]]
        })
        .collect()
}

impl HomogeneousMap {
    pub fn build(normalized: Arc<Grid>, target: Arc<Grid>) -> Result<Self, FieldError> {
        let k = target.dim() - 1;
        if normalized.dim() != k {
            return Err(FieldError::Shape(format!(
                "normalized grid dim {} != target price axes {}",
                normalized.dim(),
                k
            )));
        }
        let mut rows = Vec::with_capacity(target.num_nodes());
        for i in 0..target.num_nodes() {
            let x = target.node_coord(i);
            let z = x[k];
            let mut cell = vec![0usize; k];
            let mut frac = vec![0.0f64; k];
            for a in 0..k {
                let ptilde = x[a] / z;
                let nodes = normalized.axis_nodes(a);
                let lo = nodes[0];
                let hi = *nodes.last().unwrap();
                let tol = 1e-12 * (hi - lo).abs();
                if ptilde < lo - tol || ptilde > hi + tol {
                    return Err(FieldError::Extent(format!(
                        "normalized price {ptilde} on axis {a} outside [{lo}, {hi}]; \
                         enlarge the normalized grid to cover the target"
                    )));
                }
                let p = ptilde.clamp(lo, hi);
                // binary search for the containing cell
                let mut j = match nodes.binary_search_by(|n| n.partial_cmp(&p).unwrap()) {
                    Ok(j) => j,
                    Err(j) => j.saturating_sub(1),
                };
                if j >= nodes.len() - 1 {
                    j = nodes.len() - 2;
                }
                cell[a] = j;
                frac[a] = (p - nodes[j]) / (nodes[j + 1] - nodes[j]);
            }
            let strides = normalized.strides();
            let mut stencil = Vec::with_capacity(1 << k);
            for corner in 0..(1usize << k) {
                let mut w = 1.0;
                let mut flat = 0usize;
                for a in 0..k {
                    let hi_side = (corner >> a) & 1 == 1;
                    w *= if hi_side { frac[a] } else { 1.0 - frac[a] };
                    flat += (cell[a] + usize::from(hi_side)) * strides[a];
                }
                if w != 0.0 {
                    stencil.push((flat, w));
                }
            }
            rows.push(stencil);
        }
        Ok(Self {
            normalized,
            target,
            rows,
        })
    }

    pub fn normalized_grid(&self) -> &Arc<Grid> {
        &self.normalized
    }

    pub fn target_grid(&self) -> &Arc<Grid> {
        &self.target
    }

    /// Expands a normalized-price field to the (p, z) grid.
    pub fn expand(&self, gtilde: &GridFunction) -> Result<GridFunction, FieldError> {
        if *gtilde.grid().as_ref() != *self.normalized {
            return Err(FieldError::Shape(
                "expand: field not on the map's normalized grid".into(),
            ));
        }
        let ch = gtilde.channels();
        let mut out = Array2::<f64>::zeros((self.target.num_nodes(), ch));
        let v = gtilde.values();
        for (i, stencil) in self.rows.iter().enumerate() {
            for &(j, w) in stencil {
                for c in 0..ch {
                    out[[i, c]] += w * v[[j, c]];
                }
            }
        }
        GridFunction::new(self.target.clone(), out)
    }

    /// Plain transpose of the interpolation matrix applied to nodewise values
    /// on the target grid (no quadrature weighting).
    pub fn apply_transpose(&self, target_values: &Array2<f64>) -> Array2<f64> {
        let ch = target_values.ncols();
        let mut out = Array2::<f64>::zeros((self.normalized.num_nodes(), ch));
        for (i, stencil) in self.rows.iter().enumerate() {
            for &(j, w) in stencil {
                for c in 0..ch {
                    out[[j, c]] += w * target_values[[i, c]];
                }
            }
        }
        out
    }

    /// Total interpolation weight received by each normalized node. Nodes with
    /// zero coverage are invisible to the expanded representation.
    pub fn column_coverage(&self) -> Vec<f64> {
        let mut cov = vec![0.0; self.normalized.num_nodes()];
        for stencil in &self.rows {
            for &(j, w) in stencil {
                cov[j] += w;
            }
        }
        cov
    }
}

/// One-shot expansion of a normalized-price field onto a (p, z) grid.
pub fn expand_homogeneous(
    gtilde: &GridFunction,
    target: Arc<Grid>,
) -> Result<GridFunction, FieldError> {
    let map = HomogeneousMap::build(gtilde.grid().clone(), target)?;
    map.expand(gtilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GridKind;

    fn target_2d() -> Arc<Grid> {
        // k = 1: one price axis, one budget axis
        Grid::build(&[[1.0, 2.0], [1.0, 2.0]], &[9, 9], GridKind::Positive).unwrap()
    }

    #[test]
    fn constant_expands_to_constant() {
        let target = target_2d();
        let nb = normalized_price_bounds(&target);
        let norm = Grid::build(&nb, &[17], GridKind::Positive).unwrap();
        let gt = GridFunction::constant(norm, 1, 4.2);
        let g = expand_homogeneous(&gt, target).unwrap();
        for v in g.values().iter() {
            assert!((v - 4.2).abs() < 1e-13);
        }
    }

    #[test]
    fn reciprocal_profile_gives_z_over_p_at_ray_nodes() {
        let target = target_2d();
        let nb = normalized_price_bounds(&target);
        let norm = Grid::build(&nb, &[33], GridKind::Positive).unwrap();
        let gt = GridFunction::from_fn(norm, 1, |pt, _| 1.0 / pt[0]);
        let g = expand_homogeneous(&gt, target.clone()).unwrap();
        // where p/z is exactly a normalized node the value is exactly z/p
        for i in 0..target.num_nodes() {
            let x = target.node_coord(i);
            let ptilde = x[0] / x[1];
            let nodes = gt.grid().axis_nodes(0).to_vec();
            if nodes.iter().any(|&n| (n - ptilde).abs() < 1e-12) {
                let want = x[1] / x[0];
                assert!(
                    (g.values()[[i, 0]] - want).abs() < 1e-12,
                    "at p={}, z={}",
                    x[0],
                    x[1]
                );
            }
        }
    }

    #[test]
    fn expansion_is_exactly_homogeneous_on_shared_rays() {
        let target = target_2d();
        let nb = normalized_price_bounds(&target);
        let norm = Grid::build(&nb, &[16], GridKind::Positive).unwrap();
        let gt = GridFunction::from_fn(norm, 1, |pt, _| (3.0 * pt[0]).sin() + pt[0]);
        let g = expand_homogeneous(&gt, target.clone()).unwrap();
        // nodes (p, z) and (tp, tz) with equal p/z must carry equal values
        let n = target.num_nodes();
        let mut checked = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let a = target.node_coord(i);
                let b = target.node_coord(j);
                if (a[0] / a[1] - b[0] / b[1]).abs() < 1e-13 {
                    assert_eq!(g.values()[[i, 0]], g.values()[[j, 0]]);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "grid contains no shared rays");
    }

    #[test]
    fn uncovered_ray_is_extent_error() {
        let target = target_2d(); // p/z spans [0.5, 2]
        let norm = Grid::build(&[[0.5, 1.5]], &[9], GridKind::Positive).unwrap();
        let gt = GridFunction::constant(norm, 1, 1.0);
        let err = expand_homogeneous(&gt, target).unwrap_err();
        assert!(matches!(err, FieldError::Extent(_)));
    }
}
