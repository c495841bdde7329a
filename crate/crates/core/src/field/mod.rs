//! Tensor-grid discretization: grids with normalized quadrature, vector-valued
//! grid functions, finite-difference calculus, weighted Sobolev norms, and the
//! zero-homogeneous (normalized-price) representation.

mod calculus;
mod csv;
mod function;
mod grid;
mod homogeneous;

pub use calculus::{gradient, laplacian, sobolev_mu_norm_sq, SobolevWeight};
pub use csv::{read_grid_function_csv, write_grid_function_csv};
pub use function::{inner_l2, norm_l2, GridFunction};
pub use grid::{Grid, GridKind};
pub use homogeneous::{expand_homogeneous, normalized_price_bounds, HomogeneousMap};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("extent error: {0}")]
    Extent(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}
