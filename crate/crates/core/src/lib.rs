//! Constrained Tikhonov regularization for nonparametric instrumental
//! regression.
//!
//! The crate discretizes the conditional-expectation operator of an
//! instrumental regression model on tensor grids, estimates the operator and
//! right-hand side from samples with boundary-corrected kernels, minimizes
//! the Tikhonov functional over consumer-demand shape constraints
//! (nonnegativity, zero-homogeneity, budget, Slutsky), and measures
//! deterministic and stochastic convergence rates on synthetic scenes.

pub mod constraints;
pub mod field;
pub mod harness;
pub mod kernel;
pub(crate) mod linalg;
pub mod operator;
pub mod rng;
pub mod synthesis;
pub mod tikhonov;

pub use field::{Grid, GridFunction, GridKind, HomogeneousMap, SobolevWeight};
