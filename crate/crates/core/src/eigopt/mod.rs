//! Minimizing the largest eigenvalue of a convex combination of symmetric
//! matrices,
//!
//! ```text
//! min_{x in simplex_m} lambda_max(sum_j x_j A_j),
//! ```
//!
//! where the `A_j` share one sparsity pattern. The maximum over the matrix
//! simplex is smoothed with the matrix entropy, giving
//! `phibar_mu(x) = mu ln trace exp(A(x) / mu) - mu ln n` with gradient
//! `(<A_j, Y_mu(x)>)_j`. Value, maximizer and gradient all come from a single
//! dense symmetric eigendecomposition with a spectral max-shift.

mod instance;
mod matrix;
mod problem;
mod spectral;

pub use instance::{generate_instance, EigInstance, POWER_MAX_ITERS, POWER_TOL, STANDARD_NORMAL};
pub use matrix::{DensityMatrix, SymmetricMatrix, DENSITY_TOL};
pub use problem::{assemble, duality_gap_eig, eig_gradient, relative_accuracy_mu, EigProblem};
pub use spectral::{
    density_maximizer, exact_lambda_max, exact_spectral_norm, power_method_norm,
    smoothed_lambda_max, POWER_BLOCK,
};
