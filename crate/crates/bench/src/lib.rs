//! Inputs shared by the benchmarks.

use afom_core::eigopt::generate_instance;
use afom_core::fixtures::Quadratic;
use afom_core::{EigInstance, SimplexPoint};

/// Sizes benchmarked for the eigenvalue oracle, `(m, n)`.
pub const EIG_SIZES: [(usize, usize); 3] = [(10, 25), (20, 50), (20, 100)];

/// Fixed-seed instance at the usual density of one tenth.
pub fn instance(m: usize, n: usize) -> EigInstance {
    generate_instance(m, n, 0.1, 17).expect("valid instance parameters")
}

/// A deterministic interior point of the simplex.
pub fn interior_point(m: usize) -> SimplexPoint {
    let raw: Vec<f64> = (0..m).map(|i| 1.0 + (i % 7) as f64).collect();
    let total: f64 = raw.iter().sum();
    SimplexPoint::new(raw.into_iter().map(|v| v / total).collect()).expect("coordinates sum to one")
}

/// Quadratic on the simplex with its minimizer in the interior.
pub fn quadratic(m: usize) -> Quadratic {
    let weights = (0..m).map(|i| 1.0 + (i % 5) as f64).collect();
    let target = (0..m).map(|i| ((i * 37) % 11) as f64 / 11.0).collect();
    Quadratic::new(weights, target).expect("matching lengths")
}
