//! Accelerated optimal first-order methods with adaptive local Lipschitz
//! estimation.
//!
//! The crate is organised bottom-up:
//!
//! * [`prox`]: norms, distance-generating functions, Bregman distances and
//!   closed-form prox-mappings (entropy on the simplex, Euclidean ball).
//! * [`accel`]: the accelerated method itself, its three Lipschitz
//!   strategies (non-adaptive, most aggressive, hybrid with switch-back), the
//!   per-iteration potential certificate and worst-case bounds.
//! * [`smoothing`]: smoothed min-max objectives, smoothness-parameter rules,
//!   dual averaging and the primal-dual gap.
//! * [`eigopt`]: minimizing the largest eigenvalue of a convex combination of
//!   jointly sparse symmetric matrices.
//!
//! Every point the solver produces is feasible; on the simplex the prox steps
//! are carried out in the log domain so that tiny local Lipschitz estimates do
//! not push coordinates into underflow.

pub mod accel;
pub mod eigopt;
mod error;
pub mod fixtures;
pub mod linalg;
pub mod prox;
pub mod smoothing;

pub use accel::{
    theoretical_bound, AcceleratedMethod, BoundVariant, Certificate, GammaSchedule,
    IterationRecord, LipschitzStrategy, MonitorDecision, Objective, Evaluation, RunOutput,
    RunStatus, SolverState, StopRule,
};

pub use eigopt::{DensityMatrix, EigInstance, EigProblem, SymmetricMatrix};
pub use error::{Error, Result};
pub use prox::{EntropySimplex, EuclideanBall, NormKind, ProxSetup, SimplexPoint};
pub use smoothing::{DualAggregate, MinMaxProblem, SmoothEvaluation};

