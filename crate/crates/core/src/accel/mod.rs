//! The accelerated optimal first-order method with adaptive local Lipschitz
//! estimates.
//!
//! The method minimizes a convex function `f` with an `L`-Lipschitz gradient
//! over the feasible set of a [`ProxSetup`](crate::prox::ProxSetup). Each
//! iteration `t` picks a local constant `L_t <= L` that only has to satisfy the
//! descent condition
//!
//! ```text
//! f(u_t) <= f(x_t) + <grad f(x_t), u_t - x_t> + L_t/2 ||u_t - x_t||^2
//! ```
//!
//! at points that are already known when the iteration starts, so the most
//! aggressive admissible value can be computed in closed form without redoing
//! any work. The price of changing `L_t` is tracked by the accumulator
//! `chi_t`; the hybrid strategy falls back to the global `L` as soon as
//! `-chi_t` exceeds `alpha * L * D`.

mod bounds;
mod certificate;
mod run;
mod schedule;
mod state;
mod strategy;

pub use bounds::{theoretical_bound, iterations_for_accuracy, BoundVariant};
pub use certificate::{Certificate, CERTIFICATE_RTOL};
pub use run::{GapCheck, IterationRecord, RunOutput, RunStatus, StopRule};
pub use schedule::GammaSchedule;
pub use state::{AcceleratedMethod, ChiTerm, SolverState};
pub use strategy::{aggressive_lipschitz, hybrid_monitor, LipschitzStrategy, MonitorDecision};

use std::fmt;

use crate::error::Result;

/// Value, gradient and application-specific side output of one oracle call.
#[derive(Clone, Debug)]
pub struct Evaluation<A> {
    pub value: f64,
    pub gradient: Vec<f64>,
    /// Extra output produced alongside the gradient, e.g. the inner maximizer
    /// of a smoothed min-max objective.
    pub aux: A,
}

/// First-order oracle for a smooth convex function. Calls must be pure.
pub trait Objective {
    type Aux: Clone + fmt::Debug;

    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> Result<f64>;

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<Self::Aux>>;
}
