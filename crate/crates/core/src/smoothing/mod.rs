//! Smoothing of structured min-max problems
//!
//! ```text
//! min_{x in Q1} max_{y in Q2}  phi(x, y) = f1(x) + <A x, y> - f2(y)
//! ```
//!
//! The nonsmooth primal function `phibar(x) = max_y phi(x, y)` is replaced by
//! `phibar_mu(x) = max_y { phi(x, y) - mu d2(y) }`, whose gradient
//! `grad f1(x) + A^*(y_mu(x))` is `(M + |A|^2 / mu)`-Lipschitz. Running the
//! accelerated method on `phibar_mu` and averaging the inner maximizers with
//! weights proportional to `t + 1` yields a primal-dual pair whose gap is
//! controlled by [`convergence_bound`].

mod aggregate;
mod game;
mod solver;

pub use aggregate::{aggregate_dual, DualAggregate, DualPoint};
pub use game::MatrixGame;
pub use solver::{solve_smoothed, GapCheckpoint, SmoothedObjective, SmoothingOutput};

use crate::error::{Error, Result};

/// Value and gradient of the smoothed primal function together with the inner
/// maximizer `y_mu(x)`.
#[derive(Clone, Debug)]
pub struct SmoothEvaluation<Y> {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub y_star: Y,
}

/// A bilinear saddle-point problem with closed-form smoothing.
///
/// `f1` and `f2` default to zero (and `M` to 0); implementors override them
/// together with the closed forms when they are not.
pub trait MinMaxProblem {
    type Dual: DualPoint;

    fn primal_dim(&self) -> usize;

    /// `A(x)`.
    fn apply(&self, x: &[f64]) -> Self::Dual;

    /// `A^*(y)`, defined by `<A x, y> = <x, A^* y>`.
    fn adjoint(&self, y: &Self::Dual) -> Vec<f64>;

    /// Inner product on the dual space.
    fn dual_inner(&self, a: &Self::Dual, b: &Self::Dual) -> f64;

    /// Operator norm of `A` between the primal and dual norms.
    fn operator_norm(&self) -> f64;

    /// Lipschitz constant `M` of `grad f1`.
    fn f1_smoothness(&self) -> f64 {
        0.0
    }

    fn f1(&self, x: &[f64]) -> (f64, Vec<f64>) {
        (0.0, vec![0.0; x.len()])
    }

    fn f2(&self, _y: &Self::Dual) -> f64 {
        0.0
    }

    /// `D2 = max_{Q2} d2`.
    fn dual_diameter(&self) -> f64;

    /// Minimizer of `d2` over `Q2`.
    fn dual_center(&self) -> Self::Dual;

    /// Closed-form `phibar_mu(x)`, its gradient and `y_mu(x)`; `mu > 0`.
    fn smoothed(&self, x: &[f64], mu: f64) -> Result<SmoothEvaluation<Self::Dual>>;

    /// `phibar_mu(x)` alone; override when cheaper than the full evaluation.
    fn smoothed_value(&self, x: &[f64], mu: f64) -> Result<f64> {
        self.smoothed(x, mu).map(|e| e.value)
    }

    /// Exact `phibar(x) = max_{y in Q2} phi(x, y)`.
    fn primal_value(&self, x: &[f64]) -> Result<f64>;

    /// Exact `philow(y) = min_{x in Q1} phi(x, y)`.
    fn dual_value(&self, y: &Self::Dual) -> Result<f64>;

    /// `phi(x, y)`.
    fn objective(&self, x: &[f64], y: &Self::Dual) -> f64 {
        self.f1(x).0 + self.dual_inner(&self.apply(x), y) - self.f2(y)
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "smoothness parameter must be positive, got {mu}"
        )))
    }
}

/// `phibar_mu(x)` with its gradient and inner maximizer.
pub fn smoothed_eval<P: MinMaxProblem>(
    problem: &P,
    mu: f64,
    x: &[f64],
) -> Result<SmoothEvaluation<P::Dual>> {
    check_mu(mu)?;
    problem.smoothed(x, mu)
}

/// `L_mu = M + |A|^2 / mu`.
pub fn lipschitz_of_smoothed<P: MinMaxProblem>(problem: &P, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let norm = problem.operator_norm();
    Ok(problem.f1_smoothness() + norm * norm / mu)
}

fn check_diameters(d1: f64, d2: f64) -> Result<()> {
    if d1 > 0.0 && d2 > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "DGF bounds must be positive, got D1 = {d1}, D2 = {d2}"
        )))
    }
}

/// Smoothness parameter minimizing the aggressive-strategy bound:
/// `2 |A| sqrt(5 D1 / ((T + 1) D2))`.
pub fn mu_aggressive(iterations: usize, d1: f64, d2: f64, norm_a: f64) -> Result<f64> {
    check_diameters(d1, d2)?;
    Ok(2.0 * norm_a * (5.0 * d1 / ((iterations as f64 + 1.0) * d2)).sqrt())
}

/// Smoothness parameter minimizing the hybrid-strategy bound:
/// `2 |A| / (T + 1) sqrt((1 + alpha) D1 / D2)`.
pub fn mu_hybrid(iterations: usize, alpha: f64, d1: f64, d2: f64, norm_a: f64) -> Result<f64> {
    check_diameters(d1, d2)?;
    if alpha < 0.0 {
        return Err(Error::InvalidInput(format!("alpha must be >= 0, got {alpha}")));
    }
    Ok(2.0 * norm_a / (iterations as f64 + 1.0) * ((1.0 + alpha) * d1 / d2).sqrt())
}

/// Gap bound at the optimal aggressive `mu`:
/// `4 |A| sqrt(5 D1 D2 / (T + 1)) + 20 D1 M / (T + 1)`.
pub fn aggressive_gap_bound(iterations: usize, d1: f64, d2: f64, norm_a: f64, m: f64) -> f64 {
    let t1 = iterations as f64 + 1.0;
    4.0 * norm_a * (5.0 * d1 * d2 / t1).sqrt() + 20.0 * d1 * m / t1
}

/// Gap bound at the optimal hybrid `mu`:
/// `4 |A| sqrt((1 + alpha) D1 D2) / (T + 1) + 4 (1 + alpha) D1 M / (T + 1)^2`.
pub fn hybrid_gap_bound(
    iterations: usize,
    alpha: f64,
    d1: f64,
    d2: f64,
    norm_a: f64,
    m: f64,
) -> f64 {
    let t1 = iterations as f64 + 1.0;
    4.0 * norm_a * ((1.0 + alpha) * d1 * d2).sqrt() / t1 + 4.0 * (1.0 + alpha) * d1 * m / (t1 * t1)
}

/// Gap guarantee after `T` iterations given the accumulated `chi_T`:
/// `4 (D1 |A|^2 / mu + D1 M - chi_T) / (T + 1)^2 + mu D2`.
pub fn convergence_bound<P: MinMaxProblem>(
    problem: &P,
    mu: f64,
    d1: f64,
    iterations: usize,
    chi: f64,
) -> f64 {
    let norm = problem.operator_norm();
    let t1 = iterations as f64 + 1.0;
    4.0 * (d1 * norm * norm / mu + d1 * problem.f1_smoothness() - chi) / (t1 * t1)
        + mu * problem.dual_diameter()
}

/// `phibar(x) - philow(y)`; nonnegative for feasible pairs by weak duality.
pub fn primal_dual_gap<P: MinMaxProblem>(problem: &P, x: &[f64], y: &P::Dual) -> Result<f64> {
    if x.len() != problem.primal_dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.primal_dim(),
            found: x.len(),
        });
    }
    Ok(problem.primal_value(x)? - problem.dual_value(y)?)
}
