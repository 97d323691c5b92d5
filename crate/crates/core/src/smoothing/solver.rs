use crate::accel::{
    AcceleratedMethod, Evaluation, GammaSchedule, LipschitzStrategy, Objective, RunOutput,
    StopRule,
};
use crate::error::Result;
use crate::prox::ProxSetup;
use crate::smoothing::{
    convergence_bound, lipschitz_of_smoothed, primal_dual_gap, DualAggregate, MinMaxProblem,
};

/// `phibar_mu` as an [`Objective`]; the oracle's side output is `y_mu(x)`.
pub struct SmoothedObjective<'a, P> {
    problem: &'a P,
    mu: f64,
}

impl<'a, P: MinMaxProblem> SmoothedObjective<'a, P> {
    pub fn new(problem: &'a P, mu: f64) -> Result<Self> {
        lipschitz_of_smoothed(problem, mu)?;
        Ok(SmoothedObjective { problem, mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn problem(&self) -> &P {
        self.problem
    }
}

impl<P: MinMaxProblem> Objective for SmoothedObjective<'_, P> {
    type Aux = P::Dual;

    fn dim(&self) -> usize {
        self.problem.primal_dim()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        self.problem.smoothed_value(x, self.mu)
    }

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<P::Dual>> {
        let e = self.problem.smoothed(x, self.mu)?;
        Ok(Evaluation {
            value: e.value,
            gradient: e.gradient,
            aux: e.y_star,
        })
    }
}

/// A gap evaluation during a smoothed solve, paired with the guarantee that
/// applies at the same iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapCheckpoint {
    pub t: usize,
    pub gap: f64,
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct SmoothingOutput<Z, Y> {
    /// Trace and final state; `run.solution` is the primal point `xbar`.
    pub run: RunOutput<Z, Y>,
    pub dual: DualAggregate<Y>,
    pub checkpoints: Vec<GapCheckpoint>,
    pub mu: f64,
    pub lipschitz: f64,
}

impl<Z, Y: crate::smoothing::DualPoint> SmoothingOutput<Z, Y> {
    pub fn x_bar(&self) -> &[f64] {
        &self.run.solution
    }

    pub fn y_bar(&self) -> Result<Y> {
        self.dual.y_bar()
    }
}

/// Runs the accelerated method on `phibar_mu` over `setup`, averaging the inner
/// maximizers along the way and evaluating the primal-dual gap of
/// `(u_t, ybar_t)` whenever `stop` schedules a check.
pub fn solve_smoothed<P, S>(
    problem: &P,
    setup: &S,
    mu: f64,
    strategy: LipschitzStrategy,
    stop: &StopRule,
    certify: bool,
) -> Result<SmoothingOutput<S::Anchor, P::Dual>>
where
    P: MinMaxProblem,
    S: ProxSetup,
{
    let objective = SmoothedObjective::new(problem, mu)?;
    let lipschitz = lipschitz_of_smoothed(problem, mu)?;
    let method = AcceleratedMethod::new(
        setup,
        &objective,
        strategy,
        lipschitz,
        GammaSchedule::Linear,
    )?;
    let d1 = setup.diameter_bound();
    let mut dual = DualAggregate::new();
    let mut checkpoints = Vec::new();
    let run = method.run(stop, certify, |state, due| {
        dual.push(&state.evaluation().aux);
        if !due {
            return Ok(None);
        }
        let gap = primal_dual_gap(problem, state.u(), &dual.y_bar()?)?;
        checkpoints.push(GapCheckpoint {
            t: state.t(),
            gap,
            bound: convergence_bound(problem, mu, d1, state.t(), state.chi()),
        });
        Ok(Some(gap))
    })?;
    Ok(SmoothingOutput {
        run,
        dual,
        checkpoints,
        mu,
        lipschitz,
    })
}
