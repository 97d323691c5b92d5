use std::time::Instant;

use crate::accel::certificate::Certificate;
use crate::accel::state::{AcceleratedMethod, SolverState, StateOf};
use crate::accel::Objective;
use crate::error::{Error, Result};
use crate::prox::ProxSetup;

/// When to evaluate an optimality gap during a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapCheck {
    /// Check at every multiple of `period` (0 disables periodic checks).
    pub period: usize,
    /// Additionally check at every iteration `1..=dense_prefix`.
    pub dense_prefix: usize,
    /// Stop as soon as a checked gap is `<= target`.
    pub target: f64,
}

impl GapCheck {
    pub fn due(&self, t: usize) -> bool {
        t >= 1 && (t <= self.dense_prefix || (self.period > 0 && t.is_multiple_of(self.period)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StopRule {
    pub max_iters: usize,
    pub gap_check: Option<GapCheck>,
}

impl StopRule {
    pub fn iterations(max_iters: usize) -> Self {
        StopRule {
            max_iters,
            gap_check: None,
        }
    }
}

/// One row of the per-iteration trace.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub t: usize,
    pub l: f64,
    pub f_u: f64,
    pub beta: f64,
    pub gap: Option<f64>,
    pub wall_ms: f64,
}

impl IterationRecord {
    /// Equality of every field except the wall-clock time.
    pub fn same_values(&self, other: &IterationRecord) -> bool {
        self.t == other.t
            && self.l.to_bits() == other.l.to_bits()
            && self.f_u.to_bits() == other.f_u.to_bits()
            && self.beta.to_bits() == other.beta.to_bits()
            && self.gap.map(f64::to_bits) == other.gap.map(f64::to_bits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Converged { iteration: usize },
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct RunOutput<Z, A> {
    /// `u_T`, the point the convergence guarantees refer to.
    pub solution: Vec<f64>,
    pub state: SolverState<Z, A>,
    pub trace: Vec<IterationRecord>,
    /// Present when the run was asked to certify; entry `k` is iteration `k`.
    pub certificates: Option<Vec<Certificate>>,
    pub status: RunStatus,
    pub final_gap: Option<f64>,
}

pub type OutputOf<S, O> = RunOutput<<S as ProxSetup>::Anchor, <O as Objective>::Aux>;

impl<'a, S: ProxSetup, O: Objective> AcceleratedMethod<'a, S, O> {
    /// Runs up to `stop.max_iters` loop bodies.
    ///
    /// `observer` is called once after initialization and once after every
    /// iteration with a flag telling whether a gap check is due; it returns the
    /// gap it computed, if any. A check is forced at the last iteration when
    /// gap checks are configured.
    pub fn run<F>(&self, stop: &StopRule, certify: bool, mut observer: F) -> Result<OutputOf<S, O>>
    where
        F: FnMut(&StateOf<S, O>, bool) -> Result<Option<f64>>,
    {
        let start = Instant::now();
        let mut state = self.init()?;
        let mut certificates = certify.then(|| vec![self.certificate(&state)]);
        let mut trace = Vec::with_capacity(stop.max_iters.min(1 << 16));

        let forced = |t: usize| stop.gap_check.is_some() && t == stop.max_iters;
        let mut final_gap = observer(&state, forced(0))?;
        let target = stop.gap_check.map(|g| g.target);
        let converged = |gap: Option<f64>| matches!((gap, target), (Some(g), Some(tg)) if g <= tg);
        if converged(final_gap) {
            return Ok(RunOutput {
                solution: state.u().to_vec(),
                state,
                trace,
                certificates,
                status: RunStatus::Converged { iteration: 0 },
                final_gap,
            });
        }

        let mut status = RunStatus::BudgetExhausted;
        for _ in 0..stop.max_iters {
            self.step(&mut state)?;
            let t = state.t();
            if let Some(certs) = certificates.as_mut() {
                certs.push(self.certificate(&state));
            }
            let due = stop.gap_check.is_some_and(|g| g.due(t)) || forced(t);
            let gap = observer(&state, due)?;
            if due && gap.is_none() {
                return Err(Error::Internal(format!(
                    "gap check due at iteration {t} but the observer returned none"
                )));
            }
            if gap.is_some() {
                final_gap = gap;
            }
            trace.push(IterationRecord {
                t,
                l: state.l(),
                f_u: state.f_u(),
                beta: state.beta(),
                gap,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            });
            if converged(gap) {
                status = RunStatus::Converged { iteration: t };
                break;
            }
        }

        Ok(RunOutput {
            solution: state.u().to_vec(),
            state,
            trace,
            certificates,
            status,
            final_gap,
        })
    }

    /// [`run`](Self::run) without gap checks or observer.
    pub fn run_iterations(&self, max_iters: usize, certify: bool) -> Result<OutputOf<S, O>> {
        self.run(&StopRule::iterations(max_iters), certify, |_, _| Ok(None))
    }
}
