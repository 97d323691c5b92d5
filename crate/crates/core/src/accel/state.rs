use crate::accel::certificate::Certificate;
use crate::accel::schedule::GammaSchedule;
use crate::accel::strategy::{aggressive_lipschitz, hybrid_monitor, LipschitzStrategy, MonitorDecision};
use crate::accel::{Evaluation, Objective};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{axpy, convex_combination, dot, scaled, sub};
use crate::prox::{Anchor, ProxSetup};

/// Absolute slack allowed when checking that iterates stay feasible.
const FEASIBILITY_TOL: f64 = 1e-9;

/// One term of the `chi` accumulator, recorded at iteration `t >= 1`:
/// `chi_t - chi_{t-1} = (L_t - L_{t-1}) (d(z_t) - |z_{t-1} - xhat_t|^2 / 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiTerm {
    pub l: f64,
    pub dgf_z: f64,
    pub half_sq_dist: f64,
}

/// Points computed ahead of the loop body that will consume them.
#[derive(Clone, Debug)]
struct Lookahead<A> {
    x: Vec<f64>,
    eval: Evaluation<A>,
    x_hat: Vec<f64>,
    u: Vec<f64>,
    f_u: f64,
}

/// Iterate bundle after loop body `t` (or after initialization for `t = 0`).
///
/// Everything indexed by `t` is final: `L_t`, `z_t`, `chi_t`, `u_t`, the
/// accumulated linear minorant up to `x_t`. The points `x_{t+1}`,
/// `xhat_{t+1}` and `u_{t+1}` are already computed and wait in the lookahead.
#[derive(Clone, Debug)]
pub struct SolverState<Z, A> {
    t: usize,
    l_global: f64,
    diameter: f64,
    l: f64,
    x: Vec<f64>,
    eval_x: Evaluation<A>,
    u: Vec<f64>,
    f_u: f64,
    z: Z,
    x_hat: Option<Vec<f64>>,
    // Minorant sum_k gamma_k (f(x_k) + <g_k, . - x_k>) = <grad_sum, .> + offset.
    grad_sum: Vec<f64>,
    offset: f64,
    chi: f64,
    chi_terms: Vec<ChiTerm>,
    next: Lookahead<A>,
    switched_back_at: Option<usize>,
    monitored_beta: Option<f64>,
    descent_slack: Option<f64>,
}

impl<Z: Anchor, A: Clone> SolverState<Z, A> {
    pub fn t(&self) -> usize {
        self.t
    }

    /// Current local Lipschitz estimate `L_t`.
    pub fn l(&self) -> f64 {
        self.l
    }

    /// Global constant `L = L_0`.
    pub fn l_global(&self) -> f64 {
        self.l_global
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Oracle output at `x_t`.
    pub fn evaluation(&self) -> &Evaluation<A> {
        &self.eval_x
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn f_u(&self) -> f64 {
        self.f_u
    }

    pub fn z(&self) -> &[f64] {
        self.z.point()
    }

    pub fn z_anchor(&self) -> &Z {
        &self.z
    }

    /// `xhat_t`; absent at `t = 0`.
    pub fn x_hat(&self) -> Option<&[f64]> {
        self.x_hat.as_deref()
    }

    /// `s_t = sum_{k <= t} gamma_k grad f(x_k)`.
    pub fn grad_sum(&self) -> &[f64] {
        &self.grad_sum
    }

    /// `sum_{k <= t} gamma_k (f(x_k) - <grad f(x_k), x_k>)`.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn chi_terms(&self) -> &[ChiTerm] {
        &self.chi_terms
    }

    /// `chi_t` re-summed from the recorded terms.
    pub fn recompute_chi(&self) -> f64 {
        let mut prev_l = self.l_global;
        let mut chi = 0.0;
        for term in &self.chi_terms {
            chi += (term.l - prev_l) * (term.dgf_z - term.half_sq_dist);
            prev_l = term.l;
        }
        chi
    }

    /// `beta_t = -chi_t / (D L_0)`; zero (never `-0.0`) when `chi_t = 0` or
    /// `D = 0`.
    pub fn beta(&self) -> f64 {
        let denom = self.diameter * self.l_global;
        if denom > 0.0 && self.chi != 0.0 {
            -self.chi / denom
        } else {
            0.0
        }
    }

    /// Iteration at which the hybrid strategy fell back to `L`, if it did.
    pub fn switched_back_at(&self) -> Option<usize> {
        self.switched_back_at
    }

    /// The `beta` value the hybrid monitor saw at this iteration, before any
    /// switch-back recomputation.
    pub fn monitored_beta(&self) -> Option<f64> {
        self.monitored_beta
    }

    /// `f(x_t) + <g, u_t - x_t> + L_t/2 |u_t - x_t|^2 - f(u_t)`; the descent
    /// condition requires this to be nonnegative. Absent at `t = 0`.
    pub fn descent_slack(&self) -> Option<f64> {
        self.descent_slack
    }

    /// `u_{t+1}`, already computed.
    pub fn next_u(&self) -> &[f64] {
        &self.next.u
    }

    pub fn next_x(&self) -> &[f64] {
        &self.next.x
    }
}

/// The accelerated method bound to an objective, a prox setup, a Lipschitz
/// strategy and the global constant `L`.
pub struct AcceleratedMethod<'a, S, O> {
    setup: &'a S,
    objective: &'a O,
    strategy: LipschitzStrategy,
    l_global: f64,
    schedule: GammaSchedule,
}

pub type StateOf<S, O> = SolverState<<S as ProxSetup>::Anchor, <O as Objective>::Aux>;

impl<'a, S: ProxSetup, O: Objective> AcceleratedMethod<'a, S, O> {
    pub fn new(
        setup: &'a S,
        objective: &'a O,
        strategy: LipschitzStrategy,
        l_global: f64,
        schedule: GammaSchedule,
    ) -> Result<Self> {
        if !(l_global.is_finite() && l_global > 0.0) {
            return Err(Error::InvalidInput(format!(
                "global Lipschitz constant must be positive, got {l_global}"
            )));
        }
        strategy.validate()?;
        check_dim(setup.dim(), objective.dim())?;
        Ok(AcceleratedMethod {
            setup,
            objective,
            strategy,
            l_global,
            schedule,
        })
    }

    pub fn setup(&self) -> &S {
        self.setup
    }

    pub fn objective(&self) -> &O {
        self.objective
    }

    pub fn strategy(&self) -> LipschitzStrategy {
        self.strategy
    }

    pub fn l_global(&self) -> f64 {
        self.l_global
    }

    pub fn schedule(&self) -> GammaSchedule {
        self.schedule
    }

    fn check_feasible(&self, what: &str, p: &[f64]) -> Result<()> {
        if self.setup.contains(p, FEASIBILITY_TOL) {
            Ok(())
        } else {
            Err(Error::Internal(format!("{what} left the feasible set")))
        }
    }

    /// From `z_t`, `u_t` and `L_t`: `x_{t+1}`, its oracle output,
    /// `xhat_{t+1} = Prox_{z_t}(gamma_{t+1} g_{t+1} / L_t)` and `u_{t+1}`.
    fn lookahead(&self, t: usize, z: &S::Anchor, u: &[f64], l: f64) -> Result<Lookahead<O::Aux>> {
        let tau = self.schedule.tau(t);
        let x = convex_combination(tau, z.point(), u);
        self.check_feasible("x", &x)?;
        let eval = self.objective.evaluate(&x)?;
        let step = scaled(&eval.gradient, self.schedule.gamma(t + 1) / l);
        let x_hat = self.setup.prox(z, &step)?.point().to_vec();
        let u_next = convex_combination(tau, &x_hat, u);
        self.check_feasible("u", &u_next)?;
        let f_u = self.objective.value(&u_next)?;
        Ok(Lookahead {
            x,
            eval,
            x_hat,
            u: u_next,
            f_u,
        })
    }

    /// Initialization: `x_0 = c`, `u_0 = z_0` minimizing the first linear
    /// model plus `L d`, and the lookahead `x_1 = z_0`, `xhat_1`, `u_1`.
    pub fn init(&self) -> Result<StateOf<S, O>> {
        let x0 = self.setup.center();
        let eval0 = self.objective.evaluate(&x0)?;
        check_dim(x0.len(), eval0.gradient.len())?;
        let gamma0 = self.schedule.gamma(0);
        let grad_sum = scaled(&eval0.gradient, gamma0);
        let offset = gamma0 * (eval0.value - dot(&eval0.gradient, &x0));
        let z0 = self
            .setup
            .prox(&self.setup.center_anchor(), &scaled(&grad_sum, 1.0 / self.l_global))?;
        let u0 = z0.point().to_vec();
        let f_u0 = self.objective.value(&u0)?;
        // tau_0 z_0 + (1 - tau_0) u_0 collapses to z_0 because u_0 = z_0.
        let next = self.lookahead(0, &z0, &u0, self.l_global)?;
        Ok(SolverState {
            t: 0,
            l_global: self.l_global,
            diameter: self.setup.diameter_bound(),
            l: self.l_global,
            x: x0,
            eval_x: eval0,
            u: u0,
            f_u: f_u0,
            z: z0,
            x_hat: None,
            grad_sum,
            offset,
            chi: 0.0,
            chi_terms: Vec::new(),
            next,
            switched_back_at: None,
            monitored_beta: None,
            descent_slack: None,
        })
    }

    fn z_for(&self, grad_sum: &[f64], l: f64) -> Result<S::Anchor> {
        self.setup
            .prox(&self.setup.center_anchor(), &scaled(grad_sum, 1.0 / l))
    }

    /// Executes loop body `t + 1`.
    pub fn step(&self, state: &mut StateOf<S, O>) -> Result<()> {
        let t = state.t + 1;
        let prev_l = state.l;
        let prev_z = state.z.point().to_vec();
        let Lookahead {
            x,
            eval,
            x_hat,
            u,
            f_u,
        } = state.next.clone();

        let gamma = self.schedule.gamma(t);
        axpy(&mut state.grad_sum, gamma, &eval.gradient);
        state.offset += gamma * (eval.value - dot(&eval.gradient, &x));

        let adaptive = state.switched_back_at.is_none();
        let mut l = match self.strategy {
            LipschitzStrategy::NonAdaptive => self.l_global,
            LipschitzStrategy::Aggressive { kappa } | LipschitzStrategy::Hybrid { kappa, .. }
                if adaptive =>
            {
                aggressive_lipschitz(
                    f_u,
                    eval.value,
                    &eval.gradient,
                    &u,
                    &x,
                    kappa,
                    self.l_global,
                    self.setup.norm_kind(),
                )
            }
            _ => self.l_global,
        };

        let diff = sub(&prev_z, &x_hat);
        let half_sq_dist = 0.5 * self.setup.norm(&diff).powi(2);
        let mut z = self.z_for(&state.grad_sum, l)?;
        let mut dgf_z = self.setup.dgf(z.point());
        let mut chi = state.chi + (l - prev_l) * (dgf_z - half_sq_dist);

        state.monitored_beta = None;
        if let LipschitzStrategy::Hybrid { alpha, .. } = self.strategy {
            if adaptive {
                let denom = state.diameter * self.l_global;
                state.monitored_beta = Some(if denom > 0.0 { -chi / denom } else { 0.0 });
                if hybrid_monitor(chi, alpha, self.l_global, state.diameter)
                    == MonitorDecision::SwitchBack
                {
                    l = self.l_global;
                    z = self.z_for(&state.grad_sum, l)?;
                    dgf_z = self.setup.dgf(z.point());
                    chi = state.chi + (l - prev_l) * (dgf_z - half_sq_dist);
                    state.switched_back_at = Some(t);
                }
            }
        }

        let du = sub(&u, &x);
        let dist = self.setup.norm(&du);
        state.descent_slack =
            Some(eval.value + dot(&eval.gradient, &du) + 0.5 * l * dist * dist - f_u);

        let next = self.lookahead(t, &z, &u, l)?;

        state.t = t;
        state.l = l;
        state.x = x;
        state.eval_x = eval;
        state.u = u;
        state.f_u = f_u;
        state.z = z;
        state.x_hat = Some(x_hat);
        state.chi = chi;
        state.chi_terms.push(ChiTerm {
            l,
            dgf_z,
            half_sq_dist,
        });
        state.next = next;
        Ok(())
    }

    /// Evaluates both sides of the potential inequality at the state's
    /// iteration `t`:
    /// `Gamma_t f(u_t) + chi_t <= psi_t = min_x { minorant_t(x) + L_t d(x) }`,
    /// where the minimum is attained at `z_t`.
    pub fn certificate(&self, state: &StateOf<S, O>) -> Certificate {
        let z = state.z.point();
        let psi = state.offset + dot(&state.grad_sum, z) + state.l * self.setup.dgf(z);
        let lhs = self.schedule.cumulative(state.t) * state.f_u + state.chi;
        Certificate::new(state.t, psi, lhs)
    }
}
