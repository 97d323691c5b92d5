use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use afom_core::accel::GapCheck;
use afom_core::eigopt::{generate_instance, relative_accuracy_mu};
use afom_core::{EigInstance, EigProblem, EntropySimplex, IterationRecord, RunStatus, StopRule};
use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, StrategyKind, DENSE_PREFIX};
use crate::trace::emit_trace;

/// Worst-case iteration count of the non-adaptive (`alpha = 0`) and hybrid
/// methods for relative accuracy `eps_rel`:
/// `ceil(4 sqrt((1 + alpha) ln m ln n) / eps_rel - 1)`.
///
/// The absolute target is `eps_rel * L'` and `L'` cancels.
pub fn worst_case_iterations(eps_rel: f64, m: usize, n: usize, alpha: f64) -> Result<usize> {
    check_budget_inputs(eps_rel, m, n)?;
    if !(alpha >= 0.0) {
        bail!("alpha must be >= 0, got {alpha}");
    }
    let (lm, ln) = ((m as f64).ln(), (n as f64).ln());
    let raw = 4.0 * ((1.0 + alpha) * lm * ln).sqrt() / eps_rel - 1.0;
    Ok(raw.ceil().max(0.0) as usize)
}

/// Worst-case iteration count of the most aggressive method at the same
/// smoothness parameter, from the smoothed guarantee `20 D1 L_mu / (T + 1)`:
/// `ceil(80 ln m ln n / eps_rel^2 - 1)`.
pub fn aggressive_worst_case_iterations(eps_rel: f64, m: usize, n: usize) -> Result<usize> {
    check_budget_inputs(eps_rel, m, n)?;
    let raw = 80.0 * (m as f64).ln() * (n as f64).ln() / (eps_rel * eps_rel) - 1.0;
    Ok(raw.ceil().max(0.0) as usize)
}

fn check_budget_inputs(eps_rel: f64, m: usize, n: usize) -> Result<()> {
    if !(eps_rel.is_finite() && eps_rel > 0.0) {
        bail!("eps must be positive, got {eps_rel}");
    }
    if m < 1 || n < 1 {
        bail!("need m, n >= 1");
    }
    Ok(())
}

/// Theory budget for the configured strategy on an `m x n` instance.
pub fn theory_iterations(config: &RunConfig, m: usize, n: usize) -> Result<usize> {
    match config.strategy {
        StrategyKind::Nonadaptive => worst_case_iterations(config.eps, m, n, 0.0),
        StrategyKind::Hybrid => worst_case_iterations(config.eps, m, n, config.alpha),
        StrategyKind::Aggressive => aggressive_worst_case_iterations(config.eps, m, n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepeatStatus {
    Converged,
    BudgetExhausted,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepeatReport {
    pub repeat: usize,
    pub seed: u64,
    pub status: RepeatStatus,
    pub iterations_practice: Option<usize>,
    pub iterations_theory: Option<usize>,
    pub wall_ms: f64,
    pub final_gap: Option<f64>,
    pub target_gap: Option<f64>,
    pub l_prime: Option<f64>,
    pub mu: Option<f64>,
    pub switch_back_iteration: Option<usize>,
    /// Where the per-iteration trace (including `beta_t`) was written.
    pub trace_path: Option<PathBuf>,
    pub error: Option<String>,
}

impl RepeatReport {
    fn failed(repeat: usize, seed: u64, wall_ms: f64, error: String) -> Self {
        RepeatReport {
            repeat,
            seed,
            status: RepeatStatus::Failed,
            iterations_practice: None,
            iterations_theory: None,
            wall_ms,
            final_gap: None,
            target_gap: None,
            l_prime: None,
            mu: None,
            switch_back_iteration: None,
            trace_path: None,
            error: Some(error),
        }
    }

    /// `true` for a repeat that reached its gap target.
    pub fn converged(&self) -> bool {
        self.status == RepeatStatus::Converged
    }
}

/// Averages over the repeats that did not fail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Averages {
    pub completed: usize,
    pub converged: usize,
    pub iterations_practice: Option<f64>,
    pub iterations_theory: Option<f64>,
    pub wall_ms: Option<f64>,
    pub final_gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub repeats: Vec<RepeatReport>,
    pub averages: Averages,
}

impl RunReport {
    pub fn all_converged(&self) -> bool {
        self.repeats.iter().all(RepeatReport::converged)
    }

    pub fn any_failed(&self) -> bool {
        self.repeats.iter().any(|r| r.status == RepeatStatus::Failed)
    }

    /// The report with every wall-clock field zeroed, for comparing runs.
    pub fn without_timings(&self) -> RunReport {
        let mut out = self.clone();
        for r in &mut out.repeats {
            r.wall_ms = 0.0;
        }
        out.averages.wall_ms = None;
        out
    }
}

/// A single solve: the report row plus the full iteration trace.
#[derive(Clone, Debug)]
pub struct RepeatOutcome {
    pub report: RepeatReport,
    pub trace: Vec<IterationRecord>,
}

/// Solves one instance with the configured strategy.
///
/// `mu = eps L' / (2 ln n)`, the gap of `(u_t, ybar_t)` is checked every
/// `gap_check_period` iterations (and at each of the first 100 when enabled),
/// and the run stops at a gap `<= eps L'` or after the iteration budget.
pub fn run_single(config: &RunConfig, instance: &EigInstance, repeat: usize) -> Result<RepeatOutcome> {
    config.validate()?;
    let start = Instant::now();
    let (m, n) = (instance.m(), instance.n());
    let l_prime = instance.l_prime();
    let theory = theory_iterations(config, m, n)?;
    let mu = relative_accuracy_mu(config.eps, l_prime, n)?;
    let target = config.eps * l_prime;
    let problem = EigProblem::new(instance)?;
    let setup = EntropySimplex::new(m)?;
    let stop = StopRule {
        max_iters: config.max_iters.unwrap_or(theory),
        gap_check: Some(GapCheck {
            period: config.gap_check_period,
            dense_prefix: if config.check_first_hundred { DENSE_PREFIX } else { 0 },
            target,
        }),
    };
    let out = afom_core::smoothing::solve_smoothed(
        &problem,
        &setup,
        mu,
        config.lipschitz_strategy(),
        &stop,
        false,
    )?;
    let run = out.run;
    let (status, practice) = match run.status {
        RunStatus::Converged { iteration } => (RepeatStatus::Converged, iteration),
        RunStatus::BudgetExhausted => (RepeatStatus::BudgetExhausted, run.state.t()),
    };
    let report = RepeatReport {
        repeat,
        seed: instance.seed(),
        status,
        iterations_practice: Some(practice),
        iterations_theory: Some(theory),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        final_gap: run.final_gap,
        target_gap: Some(target),
        l_prime: Some(l_prime),
        mu: Some(mu),
        switch_back_iteration: run.state.switched_back_at(),
        trace_path: None,
        error: None,
    };
    Ok(RepeatOutcome {
        report,
        trace: run.trace,
    })
}

/// Trace file of repeat `r`: the configured path itself for a single repeat,
/// `stem.r<r>.ext` otherwise.
pub fn trace_path_for(base: &Path, repeat: usize, repeats: usize) -> PathBuf {
    if repeats == 1 {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.r{repeat}.{}", ext.to_string_lossy()),
        None => format!("{stem}.r{repeat}"),
    };
    base.with_file_name(name)
}

fn instance_for(config: &RunConfig, loaded: Option<&EigInstance>, repeat: usize) -> Result<EigInstance> {
    match loaded {
        Some(instance) => Ok(instance.clone()),
        None => Ok(generate_instance(
            config.m,
            config.n,
            config.density,
            config.seed.wrapping_add(repeat as u64),
        )?),
    }
}

/// Runs every repeat of `config`, writing traces and the JSON report when
/// their paths are set.
///
/// A repeat whose generation or solve fails is recorded as failed and the
/// benchmark continues; I/O failures abort.
pub fn run_benchmark(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let loaded = match &config.instance {
        Some(path) => Some(
            EigInstance::load(path).with_context(|| format!("loading instance {}", path.display()))?,
        ),
        None => None,
    };

    let mut repeats = Vec::with_capacity(config.repeats);
    for r in 0..config.repeats {
        let start = Instant::now();
        let seed = loaded.as_ref().map_or(config.seed.wrapping_add(r as u64), |i| i.seed());
        let outcome = instance_for(config, loaded.as_ref(), r)
            .and_then(|instance| run_single(config, &instance, r));
        let report = match outcome {
            Ok(mut outcome) => {
                if let Some(base) = &config.trace {
                    let path = trace_path_for(base, r, config.repeats);
                    emit_trace(&outcome.trace, &path)?;
                    outcome.report.trace_path = Some(path);
                }
                outcome.report
            }
            Err(e) => RepeatReport::failed(r, seed, start.elapsed().as_secs_f64() * 1e3, format!("{e:#}")),
        };
        repeats.push(report);
    }

    let report = RunReport {
        config: config.clone(),
        averages: averages(&repeats),
        repeats,
    };
    if let Some(path) = &config.report {
        write_json(&report, path)?;
    }
    Ok(report)
}

fn averages(repeats: &[RepeatReport]) -> Averages {
    let done: Vec<&RepeatReport> = repeats.iter().filter(|r| r.status != RepeatStatus::Failed).collect();
    let mean = |f: &dyn Fn(&RepeatReport) -> Option<f64>| {
        let vals: Vec<f64> = done.iter().filter_map(|r| f(r)).collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    };
    Averages {
        completed: done.len(),
        converged: done.iter().filter(|r| r.converged()).count(),
        iterations_practice: mean(&|r| r.iterations_practice.map(|v| v as f64)),
        iterations_theory: mean(&|r| r.iterations_theory.map(|v| v as f64)),
        wall_ms: mean(&|r| Some(r.wall_ms)),
        final_gap: mean(&|r| r.final_gap),
    }
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_case_counts() {
        let w = |m, n, alpha| worst_case_iterations(0.002, m, n, alpha).unwrap();
        assert_eq!(w(100, 100, 0.0), 9210);
        assert_eq!(w(100, 100, 3.0), 18420);
        assert_eq!(w(100, 200, 0.0), 9879);
        assert_eq!(w(100, 200, 3.0), 19758);
        assert_eq!(w(100, 400, 0.0), 10505);
        assert_eq!(w(100, 800, 3.0), 22193);
        assert!(worst_case_iterations(0.0, 10, 10, 0.0).is_err());
        assert!(worst_case_iterations(0.1, 10, 10, -1.0).is_err());
    }

    #[test]
    fn aggressive_budget_matches_bound() {
        // 20 L D / (T + 2) with L = L'^2 / mu, D = ln m and mu = eps L' / (2 ln n)
        // must drop to eps L' / 2 at the budget.
        let (eps, m, n) = (0.05, 7, 13);
        let t = aggressive_worst_case_iterations(eps, m, n).unwrap();
        let mu = eps / (2.0 * (n as f64).ln());
        let smooth_part = |t: usize| 20.0 * (m as f64).ln() / mu / (t as f64 + 1.0);
        assert!(smooth_part(t) <= eps / 2.0 * (1.0 + 1e-12));
        assert!(smooth_part(t - 1) > eps / 2.0);
    }

    #[test]
    fn trace_paths() {
        let base = Path::new("/tmp/out/trace.csv");
        assert_eq!(trace_path_for(base, 0, 1), base);
        assert_eq!(trace_path_for(base, 3, 10), Path::new("/tmp/out/trace.r3.csv"));
        assert_eq!(trace_path_for(Path::new("t"), 1, 2), Path::new("t.r1"));
    }
}
