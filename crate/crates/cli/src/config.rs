use std::path::PathBuf;

use afom_core::LipschitzStrategy;
use anyhow::{bail, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

/// Lipschitz strategy selector for the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Nonadaptive,
    Aggressive,
    Hybrid,
}

impl StrategyKind {
    pub fn is_adaptive(self) -> bool {
        self != StrategyKind::Nonadaptive
    }

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Nonadaptive => "nonadaptive",
            StrategyKind::Aggressive => "aggressive",
            StrategyKind::Hybrid => "hybrid",
        }
    }
}

/// One benchmark configuration.
///
/// Instances come from `instance` when set, otherwise repeat `r` generates
/// `(m, n, density)` with seed `seed + r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub m: usize,
    pub n: usize,
    pub density: f64,
    /// Relative accuracy; runs stop at a duality gap of `eps * L'`.
    pub eps: f64,
    pub strategy: StrategyKind,
    pub alpha: f64,
    pub kappa: f64,
    pub seed: u64,
    pub repeats: usize,
    pub gap_check_period: usize,
    /// Also check the gap at each of the first 100 iterations.
    pub check_first_hundred: bool,
    /// Overrides the worst-case iteration budget.
    pub max_iters: Option<usize>,
    pub instance: Option<PathBuf>,
    pub trace: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

pub const DEFAULT_EPS: f64 = 0.002;
pub const DEFAULT_ALPHA: f64 = 3.0;
pub const DEFAULT_KAPPA: f64 = 1e-12;
pub const DEFAULT_REPEATS: usize = 10;
pub const DEFAULT_GAP_CHECK_PERIOD: usize = 100;
pub const DEFAULT_DENSITY: f64 = 0.1;
/// Number of leading iterations checked individually when enabled.
pub const DENSE_PREFIX: usize = 100;

impl RunConfig {
    /// Defaults for everything but the problem size, seed and strategy.
    pub fn new(m: usize, n: usize, seed: u64, strategy: StrategyKind) -> Self {
        RunConfig {
            m,
            n,
            density: DEFAULT_DENSITY,
            eps: DEFAULT_EPS,
            strategy,
            alpha: DEFAULT_ALPHA,
            kappa: DEFAULT_KAPPA,
            seed,
            repeats: DEFAULT_REPEATS,
            gap_check_period: DEFAULT_GAP_CHECK_PERIOD,
            check_first_hundred: strategy.is_adaptive(),
            max_iters: None,
            instance: None,
            trace: None,
            report: None,
        }
    }

    /// The same configuration with another strategy; the dense early gap
    /// checks follow the strategy's default.
    pub fn with_strategy(&self, strategy: StrategyKind) -> Self {
        RunConfig {
            strategy,
            check_first_hundred: strategy.is_adaptive(),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps.is_finite() && self.eps > 0.0) {
            bail!("eps must be positive, got {}", self.eps);
        }
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            bail!("alpha must be >= 0, got {}", self.alpha);
        }
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            bail!("kappa must lie in (0, 1), got {}", self.kappa);
        }
        if self.repeats == 0 {
            bail!("repeats must be >= 1");
        }
        if self.gap_check_period == 0 {
            bail!("gap check period must be >= 1");
        }
        if self.instance.is_none() {
            if self.m < 2 || self.n < 2 {
                bail!("need m >= 2 and n >= 2, got m = {}, n = {}", self.m, self.n);
            }
            if !(self.density > 0.0 && self.density <= 1.0) {
                bail!("density must lie in (0, 1], got {}", self.density);
            }
        }
        Ok(())
    }

    pub fn lipschitz_strategy(&self) -> LipschitzStrategy {
        match self.strategy {
            StrategyKind::Nonadaptive => LipschitzStrategy::NonAdaptive,
            StrategyKind::Aggressive => LipschitzStrategy::Aggressive { kappa: self.kappa },
            StrategyKind::Hybrid => LipschitzStrategy::Hybrid {
                alpha: self.alpha,
                kappa: self.kappa,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::new(20, 100, 7, StrategyKind::Hybrid);
        assert_eq!(c.eps, 0.002);
        assert_eq!(c.alpha, 3.0);
        assert_eq!(c.kappa, 1e-12);
        assert_eq!(c.repeats, 10);
        assert_eq!(c.gap_check_period, 100);
        assert!(c.check_first_hundred);
        assert!(!c.with_strategy(StrategyKind::Nonadaptive).check_first_hundred);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_invalid_values() {
        let base = RunConfig::new(5, 10, 0, StrategyKind::Aggressive);
        let bad = [
            RunConfig { eps: 0.0, ..base.clone() },
            RunConfig { alpha: -1.0, ..base.clone() },
            RunConfig { kappa: 1.0, ..base.clone() },
            RunConfig { kappa: 0.0, ..base.clone() },
            RunConfig { repeats: 0, ..base.clone() },
            RunConfig { density: 0.0, ..base.clone() },
            RunConfig { m: 1, ..base.clone() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
