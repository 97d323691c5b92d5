use crate::error::{Error, Result};
use crate::linalg::{dot, sub};
use crate::prox::NormKind;

/// How the local Lipschitz estimate `L_t` is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LipschitzStrategy {
    /// `L_t = L` throughout.
    NonAdaptive,
    /// The smallest constant that satisfies the descent condition at the
    /// current points, clamped to `[kappa * L, L]`.
    Aggressive { kappa: f64 },
    /// Aggressive while `-chi_t <= alpha * L * D`, then permanently `L`.
    Hybrid { alpha: f64, kappa: f64 },
}

impl LipschitzStrategy {
    pub fn validate(&self) -> Result<()> {
        let kappa_ok = |k: f64| k > 0.0 && k < 1.0;
        match *self {
            LipschitzStrategy::NonAdaptive => Ok(()),
            LipschitzStrategy::Aggressive { kappa } if kappa_ok(kappa) => Ok(()),
            LipschitzStrategy::Hybrid { alpha, kappa } if kappa_ok(kappa) && alpha >= 0.0 => {
                Ok(())
            }
            _ => Err(Error::InvalidInput(format!(
                "invalid Lipschitz strategy {self:?}: need kappa in (0,1) and alpha >= 0"
            ))),
        }
    }

    pub fn is_adaptive(&self) -> bool {
        !matches!(self, LipschitzStrategy::NonAdaptive)
    }
}

/// Most aggressive admissible local constant,
/// `max(Lbar, kappa * L)` capped at `L`, where
/// `Lbar = 2 [f(u) - f(x) - <grad f(x), u - x>] / ||u - x||^2`.
///
/// When `u == x` the descent condition holds for every constant and the lower
/// clamp `kappa * L` is returned.
#[allow(clippy::too_many_arguments)]
pub fn aggressive_lipschitz(
    f_u: f64,
    f_x: f64,
    grad_x: &[f64],
    u: &[f64],
    x: &[f64],
    kappa: f64,
    l_global: f64,
    norm: NormKind,
) -> f64 {
    let floor = kappa * l_global;
    let diff = sub(u, x);
    let dist = norm.norm(&diff);
    if dist == 0.0 {
        return floor;
    }
    let l_bar = 2.0 * (f_u - f_x - dot(grad_x, &diff)) / (dist * dist);
    // f64::max ignores a NaN estimate.
    l_bar.max(floor).min(l_global)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonitorDecision {
    ContinueAdaptive,
    SwitchBack,
}

/// Switch-back test of the hybrid strategy: fires exactly when
/// `-chi > alpha * l0 * diameter`, i.e. when `beta = -chi / (diameter * l0)`
/// exceeds `alpha`.
pub fn hybrid_monitor(chi: f64, alpha: f64, l0: f64, diameter: f64) -> MonitorDecision {
    if -chi > alpha * l0 * diameter {
        MonitorDecision::SwitchBack
    } else {
        MonitorDecision::ContinueAdaptive
    }
}
