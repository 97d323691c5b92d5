use std::str::FromStr;

use crate::error::{Error, Result};

/// Which worst-case guarantee to evaluate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundVariant {
    NonAdaptive,
    Aggressive,
    Hybrid { alpha: f64 },
}

impl FromStr for BoundVariant {
    type Err = Error;

    /// Accepts `nonadaptive`, `aggressive` and `hybrid:<alpha>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonadaptive" => Ok(BoundVariant::NonAdaptive),
            "aggressive" => Ok(BoundVariant::Aggressive),
            _ => {
                let alpha = s
                    .strip_prefix("hybrid:")
                    .and_then(|a| a.parse::<f64>().ok())
                    .filter(|a| *a >= 0.0)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown bound variant '{s}'")))?;
                Ok(BoundVariant::Hybrid { alpha })
            }
        }
    }
}

/// Worst-case bound on `f(u_T) - f*` after `T` iterations for gradient
/// constant `l` and DGF bound `d`:
///
/// * non-adaptive: `4 L D / ((T+1)(T+2))`
/// * aggressive: `20 L D / (T+2)`
/// * hybrid: `4 (1 + alpha) L D / ((T+1)(T+2))`
pub fn theoretical_bound(iterations: usize, variant: BoundVariant, l: f64, d: f64) -> f64 {
    let t = iterations as f64;
    match variant {
        BoundVariant::NonAdaptive => 4.0 * l * d / ((t + 1.0) * (t + 2.0)),
        BoundVariant::Aggressive => 20.0 * l * d / (t + 2.0),
        BoundVariant::Hybrid { alpha } => 4.0 * (1.0 + alpha) * l * d / ((t + 1.0) * (t + 2.0)),
    }
}

/// Smallest `T` for which [`theoretical_bound`] drops below `eps`:
/// `ceil(2 sqrt((1 + alpha) L D / eps) - 1)` for the non-adaptive (`alpha = 0`)
/// and hybrid variants, `ceil(20 L D / eps - 2)` for the aggressive one.
pub fn iterations_for_accuracy(variant: BoundVariant, l: f64, d: f64, eps: f64) -> Result<usize> {
    if !(eps > 0.0 && l > 0.0 && d >= 0.0) {
        return Err(Error::InvalidInput(
            "need eps > 0, L > 0 and D >= 0".into(),
        ));
    }
    let raw = match variant {
        BoundVariant::NonAdaptive => 2.0 * (l * d / eps).sqrt() - 1.0,
        BoundVariant::Hybrid { alpha } => 2.0 * ((1.0 + alpha) * l * d / eps).sqrt() - 1.0,
        BoundVariant::Aggressive => 20.0 * l * d / eps - 2.0,
    };
    Ok(raw.ceil().max(0.0) as usize)
}
