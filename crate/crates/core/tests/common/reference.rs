//! Independent oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls into the solver; the closed forms are re-derived with
//! plain slices so that agreement with the library is meaningful.

/// Minimizer and minimum of `1/2 sum_i w_i (x_i - p_i)^2` over the simplex.
///
/// KKT gives `x_i = max(0, p_i - lambda / w_i)` with `lambda` fixed by
/// `sum x_i = 1`; the sum is decreasing in `lambda`, so bisection converges to
/// machine precision.
pub fn simplex_quadratic_minimum(weights: &[f64], target: &[f64]) -> (Vec<f64>, f64) {
    let point = |lambda: f64| -> Vec<f64> {
        weights
            .iter()
            .zip(target)
            .map(|(w, p)| (p - lambda / w).max(0.0))
            .collect()
    };
    let total = |lambda: f64| point(lambda).iter().sum::<f64>();
    let mut lo = -1.0;
    while total(lo) < 1.0 {
        lo *= 2.0;
    }
    let mut hi = 1.0;
    while total(hi) > 1.0 {
        hi *= 2.0;
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if total(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = point(0.5 * (lo + hi));
    let s: f64 = x.iter().sum();
    for v in &mut x {
        *v /= s;
    }
    let f = quadratic_value(weights, target, &x);
    (x, f)
}

pub fn quadratic_value(weights: &[f64], target: &[f64], x: &[f64]) -> f64 {
    0.5 * x
        .iter()
        .zip(target)
        .zip(weights)
        .map(|((xi, pi), wi)| wi * (xi - pi) * (xi - pi))
        .sum::<f64>()
}

pub fn quadratic_gradient(weights: &[f64], target: &[f64], x: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(target)
        .zip(weights)
        .map(|((xi, pi), wi)| wi * (xi - pi))
        .collect()
}

/// `ln m + sum x ln x` with `0 ln 0 = 0`.
pub fn entropy(x: &[f64]) -> f64 {
    (x.len() as f64).ln()
        + x.iter()
            .filter(|v| **v > 0.0)
            .map(|v| v * v.ln())
            .sum::<f64>()
}

pub fn norm1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

fn softmax_of(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = logits.iter().map(|l| (l - max).exp()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// Logarithms of `softmax_of(logits)`, finite for finite logits.
fn log_softmax_of(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + logits.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
    logits.iter().map(|l| l - lse).collect()
}

/// `argmin_x { <s, x> + V_z(x) }` on the simplex: `x_i ~ z_i exp(-s_i)`.
pub fn entropy_prox(z: &[f64], s: &[f64]) -> Vec<f64> {
    let logits: Vec<f64> = z
        .iter()
        .zip(s)
        .map(|(zi, si)| if *zi > 0.0 { zi.ln() - si } else { f64::NEG_INFINITY })
        .collect();
    softmax_of(&logits)
}

/// Lipschitz rule of the reference run.
#[derive(Clone, Debug)]
pub enum RefRule {
    Constant,
    Aggressive { kappa: f64 },
    Hybrid { alpha: f64, kappa: f64 },
    /// `L_t = ls[t - 1]` for `t >= 1`, e.g. replayed from another run.
    Replay(Vec<f64>),
}

/// Iterates of the reference run, indexed by `t = 0..=T`.
#[derive(Clone, Debug, Default)]
pub struct RefTrace {
    pub u: Vec<Vec<f64>>,
    pub z: Vec<Vec<f64>>,
    pub l: Vec<f64>,
    pub chi: Vec<f64>,
    pub switched_at: Option<usize>,
}

/// A direct transcription of the accelerated scheme on the simplex with the
/// entropy DGF and the 1-norm, written without the library. Prox anchors are
/// carried as log-weights: with tiny `L_t` the points `z_t` are so peaked that
/// their small coordinates underflow, and anchoring at an underflowed point
/// would pin those coordinates to zero for good.
///
/// ```text
/// x_0 = c, z_0 = u_0 = argmin gamma_0 <g_0, x> + L d(x), x_1 = z_0
/// t >= 1: s_t = sum gamma_k g_k, L_t by rule, z_t = Prox_c(s_t / L_t),
///         chi_t += (L_t - L_{t-1}) (d(z_t) - |z_{t-1} - xhat_t|_1^2 / 2)
/// t >= 0: x_{t+1} = tau_t z_t + (1 - tau_t) u_t,
///         xhat_{t+1} = Prox_{z_t}(gamma_{t+1} g_{t+1} / L_t),
///         u_{t+1} = tau_t xhat_{t+1} + (1 - tau_t) u_t
/// ```
pub fn reference_run<F>(oracle: F, m: usize, l0: f64, rule: &RefRule, iters: usize) -> RefTrace
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let gamma = |t: usize| (t as f64 + 1.0) / 2.0;
    let tau = |t: usize| 2.0 / (t as f64 + 3.0);
    let comb = |a: f64, p: &[f64], q: &[f64]| -> Vec<f64> {
        p.iter().zip(q).map(|(pi, qi)| a * pi + (1.0 - a) * qi).collect()
    };
    let log_from_center = |s: &[f64], l: f64| -> Vec<f64> {
        log_softmax_of(&s.iter().map(|v| -v / l).collect::<Vec<_>>())
    };
    let log_prox = |log_z: &[f64], step: &[f64]| -> Vec<f64> {
        log_softmax_of(&log_z.iter().zip(step).map(|(a, b)| a - b).collect::<Vec<_>>())
    };
    let exp = |v: &[f64]| -> Vec<f64> { v.iter().map(|l| l.exp()).collect() };
    let diameter = (m as f64).ln();

    let x0 = vec![1.0 / m as f64; m];
    let (_, g0) = oracle(&x0);
    let mut s: Vec<f64> = g0.iter().map(|g| gamma(0) * g).collect();
    let mut log_z = log_from_center(&s, l0);
    let z0 = exp(&log_z);
    let mut trace = RefTrace {
        u: vec![z0.clone()],
        z: vec![z0.clone()],
        l: vec![l0],
        chi: vec![0.0],
        switched_at: None,
    };

    let mut l = l0;
    let mut z = z0.clone();
    let mut u = z0.clone();
    // Look-ahead for t = 1.
    let mut x_next = comb(tau(0), &z, &u);
    let (mut f_next, mut g_next) = oracle(&x_next);
    let mut xhat_next = exp(&log_prox(&log_z, &g_next.iter().map(|g| gamma(1) * g / l).collect::<Vec<_>>()));
    let mut u_next = comb(tau(0), &xhat_next, &u);
    let mut chi = 0.0;
    let mut switched = false;

    for t in 1..=iters {
        let (x, fx, gx, xhat, u_t) = (x_next, f_next, g_next, xhat_next, u_next);
        for (si, gi) in s.iter_mut().zip(&gx) {
            *si += gamma(t) * gi;
        }
        let (f_u, _) = oracle(&u_t);
        let diff: Vec<f64> = u_t.iter().zip(&x).map(|(a, b)| a - b).collect();
        let dist = norm1(&diff);
        let adaptive_l = |kappa: f64| {
            if dist == 0.0 {
                kappa * l0
            } else {
                let lin: f64 = gx.iter().zip(&diff).map(|(g, d)| g * d).sum();
                let lbar = 2.0 * (f_u - fx - lin) / (dist * dist);
                lbar.max(kappa * l0).min(l0)
            }
        };
        let mut l_t = match *rule {
            RefRule::Constant => l0,
            RefRule::Aggressive { kappa } => adaptive_l(kappa),
            RefRule::Hybrid { kappa, .. } if !switched => adaptive_l(kappa),
            RefRule::Hybrid { .. } => l0,
            RefRule::Replay(ref ls) => ls[t - 1],
        };
        let half_sq = 0.5 * norm1(&z.iter().zip(&xhat).map(|(a, b)| a - b).collect::<Vec<_>>()).powi(2);
        let mut log_z_t = log_from_center(&s, l_t);
        let mut z_t = exp(&log_z_t);
        let mut chi_t = chi + (l_t - l) * (entropy(&z_t) - half_sq);
        if let RefRule::Hybrid { alpha, .. } = *rule {
            if !switched && -chi_t > alpha * l0 * diameter {
                switched = true;
                trace.switched_at = Some(t);
                l_t = l0;
                log_z_t = log_from_center(&s, l_t);
                z_t = exp(&log_z_t);
                chi_t = chi + (l_t - l) * (entropy(&z_t) - half_sq);
            }
        }
        l = l_t;
        z = z_t;
        log_z = log_z_t;
        chi = chi_t;
        u = u_t;
        trace.u.push(u.clone());
        trace.z.push(z.clone());
        trace.l.push(l);
        trace.chi.push(chi);

        x_next = comb(tau(t), &z, &u);
        let (fx_n, gx_n) = oracle(&x_next);
        f_next = fx_n;
        g_next = gx_n;
        xhat_next = exp(&log_prox(&log_z, &g_next.iter().map(|g| gamma(t + 1) * g / l).collect::<Vec<_>>()));
        u_next = comb(tau(t), &xhat_next, &u);
    }
    trace
}
