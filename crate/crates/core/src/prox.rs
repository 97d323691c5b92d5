//! Prox geometry: norms, distance-generating functions (DGFs), Bregman
//! distances and closed-form prox-mappings.
//!
//! A [`ProxSetup`] bundles a feasible set `Q`, the norm it is measured in and a
//! DGF `d` that is 1-strongly convex in that norm and vanishes at its
//! minimizer (the *center*). The prox-mapping anchored at `z` is
//!
//! ```text
//! Prox_z(s) = argmin_{x in Q} <s, x - z> + V_z(x),   V_z(x) = d(x) - d(z) - <d'(z), x - z>.
//! ```
//!
//! Two setups ship: [`EntropySimplex`] (the one every application here uses)
//! and [`EuclideanBall`], which mainly exists to exercise the solver on a
//! second geometry.

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{norm1, norm2, norm_inf, softmax};

/// Tolerance on `sum(x) == 1` accepted by [`SimplexPoint::new`].
pub const SIMPLEX_SUM_TOL: f64 = 1e-12;

/// Norm used to measure distances on the primal space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    L1,
    L2,
}

impl NormKind {
    pub fn norm(self, v: &[f64]) -> f64 {
        match self {
            NormKind::L1 => norm1(v),
            NormKind::L2 => norm2(v),
        }
    }

    pub fn dual_norm(self, v: &[f64]) -> f64 {
        match self {
            NormKind::L1 => norm_inf(v),
            NormKind::L2 => norm2(v),
        }
    }
}

/// A point of the probability simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("simplex point of dimension 0".into()));
        }
        if coords.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidInput(
                "simplex coordinates must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = coords.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_SUM_TOL {
            return Err(Error::InvalidInput(format!(
                "simplex coordinates sum to {total}, expected 1"
            )));
        }
        Ok(SimplexPoint(coords))
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("simplex of dimension 0".into()));
        }
        Ok(SimplexPoint(vec![1.0 / m as f64; m]))
    }

    pub fn vertex(m: usize, i: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::InvalidInput(format!("vertex {i} of a {m}-simplex")));
        }
        let mut v = vec![0.0; m];
        v[i] = 1.0;
        Ok(SimplexPoint(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for SimplexPoint {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// A Bregman distance value; nonnegative up to rounding.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct BregmanValue(pub f64);

impl BregmanValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A prox anchor: a feasible point plus whatever the setup needs to take
/// further prox steps from it.
pub trait Anchor: Clone + fmt::Debug {
    fn point(&self) -> &[f64];
}

impl Anchor for Vec<f64> {
    fn point(&self) -> &[f64] {
        self
    }
}

/// A feasible set together with its norm and distance-generating function.
///
/// Prox steps are expressed on *anchors* rather than raw points so that a
/// setup can carry whatever representation keeps repeated prox steps exact.
/// The entropy setup stores log-weights next to the point: the coordinates of
/// a prox output can underflow to zero long before its logits lose meaning.
pub trait ProxSetup {
    type Anchor: Anchor;

    fn dim(&self) -> usize;

    fn norm_kind(&self) -> NormKind;

    fn norm(&self, v: &[f64]) -> f64 {
        self.norm_kind().norm(v)
    }

    /// `D = sup_{x in Q} d(x)`.
    fn diameter_bound(&self) -> f64;

    /// The DGF center `c = argmin_Q d`, where `d(c) = 0`.
    fn center(&self) -> Vec<f64>;

    /// The distance-generating function `d(x)`.
    fn dgf(&self, x: &[f64]) -> f64;

    /// `V_z(x)`.
    fn bregman(&self, z: &[f64], x: &[f64]) -> Result<f64>;

    /// Feasibility test with an absolute tolerance.
    fn contains(&self, x: &[f64], tol: f64) -> bool;

    fn center_anchor(&self) -> Self::Anchor;

    fn anchor_at(&self, z: &[f64]) -> Result<Self::Anchor>;

    /// `Prox_z(s)` for the anchor `z`.
    fn prox(&self, anchor: &Self::Anchor, s: &[f64]) -> Result<Self::Anchor>;
}

fn check_finite(s: &[f64]) -> Result<()> {
    if s.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput("prox argument has non-finite entries".into()))
    }
}

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

pub(crate) fn entropy(x: &[f64]) -> f64 {
    (x.len() as f64).ln() + x.iter().map(|&v| xlnx(v)).sum::<f64>()
}

/// The probability simplex with the entropy DGF `d(x) = ln m + sum x_j ln x_j`,
/// measured in the 1-norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntropySimplex {
    dim: usize,
}

/// Anchor of the entropy setup: a simplex point and log-weights that
/// reproduce it up to normalization (the largest log-weight is 0).
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyAnchor {
    point: Vec<f64>,
    log_weights: Vec<f64>,
}

impl EntropyAnchor {
    fn from_logits(mut logits: Vec<f64>) -> Self {
        let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for l in &mut logits {
            *l -= max;
        }
        let point = softmax(&logits);
        EntropyAnchor {
            point,
            log_weights: logits,
        }
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }
}

impl Anchor for EntropyAnchor {
    fn point(&self) -> &[f64] {
        &self.point
    }
}

impl EntropySimplex {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("entropy setup of dimension 0".into()));
        }
        Ok(EntropySimplex { dim })
    }
}

impl ProxSetup for EntropySimplex {
    type Anchor = EntropyAnchor;

    fn dim(&self) -> usize {
        self.dim
    }

    fn norm_kind(&self) -> NormKind {
        NormKind::L1
    }

    fn diameter_bound(&self) -> f64 {
        (self.dim as f64).ln()
    }

    fn center(&self) -> Vec<f64> {
        vec![1.0 / self.dim as f64; self.dim]
    }

    fn dgf(&self, x: &[f64]) -> f64 {
        entropy(x)
    }

    fn bregman(&self, z: &[f64], x: &[f64]) -> Result<f64> {
        check_dim(self.dim, z.len())?;
        check_dim(self.dim, x.len())?;
        if z.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
            return Err(Error::Domain(
                "Bregman anchor must lie in the interior of the simplex".into(),
            ));
        }
        // Relative entropy; exact for points on the simplex.
        Ok(x
            .iter()
            .zip(z)
            .map(|(&xi, &zi)| if xi > 0.0 { xi * (xi / zi).ln() } else { 0.0 })
            .sum())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim
            && x.iter().all(|&v| v.is_finite() && v >= -tol)
            && (x.iter().sum::<f64>() - 1.0).abs() <= tol
    }

    fn center_anchor(&self) -> EntropyAnchor {
        EntropyAnchor {
            point: self.center(),
            log_weights: vec![0.0; self.dim],
        }
    }

    fn anchor_at(&self, z: &[f64]) -> Result<EntropyAnchor> {
        check_dim(self.dim, z.len())?;
        if z.iter().any(|&v| !v.is_finite() || v < 0.0) || z.iter().all(|&v| v == 0.0) {
            return Err(Error::InvalidInput(
                "prox anchor must be a nonnegative, nonzero simplex point".into(),
            ));
        }
        Ok(EntropyAnchor::from_logits(z.iter().map(|v| v.ln()).collect()))
    }

    fn prox(&self, anchor: &EntropyAnchor, s: &[f64]) -> Result<EntropyAnchor> {
        check_dim(self.dim, s.len())?;
        check_finite(s)?;
        // x_i ∝ z_i exp(-s_i), evaluated on log-weights.
        let logits = anchor
            .log_weights
            .iter()
            .zip(s)
            .map(|(l, si)| l - si)
            .collect();
        Ok(EntropyAnchor::from_logits(logits))
    }
}

/// A Euclidean ball with DGF `d(x) = ||x - c||^2 / 2`, measured in the 2-norm.
/// The prox-mapping is a projected gradient step.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanBall {
    center: Vec<f64>,
    radius: f64,
}

impl EuclideanBall {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() || !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidInput(
                "ball needs a nonempty center and a positive radius".into(),
            ));
        }
        Ok(EuclideanBall { center, radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn project(&self, y: &[f64]) -> Vec<f64> {
        let offset: Vec<f64> = y.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        let len = norm2(&offset);
        if len <= self.radius {
            return y.to_vec();
        }
        let shrink = self.radius / len;
        self.center
            .iter()
            .zip(&offset)
            .map(|(c, o)| c + shrink * o)
            .collect()
    }
}

impl ProxSetup for EuclideanBall {
    type Anchor = Vec<f64>;

    fn dim(&self) -> usize {
        self.center.len()
    }

    fn norm_kind(&self) -> NormKind {
        NormKind::L2
    }

    fn diameter_bound(&self) -> f64 {
        0.5 * self.radius * self.radius
    }

    fn center(&self) -> Vec<f64> {
        self.center.clone()
    }

    fn dgf(&self, x: &[f64]) -> f64 {
        let d: f64 = x
            .iter()
            .zip(&self.center)
            .map(|(a, c)| (a - c) * (a - c))
            .sum();
        0.5 * d
    }

    fn bregman(&self, z: &[f64], x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), z.len())?;
        check_dim(self.dim(), x.len())?;
        Ok(0.5 * x.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum::<f64>())
    }

    fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim() && (2.0 * self.dgf(x)).sqrt() <= self.radius + tol
    }

    fn center_anchor(&self) -> Vec<f64> {
        self.center.clone()
    }

    fn anchor_at(&self, z: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), z.len())?;
        Ok(z.to_vec())
    }

    fn prox(&self, anchor: &Vec<f64>, s: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), s.len())?;
        check_finite(s)?;
        let step: Vec<f64> = anchor.iter().zip(s).map(|(z, g)| z - g).collect();
        Ok(self.project(&step))
    }
}

/// `d(x)` for the simplex entropy DGF; lies in `[0, ln m]`.
pub fn entropy_value(x: &SimplexPoint) -> Result<f64> {
    if x.dim() == 0 {
        return Err(Error::InvalidInput("entropy of an empty point".into()));
    }
    Ok(entropy(x.as_slice()))
}

/// `V_z(x)` in the geometry of `setup`.
pub fn bregman_distance<S: ProxSetup>(setup: &S, z: &[f64], x: &[f64]) -> Result<BregmanValue> {
    setup.bregman(z, x).map(BregmanValue)
}

/// `Prox_z(s)` for a raw anchor point `z`.
pub fn prox_map<S: ProxSetup>(setup: &S, z: &[f64], s: &[f64]) -> Result<Vec<f64>> {
    let anchor = setup.anchor_at(z)?;
    let out = setup.prox(&anchor, s)?;
    Ok(out.point().to_vec())
}

/// The DGF center `c(d_Q)`.
pub fn dgf_center<S: ProxSetup>(setup: &S) -> Vec<f64> {
    setup.center()
}
