//! Small smooth objectives with known Lipschitz constants, used by the tests,
//! the acceptance suite and the benchmarks.

use crate::accel::{Evaluation, Objective};
use crate::error::{check_dim, Result};
use crate::linalg::{dot, norm_inf};

/// `f(x) = 1/2 sum_i w_i (x_i - p_i)^2`.
///
/// Its gradient is `max_i w_i`-Lipschitz from the 1-norm to the max-norm and
/// in the 2-norm, so [`Quadratic::lipschitz`] is valid for both geometries.
#[derive(Clone, Debug)]
pub struct Quadratic {
    weights: Vec<f64>,
    target: Vec<f64>,
}

impl Quadratic {
    pub fn new(weights: Vec<f64>, target: Vec<f64>) -> Result<Self> {
        check_dim(weights.len(), target.len())?;
        Ok(Quadratic { weights, target })
    }

    /// Unit weights.
    pub fn isotropic(target: Vec<f64>) -> Self {
        Quadratic {
            weights: vec![1.0; target.len()],
            target,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn lipschitz(&self) -> f64 {
        norm_inf(&self.weights)
    }
}

impl Objective for Quadratic {
    type Aux = ();

    fn dim(&self) -> usize {
        self.target.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(0.5
            * x.iter()
                .zip(&self.target)
                .zip(&self.weights)
                .map(|((xi, pi), wi)| wi * (xi - pi) * (xi - pi))
                .sum::<f64>())
    }

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<()>> {
        let value = self.value(x)?;
        let gradient = x
            .iter()
            .zip(&self.target)
            .zip(&self.weights)
            .map(|((xi, pi), wi)| wi * (xi - pi))
            .collect();
        Ok(Evaluation {
            value,
            gradient,
            aux: (),
        })
    }
}

/// `f(x) = <c, x>`; zero curvature everywhere.
#[derive(Clone, Debug)]
pub struct Linear {
    pub coefficients: Vec<f64>,
}

impl Objective for Linear {
    type Aux = ();

    fn dim(&self) -> usize {
        self.coefficients.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(dot(&self.coefficients, x))
    }

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<()>> {
        Ok(Evaluation {
            value: self.value(x)?,
            gradient: self.coefficients.clone(),
            aux: (),
        })
    }
}

/// `f(x) = s/2 max(0, <a, x> - b)^2`: flat on one side of a hyperplane and
/// curved on the other, so local curvature estimates jump between zero and
/// the global constant `s |a|_inf^2` (1-norm geometry).
#[derive(Clone, Debug)]
pub struct SquaredHinge {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub scale: f64,
}

impl SquaredHinge {
    pub fn lipschitz(&self) -> f64 {
        let a = norm_inf(&self.normal);
        self.scale * a * a
    }

    fn excess(&self, x: &[f64]) -> f64 {
        (dot(&self.normal, x) - self.offset).max(0.0)
    }
}

impl Objective for SquaredHinge {
    type Aux = ();

    fn dim(&self) -> usize {
        self.normal.len()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        let e = self.excess(x);
        Ok(0.5 * self.scale * e * e)
    }

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation<()>> {
        let value = self.value(x)?;
        let e = self.excess(x);
        Ok(Evaluation {
            value,
            gradient: self.normal.iter().map(|a| self.scale * e * a).collect(),
            aux: (),
        })
    }
}
