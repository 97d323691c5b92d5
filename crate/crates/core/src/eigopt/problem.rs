use nalgebra::DMatrix;

use crate::eigopt::instance::EigInstance;
use crate::eigopt::matrix::{DensityMatrix, SymmetricMatrix};
use crate::eigopt::spectral::{
    eigen, eigenvalues, exact_lambda_max, exact_spectral_norm, maximizer_from_eigen,
    smoothed_from_spectrum,
};
use crate::error::{check_dim, Error, Result};
use crate::prox::SimplexPoint;
use crate::smoothing::{MinMaxProblem, SmoothEvaluation};

/// `A(x) = sum_j x_j A_j`.
pub fn assemble(x: &SimplexPoint, instance: &EigInstance) -> Result<SymmetricMatrix> {
    SymmetricMatrix::from_dense(instance.combine(x.as_slice())?)
}

/// Gradient of `x -> phibar_mu(A(x))`: `(<A_j, Y_mu(x)>)_j`.
pub fn eig_gradient(x: &SimplexPoint, instance: &EigInstance, mu: f64) -> Result<Vec<f64>> {
    let y = crate::eigopt::density_maximizer(&assemble(x, instance)?, mu)?;
    instance.inner_products(y.as_matrix())
}

/// `lambda_max(A(xbar)) - min_j <A_j, Ybar>`.
pub fn duality_gap_eig(x_bar: &SimplexPoint, y_bar: &DensityMatrix, instance: &EigInstance) -> Result<f64> {
    let primal = exact_lambda_max(&assemble(x_bar, instance)?)?;
    let dual = instance
        .inner_products(y_bar.as_matrix())?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(primal - dual)
}

/// Smoothness parameter for the absolute target `eps_rel * L'`:
/// `mu = eps_rel L' / (2 ln n)`.
pub fn relative_accuracy_mu(eps_rel: f64, l_prime: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput("smoothing needs n >= 2".into()));
    }
    let mu = eps_rel * l_prime / (2.0 * (n as f64).ln());
    if mu.is_finite() && mu > 0.0 {
        Ok(mu)
    } else {
        Err(Error::InvalidInput(format!(
            "eps_rel = {eps_rel} and L' = {l_prime} give no positive smoothness parameter"
        )))
    }
}

/// `min_{x in simplex_m} lambda_max(sum_j x_j A_j)` as the saddle problem
/// `min_x max_{Y in matrix simplex} sum_j x_j <A_j, Y>` with the matrix
/// entropy on the dual side.
///
/// The operator norm between the primal 1-norm and the spectral norm is
/// `max_j |A_j|`; it is computed exactly from dense eigendecompositions so
/// that the smoothed gradient is never credited with a smaller Lipschitz
/// constant than it has.
#[derive(Clone, Debug)]
pub struct EigProblem<'a> {
    instance: &'a EigInstance,
    norm: f64,
}

impl<'a> EigProblem<'a> {
    pub fn new(instance: &'a EigInstance) -> Result<Self> {
        let mut norm: f64 = 0.0;
        for j in 0..instance.m() {
            norm = norm.max(exact_spectral_norm(&instance.matrix(j)?)?);
        }
        Self::with_operator_norm(instance, norm)
    }

    /// Uses a caller-supplied `|A|`, e.g. the instance's `L'`.
    pub fn with_operator_norm(instance: &'a EigInstance, norm: f64) -> Result<Self> {
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidInput(format!(
                "operator norm must be positive, got {norm}"
            )));
        }
        Ok(EigProblem { instance, norm })
    }

    pub fn instance(&self) -> &EigInstance {
        self.instance
    }
}

impl MinMaxProblem for EigProblem<'_> {
    type Dual = DMatrix<f64>;

    fn primal_dim(&self) -> usize {
        self.instance.m()
    }

    fn apply(&self, x: &[f64]) -> DMatrix<f64> {
        self.instance
            .combine(x)
            .expect("primal point has the instance dimension")
    }

    fn adjoint(&self, y: &DMatrix<f64>) -> Vec<f64> {
        self.instance
            .inner_products(y)
            .expect("dual point has the instance dimension")
    }

    fn dual_inner(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        a.dot(b)
    }

    fn operator_norm(&self) -> f64 {
        self.norm
    }

    fn dual_diameter(&self) -> f64 {
        (self.instance.n() as f64).ln()
    }

    fn dual_center(&self) -> DMatrix<f64> {
        let n = self.instance.n();
        DMatrix::identity(n, n) / n as f64
    }

    fn smoothed(&self, x: &[f64], mu: f64) -> Result<SmoothEvaluation<DMatrix<f64>>> {
        let a = self.instance.combine(x)?;
        let eig = eigen(&a)?;
        let value = smoothed_from_spectrum(eig.eigenvalues.as_slice(), mu);
        debug_assert!({
            let top = eig.eigenvalues.max();
            let slack = 1e-9 * (1.0 + top.abs());
            value <= top + slack && top <= value + mu * self.dual_diameter() + slack
        });
        let y = maximizer_from_eigen(&eig, mu).into_matrix();
        let gradient = self.instance.inner_products(&y)?;
        Ok(SmoothEvaluation {
            value,
            gradient,
            y_star: y,
        })
    }

    fn smoothed_value(&self, x: &[f64], mu: f64) -> Result<f64> {
        let lambda = eigenvalues(&self.instance.combine(x)?)?;
        Ok(smoothed_from_spectrum(lambda.as_slice(), mu))
    }

    fn primal_value(&self, x: &[f64]) -> Result<f64> {
        Ok(eigenvalues(&self.instance.combine(x)?)?.max())
    }

    fn dual_value(&self, y: &DMatrix<f64>) -> Result<f64> {
        check_dim(self.instance.n(), y.nrows())?;
        Ok(self
            .instance
            .inner_products(y)?
            .into_iter()
            .fold(f64::INFINITY, f64::min))
    }
}
