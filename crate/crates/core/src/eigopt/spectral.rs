use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::eigopt::matrix::{symmetrize, DensityMatrix, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::linalg::{log_sum_exp, softmax};

fn check_finite(a: &DMatrix<f64>) -> Result<()> {
    if a.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Eigen("matrix has non-finite entries".into()))
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "smoothness parameter must be positive, got {mu}"
        )))
    }
}

/// Indices of the rows of `a` holding at least one nonzero entry.
fn support(a: &DMatrix<f64>) -> Vec<usize> {
    (0..a.nrows()).filter(|&i| a.row(i).iter().any(|&v| v != 0.0)).collect()
}

fn all_finite(v: &DVector<f64>) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Cyclic Jacobi rotations on a copy of `a`. Slow but unconditionally stable;
/// only used when the QR-based solver returns non-finite values.
fn jacobi_eigen(a: &DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = DMatrix::identity(n, n);
    let scale = m.norm();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| m[(p, q)] * m[(p, q)])
            .sum();
        if off.sqrt() <= f64::EPSILON * scale {
            return Ok(SymmetricEigen {
                eigenvectors: v,
                eigenvalues: m.diagonal(),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::Eigen("Jacobi eigendecomposition did not converge".into()))
}

/// Dense decomposition of a matrix without zero rows. The QR-based solver of
/// nalgebra occasionally returns NaN on sparse matrices with a zero diagonal
/// and paired eigenvalues; such results are recomputed by Jacobi rotations.
fn decompose(a: DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    match SymmetricEigen::try_new(a.clone(), f64::EPSILON, 0) {
        Some(eig) if all_finite(&eig.eigenvalues) && eig.eigenvectors.iter().all(|v| v.is_finite()) => Ok(eig),
        _ => jacobi_eigen(&a),
    }
}

pub(crate) fn eigenvalues(a: &DMatrix<f64>) -> Result<DVector<f64>> {
    check_finite(a)?;
    let keep = support(a);
    let sub = if keep.len() == a.nrows() {
        a.clone()
    } else if keep.is_empty() {
        return Ok(DVector::zeros(a.nrows()));
    } else {
        a.select_rows(&keep).select_columns(&keep)
    };
    let mut values = sub.clone().symmetric_eigenvalues();
    if !all_finite(&values) {
        values = decompose(sub)?.eigenvalues;
    }
    let mut out = DVector::zeros(a.nrows());
    out.rows_mut(0, keep.len()).copy_from(&values);
    Ok(out)
}

/// Full eigendecomposition. Zero rows and columns are split off exactly, each
/// contributing the pair `(0, e_i)`; they are listed after the others.
pub(crate) fn eigen(a: &DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    check_finite(a)?;
    let n = a.nrows();
    let keep = support(a);
    if keep.len() == n {
        return decompose(a.clone());
    }
    if keep.is_empty() {
        return Ok(SymmetricEigen {
            eigenvectors: DMatrix::identity(n, n),
            eigenvalues: DVector::zeros(n),
        });
    }
    let sub = decompose(a.select_rows(&keep).select_columns(&keep))?;
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (k, &i) in keep.iter().enumerate() {
        eigenvectors.view_mut((i, 0), (1, keep.len())).copy_from(&sub.eigenvectors.row(k));
    }
    for (col, i) in (keep.len()..).zip((0..n).filter(|i| !keep.contains(i))) {
        eigenvectors[(i, col)] = 1.0;
    }
    let mut eigenvalues = DVector::zeros(n);
    eigenvalues.rows_mut(0, keep.len()).copy_from(&sub.eigenvalues);
    Ok(SymmetricEigen {
        eigenvectors,
        eigenvalues,
    })
}

/// `mu ln(sum_i exp(lambda_i / mu)) - mu ln n` for a spectrum `lambda`.
pub(crate) fn smoothed_from_spectrum(lambda: &[f64], mu: f64) -> f64 {
    let logits: Vec<f64> = lambda.iter().map(|l| l / mu).collect();
    mu * (log_sum_exp(&logits) - (lambda.len() as f64).ln())
}

/// `sum_i w_i v_i v_i^T` with `w = softmax(lambda / mu)`; columns whose weight
/// underflows to zero are skipped.
pub(crate) fn maximizer_from_eigen(eig: &SymmetricEigen<f64, nalgebra::Dyn>, mu: f64) -> DensityMatrix {
    let logits: Vec<f64> = eig.eigenvalues.iter().map(|l| l / mu).collect();
    let weights = softmax(&logits);
    let kept: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();
    let n = eig.eigenvalues.len();
    let mut b = DMatrix::zeros(n, kept.len());
    for (k, &i) in kept.iter().enumerate() {
        b.set_column(k, &(eig.eigenvectors.column(i) * weights[i].sqrt()));
    }
    DensityMatrix::from_trusted(symmetrize(&b * b.transpose()))
}

/// Smoothed largest eigenvalue `phibar_mu(A) = mu ln(sum exp(lambda_i / mu)) - mu ln n`.
///
/// Satisfies `phibar_mu(A) <= lambda_max(A) <= phibar_mu(A) + mu ln n`.
pub fn smoothed_lambda_max(a: &SymmetricMatrix, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let lambda = eigenvalues(&a.dense())?;
    Ok(smoothed_from_spectrum(lambda.as_slice(), mu))
}

/// The maximizer `exp(A / mu) / trace(exp(A / mu))` of `<A, Y> - mu d(Y)` over
/// the matrix simplex.
pub fn density_maximizer(a: &SymmetricMatrix, mu: f64) -> Result<DensityMatrix> {
    check_mu(mu)?;
    Ok(maximizer_from_eigen(&eigen(&a.dense())?, mu))
}

/// Largest eigenvalue from a dense symmetric eigendecomposition.
pub fn exact_lambda_max(a: &SymmetricMatrix) -> Result<f64> {
    if a.dim() == 0 {
        return Err(Error::InvalidInput("matrix of dimension 0".into()));
    }
    Ok(eigenvalues(&a.dense())?.max())
}

/// `max_i |lambda_i(A)|` from a dense eigendecomposition.
pub fn exact_spectral_norm(a: &SymmetricMatrix) -> Result<f64> {
    Ok(eigenvalues(&a.dense())?.amax())
}

/// Number of vectors iterated together by [`power_method_norm`].
pub const POWER_BLOCK: usize = 4;

/// Power-method estimate of `max_i |lambda_i(A)|`.
///
/// Runs the block power method on [`POWER_BLOCK`] seeded Gaussian vectors,
/// re-orthonormalizing after each product, and reports the largest Ritz
/// value magnitude `|theta|` of `A` on the current block, which never exceeds
/// the true value. Iterating a block keeps the method from stalling on the
/// second eigenvalue when the start is nearly orthogonal to the top
/// eigenvector.
///
/// Stops once the leading Ritz pair `(theta, y)` has relative residual
/// `|A y - theta y| <= tol |theta|`, which places `theta` within
/// `tol |theta|` of an eigenvalue. A test on the change between successive
/// estimates alone is not used because it fires on plateaus. Gives up after
/// `max_iters` block products and returns the last estimate.
pub fn power_method_norm(a: &SymmetricMatrix, tol: f64, max_iters: usize, seed: u64) -> f64 {
    let n = a.dim();
    if n == 0 {
        return 0.0;
    }
    let k = POWER_BLOCK.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = DMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng));
    let mut v = start.qr().q();
    let mut est = 0.0;
    for _ in 0..max_iters {
        let mut w = DMatrix::zeros(n, k);
        for (j, col) in v.column_iter().enumerate() {
            w.set_column(j, &a.mul_vec(&col.into_owned()));
        }
        let ritz = SymmetricEigen::new(symmetrize(v.transpose() * &w));
        let lead = ritz.eigenvalues.iamax();
        let theta = ritz.eigenvalues[lead];
        est = theta.abs();
        if est == 0.0 {
            return 0.0;
        }
        let s = ritz.eigenvectors.column(lead);
        let residual = (&w * s - (&v * s) * theta).norm();
        if residual <= tol * est {
            return est;
        }
        v = w.qr().q();
    }
    est
}
