use std::borrow::Cow;
use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Tolerance on `trace(Y) = 1` and on the smallest eigenvalue of a density
/// matrix.
pub const DENSITY_TOL: f64 = 1e-10;

/// A real symmetric matrix stored either densely or as the lower-triangle
/// coordinate list `(row, col, value)` with `row >= col`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    storage: Storage,
}

#[derive(Clone, Debug, PartialEq)]
enum Storage {
    Dense(DMatrix<f64>),
    Coordinates(Vec<(usize, usize, f64)>),
}

impl SymmetricMatrix {
    /// Wraps a dense matrix; it must be square, finite and exactly symmetric.
    pub fn from_dense(a: DMatrix<f64>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::InvalidInput(format!(
                "matrix of shape {}x{} is not square",
                a.nrows(),
                a.ncols()
            )));
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        let n = a.nrows();
        for j in 0..n {
            for i in j + 1..n {
                if a[(i, j)] != a[(j, i)] {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SymmetricMatrix {
            n,
            storage: Storage::Dense(a),
        })
    }

    /// Builds a matrix from lower-triangle coordinates; absent entries are 0.
    pub fn from_coordinates(n: usize, entries: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(entries.len());
        for &(r, c, v) in &entries {
            if r >= n || c > r {
                return Err(Error::InvalidInput(format!(
                    "coordinate ({r}, {c}) is not in the lower triangle of a {n}x{n} matrix"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidInput("matrix entries must be finite".into()));
            }
            if !seen.insert((r, c)) {
                return Err(Error::InvalidInput(format!("duplicate coordinate ({r}, {c})")));
            }
        }
        Ok(SymmetricMatrix {
            n,
            storage: Storage::Coordinates(entries),
        })
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        Self::from_dense(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.dense().into_owned()
    }

    pub(crate) fn dense(&self) -> Cow<'_, DMatrix<f64>> {
        match &self.storage {
            Storage::Dense(a) => Cow::Borrowed(a),
            Storage::Coordinates(entries) => {
                let mut a = DMatrix::zeros(self.n, self.n);
                for &(r, c, v) in entries {
                    a[(r, c)] = v;
                    a[(c, r)] = v;
                }
                Cow::Owned(a)
            }
        }
    }

    /// `A v`.
    pub fn mul_vec(&self, v: &DVector<f64>) -> DVector<f64> {
        match &self.storage {
            Storage::Dense(a) => a * v,
            Storage::Coordinates(entries) => {
                let mut out = DVector::zeros(self.n);
                for &(r, c, x) in entries {
                    out[r] += x * v[c];
                    if r != c {
                        out[c] += x * v[r];
                    }
                }
                out
            }
        }
    }

    /// Frobenius inner product `<A, Y> = trace(A Y)` with a symmetric `Y`.
    pub fn frobenius_inner(&self, y: &DMatrix<f64>) -> f64 {
        match &self.storage {
            Storage::Dense(a) => a.dot(y),
            Storage::Coordinates(entries) => entries
                .iter()
                .map(|&(r, c, v)| if r == c { v * y[(r, c)] } else { 2.0 * v * y[(r, c)] })
                .sum(),
        }
    }
}

/// A point of the matrix simplex: symmetric, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(DMatrix<f64>);

impl DensityMatrix {
    /// Validates membership in the matrix simplex up to [`DENSITY_TOL`].
    pub fn new(y: DMatrix<f64>) -> Result<Self> {
        let sym = SymmetricMatrix::from_dense(y)?;
        let y = sym.to_dense();
        if y.nrows() == 0 {
            return Err(Error::InvalidInput("density matrix of dimension 0".into()));
        }
        let trace = y.trace();
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidInput(format!("trace is {trace}, expected 1")));
        }
        let min_eig = y.clone().symmetric_eigenvalues().min();
        if min_eig < -DENSITY_TOL {
            return Err(Error::InvalidInput(format!(
                "matrix is not positive semidefinite (eigenvalue {min_eig})"
            )));
        }
        Ok(DensityMatrix(y))
    }

    /// `I / n`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("density matrix of dimension 0".into()));
        }
        Ok(DensityMatrix(DMatrix::identity(n, n) / n as f64))
    }

    /// `v v^T / |v|^2`.
    pub fn rank_one(v: &DVector<f64>) -> Result<Self> {
        let norm_sq = v.norm_squared();
        if !(norm_sq > 0.0 && norm_sq.is_finite()) {
            return Err(Error::InvalidInput("rank-one direction must be nonzero".into()));
        }
        let y = v * v.transpose() / norm_sq;
        Ok(DensityMatrix(symmetrize(y)))
    }

    pub(crate) fn from_trusted(y: DMatrix<f64>) -> Self {
        DensityMatrix(y)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }
}

/// `(Y + Y^T) / 2`, making `Y` symmetric bit for bit.
pub(crate) fn symmetrize(mut y: DMatrix<f64>) -> DMatrix<f64> {
    let n = y.nrows();
    for j in 0..n {
        for i in j + 1..n {
            let v = 0.5 * (y[(i, j)] + y[(j, i)]);
            y[(i, j)] = v;
            y[(j, i)] = v;
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(SymmetricMatrix::from_dense(DMatrix::zeros(2, 3)).is_err());
        assert!(SymmetricMatrix::from_dense(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0])).is_err());
        assert!(SymmetricMatrix::from_dense(DMatrix::from_element(1, 1, f64::NAN)).is_err());
        assert!(SymmetricMatrix::from_coordinates(2, vec![(0, 1, 1.0)]).is_err());
        assert!(SymmetricMatrix::from_coordinates(2, vec![(2, 0, 1.0)]).is_err());
        assert!(SymmetricMatrix::from_coordinates(2, vec![(1, 0, 1.0), (1, 0, 2.0)]).is_err());
        assert!(SymmetricMatrix::from_coordinates(2, vec![(1, 0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn coordinate_and_dense_storage_agree() {
        let coo = SymmetricMatrix::from_coordinates(3, vec![(0, 0, 1.5), (2, 0, -2.0), (2, 1, 0.5)]).unwrap();
        let dense = SymmetricMatrix::from_dense(coo.to_dense()).unwrap();
        assert_eq!(coo.to_dense()[(0, 2)], -2.0);
        let v = DVector::from_column_slice(&[1.0, -1.0, 2.0]);
        assert_eq!(coo.mul_vec(&v), dense.mul_vec(&v));
        let y = DMatrix::from_row_slice(3, 3, &[0.5, 0.1, 0.2, 0.1, 0.3, 0.0, 0.2, 0.0, 0.2]);
        assert!((coo.frobenius_inner(&y) - dense.frobenius_inner(&y)).abs() < 1e-15);
    }

    #[test]
    fn density_matrix_checks() {
        assert!(DensityMatrix::new(DMatrix::identity(2, 2)).is_err());
        assert!(DensityMatrix::new(DMatrix::from_row_slice(2, 2, &[1.5, 0.0, 0.0, -0.5])).is_err());
        let u = DensityMatrix::uniform(3).unwrap();
        assert!(DensityMatrix::new(u.as_matrix().clone()).is_ok());
        let r = DensityMatrix::rank_one(&DVector::from_column_slice(&[3.0, 4.0])).unwrap();
        assert!((r.as_matrix().trace() - 1.0).abs() < 1e-15);
        assert!(DensityMatrix::rank_one(&DVector::zeros(2)).is_err());
    }
}
