use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::eigopt::matrix::SymmetricMatrix;
use crate::eigopt::spectral::power_method_norm;
use crate::error::{check_dim, Error, Result};

/// Relative-change tolerance of the power method used for `L'`.
pub const POWER_TOL: f64 = 1e-4;
pub const POWER_MAX_ITERS: usize = 1000;
/// Entry distribution of generated instances.
pub const STANDARD_NORMAL: &str = "standard_normal";

const FORMAT_TAG: &str = "afom-eig-instance 1";
const NONZERO_CONVENTION: &str = "full_matrix";

/// `m` symmetric `n x n` matrices sharing one sparsity pattern, plus the norm
/// scale `L' = max_j |A_j|` estimated by the power method.
#[derive(Clone, Debug, PartialEq)]
pub struct EigInstance {
    m: usize,
    n: usize,
    density: f64,
    seed: u64,
    value_distribution: String,
    pattern: Vec<(usize, usize)>,
    values: Vec<Vec<f64>>,
    l_prime: f64,
}

impl EigInstance {
    /// Assembles an instance from its stored representation.
    ///
    /// `pattern` lists lower-triangle coordinates `(row, col)`, `row >= col`,
    /// without duplicates; `values[j][k]` is the entry of `A_j` at
    /// `pattern[k]`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        m: usize,
        n: usize,
        density: f64,
        seed: u64,
        value_distribution: String,
        pattern: Vec<(usize, usize)>,
        values: Vec<Vec<f64>>,
        l_prime: f64,
    ) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!("need m, n >= 1, got m = {m}, n = {n}")));
        }
        check_dim(m, values.len())?;
        for row in &values {
            check_dim(pattern.len(), row.len())?;
        }
        if !(l_prime.is_finite() && l_prime >= 0.0) {
            return Err(Error::InvalidInput(format!("L' must be finite and >= 0, got {l_prime}")));
        }
        if value_distribution.is_empty() || value_distribution.contains(char::is_whitespace) {
            return Err(Error::InvalidInput("value distribution must be a single token".into()));
        }
        let inst = EigInstance {
            m,
            n,
            density,
            seed,
            value_distribution,
            pattern,
            values,
            l_prime,
        };
        // Validates the pattern and the values.
        for j in 0..m {
            inst.matrix(j)?;
        }
        Ok(inst)
    }

    /// Builds an instance from explicit dense matrices. The pattern is the union
    /// of their nonzero lower-triangle positions and `L'` is estimated as for
    /// generated instances.
    pub fn from_dense(matrices: &[DMatrix<f64>]) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidInput("need at least one matrix".into()))?;
        let n = first.nrows();
        let mats = matrices
            .iter()
            .map(|a| {
                check_dim(n, a.nrows())?;
                SymmetricMatrix::from_dense(a.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut pattern = Vec::new();
        for r in 0..n {
            for c in 0..=r {
                if matrices.iter().any(|a| a[(r, c)] != 0.0) {
                    pattern.push((r, c));
                }
            }
        }
        let values = matrices
            .iter()
            .map(|a| pattern.iter().map(|&(r, c)| a[(r, c)]).collect())
            .collect();
        let total: usize = pattern.iter().map(|&(r, c)| if r == c { 1 } else { 2 }).sum();
        let l_prime = estimate_l_prime(&mats, 0);
        Self::from_parts(
            matrices.len(),
            n,
            total as f64 / (n * n) as f64,
            0,
            "explicit".into(),
            pattern,
            values,
            l_prime,
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn value_distribution(&self) -> &str {
        &self.value_distribution
    }

    /// Shared lower-triangle pattern.
    pub fn pattern(&self) -> &[(usize, usize)] {
        &self.pattern
    }

    /// Values of `A_j` aligned with [`pattern`](Self::pattern).
    pub fn values(&self, j: usize) -> &[f64] {
        &self.values[j]
    }

    pub fn l_prime(&self) -> f64 {
        self.l_prime
    }

    /// Nonzeros of one full matrix, counting both triangles.
    pub fn nonzeros(&self) -> usize {
        self.pattern.iter().map(|&(r, c)| if r == c { 1 } else { 2 }).sum()
    }

    pub fn matrix(&self, j: usize) -> Result<SymmetricMatrix> {
        if j >= self.m {
            return Err(Error::InvalidInput(format!("matrix index {j} out of range")));
        }
        let entries = self
            .pattern
            .iter()
            .zip(&self.values[j])
            .map(|(&(r, c), &v)| (r, c, v))
            .collect();
        SymmetricMatrix::from_coordinates(self.n, entries)
    }

    /// `A(x) = sum_j x_j A_j` as a dense matrix.
    pub(crate) fn combine(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        check_dim(self.m, x.len())?;
        let mut a = DMatrix::zeros(self.n, self.n);
        for (k, &(r, c)) in self.pattern.iter().enumerate() {
            let v: f64 = self.values.iter().zip(x).map(|(vals, xj)| xj * vals[k]).sum();
            a[(r, c)] = v;
            a[(c, r)] = v;
        }
        Ok(a)
    }

    /// `(<A_1, Y>, ..., <A_m, Y>)` for a symmetric `Y`, touching only the
    /// shared pattern.
    pub(crate) fn inner_products(&self, y: &DMatrix<f64>) -> Result<Vec<f64>> {
        check_dim(self.n, y.nrows())?;
        check_dim(self.n, y.ncols())?;
        let weighted: Vec<f64> = self
            .pattern
            .iter()
            .map(|&(r, c)| if r == c { y[(r, c)] } else { 2.0 * y[(r, c)] })
            .collect();
        Ok(self
            .values
            .iter()
            .map(|vals| crate::linalg::dot(vals, &weighted))
            .collect())
    }

    /// Writes the instance in its text format. Floating-point values use the
    /// shortest representation that parses back to the same bits.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{FORMAT_TAG}")?;
        writeln!(w, "m {}", self.m)?;
        writeln!(w, "n {}", self.n)?;
        writeln!(w, "density {:?}", self.density)?;
        writeln!(w, "seed {}", self.seed)?;
        writeln!(w, "value_distribution {}", self.value_distribution)?;
        writeln!(w, "nonzero_convention {NONZERO_CONVENTION}")?;
        writeln!(w, "pattern {}", self.pattern.len())?;
        for (r, c) in &self.pattern {
            writeln!(w, "{r} {c}")?;
        }
        writeln!(w, "values {}", self.m)?;
        for vals in &self.values {
            let line: Vec<String> = vals.iter().map(|v| format!("{v:?}")).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        writeln!(w, "l_prime {:?}", self.l_prime)?;
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = Lines::new(r);
        let tag = lines.next_line()?;
        if tag.trim() != FORMAT_TAG {
            return Err(lines.error(format!("expected header `{FORMAT_TAG}`")));
        }
        let m: usize = lines.field("m")?;
        let n: usize = lines.field("n")?;
        let density: f64 = lines.field("density")?;
        let seed: u64 = lines.field("seed")?;
        let value_distribution: String = lines.field("value_distribution")?;
        let convention: String = lines.field("nonzero_convention")?;
        if convention != NONZERO_CONVENTION {
            return Err(lines.error(format!("unsupported nonzero convention `{convention}`")));
        }
        let k: usize = lines.field("pattern")?;
        let mut pattern = Vec::with_capacity(k);
        for _ in 0..k {
            let line = lines.next_line()?;
            let nums = lines.parse_all::<usize>(&line)?;
            if nums.len() != 2 {
                return Err(lines.error("expected `row col`".into()));
            }
            pattern.push((nums[0], nums[1]));
        }
        let count: usize = lines.field("values")?;
        if count != m {
            return Err(lines.error(format!("expected {m} value rows, header says {count}")));
        }
        let mut values = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines.next_line()?;
            let row = lines.parse_all::<f64>(&line)?;
            if row.len() != k {
                return Err(lines.error(format!("expected {k} values, found {}", row.len())));
            }
            values.push(row);
        }
        let l_prime: f64 = lines.field("l_prime")?;
        Self::from_parts(m, n, density, seed, value_distribution, pattern, values, l_prime)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    line_no: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(r: R) -> Self {
        Lines {
            inner: r.lines(),
            line_no: 0,
        }
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse {
            line: self.line_no,
            msg,
        }
    }

    fn next_line(&mut self) -> Result<String> {
        self.line_no += 1;
        match self.inner.next() {
            Some(line) => Ok(line?),
            None => Err(self.error("unexpected end of file".into())),
        }
    }

    fn field<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let line = self.next_line()?;
        let mut parts = line.split_whitespace();
        if parts.next() != Some(key) {
            return Err(self.error(format!("expected field `{key}`")));
        }
        let value = parts
            .next()
            .ok_or_else(|| self.error(format!("missing value for `{key}`")))?;
        if parts.next().is_some() {
            return Err(self.error(format!("trailing data after `{key}`")));
        }
        value
            .parse()
            .map_err(|_| self.error(format!("cannot parse value `{value}` of `{key}`")))
    }

    fn parse_all<T: std::str::FromStr>(&self, line: &str) -> Result<Vec<T>> {
        line.split_whitespace()
            .map(|tok| tok.parse().map_err(|_| self.error(format!("cannot parse `{tok}`"))))
            .collect()
    }
}

fn norm_seed(seed: u64, j: usize) -> u64 {
    seed ^ (j as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn estimate_l_prime(matrices: &[SymmetricMatrix], seed: u64) -> f64 {
    matrices
        .iter()
        .enumerate()
        .map(|(j, a)| power_method_norm(a, POWER_TOL, POWER_MAX_ITERS, norm_seed(seed, j)))
        .fold(0.0, f64::max)
}

/// Lower-triangle pattern with `ceil(density n^2)` nonzeros in the full
/// matrix, counting a diagonal position once and an off-diagonal one twice.
///
/// Positions are drawn uniformly without replacement; an off-diagonal draw
/// that would overshoot the target is skipped. If only off-diagonal positions
/// remain when one nonzero is missing, the target is exceeded by one.
fn sample_pattern(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let target = ((density * (n * n) as f64).ceil() as usize).min(n * n);
    let mut positions: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (0..=r).map(move |c| (r, c))).collect();
    positions.shuffle(rng);
    let mut remaining = target;
    let mut pattern = Vec::new();
    let mut skipped = None;
    for &(r, c) in &positions {
        if remaining == 0 {
            break;
        }
        let cost = if r == c { 1 } else { 2 };
        if cost <= remaining {
            pattern.push((r, c));
            remaining -= cost;
        } else if skipped.is_none() {
            skipped = Some((r, c));
        }
    }
    if remaining > 0 {
        pattern.extend(skipped);
    }
    pattern.sort_unstable();
    pattern
}

/// Random instance: one shared pattern with about `density n^2` nonzeros per
/// matrix, i.i.d. standard normal values on the lower triangle mirrored to
/// the upper one, and `L'` from the power method. Deterministic in `seed`.
pub fn generate_instance(m: usize, n: usize, density: f64, seed: u64) -> Result<EigInstance> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!("need m, n >= 1, got m = {m}, n = {n}")));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidInput(format!("density must lie in (0, 1], got {density}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pattern = sample_pattern(n, density, &mut rng);
    let values: Vec<Vec<f64>> = (0..m)
        .map(|_| pattern.iter().map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let mut inst = EigInstance::from_parts(
        m,
        n,
        density,
        seed,
        STANDARD_NORMAL.into(),
        pattern,
        values,
        0.0,
    )?;
    let mats = (0..m).map(|j| inst.matrix(j)).collect::<Result<Vec<_>>>()?;
    inst.l_prime = estimate_l_prime(&mats, seed);
    Ok(inst)
}
