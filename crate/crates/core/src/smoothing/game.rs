use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, log_sum_exp, softmax};
use crate::smoothing::{MinMaxProblem, SmoothEvaluation};

/// `min_{x in simplex_n} max_{y in simplex_m} <B x, y>` with the entropy DGF on
/// the dual simplex.
///
/// With the 1-norm on both sides `|A| = max |B_ij|`.
#[derive(Clone, Debug)]
pub struct MatrixGame {
    rows: Vec<Vec<f64>>,
    cols: usize,
}

impl MatrixGame {
    /// `rows[i]` is row `i` of the `m x n` payoff matrix `B`.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::InvalidInput("payoff matrix must be nonempty".into()));
        }
        for row in &rows {
            check_dim(cols, row.len())?;
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("payoff entries must be finite".into()));
            }
        }
        Ok(MatrixGame { rows, cols })
    }

    pub fn dual_dim(&self) -> usize {
        self.rows.len()
    }

    fn check_primal(&self, x: &[f64]) -> Result<()> {
        check_dim(self.cols, x.len())
    }
}

impl MinMaxProblem for MatrixGame {
    type Dual = Vec<f64>;

    fn primal_dim(&self) -> usize {
        self.cols
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    fn adjoint(&self, y: &Vec<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (row, yi) in self.rows.iter().zip(y) {
            crate::linalg::axpy(&mut out, *yi, row);
        }
        out
    }

    fn dual_inner(&self, a: &Vec<f64>, b: &Vec<f64>) -> f64 {
        dot(a, b)
    }

    fn operator_norm(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    fn dual_diameter(&self) -> f64 {
        (self.dual_dim() as f64).ln()
    }

    fn dual_center(&self) -> Vec<f64> {
        vec![1.0 / self.dual_dim() as f64; self.dual_dim()]
    }

    fn smoothed(&self, x: &[f64], mu: f64) -> Result<SmoothEvaluation<Vec<f64>>> {
        self.check_primal(x)?;
        let logits: Vec<f64> = self.apply(x).iter().map(|v| v / mu).collect();
        let value = mu * (log_sum_exp(&logits) - (self.dual_dim() as f64).ln());
        let y_star = softmax(&logits);
        let gradient = self.adjoint(&y_star);
        Ok(SmoothEvaluation {
            value,
            gradient,
            y_star,
        })
    }

    fn primal_value(&self, x: &[f64]) -> Result<f64> {
        self.check_primal(x)?;
        Ok(self.apply(x).into_iter().fold(f64::NEG_INFINITY, f64::max))
    }

    fn dual_value(&self, y: &Vec<f64>) -> Result<f64> {
        check_dim(self.dual_dim(), y.len())?;
        Ok(self.adjoint(y).into_iter().fold(f64::INFINITY, f64::min))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smoothing::{primal_dual_gap, smoothed_eval};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn game() -> MatrixGame {
        MatrixGame::new(vec![vec![1.0, -2.0, 0.5], vec![-1.0, 0.3, 2.0]]).unwrap()
    }

    fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        let w: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().ln()).collect();
        let s: f64 = w.iter().sum();
        w.into_iter().map(|v| v / s).collect()
    }

    #[test]
    fn rejects_bad_payoffs() {
        assert!(MatrixGame::new(vec![]).is_err());
        assert!(MatrixGame::new(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(MatrixGame::new(vec![vec![f64::NAN]]).is_err());
        assert!(smoothed_eval(&game(), 0.0, &[0.3, 0.3, 0.4]).is_err());
    }

    #[test]
    fn adjoint_consistency() {
        let g = game();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..1.0)).collect();
            let lhs = dot(&g.apply(&x), &y);
            let rhs = dot(&x, &g.adjoint(&y));
            assert!((lhs - rhs).abs() < 1e-10);
            // |<Ax, y>| <= |A| |x|_1 |y|_1
            let unit = lhs / (crate::linalg::norm1(&x) * crate::linalg::norm1(&y));
            assert!(unit.abs() <= g.operator_norm() + 1e-12);
        }
    }

    #[test]
    fn zero_operator_reduces_to_center() {
        let g = MatrixGame::new(vec![vec![0.0, 0.0]; 4]).unwrap();
        let e = smoothed_eval(&g, 0.7, &[0.2, 0.8]).unwrap();
        assert!(e.value.abs() < 1e-15);
        for (a, b) in e.y_star.iter().zip(g.dual_center()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(e.gradient.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn sandwich_and_gradient() {
        let g = game();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let x = random_simplex(&mut rng, 3);
            let mu = rng.random_range(0.01..2.0);
            let e = smoothed_eval(&g, mu, &x).unwrap();
            let exact = g.primal_value(&x).unwrap();
            assert!(e.value <= exact + 1e-10);
            assert!(exact <= e.value + mu * g.dual_diameter() + 1e-10);
            assert!((e.y_star.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            // Gradient against central differences.
            let h = 1e-6;
            for j in 0..3 {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[j] += h;
                xm[j] -= h;
                let fd = (g.smoothed_value(&xp, mu).unwrap() - g.smoothed_value(&xm, mu).unwrap())
                    / (2.0 * h);
                assert!((fd - e.gradient[j]).abs() <= 1e-6 * (1.0 + fd.abs()));
            }
        }
    }

    #[test]
    fn saddle_of_two_by_two_game_has_zero_gap() {
        // B = [[1, -1], [-1, 1]]: value 0 attained at x = y = (1/2, 1/2).
        let g = MatrixGame::new(vec![vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        // Brute-force the primal optimum over a grid of x.
        let k = 10_000;
        let (best_x, best) = (0..=k)
            .map(|i| {
                let p = i as f64 / k as f64;
                let x = vec![p, 1.0 - p];
                let v = g.primal_value(&x).unwrap();
                (x, v)
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!(best.abs() < 1e-12);
        let (best_y, _) = (0..=k)
            .map(|i| {
                let p = i as f64 / k as f64;
                let y = vec![p, 1.0 - p];
                let v = g.dual_value(&y).unwrap();
                (y, v)
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let gap = primal_dual_gap(&g, &best_x, &best_y).unwrap();
        assert!(gap.abs() < 1e-8);
    }
}
