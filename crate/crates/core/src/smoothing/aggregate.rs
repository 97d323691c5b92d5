use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Element of the dual space of a [`MinMaxProblem`](super::MinMaxProblem).
pub trait DualPoint: Clone + fmt::Debug {
    fn scaled(&self, a: f64) -> Self;

    /// `self += a * other`.
    fn add_scaled(&mut self, a: f64, other: &Self);
}

impl DualPoint for Vec<f64> {
    fn scaled(&self, a: f64) -> Self {
        self.iter().map(|v| a * v).collect()
    }

    fn add_scaled(&mut self, a: f64, other: &Self) {
        crate::linalg::axpy(self, a, other);
    }
}

impl DualPoint for DMatrix<f64> {
    fn scaled(&self, a: f64) -> Self {
        self * a
    }

    fn add_scaled(&mut self, a: f64, other: &Self) {
        self.zip_apply(other, |s, o| *s += a * o);
    }
}

/// Streaming weighted average of inner maximizers `y_*(x_0), y_*(x_1), ...`
/// where point `t` carries weight `t + 1`.
///
/// Only the unnormalized sum is stored, so the average is exact whenever the
/// run stops.
#[derive(Clone, Debug)]
pub struct DualAggregate<Y> {
    sum: Option<Y>,
    weight: f64,
    count: usize,
}

impl<Y: DualPoint> Default for DualAggregate<Y> {
    fn default() -> Self {
        Self::new()
    }
}

impl<Y: DualPoint> DualAggregate<Y> {
    pub fn new() -> Self {
        DualAggregate {
            sum: None,
            weight: 0.0,
            count: 0,
        }
    }

    /// Adds the maximizer for the next index `t = self.len()`.
    pub fn push(&mut self, y: &Y) {
        let w = (self.count + 1) as f64;
        match self.sum.as_mut() {
            Some(sum) => sum.add_scaled(w, y),
            None => self.sum = Some(y.scaled(w)),
        }
        self.weight += w;
        self.count += 1;
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// `sum_t (t + 1) = (T + 1)(T + 2) / 2`.
    pub fn total_weight(&self) -> f64 {
        self.weight
    }

    /// `ybar = sum_t 2 (t + 1) / ((T + 1)(T + 2)) y_t`.
    pub fn y_bar(&self) -> Result<Y> {
        self.sum
            .as_ref()
            .map(|s| s.scaled(1.0 / self.weight))
            .ok_or_else(|| Error::InvalidInput("no dual points aggregated".into()))
    }
}

/// Aggregates `y_0, ..., y_T` in order.
pub fn aggregate_dual<Y: DualPoint>(ys: &[Y]) -> Result<DualAggregate<Y>> {
    if ys.is_empty() {
        return Err(Error::InvalidInput("cannot aggregate an empty list".into()));
    }
    let mut agg = DualAggregate::new();
    for y in ys {
        agg.push(y);
    }
    Ok(agg)
}
