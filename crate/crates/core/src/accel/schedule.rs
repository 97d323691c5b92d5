/// Step-size weights `gamma_t`, their partial sums `Gamma_t` and the
/// interpolation coefficients `tau_t = gamma_{t+1} / Gamma_{t+1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GammaSchedule {
    /// `gamma_t = (t + 1) / 2`, so `Gamma_t = (t + 1)(t + 2) / 4` and
    /// `tau_t = 2 / (t + 3)`.
    #[default]
    Linear,
}

impl GammaSchedule {
    pub fn gamma(self, t: usize) -> f64 {
        match self {
            GammaSchedule::Linear => (t as f64 + 1.0) / 2.0,
        }
    }

    pub fn cumulative(self, t: usize) -> f64 {
        match self {
            GammaSchedule::Linear => (t as f64 + 1.0) * (t as f64 + 2.0) / 4.0,
        }
    }

    pub fn tau(self, t: usize) -> f64 {
        match self {
            GammaSchedule::Linear => 2.0 / (t as f64 + 3.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_schedule_identities() {
        let s = GammaSchedule::Linear;
        assert!(s.gamma(0) > 0.0 && s.gamma(0) <= 1.0);
        let mut running = 0.0;
        for t in 0..10_000 {
            running += s.gamma(t);
            let big = s.cumulative(t);
            assert_eq!(running, big, "Gamma_{t} must equal the partial sum");
            assert!(s.gamma(t) * s.gamma(t) <= big);
            let tau = s.gamma(t + 1) / s.cumulative(t + 1);
            assert!((tau - s.tau(t)).abs() <= 1e-14 * tau);
        }
    }
}
