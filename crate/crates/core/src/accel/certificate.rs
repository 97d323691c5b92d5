/// Relative tolerance of the potential inequality: a certificate holds when
/// `psi - lhs >= -CERTIFICATE_RTOL * (1 + |psi|)`.
pub const CERTIFICATE_RTOL: f64 = 1e-8;

/// Both sides of the per-iteration potential inequality
/// `Gamma_t f(u_t) + chi_t <= psi_t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certificate {
    pub t: usize,
    pub psi: f64,
    pub lhs: f64,
    pub residual: f64,
}

impl Certificate {
    pub fn new(t: usize, psi: f64, lhs: f64) -> Self {
        Certificate {
            t,
            psi,
            lhs,
            residual: psi - lhs,
        }
    }

    pub fn tolerance(&self) -> f64 {
        CERTIFICATE_RTOL * (1.0 + self.psi.abs())
    }

    pub fn holds(&self) -> bool {
        self.residual >= -self.tolerance()
    }
}
