use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scattering requires E > mu c^2 (got energy ratio {0})")]
    BelowThreshold(f64),

    #[error("velocity must satisfy 0 < v/c < 1 (got {0})")]
    InvalidVelocity(f64),

    #[error("nuclear charge must be at least 1 (got {0})")]
    InvalidCharge(u32),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "coupling |gamma| = {gamma:.6} >= 1/2: the exponent s = sqrt(j^2 - gamma^2) is imaginary \
         for j = +-1/2 (requires Z*alpha < 1/2, roughly Z <= 68)"
    )]
    CouplingTooStrong { gamma: f64 },

    #[error("j^2 <= gamma^2 for j = {two_j}/2, gamma = {gamma}: exponent s is not real")]
    ExponentDomain { two_j: i64, gamma: f64 },

    #[error("pole of the gamma function at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("{what} did not converge (achieved relative error {achieved:.3e}, tolerance {tol:.3e})")]
    NonConvergence { what: &'static str, achieved: f64, tol: f64 },

    #[error("hypergeometric series diverges at w = {re} + {im}i: {reason}")]
    Divergence { re: f64, im: f64, reason: String },

    #[error("invalid angle grid: {0}")]
    InvalidGrid(String),

    #[error("step size underflow at rho = {rho:.3e} (h = {h:.3e}); raise the starting radius rho0")]
    StepSizeUnderflow { rho: f64, h: f64 },

    #[error("output failed: {0}")]
    Output(String),

    #[error("asymptotic phase fit is poor: residual {residual:.3e} exceeds {tol:.3e}")]
    PoorFit { residual: f64, tol: f64 },
}

impl Error {
    /// True for errors caused by the caller's inputs rather than by a numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::BelowThreshold(_)
                | Error::InvalidVelocity(_)
                | Error::InvalidCharge(_)
                | Error::InvalidParameter { .. }
                | Error::CouplingTooStrong { .. }
                | Error::InvalidGrid(_)
        )
    }
}
