use thiserror::Error;

/// Errors raised by the numerical routines and the closed-form evaluators.
///
/// Variants that carry a location (`t`, `y`, `q`, ...) name the point at which the
/// formula stopped being defined, so callers can report it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("invalid sampled path: {0}")]
    InvalidPath(String),

    #[error("step limit of {max_steps} exceeded at t = {t}")]
    StepLimitExceeded { t: f64, max_steps: usize },

    #[error("state or right-hand side became non-finite at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("integrand is non-finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("path has {len} points, at least {required} are needed")]
    PathTooShort { len: usize, required: usize },

    #[error("q vanishes at t = {t}")]
    SingularQ { t: f64 },

    #[error("qtilde vanishes at t = {t}")]
    SingularQtilde { t: f64 },

    #[error("rtilde is not positive: {rtilde}")]
    SingularRtilde { rtilde: f64 },

    #[error("radial coordinate is not positive: {r}")]
    SingularR { r: f64 },

    #[error("Y must be positive, got {y}")]
    NonpositiveY { y: f64 },

    #[error("tau must be positive, got {tau}")]
    NonpositiveTau { tau: f64 },

    #[error("negative radicand {radicand} at {at}")]
    NegativeRadicand { at: f64, radicand: f64 },

    #[error("no real branch for root of order {order} of {value}")]
    NoRealBranch { value: f64, order: u32 },

    #[error("alpha constraint violated: a1*a2 - a3^2 - alpha/W^2 = {residual}")]
    ConstraintViolated { residual: f64 },

    #[error("superposition coefficient a is zero; positivity reduces to b^2 W^2 > 0")]
    ZeroA,

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("P(Qtilde) is not positive at Qtilde = {q} (P = {p})")]
    NonpositiveP { q: f64, p: f64 },

    #[error("Abel chain is degenerate: u = 1/2 along the whole path (Polyanin ray)")]
    DegenerateU,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors that signal a genuine singularity or domain boundary of a
    /// formula, as opposed to bad input.
    pub fn is_singularity(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteState { .. }
                | Error::NonFiniteIntegrand { .. }
                | Error::StepLimitExceeded { .. }
                | Error::SingularQ { .. }
                | Error::SingularQtilde { .. }
                | Error::SingularRtilde { .. }
                | Error::SingularR { .. }
                | Error::NonpositiveY { .. }
                | Error::NonpositiveTau { .. }
                | Error::NegativeRadicand { .. }
                | Error::NoRealBranch { .. }
                | Error::NonpositiveP { .. }
                | Error::DegenerateU
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
