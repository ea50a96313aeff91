use thiserror::Error;

/// Errors raised by the weight model, quadrature, recurrences and flows.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("endpoints are not strictly increasing at t = {t}")]
    NonDistinctEndpoints { t: f64 },

    #[error("exponent alpha[{index}] = {value} must exceed -1")]
    BadExponent { index: usize, value: f64 },

    #[error("piece constant C[{index}] = {value} must be positive")]
    BadConstant { index: usize, value: f64 },

    #[error("inconsistent lengths: {0}")]
    LengthMismatch(String),

    #[error("weight is not finite at endpoint {node} (negative exponent)")]
    NonFinite { node: usize },

    /// `v` carries V(x), which is still well defined at a node.
    #[error("evaluation point coincides with node {node}")]
    NodeCollision { node: usize, v: f64 },

    #[error("Stieltjes transform diverges at node {node}: alpha = {alpha} <= 0")]
    DivergentTransform { node: usize, alpha: f64 },

    #[error("lost orthogonality at degree {degree}: a^2 = {value:e}")]
    LostOrthogonality { degree: usize, value: f64 },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("recurrence coefficient a[{index}] is zero")]
    ZeroCoefficient { index: usize },

    #[error("endpoints collided; last good t = {last_good_t}")]
    EndpointCollision { last_good_t: f64 },

    /// Step size fell below the floor. Reported as a pole candidate together
    /// with Hankel determinants of the moments at the last accepted time.
    #[error("step size collapsed to {h:e} at t = {t} (pole candidate; Hankel determinants {hankel:?})")]
    StepCollapse { t: f64, h: f64, hankel: Vec<f64> },

    #[error("integrator exceeded {max_steps} steps at t = {t}")]
    TooManySteps { t: f64, max_steps: usize },

    #[error("initialisation failed: {0}")]
    InitFailure(String),

    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
