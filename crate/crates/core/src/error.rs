use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical procedure failed to reach its tolerance.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A matrix factorization or solve failed (e.g. non-SPD metric).
    #[error("matrix error: {0}")]
    Matrix(String),

    /// Requested scattering energy sits too close to a Harris eigenvalue.
    #[error("energy {energy} within pole guard of Harris eigenvalue {nearest} (gap {gap:e})")]
    Pole { energy: f64, nearest: f64, gap: f64 },

    /// s0 = 0: the sine-like expansion has a node and beta is undefined.
    #[error("sine node: s0 vanishes at k = {k}")]
    SineNode { k: f64 },

    /// Closed-form and recursion-propagated coefficients disagree.
    #[error("coefficient convention mismatch at n = {n}: recursion {recursion:e} vs closed form {closed:e}")]
    Convention { n: usize, recursion: f64, closed: f64 },

    /// The two equivalent forms of the relativistic tangent disagree.
    #[error("internal consistency violated: relative gap {gap:e} exceeds {limit:e}")]
    Consistency { gap: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
