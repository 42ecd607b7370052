use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (pole, ν = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Input inside the domain but outside the range an algorithm supports.
    #[error("range error: {0}")]
    Range(String),
    /// Malformed argument (ordering, lengths, non-finite values).
    #[error("argument error: {0}")]
    Argument(String),
    /// `ν` and `ν'` too close for the closed-form kernel; use the diagonal limit.
    #[error("near-diagonal pair |ν - ν'| = {gap:e}; use diagonal_limit")]
    NearDiagonal { gap: f64 },
    /// An iterative or adaptive procedure stopped short of its tolerance.
    #[error("convergence failure: {reason} (best estimate {best:e}, error {abs_err:e})")]
    Convergence {
        reason: String,
        best: f64,
        abs_err: f64,
    },
}
