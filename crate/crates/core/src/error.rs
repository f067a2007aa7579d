/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The reconstructed density operator has a negative eigenvalue beyond tolerance.
    #[error("unphysical state: smallest eigenvalue {min_eigenvalue:.6e}")]
    Unphysical { min_eigenvalue: f64 },
    /// Input text did not match the state grammar.
    #[error("parse error: {0}")]
    Parse(String),
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The iterative spectral solver failed to converge.
    #[error("eigenvalue iteration did not converge")]
    SpectralFailure,
}

pub type Result<T> = std::result::Result<T, Error>;
