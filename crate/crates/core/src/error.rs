use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes across the crate. Degeneracy errors (`DegeneratePencil`,
/// `IsotropicEigenvector`, `AmbiguousSigns`, `NoConvergence`) mark inputs the
/// generic-position theory does not cover; they are never silently guessed
/// around.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation requires the exact rational regime")]
    RegimeMismatch,

    #[error("leading coefficient is zero within the rank tolerance")]
    LeadingZero,

    #[error("root iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("matrix is singular (or below the rank tolerance)")]
    SingularInput,

    #[error("pencil eigenvalues collide or tie within tolerance")]
    DegeneratePencil,

    #[error("eigenvector is isotropic for the bilinear form")]
    IsotropicEigenvector,

    #[error("{0} lies outside U (A0 singular or repeated pencil roots)")]
    NotInU(&'static str),

    #[error("no usable tail entry to fix the sign of index {0}")]
    AmbiguousSigns(usize),

    #[error("index set must contain 0 and 1 and select valid tuple indices")]
    BadIndexSet,

    #[error("rejection sampling exceeded {0} attempts")]
    RejectionCapExceeded(usize),

    #[error("matrices do not span the space of symmetric matrices")]
    NotSpanning,

    #[error("trace values are inconsistent (input is not a characteristic polynomial of any extension)")]
    InconsistentValues,

    #[error("could not sample enough independent non-singular combinations")]
    DegenerateSampling,

    #[error("the zero polynomial defines no hypersurface")]
    ZeroPolynomial,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },

    #[error("malformed rational entry {0:?}")]
    BadRational(String),
}

impl Error {
    /// True for errors that report a declared degenerate/non-generic input
    /// rather than a usage mistake.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::SingularInput
                | Error::DegeneratePencil
                | Error::IsotropicEigenvector
                | Error::AmbiguousSigns(_)
                | Error::DegenerateSampling
        )
    }
}
