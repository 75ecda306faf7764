use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    Domain(String),
    #[error("tau has no term with a positive coefficient")]
    EmptyTau,
    #[error("f = exp({ln_f}) is not representable as f64")]
    Unrepresentable { ln_f: f64 },
    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("inadmissible parameter: {0}")]
    InadmissibleParameter(String),
    #[error("indeterminate resonance for pair ({0},{1}): numerator and denominator both vanish")]
    IndeterminateResonance(usize, usize),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("no closed-form length for {0}")]
    UnsupportedFormula(String),
    #[error("degenerate line: A = B = 0")]
    DegenerateLine,
    #[error("internal consistency: {0}")]
    InternalConsistency(String),
    #[error("no section anchor at distance >= {min_distance} from every junction")]
    AnchorNotFound { min_distance: f64 },
    #[error("ridge not found on {found} of {scans} scans")]
    RidgeNotFound { found: usize, scans: usize },
    #[error("inadmissible family: {0}")]
    InadmissibleFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
