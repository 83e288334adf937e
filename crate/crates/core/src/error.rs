use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("at least one piece is required")]
    NoPieces,
    #[error("alpha_{0} must be positive and finite")]
    NonPositiveAlpha(usize),
    #[error("interface fractions must increase strictly (rho_{0} is out of order)")]
    NonMonotoneInterfaces(usize),
    #[error("rho_{0} must lie strictly inside (0, 1)")]
    InterfaceOutOfRange(usize),
    #[error("{pieces} pieces need {expected} interface fractions, got {got}")]
    InterfaceCount {
        pieces: usize,
        expected: usize,
        got: usize,
    },
    #[error("z = {0} lies outside [0, pi]")]
    DomainError(f64),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid initial condition: {0}")]
    InvalidInitialCondition(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("frequency block is numerically singular (|omega| = {0:e})")]
    SingularBlock(f64),
    #[error("dispersion function overflowed or produced NaN")]
    DivergedToNaN,
    #[error("operation requires {expected} pieces, got {got}")]
    WrongPieceCount { expected: usize, got: usize },
    #[error("eigenpair {0} could not be resolved")]
    SpectrumIncomplete(usize),
    #[error("mode norm {0:e} is not positive")]
    DegenerateNorm(f64),

    #[error("grid N = {n} cannot be restricted from N_ref = {n_ref}: (N_ref + 1) must be a multiple of (N + 1)")]
    IncompatibleGrids { n: usize, n_ref: usize },
    #[error("reference grid N_ref = {n_ref} exceeds the limit {limit}")]
    ReferenceTooLarge { n_ref: usize, limit: usize },
    #[error("decomposition cache: {0}")]
    Cache(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Failures of the numerical pipeline, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::SingularBlock(_)
                | Error::DivergedToNaN
                | Error::SpectrumIncomplete(_)
                | Error::DegenerateNorm(_)
                | Error::NotSymmetric(_)
        )
    }
}
