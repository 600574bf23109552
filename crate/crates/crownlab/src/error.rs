use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not an Euler element")]
    NotEuler,
    #[error("element does not belong to the expected algebra: {0}")]
    WrongAlgebra(String),
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("element is central")]
    CentralElement,
    #[error("unknown catalog algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("group element does not match the domain's ambient group")]
    GroupMismatch,
    #[error("Moebius denominator vanishes at the requested point")]
    PoleHit,
    #[error("dilation part lies on the branch cut (-inf, 0]")]
    BranchCut,
    #[error("expected a real group element (b real, a > 0)")]
    NotRealPoint,
    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),
    #[error("flow parameter moves a kernel point out of the upper half-plane")]
    LeftDomain,
    #[error("vector is not J-fixed")]
    NotJFixed,
    #[error("modular flow undefined on the requested grid")]
    FlowUndefined,
    #[error("quadrature failed to converge: node-doubling residual {residual:.3e} above target {target:.3e}")]
    QuadratureNotConverged { residual: f64, target: f64 },
    #[error("strip continuation left its domain: transported support touches 0 or crosses sign")]
    ContinuationLeftDomain,
    #[error("no group element g with region contained in g.W exists")]
    NoCosetSamples,
    #[error("log-domain guard: exponent {0} exceeds safe range")]
    OverflowGuard(f64),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("invalid complex literal `{0}`")]
    ComplexParse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
