use thiserror::Error;

/// Errors produced by the geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("vector dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vectors must have at least 2 components, got {0}")]
    DimensionTooSmall(usize),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("degenerate flag: vector {index} (1-based) has norm {norm:.3e} below rank tolerance {tolerance:.3e}")]
    DegenerateFlag { index: usize, norm: f64, tolerance: f64 },

    #[error("too many vectors for the ambient dimension ({count} > {dim})")]
    TooManyVectors { count: usize, dim: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("singular linear system (pivot {pivot:.3e} at column {column})")]
    SingularSystem { column: usize, pivot: f64 },

    #[error("parameter {t} outside curve domain [{min}, {max}]")]
    OutOfDomain { t: f64, min: f64, max: f64 },

    #[error("derivative order {requested} exceeds the supported maximum {max}")]
    OrderUnsupported { requested: usize, max: usize },

    #[error("curve is not regular: speed {speed:.3e} at parameter {t}")]
    RegularityFailure { t: f64, speed: f64 },

    #[error("invalid curvature profile: {0}")]
    InvalidProfile(String),

    #[error("initial frame is not orthonormal (max deviation {deviation:.3e})")]
    NonOrthonormalFrame { deviation: f64 },

    #[error("frame drift {drift:.3e} at integration step {step} exceeds 1e-10")]
    FrameDrift { step: usize, drift: f64 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("adaptive quadrature did not reach tolerance on [{a}, {b}]")]
    QuadratureFailure { a: f64, b: f64 },

    #[error("curve has reduced osculating order at parameter {s}: derivative {order} is dependent on the lower ones")]
    ReducedOrder { s: f64, order: usize },

    #[error("curve is not generic at parameter {s} (osculating order drops at derivative {order})")]
    NotGeneric { s: f64, order: usize },

    #[error("curve is not unit speed (speed {speed} at parameter {s}); reparametrize by arc length first")]
    NotUnitSpeed { s: f64, speed: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("mean curvature kappa_{index} = {mean:.3e} is too small to form ratios")]
    DivisionGuard { index: usize, mean: f64 },

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("sample {index} is not a unit vector (norm {norm})")]
    NotUnitVector { index: usize, norm: f64 },

    #[error("slant index k = {k} outside 1..={max}")]
    BadSlantIndex { k: usize, max: usize },

    #[error("focal curve is not regular: {0}")]
    FocalNotRegular(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
