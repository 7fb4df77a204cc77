use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (||U^H U - I||_F = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("expectation value has imaginary residual {residual:e}")]
    ComplexExpectation { residual: f64 },

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("order {order} outside supported range 0..={max}")]
    OrderOutOfRange { order: u32, max: u32 },

    #[error("topological charge {l} is not in the ladder of order {order}")]
    InvalidCharge { l: i64, order: u32 },

    #[error("Fock truncation {truncation} leaves tail probability {tail:e}")]
    InsufficientTruncation { truncation: usize, tail: f64 },

    #[error("field extent {extent} too small: boundary/peak intensity ratio {ratio:e}")]
    FieldAliasing { extent: f64, ratio: f64 },

    #[error("outcome statistics degenerate at alpha = {alpha}")]
    DegenerateStatistics { alpha: f64 },

    #[error("no photons recorded")]
    NoData,

    #[error("sample rate {sample_rate} Sa/s is below twice the signal frequency {frequency} Hz")]
    Nyquist { sample_rate: f64, frequency: f64 },

    #[error("zero total power at {} sample(s), first index {}", .indices.len(), .indices[0])]
    ZeroTotalPower { indices: Vec<usize> },

    #[error("fit needs at least 3 distinct OAM values, got {distinct}")]
    DegenerateFit { distinct: usize },

    #[error("band [{lo}, {hi}] Hz outside 0..={nyquist} Hz")]
    BandOutsideNyquist { lo: f64, hi: f64, nyquist: f64 },

    #[error("cross-check failed for {what}: {lhs} vs {rhs}")]
    CrossCheck { what: &'static str, lhs: f64, rhs: f64 },

    #[error("config line {line}: key `{key}`: {message}")]
    Config { line: usize, key: String, message: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument { name, reason: reason.into() }
    }
}
