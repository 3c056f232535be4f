//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QedError {
    #[error("layout must contain at least one subsystem")]
    EmptyLayout,

    #[error("boson mode cutoff must be >= 1, got {0}")]
    InvalidCutoff(usize),

    #[error("subsystem {index} is a {found}, expected a {expected}")]
    WrongSubsystemKind {
        index: usize,
        expected: &'static str,
        found: &'static str,
    },

    #[error("subsystem index {index} out of range for layout of {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("layouts do not match")]
    LayoutMismatch,

    #[error("matrix is not Hermitian (max deviation {deviation:.3e}, scale {scale:.3e})")]
    NonHermitian { deviation: f64, scale: f64 },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("state factor is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("lab frequencies (omega_o, omega, omega_L) are required for this operation")]
    MissingLabFrequencies,

    #[error("operation requires a single-mode layout")]
    SingleModeRequired,

    #[error("operation requires a two-mode layout")]
    TwoModeRequired,

    #[error("operation requires delta_atom = 0, got {0}")]
    AtomDetuningUnsupported(f64),

    #[error("invalid interaction sign {0}; expected +1 or -1")]
    InvalidSign(i32),

    #[error("mode couplings must be equal for this interaction (g_a = {g_a}, g_b = {g_b})")]
    CouplingMismatch { g_a: f64, g_b: f64 },

    #[error(
        "coherent amplitude |alpha| = {alpha_abs:.3} exceeds the truncation guard for \
         cutoff {cutoff} (requires |alpha|^2 + 6|alpha| + 10 <= cutoff)"
    )]
    TruncationGuard { alpha_abs: f64, cutoff: usize },

    #[error("superposition is degenerate (branches cancel); state undefined")]
    DegenerateState,

    #[error("time step {dt:.3e} too large for max angular frequency {omega_max:.3e} (need dt <= {max_dt:.3e})")]
    StepTooLarge { dt: f64, omega_max: f64, max_dt: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown protocol {0:?}")]
    UnknownProtocol(String),

    #[error("protocol validation failed: {0}")]
    ProtocolValidation(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, QedError>;

impl QedError {
    /// Process exit code for the CLI: 2 config, 3 numerical guard, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        use QedError::*;
        match self {
            Config(_) | UnknownProtocol(_) | ProtocolValidation(_) | InvalidParams(_)
            | InvalidGrid(_) | InvalidSign(_) | MissingLabFrequencies | CouplingMismatch { .. }
            | EmptyLayout | InvalidCutoff(_) | WrongSubsystemKind { .. }
            | SubsystemOutOfRange { .. } => 2,
            Io { .. } => 4,
            _ => 3,
        }
    }
}
