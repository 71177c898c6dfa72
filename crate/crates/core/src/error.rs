use std::path::PathBuf;

use thiserror::Error;

use crate::states::ValidityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: expected a {expected}x{expected} matrix, got {found:?}")]
    WrongDimension {
        op: &'static str,
        expected: usize,
        found: (usize, usize),
    },

    #[error("matrix has {len} entries but shape {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| = {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error(
        "channel on dimension {channel_dim} cannot act on the {subsystem} (dimension {expected})"
    )]
    ChannelMismatch {
        channel_dim: usize,
        subsystem: &'static str,
        expected: usize,
    },

    #[error("not a valid density matrix: {0}")]
    InvalidState(ValidityReport),

    #[error("discord {value:e} is below the clamping window; the angle optimizer failed")]
    NegativeDiscord { value: f64 },

    #[error("closed form undefined: {0}")]
    OracleDomain(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    #[error("sweep failed at p = {p}, t_gamma_A = {t_gamma_a}, t_gamma_B = {t_gamma_b}: {source}")]
    SweepPoint {
        p: f64,
        t_gamma_a: f64,
        t_gamma_b: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
