use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shooting did not converge for omega = {omega}: {reason}")]
    NoConvergence { omega: f64, reason: String },

    #[error("integration blew up at r = {r} before the tail was matched (omega = {omega})")]
    BlowUp { omega: f64, r: f64 },

    #[error("invalid channel: |m| = {m} exceeds ell = {ell}")]
    InvalidChannel { ell: u32, m: i32 },

    #[error("eigensolver failed on a {size}x{size} matrix: {reason}")]
    Eigensolver { size: usize, reason: String },

    #[error("spinor normalization violated: |xi|^2 - |eta|^2 = {0}")]
    Normalization(f64),

    #[error("event refinement for ell = {ell}, m = {m} ended without a clean bracket")]
    UnresolvedEvent { ell: u32, m: i32 },

    #[error("no pitchfork found for ell = {0} in the swept range")]
    MissingPitchfork(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
