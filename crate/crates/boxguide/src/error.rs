use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("tokenizer cannot align span {span:?} with prompt {prompt:?}")]
    TokenAlignment { prompt: String, span: String },

    #[error("entity count {n} exceeds query capacity M = {m}")]
    TooManyEntities { n: usize, m: usize },

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("token index {index} out of range for {len} keys")]
    TokenIndexOutOfRange { index: usize, len: usize },

    #[error("self-attention map must be square, got {rows}x{cols}")]
    NonSquareAttention { rows: usize, cols: usize },

    #[error("no mask set for attention resolution {h}x{w} in control plan")]
    MissingResolution { h: usize, w: usize },

    #[error("timestep {t} out of range 0..={max}")]
    TimestepOutOfRange { t: usize, max: usize },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("detector failure: {0}")]
    Detector(String),

    #[error("training aborted: {0}")]
    Training(String),

    #[error("frozen denoiser received a gradient for parameter {0}")]
    FrozenParamGradient(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Candle(#[from] candle_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
