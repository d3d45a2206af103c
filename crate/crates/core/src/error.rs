use thiserror::Error;

/// Errors shared across the synthesis and transpilation modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {0} is not a supported power of two")]
    UnsupportedDimension(usize),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("circuit width {0} exceeds the supported synthesis width of 3")]
    UnsupportedWidth(usize),

    #[error("qubit index {index} out of range for width {width}")]
    InvalidQubit { index: usize, width: usize },

    #[error("rz search exhausted its gate budget of {max_depth} (best distance {best:.3e})")]
    PrecisionUnreachable { max_depth: usize, best: f64 },

    #[error("external rz tool failed: {0}")]
    ExternalTool(String),

    #[error("unexpected character {byte:?} at offset {offset} in gate sequence")]
    SequenceParse { byte: char, offset: usize },

    #[error("parse error at line {line}: {msg}")]
    QasmParse { line: usize, msg: String },

    #[error("synthesis failed: {0}")]
    SynthesisFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
