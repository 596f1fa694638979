use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed problem file: {0}")]
    Json(String),

    #[error("invalid problem: {0}")]
    Schema(String),

    #[error("arrow {arrow} refers to vertex {vertex}, outside 1..={vertices}")]
    VertexOutOfRange {
        arrow: usize,
        vertex: usize,
        vertices: usize,
    },

    #[error("\"{field}\" has length {found}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("theta = {theta} is not orthogonal to d = {d}: theta(d) = {value}")]
    NotOrthogonal {
        theta: String,
        d: String,
        value: i64,
    },

    #[error("unknown theta token {0:?}, expected an integer vector or \"canonical\"")]
    UnknownThetaToken(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] qt_core::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}
