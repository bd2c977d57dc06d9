use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("NaN is not a valid extended real")]
    NotANumber,

    #[error("shape mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    Shape {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("invalid dimensions {rows}x{cols}: {reason}")]
    Dimensions {
        rows: usize,
        cols: usize,
        reason: String,
    },

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid generator config: {0}")]
    Config(String),

    #[error("oracle refuses {dim}x{dim} Kronecker system (cap is mn <= {cap})")]
    OracleTooLarge { dim: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn shape(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::Shape {
            op,
            left_rows: left.0,
            left_cols: left.1,
            right_rows: right.0,
            right_cols: right.1,
        }
    }
}
