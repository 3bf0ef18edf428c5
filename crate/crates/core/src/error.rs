use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected exactly 2 distinct labels, found {found}")]
    ClassCount { found: usize },

    #[error("ratio must lie in (0, 1], got {0}")]
    Ratio(f64),

    #[error("row index {index} out of range for {len} rows")]
    Index { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("requested {requested} neighbors but only {available} eligible rows")]
    NeighborCount { requested: usize, available: usize },

    #[error("cannot form {requested} clusters from {distinct} distinct points")]
    Cluster { requested: usize, distinct: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid class weights: {0}")]
    Weight(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("malformed cell at row {row}, column {column}: {message}")]
    Parse { row: u64, column: usize, message: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("sample() called with a dataset other than the one passed to fit()")]
    DatasetMismatch,

    #[error("stage {stage}: {source}")]
    Stage {
        stage: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
