use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("mixed facet sizes: expected {expected} vertices, found {found}{}", at_line(*.line))]
    MixedDimensions { expected: usize, found: usize, line: Option<usize> },
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("not a cell: {0:?}")]
    NotACell(Vec<u32>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("coboundary out of the top dimension {0}")]
    TopDimension(usize),
    #[error("{what}: size {size} exceeds exact threshold {threshold}")]
    ThresholdExceeded { what: String, size: usize, threshold: usize },
    #[error("heuristic budget exhausted")]
    BudgetExceeded,
    #[error("complex is not homogeneous")]
    NonHomogeneous,
    #[error("missing annotation: {0}")]
    NotAnnotated(String),
    #[error("dense eigensolver cap exceeded: n = {n}, cap = {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("graph is not bipartite bi-regular")]
    NotBiRegular,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}

pub type Result<T> = std::result::Result<T, Error>;
