use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular symbol at xi = {xi}")]
    SingularSymbol { xi: f64 },

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("degenerate coefficient: b vanishes at x = {x}, t = {t}")]
    DegenerateCoefficient { x: f64, t: f64 },

    #[error("blowup at t = {t}")]
    Blowup { t: f64 },

    #[error("no constant symbol for the general linear model")]
    NoConstantSymbol,

    #[error("residual needs at least 3 snapshots, got {0}")]
    TooFewSnapshots(usize),

    #[error("snapshots are not uniformly spaced in time")]
    NonUniformSnapshots,

    #[error("empty window [{a}, {b}]: no grid points")]
    EmptyWindow { a: f64, b: f64 },

    #[error("unresolvable interval [{a}, {b}]: {points} grid points, need at least {needed}")]
    UnresolvableInterval {
        a: f64,
        b: f64,
        points: usize,
        needed: usize,
    },

    #[error("negative height {0}")]
    NegativeHeight(f64),

    #[error("height {height} outside strip of analyticity (limit {limit})")]
    OutsideStrip { height: f64, limit: f64 },

    #[error("not a snapshot (bad magic)")]
    NotASnapshot,

    #[error("snapshot version mismatch: found {found}, expected {expected}")]
    SnapshotVersion { found: u32, expected: u32 },

    #[error("truncated snapshot")]
    TruncatedSnapshot,

    #[error("{}{key}: {message}", line_prefix(*line))]
    Config {
        line: usize,
        key: String,
        message: String,
    },

    #[error("expression error: {0}")]
    Expression(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Line 0 stands for "not tied to a line", e.g. a missing key.
fn line_prefix(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!("line {line}: ")
    }
}
