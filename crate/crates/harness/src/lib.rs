//! Symbol files, the bundled corpus, report tables and the command-line
//! driver for `bloch-wco-core`.

pub mod cli;
pub mod corpus;
pub mod report;
pub mod run;
pub mod symbol;

pub use cli::{execute, Cli};
pub use corpus::corpus;
pub use report::{Cell, SummaryStat, Table};
pub use run::{run, Command, PairInput, Settings};
pub use symbol::{parse_symbol_file, LabeledPair, NodeDoc, SymbolFile};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] bloch_wco_core::Error),
    #[error("write failed: {0}")]
    Write(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl HarnessError {
    /// Short stable tag used in report files.
    pub fn kind(&self) -> &'static str {
        match self {
            HarnessError::Parse { .. } => "parse_error",
            HarnessError::Io { .. } => "io_error",
            HarnessError::Core(e) => e.kind(),
            HarnessError::Write(_) | HarnessError::Csv(_) | HarnessError::Json(_) => "write_error",
            HarnessError::Usage(_) => "usage_error",
        }
    }
}
