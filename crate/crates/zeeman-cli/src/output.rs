//! Tables, serialization and atomic file output.
//!
//! CSV numbers use the shortest decimal string that parses back to the same
//! binary64 value (Rust's `{:?}` formatting of `f64`), so goldens are stable.

use crate::config::Format;
use crate::error::CliError;
use serde_json::Value;
use std::io::Write;
use std::path::Path;

/// Overall status of a command's results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// At least one row could not be computed.
    Error,
    /// At least one check failed.
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        use crate::error::exit;
        match self {
            Status::Ok => exit::OK,
            Status::Fail => exit::FAIL,
            Status::Error => exit::NUMERIC_ERROR,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i128),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => fmt_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render)).map_err(io)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }
}

/// Result of one command.
pub struct Output {
    pub json: Value,
    pub table: Option<Table>,
    pub status: Status,
    pub default_format: Format,
}

impl Output {
    pub fn render(&self, format: Option<Format>) -> Result<Vec<u8>, CliError> {
        match format.unwrap_or(self.default_format) {
            Format::Json => {
                let mut bytes = serde_json::to_vec_pretty(&self.json)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                bytes.push(b'\n');
                Ok(bytes)
            }
            Format::Csv => match &self.table {
                Some(t) => t.to_csv(),
                None => Err(CliError::Usage(
                    "this command has no CSV form; use --format json".into(),
                )),
            },
        }
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// followed by a rename, or to stdout when `path` is `None`.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).map_err(io)?;
            out.flush().map_err(io)
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(bytes).map_err(io)?;
            tmp.as_file().sync_all().map_err(io)?;
            tmp.persist(p)
                .map_err(|e| CliError::Io(format!("{}: {}", p.display(), e.error)))?;
            Ok(())
        }
    }
}
