//! Deterministic CSV tables.

use std::io::Write;

use crate::CliError;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// A float, written with 17 significant digits.
    Float(f64),
    /// An integer.
    Int(i64),
    /// A flag, written `true`/`false`.
    Bool(bool),
    /// A label.
    Text(&'static str),
}

impl Cell {
    /// The cell as written.
    pub fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => (*s).to_string(),
        }
    }
    /// Numeric value, if any.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            _ => None,
        }
    }
}

/// `x` with 17 significant digits in scientific notation (`inf`, `-inf`,
/// `NaN` verbatim), which round-trips every `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Column names.
    pub header: Vec<&'static str>,
    /// Rows, each as long as the header.
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// An empty table.
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    /// Index of a column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    /// CSV bytes, header first.
    ///
    /// # Errors
    /// [`CliError::Io`] on writer failure.
    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)
            .map_err(|e| CliError::Io(e.to_string()))?;
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.header.len());
            w.write_record(row.iter().map(Cell::render))
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }

    /// Writes the CSV to `out`.
    ///
    /// # Errors
    /// [`CliError::Io`] on write failure.
    pub fn write_to(&self, mut out: impl Write) -> Result<(), CliError> {
        out.write_all(&self.to_csv()?)
            .map_err(|e| CliError::Io(e.to_string()))
    }
}
