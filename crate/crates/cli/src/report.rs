//! Text tables and CSV output.
//!
//! Every CSV starts with a `# schema: <command>/v<N>` comment line; the rest
//! is a plain header row plus records. Numbers in CSV use the shortest
//! representation that parses back to the same `f64`; text tables round to
//! six significant digits.

use std::fmt::Write as _;

use crate::error::CliResult;

/// A command's rendered output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub csv: Option<String>,
}

/// Six significant digits, trailing zeros kept off.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Left-aligned text table.
#[derive(Debug, Default)]
pub struct Table {
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            rows: vec![header.into_iter().map(Into::into).collect()],
        }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    pub fn render(&self) -> String {
        let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &self.rows {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c + 1 == row.len() {
                    line.push_str(cell);
                } else {
                    let _ = write!(line, "{cell:<w$}  ", w = widths[c]);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// CSV document with its schema line.
pub struct CsvDoc {
    writer: csv::Writer<Vec<u8>>,
    schema: String,
}

impl CsvDoc {
    pub fn new(schema: &str, header: &[&str]) -> CliResult<Self> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Self {
            writer,
            schema: schema.to_string(),
        })
    }

    pub fn record<S: AsRef<[u8]>>(&mut self, fields: impl IntoIterator<Item = S>) -> CliResult<()> {
        self.writer.write_record(fields)?;
        Ok(())
    }

    pub fn finish(self) -> CliResult<String> {
        let body = self
            .writer
            .into_inner()
            .map_err(|e| crate::error::CliError::Runtime(e.to_string()))?;
        Ok(format!("# schema: {}\n{}", self.schema, String::from_utf8_lossy(&body)))
    }
}

/// Full-precision number for CSV.
pub fn num(x: f64) -> String {
    format!("{x}")
}
