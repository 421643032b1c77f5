//! Rendering of command results as text, JSON or CSV.

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Format;
use crate::CliError;

/// One rectangular table of strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Table { title: title.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<S: ToString>(&mut self, row: &[S]) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row.iter().map(ToString::to_string).collect());
    }

    fn text(&self) -> String {
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, x) in width.iter_mut().zip(r) {
                *w = (*w).max(x.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = vec![format!("# {}", self.title), line(&self.columns)];
        out.extend(self.rows.iter().map(|r| line(r)));
        out.join("\n")
    }
}

/// The result of one command: a primary table, optional secondary tables, and notes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn table(mut self, t: Table) -> Self {
        self.tables.push(t);
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({ "command": self.command, "tables": self.tables, "notes": self.notes })
    }

    /// Text shows every table; CSV holds the primary table only; JSON holds everything.
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => {
                let mut parts: Vec<String> = self.tables.iter().map(Table::text).collect();
                if !self.notes.is_empty() {
                    parts.push(self.notes.iter().map(|n| format!("note: {n}")).collect::<Vec<_>>().join("\n"));
                }
                Ok(parts.join("\n\n") + "\n")
            }
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json())? + "\n"),
            Format::Csv => {
                let t = self.tables.first().ok_or_else(|| CliError::Usage("nothing to write".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.columns)?;
                for r in &t.rows {
                    w.write_record(r)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}
