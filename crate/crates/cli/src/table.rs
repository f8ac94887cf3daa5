//! Tabular reports and their CSV, JSON and plain renderings.

use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn plain(&self) -> String {
        match self {
            Cell::Float(x) => x.to_string(),
            _ => self.csv(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => json!(x.to_string()),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }

    /// Reads a cell written by [`Table::to_csv`].
    fn parse(field: &str) -> Cell {
        if field.is_empty() {
            return Cell::Empty;
        }
        let looks_float = field.contains(['.', 'e', 'E']) || matches!(field, "inf" | "-inf" | "NaN");
        if !looks_float {
            if let Ok(i) = field.parse::<i64>() {
                return Cell::Int(i);
            }
        }
        match field.parse::<f64>() {
            Ok(x) => Cell::Float(x),
            Err(_) => Cell::Text(field.to_string()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 cells")
    }

    pub fn to_json(&self, command: &str) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({ "command": command, "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("serialisable table");
        s.push('\n');
        s
    }

    /// Whitespace-separated values without a header.
    pub fn to_plain(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::plain).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let columns: Vec<String> = r
            .headers()
            .map_err(|e| format!("bad CSV header: {e}"))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| format!("bad CSV record: {e}"))?;
            rows.push(rec.iter().map(Cell::parse).collect());
        }
        Ok(Self { columns, rows })
    }
}
