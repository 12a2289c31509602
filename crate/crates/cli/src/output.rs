//! Row output in CSV or JSON Lines.
//!
//! Numbers are written as shortest round-trip decimals in both formats, so
//! the two encodings of a run carry identical values. Missing and non-finite
//! values are an empty CSV field and JSON `null`.

use std::io::{self, Write};

use serde_json::Value;

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    /// Structured value; compact JSON text in CSV.
    Json(Value),
    Null,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Null, Cell::Num)
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
            other => other.json(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => serde_json::to_string(v).expect("finite floats serialize"),
            Cell::Num(_) | Cell::Null => "null".into(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => Value::from(s.as_str()).to_string(),
            Cell::Json(v) => v.to_string(),
        }
    }
}

/// Column names `x1..xn`.
pub fn coordinate_columns(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn coordinate_cells(point: &[f64]) -> Vec<Cell> {
    point.iter().map(|&v| Cell::Num(v)).collect()
}

/// Writes a header (CSV only) and then one row per call.
pub struct Table<'a> {
    columns: Vec<String>,
    sink: Sink<'a>,
}

enum Sink<'a> {
    Csv(csv::Writer<&'a mut dyn Write>),
    Jsonl(&'a mut dyn Write),
}

impl<'a> Table<'a> {
    pub fn new(format: Format, columns: Vec<String>, out: &'a mut dyn Write) -> io::Result<Self> {
        let sink = match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                w.write_record(&columns)?;
                Sink::Csv(w)
            }
            Format::Jsonl => Sink::Jsonl(out),
        };
        Ok(Table { columns, sink })
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        assert_eq!(cells.len(), self.columns.len(), "row width must match the header");
        match &mut self.sink {
            Sink::Csv(w) => w.write_record(cells.iter().map(Cell::csv_field)).map_err(io::Error::from),
            Sink::Jsonl(out) => {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(cells)
                    .map(|(name, cell)| format!("{}:{}", Value::from(name.as_str()), cell.json()))
                    .collect();
                writeln!(out, "{{{}}}", fields.join(","))
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self.sink {
            Sink::Csv(mut w) => w.flush(),
            Sink::Jsonl(out) => out.flush(),
        }
    }
}
