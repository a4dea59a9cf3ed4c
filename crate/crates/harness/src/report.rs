//! Tables and their CSV and JSON renderings.

use std::io::Write;

use bloch_wco_core::Complex;
use serde_json::{json, Map, Value};

use crate::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Num(x) => format!("{x}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Empty => Value::Null,
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => json!(format!("{x}")),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
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

/// Splits an optional complex value into `(re, im)` cells.
pub fn complex_cells(z: Option<Complex>) -> [Cell; 2] {
    match z {
        Some(z) => [Cell::Num(z.re), Cell::Num(z.im)],
        None => [Cell::Empty, Cell::Empty],
    }
}

/// `min`, `median` and `max` of one column across the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStat {
    pub name: String,
    pub count: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl SummaryStat {
    /// `None` when `values` holds no finite number.
    pub fn of(name: impl Into<String>, values: impl IntoIterator<Item = f64>) -> Option<Self> {
        let mut v: Vec<f64> = values.into_iter().filter(|x| x.is_finite()).collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let median = if n % 2 == 1 {
            v[n / 2]
        } else {
            0.5 * (v[n / 2 - 1] + v[n / 2])
        };
        Some(SummaryStat {
            name: name.into(),
            count: n,
            min: v[0],
            median,
            max: v[n - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// `key=value` pairs written as header comments.
    pub meta: Vec<(String, String)>,
    pub summary: Vec<SummaryStat>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            ..Table::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// Numeric cells of a column.
    pub fn numbers(&self, name: &str) -> Vec<f64> {
        let Some(k) = self.column(name) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .filter_map(|r| match r[k] {
                Cell::Num(x) => Some(x),
                _ => None,
            })
            .collect()
    }

    /// Header comments, one header row, the body, then the summary as
    /// trailing comments.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        let mut out = out;
        for (k, v) in &self.meta {
            writeln!(out, "# {k}={v}")?;
        }
        let mut w = csv::WriterBuilder::new().from_writer(&mut out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        drop(w);
        for s in &self.summary {
            writeln!(
                out,
                "# summary {} count={} min={} median={} max={}",
                s.name, s.count, s.min, s.median, s.max
            )?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(m)
            })
            .collect();
        let summary: Vec<Value> = self
            .summary
            .iter()
            .map(|s| json!({"name": s.name, "count": s.count, "min": s.min, "median": s.median, "max": s.max}))
            .collect();
        json!({"meta": meta, "columns": self.columns, "rows": rows, "summary": summary})
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<(), HarnessError> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        writeln!(out)?;
        Ok(())
    }
}
