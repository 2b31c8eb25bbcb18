use serde_json::{Map, Number, Value};

use crate::CliError;

/// One output value. Exact quantities are integers or rational strings;
/// floats are rendered with 12 significant digits.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Exact(String),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Exact(s) | Cell::Text(s) => s.clone(),
            Cell::Float(v) => format_float(*v),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            // Integers beyond i64 would lose precision as JSON numbers.
            Cell::Int(v) => match i64::try_from(*v) {
                Ok(small) => Value::from(small),
                Err(_) => Value::String(v.to_string()),
            },
            Cell::Exact(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Float(v) => format_float(*v)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or_else(|| Value::String(format_float(*v)), Value::Number),
            Cell::Empty => Value::Null,
        }
    }
}

/// `v` with 12 significant digits in scientific notation.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        v.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }

    /// An object with the column names and one object per row.
    pub fn to_json(&self) -> Result<String, CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({ "columns": self.columns, "rows": rows });
        let mut text =
            serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }
}
