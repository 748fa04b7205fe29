//! Row tables and their CSV / JSON Lines serialization.

use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
    /// Not computed because the row failed.
    Missing,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

/// Fixed 17-significant-digit scientific notation.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "jsonl" | "jsonlines" => Some(Format::JsonLines),
            _ => None,
        }
    }
}

/// A table whose last column is always `error`. Rows that fail keep their
/// input columns, leave the computed ones empty, and carry the message.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    comments: Vec<String>,
    rows: Vec<Vec<Value>>,
    errors: Vec<Option<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            comments: Vec::new(),
            rows: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn comment(&mut self, text: impl Into<String>) {
        self.comments.push(text.into());
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn failures(&self) -> usize {
        self.errors.iter().filter(|e| e.is_some()).count()
    }

    /// Appends a row. Non-finite numbers are never written: they turn the
    /// row into a failure.
    pub fn push(&mut self, mut row: Vec<Value>, error: Option<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the header");
        let mut error = error;
        for v in row.iter_mut() {
            if let Value::Num(x) = v {
                if !x.is_finite() {
                    *v = Value::Missing;
                    error.get_or_insert_with(|| "non-finite result".to_string());
                }
            }
        }
        self.rows.push(row);
        self.errors.push(error);
    }

    /// Appends a row computed from `inputs`; on failure the outputs are
    /// left empty.
    pub fn push_result<E: std::fmt::Display>(&mut self, inputs: Vec<Value>, outputs: Result<Vec<Value>, E>) {
        let width = self.columns.len() - inputs.len();
        match outputs {
            Ok(out) => {
                let mut row = inputs;
                row.extend(out);
                self.push(row, None);
            }
            Err(e) => {
                let mut row = inputs;
                row.extend(std::iter::repeat_n(Value::Missing, width));
                self.push(row, Some(e.to_string()));
            }
        }
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::JsonLines => self.write_jsonl(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for c in &self.comments {
            writeln!(out, "# {c}")?;
        }
        let header: Vec<String> = self.columns.iter().chain(std::iter::once(&"error".to_string())).map(|c| csv_field(c)).collect();
        writeln!(out, "{}", header.join(","))?;
        for (row, err) in self.rows.iter().zip(&self.errors) {
            let mut fields: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::Num(x) => format_float(*x),
                    Value::Int(i) => i.to_string(),
                    Value::Text(t) => csv_field(t),
                    Value::Missing => String::new(),
                })
                .collect();
            fields.push(err.as_deref().map(csv_field).unwrap_or_default());
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    fn write_jsonl(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let key = |k: &str| serde_json::to_string(k).expect("string keys serialize");
        for (row, err) in self.rows.iter().zip(&self.errors) {
            let mut parts = Vec::with_capacity(row.len() + 1);
            for (name, v) in self.columns.iter().zip(row) {
                let value = match v {
                    Value::Num(x) => format_float(*x),
                    Value::Int(i) => i.to_string(),
                    Value::Text(t) => key(t),
                    Value::Missing => "null".to_string(),
                };
                parts.push(format!("{}:{}", key(name), value));
            }
            let e = err.as_deref().map(key).unwrap_or_else(|| "null".to_string());
            parts.push(format!("{}:{}", key("error"), e));
            writeln!(out, "{{{}}}", parts.join(","))?;
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
