//! Rendering of command results as JSON, CSV or an aligned text table.

use gravloc::format::{round_sig, sci};
use serde_json::{Map, Value};

use crate::config::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// shown in scientific notation
    Num(f64),
    /// shown with fixed decimals (log₁₀ quantities)
    Log(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn text(&self, digits: usize) -> String {
        match self {
            Cell::Num(v) => sci(*v, digits),
            Cell::Log(v) => format!("{v:.digits$}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Cell::Num(v) => Value::from(round_sig(*v, digits)),
            Cell::Log(v) => Value::from(format!("{v:.digits$}").parse::<f64>().unwrap_or(*v)),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

/// Rows with named columns plus optional scalar summary fields.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
    /// render a lone row as a JSON object rather than an array
    pub single: bool,
}

impl Document {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Document {
            columns,
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat, digits: usize) -> String {
        match format {
            OutputFormat::Json => {
                let mut text = serde_json::to_string_pretty(&self.json(digits)).expect("serializable");
                text.push('\n');
                text
            }
            OutputFormat::Csv => self.csv(digits),
            OutputFormat::Table => self.table(digits),
        }
    }

    fn row_object(&self, row: &[Cell], digits: usize) -> Map<String, Value> {
        self.columns
            .iter()
            .zip(row)
            .map(|(k, v)| (k.to_string(), v.json(digits)))
            .collect()
    }

    pub fn json(&self, digits: usize) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.row_object(r, digits)))
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.to_string(), v.json(digits)))
            .collect();
        if self.single && self.rows.len() == 1 {
            let mut obj = self.row_object(&self.rows[0], digits);
            obj.extend(summary);
            Value::Object(obj)
        } else if summary.is_empty() {
            Value::Array(rows)
        } else {
            let mut obj = summary;
            obj.insert("rows".into(), Value::Array(rows));
            Value::Object(obj)
        }
    }

    fn csv(&self, digits: usize) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.text(digits)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}={}\n", v.text(digits)));
        }
        out
    }

    fn table(&self, digits: usize) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.text(digits)).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, h)| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([h.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: Vec<&str>| {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.columns.clone());
        for row in &cells {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}: {}\n", v.text(digits)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> Document {
        let mut d = Document::new(vec!["a", "b"]);
        d.push(vec![Cell::Num(1234.5678), Cell::Text("x".into())]);
        d
    }

    #[test]
    fn csv_and_table() {
        assert_eq!(doc().render(OutputFormat::Csv, 3), "a,b\n1.23e3,x\n");
        let t = doc().render(OutputFormat::Table, 3);
        assert_eq!(t, "     a  b\n1.23e3  x\n");
    }

    #[test]
    fn json_shapes() {
        let mut d = doc();
        assert!(d.json(3).is_array());
        d.single = true;
        assert_eq!(d.json(3)["a"], Value::from(1230.0));
        d.single = false;
        d.summary.push(("slope", Cell::Num(-2.0)));
        assert_eq!(d.json(3)["rows"][0]["b"], Value::from("x"));
    }
}
