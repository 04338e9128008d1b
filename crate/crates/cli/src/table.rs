//! Tabular output shared by every subcommand.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest decimal string that parses back to the same `f64`. Values
/// outside `[1e-5, 1e16)` switch to exponent notation.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(v) => v.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(v) => Value::String(v.clone()),
        }
    }
}

/// A header, rows, and scalar metadata that only the JSON form carries.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Vec<(&'static str, Cell)>,
}

impl Dataset {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), ..Self::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.meta.push((key, value.into()));
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        for (k, v) in &self.meta {
            top.insert((*k).to_string(), v.json());
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| ((*c).to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        top.insert("rows".to_string(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [1.0, -std::f64::consts::FRAC_1_SQRT_2, 1e-7, 3.5e20, 0.1 + 0.2, 12345.678, -0.0, 1e-5] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(-1.0), "-1");
        assert_eq!(format_float(2.5e-9), "2.5e-9");
    }

    #[test]
    fn csv_and_json_shapes() {
        let mut d = Dataset::new(&["i", "x"]).meta("family", "cgl");
        d.push(vec![0.into(), (-1.0).into()]);
        d.push(vec![1.into(), 1.0.into()]);
        assert_eq!(d.to_csv(), "i,x\n0,-1\n1,1\n");
        let v: Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["family"], "cgl");
        assert_eq!(v["rows"][1]["x"], 1.0);
    }
}
