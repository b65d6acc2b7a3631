//! JSON and CSV rendering. Rationals print as `"p/q"` strings unless floats
//! are requested; floats print in shortest round-trip form.

use bifree::matrix_model::ZScore;
use bifree::rational::{format_rational, to_f64, Rational};
use bifree::tensor_clt::{ConvergenceRow, SnMoment};
use bifree::SetPartition;
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Numbers {
    Exact,
    Float,
}

impl Numbers {
    fn value(self, r: &Rational) -> Value {
        match self {
            Numbers::Exact => Value::String(format_rational(r)),
            Numbers::Float => json!(to_f64(r)),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// A command result in both shapes; the first CSV row is the header.
pub struct Report {
    json: Value,
    csv: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value, csv: Vec<Vec<String>>) -> Self {
        Report { json, csv }
    }

    /// JSON objects with identical keys become CSV rows under those keys.
    fn from_records(columns: &[&str], records: Vec<Value>) -> Self {
        let mut csv = vec![columns.iter().map(|c| c.to_string()).collect::<Vec<_>>()];
        csv.extend(records.iter().map(|r| columns.iter().map(|c| cell(&r[*c])).collect()));
        Report { json: Value::Array(records), csv }
    }

    pub fn partition_list(parts: &[SetPartition]) -> Self {
        let mut csv = vec![vec!["partition".to_string()]];
        csv.extend(parts.iter().map(|p| vec![p.to_string()]));
        Report { json: parts.iter().map(|p| Value::String(p.to_string())).collect(), csv }
    }

    pub fn sequence(header: &str, values: &[Rational], nums: Numbers) -> Self {
        let json: Vec<Value> = values.iter().map(|v| nums.value(v)).collect();
        let mut csv = vec![vec!["order".to_string(), header.to_string()]];
        csv.extend(json.iter().enumerate().map(|(k, v)| vec![(k + 1).to_string(), cell(v)]));
        Report { json: Value::Array(json), csv }
    }

    pub fn clt_rows(rows: &[SnMoment], nums: Numbers) -> Self {
        let records = rows
            .iter()
            .map(|s| {
                let value = match (nums, s.rational()) {
                    (Numbers::Float, _) => float(s.to_f64()),
                    (Numbers::Exact, Some(v)) => Value::String(format_rational(&v)),
                    (Numbers::Exact, None) => Value::Null,
                };
                json!({
                    "m": s.m(),
                    "n": s.n(),
                    "value": value,
                    "coefficient": format_rational(&s.coefficient()),
                    "radicand": format_rational(&s.radicand()),
                })
            })
            .collect();
        Self::from_records(&["m", "n", "value", "coefficient", "radicand"], records)
    }

    pub fn convergence(rows: &[ConvergenceRow], nums: Numbers) -> Self {
        let records = rows
            .iter()
            .map(|r| {
                let value = match (nums, r.moment.rational()) {
                    (Numbers::Exact, Some(v)) => Value::String(format_rational(&v)),
                    _ => float(r.moment.to_f64()),
                };
                json!({ "n": r.n, "value": value, "limit": nums.value(&r.limit), "gap": float(r.gap) })
            })
            .collect();
        Self::from_records(&["n", "value", "limit", "gap"], records)
    }

    pub fn simulation(scores: &[ZScore]) -> Self {
        let records = scores
            .iter()
            .map(|s| {
                json!({
                    "m": s.m,
                    "mean": float(s.mean),
                    "std_error": s.std_error.map_or(Value::Null, float),
                    "exact": float(s.exact),
                    "z": s.z.map_or(Value::Null, float),
                })
            })
            .collect();
        Self::from_records(&["m", "mean", "std_error", "exact", "z"], records)
    }

    pub fn print(&self, format: Format) -> Result<(), String> {
        match format {
            Format::Json => {
                println!("{}", self.json);
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                for row in &self.csv {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                w.flush().map_err(|e| e.to_string())
            }
        }
    }
}
