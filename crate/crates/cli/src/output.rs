//! CSV and JSON rendering of scenario tables, and reading them back.
//!
//! CSV layout: a `# params: k=v ...` line, a header row, one row per sample
//! and trailing `# key: value` summary lines. Non-finite numbers are written
//! as `inf`, `-inf` and `nan` in both formats.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub scenario: Scenario,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub summary: Vec<(String, String)>,
}

pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn parse_number(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        other => other.parse().ok(),
    }
}

fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(format_number(x)), Value::Number)
}

impl Table {
    pub fn new(scenario: Scenario, params: Vec<(String, String)>, columns: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Self {
            scenario,
            params,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            summary: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!("# params: scenario={} {}\n", self.scenario, params.join(" "));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format_number(*x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(|x| json_number(*x)).collect())).collect();
        let doc = json!({
            "scenario": self.scenario.name(),
            "params": params,
            "columns": self.columns,
            "rows": rows,
            "summary": summary,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    /// Reads back a rendered table (columns and rows only).
    pub fn parse(text: &str, format: Format, scenario: Scenario) -> Result<Self, String> {
        match format {
            Format::Csv => {
                let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
                let header = lines.next().ok_or("missing header row")?;
                let columns: Vec<String> = header.split(',').map(str::to_string).collect();
                let rows = lines
                    .enumerate()
                    .map(|(i, l)| {
                        let row: Option<Vec<f64>> = l.split(',').map(parse_number).collect();
                        match row {
                            Some(r) if r.len() == columns.len() => Ok(r),
                            _ => Err(format!("row {}: malformed `{l}`", i + 1)),
                        }
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Self { scenario, params: vec![], columns, rows, summary: vec![] })
            }
            Format::Json => {
                let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
                let columns: Vec<String> = v["columns"]
                    .as_array()
                    .ok_or("missing columns")?
                    .iter()
                    .map(|c| c.as_str().map(str::to_string).ok_or("non-string column"))
                    .collect::<Result<_, _>>()?;
                let rows = v["rows"]
                    .as_array()
                    .ok_or("missing rows")?
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .filter(|a| a.len() == columns.len())
                            .and_then(|a| {
                                a.iter().map(|x| x.as_f64().or_else(|| x.as_str().and_then(parse_number))).collect()
                            })
                            .ok_or_else(|| "malformed row".to_string())
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Self { scenario, params: vec![], columns, rows, summary: vec![] })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(
            Scenario::Curvature,
            vec![("omega".into(), "5".into())],
            &["t", "kappa"],
            vec![vec![0.0, 1.5], vec![0.1, f64::INFINITY]],
        );
        t.summary.push(("note".into(), "x".into()));
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(csv, "# params: scenario=curvature omega=5\nt,kappa\n0,1.5\n0.1,inf\n# note: x\n");
    }

    #[test]
    fn round_trips() {
        for f in [Format::Csv, Format::Json] {
            let t = sample();
            let back = Table::parse(&t.render(f), f, t.scenario).unwrap();
            assert_eq!(back.columns, t.columns);
            assert_eq!(back.rows, t.rows);
        }
    }

    #[test]
    fn numbers_stay_compact_and_exact() {
        for x in [1.75e-15, 3.2e-300, 0.25, 12345.678, -4.5e20] {
            let s = format_number(x);
            assert!(s.len() < 26, "{s}");
            assert_eq!(parse_number(&s), Some(x));
        }
    }

    #[test]
    fn json_sentinel() {
        let j = sample().to_json();
        assert!(j.contains("\"inf\""));
    }
}
