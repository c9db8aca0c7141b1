//! Tabular output as CSV, JSON or aligned text.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format {s:?} (expected csv, json or text)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Text => "text",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Table {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).map_err(|e| Error::Config(e.to_string()))?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| Error::Config(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Json => {
                let objs: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|r| {
                        self.columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.clone(), json_value(v)))
                            .collect()
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&objs).map_err(|e| Error::Config(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => {
                let mut width: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
                for r in &self.rows {
                    for (w, v) in width.iter_mut().zip(r) {
                        *w = (*w).max(v.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let parts: Vec<String> = cells
                        .iter()
                        .zip(&width)
                        .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect();
                    parts.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.columns);
                for r in &self.rows {
                    out += &line(r);
                }
                Ok(out)
            }
        }
    }
}

fn json_value(v: &str) -> serde_json::Value {
    if let Ok(i) = v.parse::<i64>() {
        return i.into();
    }
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => serde_json::Number::from_f64(x).map_or_else(|| v.into(), Into::into),
        _ => match v {
            "true" => true.into(),
            "false" => false.into(),
            _ => v.into(),
        },
    }
}

/// One gamma value in the stable CSV schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaRow {
    pub q: u32,
    pub n: usize,
    pub m: usize,
    pub pi_id: String,
    pub sigma_id: String,
    pub psi_a: u32,
    pub method: String,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub provenance: String,
}

impl GammaRow {
    pub const COLUMNS: [&'static str; 11] =
        ["q", "n", "m", "pi_id", "sigma_id", "psi_a", "method", "re", "im", "abs", "provenance"];

    pub fn cells(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.pi_id.clone(),
            self.sigma_id.clone(),
            self.psi_a.to_string(),
            self.method.clone(),
            fmt_f(self.re),
            fmt_f(self.im),
            fmt_f(self.abs),
            self.provenance.clone(),
        ]
    }
}

/// Fixed-precision float text; negative zero prints as zero.
pub fn fmt_f(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["id", "value", "note"]);
        t.push(vec!["1:0".into(), "0.5".into(), "a, b".into()]);
        t.push(vec!["1:1".into(), "-2".into(), "c".into()]);
        t
    }

    #[test]
    fn csv_quotes_and_json_types() {
        let t = sample();
        let csv = t.render(Format::Csv).unwrap();
        assert_eq!(csv, "id,value,note\n1:0,0.5,\"a, b\"\n1:1,-2,c\n");
        let json: serde_json::Value = serde_json::from_str(&t.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json[1]["value"], serde_json::json!(-2));
        assert_eq!(json[0]["id"], serde_json::json!("1:0"));
    }

    #[test]
    fn text_is_aligned() {
        let s = sample().render(Format::Text).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0].find("value"), lines[1].find("0.5"));
    }

    #[test]
    fn negative_zero_and_formats() {
        assert_eq!(fmt_f(-0.0), "0.000000000000");
        assert_eq!(fmt_f(-1e-15), "0.000000000000");
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
