//! Tabular output: CSV with `# key: value` metadata lines, and a JSON mirror.
//!
//! Cells are kept as text. Floats go through [`num`], which uses the same
//! shortest round-trip formatting as the JSON writer, so a table survives
//! CSV -> JSON -> CSV unchanged.

use crate::error::{Error, Result};
use crate::saw::SawCensus;
use num_bigint::BigUint;
use serde_json::{Map, Value};

/// Formats a float as a cell: shortest round-trip digits, `NaN`, `inf`, `-inf`.
pub fn num(v: f64) -> String {
    match serde_json::Number::from_f64(v) {
        Some(n) => n.to_string(),
        None if v.is_nan() => "NaN".into(),
        None if v > 0.0 => "inf".into(),
        None => "-inf".into(),
    }
}

/// `num(v)` or an empty cell.
pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table { metadata: Vec::new(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Table {
        let value = value.to_string().replace(['\n', '\r'], " ");
        self.metadata.push((key.to_string(), value));
        self
    }

    pub fn get_meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn parse_csv(text: &str) -> Result<Table> {
        let mut metadata = Vec::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            let Some(rest) = line.strip_prefix('#') else { break };
            let rest = rest.trim_end_matches(['\n', '\r']);
            let rest = rest.strip_prefix(' ').unwrap_or(rest);
            let (k, v) = rest.split_once(": ").or_else(|| rest.strip_suffix(':').map(|k| (k, ""))).ok_or_else(|| Error::Parse {
                line: metadata.len() + 1,
                message: format!("metadata line without ': ' separator: {rest}"),
            })?;
            metadata.push((k.to_string(), v.to_string()));
            body_start += line.len();
        }
        let mut r = csv::Reader::from_reader(&text.as_bytes()[body_start..]);
        let columns = r.headers()?.iter().map(String::from).collect();
        let rows = r.records().map(|rec| rec.map(|r| r.iter().map(String::from).collect())).collect::<std::result::Result<_, _>>()?;
        Ok(Table { metadata, columns, rows })
    }

    /// `{"metadata": {..}, "columns": [..], "rows": [{column: value}]}`;
    /// numeric cells become JSON numbers, empty cells `null`.
    pub fn to_json(&self) -> Result<String> {
        let metadata: Map<String, Value> = self.metadata.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().zip(row).map(|(c, v)| (c.clone(), cell_to_json(v))).collect()))
            .collect();
        let doc = serde_json::json!({ "metadata": metadata, "columns": self.columns, "rows": rows });
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    pub fn parse_json(text: &str) -> Result<Table> {
        let doc: Value = serde_json::from_str(text)?;
        let bad = |m: &str| Error::Parse { line: 0, message: m.to_string() };
        let metadata = doc["metadata"]
            .as_object()
            .ok_or_else(|| bad("missing metadata object"))?
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.as_str().ok_or_else(|| bad("metadata values must be strings"))?.to_string())))
            .collect::<Result<_>>()?;
        let columns: Vec<String> = doc["columns"]
            .as_array()
            .ok_or_else(|| bad("missing columns array"))?
            .iter()
            .map(|c| c.as_str().map(String::from).ok_or_else(|| bad("column names must be strings")))
            .collect::<Result<_>>()?;
        let rows = doc["rows"]
            .as_array()
            .ok_or_else(|| bad("missing rows array"))?
            .iter()
            .map(|row| {
                columns
                    .iter()
                    .map(|c| match &row[c] {
                        Value::Null => Ok(String::new()),
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        Value::Bool(b) => Ok(b.to_string()),
                        _ => Err(bad("cells must be scalars")),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Table { metadata, columns, rows })
    }
}

/// `k,count` rows with `graph`, `root`, `k_max` and `complete` metadata.
pub fn census_table(census: &SawCensus) -> Table {
    let mut t = Table::new(&["k", "count"]);
    t.meta("graph", &census.graph_name).meta("root", census.root).meta("k_max", census.k_max()).meta("complete", census.complete);
    for (k, c) in census.counts.iter().enumerate() {
        t.push(vec![k.to_string(), c.to_string()]);
    }
    t
}

pub fn parse_census(t: &Table) -> Result<SawCensus> {
    let bad = |line: usize, m: String| Error::Parse { line, message: m };
    if t.columns != ["k", "count"] {
        return Err(bad(0, format!("expected columns k,count, got {}", t.columns.join(","))));
    }
    let root = t.get_meta("root").unwrap_or("0").parse().map_err(|_| bad(0, "bad root".into()))?;
    let complete = t.get_meta("complete").is_none_or(|v| v == "true");
    let mut counts = Vec::with_capacity(t.rows.len());
    for (i, row) in t.rows.iter().enumerate() {
        if row[0] != i.to_string() {
            return Err(bad(i + 1, format!("expected k = {i}, got {}", row[0])));
        }
        counts.push(row[1].parse::<BigUint>().map_err(|_| bad(i + 1, format!("bad count '{}'", row[1])))?);
    }
    Ok(SawCensus { graph_name: t.get_meta("graph").unwrap_or("graph").to_string(), root, counts, complete })
}

fn cell_to_json(cell: &str) -> Value {
    if cell.is_empty() {
        return Value::Null;
    }
    if let Ok(i) = cell.parse::<i64>() {
        if i.to_string() == cell {
            return Value::from(i);
        }
    }
    if let Ok(f) = cell.parse::<f64>() {
        if num(f) == cell {
            if let Some(n) = serde_json::Number::from_f64(f) {
                return Value::Number(n);
            }
        }
    }
    Value::String(cell.to_string())
}
