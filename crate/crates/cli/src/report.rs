//! Tabular reports rendered as JSON, CSV or aligned text.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Debug)]
pub struct Report {
    command: String,
    meta: Vec<(String, Value)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    status: Option<bool>,
}

impl Report {
    pub fn new(command: &str, header: &[&str]) -> Report {
        Report {
            command: command.into(),
            meta: vec![],
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: vec![],
            status: None,
        }
    }

    pub fn meta(&mut self, key: &str, v: Value) {
        self.meta.push((key.into(), v));
    }

    pub fn row(&mut self, r: Vec<String>) {
        debug_assert_eq!(r.len(), self.header.len());
        self.rows.push(r);
    }

    pub fn set_status(&mut self, pass: bool) {
        self.status = Some(pass);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.clone()));
        for (k, v) in &self.meta {
            m.insert(k.clone(), v.clone());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(self.header.iter().cloned().zip(r.iter().map(|c| Value::from(c.clone()))).collect())
            })
            .collect();
        m.insert("rows".into(), Value::Array(rows));
        if let Some(p) = self.status {
            m.insert("status".into(), Value::from(status(p)));
        }
        Value::Object(m)
    }

    pub fn render(&self, fmt: Format) -> Result<String, String> {
        match fmt {
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json()).map_err(|e| e.to_string())? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(vec![]);
                w.write_record(&self.header).map_err(|e| e.to_string())?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
            Format::Pretty => Ok(self.pretty()),
        }
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        for (k, v) in &self.meta {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {v}\n"));
        }
        let mut width: Vec<usize> = self.header.iter().map(String::len).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate() {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = width[i])).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(&self.header));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        if let Some(p) = self.status {
            out.push_str(&format!("result: {}\n", status(p)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("demo", &["a", "b"]);
        r.meta("x", json!("1"));
        r.row(vec!["(2,0)".into(), "1 - q".into()]);
        r.set_status(false);
        r
    }

    #[test]
    fn csv_quotes_weights() {
        let s = sample().render(Format::Csv).unwrap();
        assert_eq!(s, "a,b\n\"(2,0)\",1 - q\n");
    }

    #[test]
    fn json_has_rows_and_status() {
        let v = sample().to_json();
        assert_eq!(v["rows"][0]["a"], "(2,0)");
        assert_eq!(v["status"], "FAIL");
    }

    #[test]
    fn pretty_ends_with_result() {
        assert!(sample().render(Format::Pretty).unwrap().ends_with("result: FAIL\n"));
    }
}
