//! Deterministic CSV/JSON emission. One table schema serves every
//! subcommand: sorted metadata, a fixed column list, and rows of numbers
//! printed with 17 significant digits so identical configs yield identical
//! bytes.

use std::collections::BTreeMap;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

fn fmt_value(v: f64) -> String {
    // 17 significant digits round-trips every f64
    format!("{v:.16e}")
}

impl Table {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&v| fmt_value(v)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let value = serde_json::json!({
            "meta": meta,
            "columns": self.columns,
            "rows": self.rows,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&value)?)
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut meta = BTreeMap::new();
        meta.insert("k_as".into(), "2".into());
        meta.insert("command".into(), "single".into());
        Table {
            meta,
            columns: vec!["theta", "phi", "D"],
            rows: vec![vec![0.0, 0.0, 1.21], vec![0.5, 0.0, 0.25]],
        }
    }

    #[test]
    fn csv_shape_and_determinism() {
        let t = sample();
        let mut a = Vec::new();
        let mut b = Vec::new();
        t.write_csv(&mut a).unwrap();
        t.write_csv(&mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        // sorted metadata first, then header, then one line per row
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command=single");
        assert_eq!(lines[1], "# k_as=2");
        assert_eq!(lines[2], "theta,phi,D");
        assert_eq!(lines.len(), 5);
        assert!(lines[3].starts_with("0.0000000000000000e0,"));
    }

    #[test]
    fn json_schema() {
        let t = sample();
        let mut buf = Vec::new();
        t.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v.get("meta").is_some());
        assert_eq!(v["columns"][0], "theta");
        assert_eq!(v["rows"][0][2], 1.21);
    }
}
