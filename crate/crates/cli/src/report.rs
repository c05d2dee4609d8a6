//! Rendered command output.
//!
//! A report is an ordered list of named results plus at most one table. The
//! bytes depend only on the report contents: numbers are printed with Rust's
//! shortest round-trip formatting and no clock or environment data is used.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Tool version plus a digest of everything the output depends on.
#[derive(Clone, Debug)]
pub struct Provenance {
    hasher: Sha256,
}

impl Provenance {
    pub fn new(argv: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in argv {
            hasher.update(a.as_bytes());
            hasher.update([0u8]);
        }
        Provenance { hasher }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.hasher.update([1u8]);
        self.hasher.update(name.as_bytes());
        self.hasher.update([0u8]);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest_hex(&self) -> String {
        self.hasher.clone().finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Entry {
    key: String,
    value: Value,
    unit: &'static str,
    display: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    title: String,
    entries: Vec<Entry>,
    notes: Vec<String>,
    table: Option<Table>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            entries: Vec::new(),
            notes: Vec::new(),
            table: None,
        }
    }

    /// A numeric result in SI `unit`, shown to the user as `display`.
    pub fn quantity(&mut self, key: &str, si_value: f64, unit: &'static str, display: impl Into<String>) -> &mut Self {
        self.entries.push(Entry {
            key: key.into(),
            value: json!(si_value),
            unit,
            display: display.into(),
        });
        self
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        let value = value.into();
        self.entries.push(Entry {
            key: key.into(),
            display: value.clone(),
            value: Value::String(value),
            unit: "",
        });
        self
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.entries.push(Entry {
            key: key.into(),
            display: value.to_string(),
            value: Value::Bool(value),
            unit: "",
        });
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<Value>>) -> &mut Self {
        debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
        self.table = Some(Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn value(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|e| e.key == key).map(|e| &e.value)
    }

    pub fn render(&self, format: Format, provenance: &Provenance) -> String {
        let version = env!("CARGO_PKG_VERSION");
        let digest = provenance.digest_hex();
        match format {
            Format::Text => self.render_text(version, &digest),
            Format::Csv => self.render_csv(version, &digest),
            Format::Json => self.render_json(version, &digest),
        }
    }

    fn render_text(&self, version: &str, digest: &str) -> String {
        let mut s = format!("# cryoion {version}\n# input-sha256 {digest}\n{}\n", self.title);
        let width = self.entries.iter().map(|e| e.key.len()).max().unwrap_or(0);
        for e in &self.entries {
            s += &format!("  {:width$}  {}\n", e.key, e.display);
        }
        for n in &self.notes {
            s += &format!("note: {n}\n");
        }
        if let Some(t) = &self.table {
            s += &format!("[{}]\n{}\n", t.name, t.columns.join(","));
            for r in &t.rows {
                s += &r.iter().map(|v| csv_field(&cell(v))).collect::<Vec<_>>().join(",");
                s.push('\n');
            }
        }
        s
    }

    /// With a table, the scalar results become `#` comment lines above it so
    /// the file stays a single valid CSV table.
    fn render_csv(&self, version: &str, digest: &str) -> String {
        let mut s = format!("# cryoion {version}\n# input-sha256 {digest}\n# {}\n", self.title);
        let scalar_row = |e: &Entry| format!("{},{},{}", e.key, csv_field(&cell(&e.value)), e.unit);
        match &self.table {
            Some(t) => {
                for e in &self.entries {
                    s += &format!("# {}\n", scalar_row(e));
                }
                for n in &self.notes {
                    s += &format!("# note: {n}\n");
                }
                s += &t.columns.join(",");
                s.push('\n');
                for r in &t.rows {
                    s += &r.iter().map(|v| csv_field(&cell(v))).collect::<Vec<_>>().join(",");
                    s.push('\n');
                }
            }
            None => {
                for n in &self.notes {
                    s += &format!("# note: {n}\n");
                }
                s += "quantity,value,unit\n";
                for e in &self.entries {
                    s += &scalar_row(e);
                    s.push('\n');
                }
            }
        }
        s
    }

    fn render_json(&self, version: &str, digest: &str) -> String {
        let results: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({"key": e.key, "value": e.value, "unit": e.unit, "display": e.display}))
            .collect();
        let mut doc = json!({
            "tool": "cryoion",
            "version": version,
            "input_sha256": digest,
            "title": self.title,
            "results": results,
            "notes": self.notes,
        });
        if let Some(t) = &self.table {
            doc["table"] = json!({"name": t.name, "columns": t.columns, "rows": t.rows});
        }
        let mut s = serde_json::to_string_pretty(&doc).expect("report is valid JSON");
        s.push('\n');
        s
    }
}

/// Row of numbers for [`Report::table`].
pub fn row(values: &[f64]) -> Vec<Value> {
    values.iter().map(|v| json!(v)).collect()
}
