use bqd_core::report::{Report, SCHEMA};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command's result in all three renderings.
pub struct Output {
    pub pass: bool,
    pub json: Value,
    pub text: String,
    pub csv: Vec<Vec<String>>,
}

impl Output {
    pub fn new(command: &str, subject: &str, pass: bool) -> Self {
        let json = json!({ "schema": SCHEMA, "command": command, "subject": subject, "pass": pass });
        Output { pass, json, text: String::new(), csv: Vec::new() }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.obj().insert(key.into(), value);
    }

    fn obj(&mut self) -> &mut Map<String, Value> {
        self.json.as_object_mut().expect("envelope is an object")
    }

    pub fn fail(&mut self) {
        self.pass = false;
        self.obj().insert("pass".into(), Value::Bool(false));
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
        }
    }
}

pub const REPORT_HEADER: [&str; 5] = ["section", "id", "anchor", "status", "witness"];

/// Append a report as a JSON section, text block and CSV rows.
pub fn add_report(out: &mut Output, section: &str, report: &Report) {
    if !report.all_pass() {
        out.fail();
    }
    out.set(section, serde_json::to_value(report).expect("serializable"));
    out.text.push_str(&report.to_string());
    if out.csv.is_empty() {
        out.csv.push(REPORT_HEADER.iter().map(|s| s.to_string()).collect());
    }
    for c in &report.checks {
        out.csv.push(vec![
            section.to_string(),
            c.id.clone(),
            c.anchor.clone(),
            c.status.to_string(),
            c.witness.clone().unwrap_or_default(),
        ]);
    }
}
