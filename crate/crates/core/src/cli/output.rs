use clap::ValueEnum;
use serde_json::Value;

use crate::hopf_verify::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One unit of command output.
#[derive(Clone, Debug)]
pub enum Record {
    Report(CheckReport),
    /// A flat JSON object with its own pass criterion.
    Object { value: Value, pass: bool },
    Matrix { json: Value, csv: String, text: String },
}

impl Record {
    pub fn pass(&self) -> bool {
        match self {
            Record::Report(r) => r.pass,
            Record::Object { pass, .. } => *pass,
            Record::Matrix { .. } => true,
        }
    }
}

fn report_value(r: &CheckReport, compare: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    if compare {
        v.as_object_mut().expect("report is an object").remove("ms");
    }
    v
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        other => other.to_string(),
    }
}

/// Renders records in the requested format. JSON is one line per record; CSV writes a header
/// whenever the set of columns changes.
pub fn render(records: &[Record], format: Format, compare: bool) -> String {
    let mut out = String::new();
    let mut last_header: Option<Vec<String>> = None;
    for rec in records {
        match (format, rec) {
            (Format::Json, Record::Report(r)) if !compare => out += &format!("{}\n", r.to_json()),
            (Format::Json, Record::Report(r)) => out += &format!("{}\n", r.to_json_untimed()),
            (Format::Json, Record::Object { value, .. }) => out += &format!("{value}\n"),
            (Format::Json, Record::Matrix { json, .. }) => out += &format!("{json}\n"),
            (Format::Csv, Record::Matrix { csv, .. }) => out += csv,
            (Format::Csv, Record::Report(r)) => {
                let v = report_value(r, compare);
                push_csv(&mut out, &mut last_header, v.as_object().expect("report is an object"));
            }
            (Format::Csv, Record::Object { value, .. }) => {
                if let Some(obj) = value.as_object() {
                    push_csv(&mut out, &mut last_header, obj);
                }
            }
            (Format::Text, Record::Report(r)) => {
                let status = if r.pass { "PASS" } else { "FAIL" };
                out += &format!(
                    "{status} {} [{} K_h={} K_w={}] residual_terms={}",
                    r.check, r.preset, r.kh, r.kw, r.residual_terms
                );
                if !compare {
                    out += &format!(" ({} ms)", r.ms);
                }
                out.push('\n');
                for n in &r.notes {
                    out += &format!("    {n}\n");
                }
            }
            (Format::Text, Record::Object { value, pass }) => {
                out += &format!("{}\n", if *pass { "PASS" } else { "FAIL" });
                if let Some(obj) = value.as_object() {
                    for (k, v) in obj {
                        out += &format!("    {k}: {}\n", cell(v));
                    }
                }
            }
            (Format::Text, Record::Matrix { text, .. }) => {
                out += text;
                if !text.ends_with('\n') {
                    out.push('\n');
                }
            }
        }
    }
    out
}

fn push_csv(out: &mut String, last: &mut Option<Vec<String>>, obj: &serde_json::Map<String, Value>) {
    let header: Vec<String> = obj.keys().cloned().collect();
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    if last.as_ref() != Some(&header) {
        w.write_record(&header).expect("in-memory write");
        *last = Some(header);
    }
    w.write_record(obj.values().map(cell)).expect("in-memory write");
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8"));
}
