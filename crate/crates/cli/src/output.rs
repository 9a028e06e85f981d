//! Output plumbing: every command emits either a JSON envelope or an
//! RFC-4180-style CSV table with a `#` preamble echoing the resolved
//! command (and the seed, for commands that consume randomness). CSV
//! output carries no timestamp so identical runs are byte-identical.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Envelope {
    pub schema: &'static str,
    pub command: String,
    pub seed: Option<u64>,
}

impl Envelope {
    pub fn json(&self, payload: Value) -> String {
        let mut record = json!({
            "schema_version": format!("{}/1", self.schema),
            "command": self.command,
            "timestamp": chrono::Utc::now().to_rfc3339(),
            "payload": payload,
        });
        if let Some(seed) = self.seed {
            record["seed"] = json!(seed);
        }
        let mut text = serde_json::to_string_pretty(&record).expect("serialisable payload");
        text.push('\n');
        text
    }

    pub fn csv(&self, header: &str, rows: &[String]) -> String {
        let mut text = String::new();
        match self.seed {
            Some(seed) => {
                text.push_str(&format!(
                    "# jurylab schema={}/1 seed={} command={}\n",
                    self.schema,
                    seed,
                    csv_field(&self.command)
                ));
            }
            None => {
                text.push_str(&format!(
                    "# jurylab schema={}/1 command={}\n",
                    self.schema,
                    csv_field(&self.command)
                ));
            }
        }
        text.push_str(header);
        text.push('\n');
        for row in rows {
            text.push_str(row);
            text.push('\n');
        }
        text
    }
}

/// Quote a CSV field when it contains a comma, quote or newline.
pub fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub fn join_abilities(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn write_output(out: &Option<PathBuf>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}
