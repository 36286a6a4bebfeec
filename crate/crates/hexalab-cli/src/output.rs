//! Output plumbing: format selection, the run-config header, and the
//! text/csv/json writers.

use clap::ValueEnum;
use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Run configuration recorded in every output header.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub threads: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn header(&self) -> String {
        format!(
            "# hexalab {} | seed={} threads={}",
            self.command, self.seed, self.threads
        )
    }

    /// Writes the rendered output to the chosen sink. JSON objects get the
    /// seed and thread count injected at the top level.
    pub fn emit(&self, body: Rendered) -> Result<(), String> {
        let text = match body {
            Rendered::Lines(lines) => {
                let mut s = self.header();
                s.push('\n');
                s.push_str(&lines.join("\n"));
                s.push('\n');
                s
            }
            Rendered::Json(mut value) => {
                if let Some(map) = value.as_object_mut() {
                    map.insert("seed".into(), self.seed.into());
                    map.insert("threads".into(), self.threads.into());
                }
                let mut s = serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?;
                s.push('\n');
                s
            }
        };
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| format!("write {path:?}: {e}")),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|e| e.to_string())
            }
        }
    }
}

pub enum Rendered {
    /// Header line, then the given lines (used for text and csv output).
    Lines(Vec<String>),
    Json(serde_json::Value),
}

/// Exit status conventions: 0 = verdict holds / data produced, 1 = verdict
/// fails, 2 = unusable input.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub fn verdict_exit(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Minimal CSV quoting for fields that may contain commas.
pub fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_owned()
    }
}
