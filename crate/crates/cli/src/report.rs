//! The structured run report. Field names are frozen for schema version 1;
//! output is deterministic for identical inputs (no timestamps or timings).

use std::path::Path;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct RunReport<T: Serialize> {
    pub schema: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog_version: Option<u32>,
    pub command: &'static str,
    pub mode: String,
    pub passed: bool,
    pub results: T,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: &'static str, mode: impl Into<String>, catalog_version: Option<u32>, passed: bool, results: T) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            catalog_version,
            command,
            mode: mode.into(),
            passed,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json())
    }
}
