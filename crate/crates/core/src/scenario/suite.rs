use std::fs;
use std::path::Path;

use serde::Serialize;

use super::runner::{run_file, RunOptions};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Passed,
    Failed,
    ConfigError,
    Unreadable,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub file: String,
    pub status: RowStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Passed)
    }

    pub fn table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.file.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let mut out = format!("{:<width$}  {:<12}  detail\n", "scenario", "status");
        for r in &self.rows {
            let status = serde_json::to_value(r.status)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            out.push_str(&format!(
                "{:<width$}  {:<12}  {}\n",
                r.file, status, r.detail
            ));
        }
        out
    }
}

/// Runs every `*.toml` file in `dir` in name order. Failures are recorded
/// per row and never stop the suite.
pub fn run_suite(dir: &Path, opts: &RunOptions) -> Result<SuiteReport> {
    let mut files: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    let mut report = SuiteReport::default();
    for path in files {
        let file = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let (status, detail) = match run_file(&path, opts) {
            Ok(r) if r.passed() => (RowStatus::Passed, format!("{} checks", r.checks.len())),
            Ok(r) => {
                let failed: Vec<&str> = r
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                let detail = r
                    .failure
                    .clone()
                    .unwrap_or_else(|| format!("failed checks: {}", failed.join(", ")));
                (RowStatus::Failed, detail)
            }
            Err(Error::Config(m)) => (RowStatus::ConfigError, m),
            Err(Error::Io(e)) => (RowStatus::Unreadable, e.to_string()),
            Err(e) => (RowStatus::Failed, e.to_string()),
        };
        report.rows.push(SuiteRow {
            file,
            status,
            detail,
        });
    }
    Ok(report)
}
