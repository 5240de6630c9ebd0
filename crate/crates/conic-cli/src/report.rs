//! Report assembly and output files.
//!
//! Every command writes `<command>.report.json` with a byte-deterministic
//! body (config, command, results, pass, diagnostics — in that order, all
//! floats at 17 significant digits). Tabular commands additionally write
//! `<command>.csv` when the `csv` format is enabled. Wall-clock metadata
//! lives in a separate `<command>.report_meta.json` sidecar so that the
//! main report stays reproducible bit for bit.

use anyhow::{Context, Result};
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use crate::json::{obj, Json};

pub struct Report {
    pub command: String,
    pub config: Json,
    pub results: Json,
    pub pass: bool,
    pub diagnostics: Vec<String>,
    /// CSV body (header line included) for tabular commands.
    pub csv: Option<String>,
}

impl Report {
    fn body(&self) -> String {
        obj([
            ("config", self.config.clone()),
            ("command", Json::str(&self.command)),
            ("results", self.results.clone()),
            ("pass", Json::Bool(self.pass)),
            (
                "diagnostics",
                Json::Arr(self.diagnostics.iter().map(Json::str).collect()),
            ),
        ])
        .render()
    }

    /// Write the report set into `directory`; returns the paths written.
    pub fn write(&self, directory: &Path, formats: &[String], elapsed: Duration) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(directory)
            .with_context(|| format!("creating output directory {}", directory.display()))?;
        let mut written = Vec::new();

        let report_path = directory.join(format!("{}.report.json", self.command));
        std::fs::write(&report_path, self.body())
            .with_context(|| format!("writing {}", report_path.display()))?;
        written.push(report_path);

        if let Some(csv) = &self.csv {
            if formats.iter().any(|f| f == "csv") {
                let csv_path = directory.join(format!("{}.csv", self.command));
                std::fs::write(&csv_path, csv)
                    .with_context(|| format!("writing {}", csv_path.display()))?;
                written.push(csv_path);
            }
        }

        let unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs_f64())
            .unwrap_or(0.0);
        let meta = obj([
            ("command", Json::str(&self.command)),
            ("unix_time", Json::Num(unix)),
            ("elapsed_seconds", Json::Num(elapsed.as_secs_f64())),
        ])
        .render();
        let meta_path = directory.join(format!("{}.report_meta.json", self.command));
        std::fs::write(&meta_path, meta)
            .with_context(|| format!("writing {}", meta_path.display()))?;
        written.push(meta_path);

        Ok(written)
    }
}

/// Format one CSV cell from a float with full round-trip precision.
pub fn csv_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "nan".to_string()
    }
}
