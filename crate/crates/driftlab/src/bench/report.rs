use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::BenchReport;
use crate::error::Result;
use crate::stream_io::write_text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Json,
    Plotdata,
}

impl ReportFormat {
    pub const ALL: [ReportFormat; 3] = [ReportFormat::Csv, ReportFormat::Json, ReportFormat::Plotdata];

    fn file_name(self) -> &'static str {
        match self {
            ReportFormat::Csv => "report.csv",
            ReportFormat::Json => "report.json",
            ReportFormat::Plotdata => "plotdata.csv",
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |v| format!("{v:.6}"))
}

/// One row per detector.
pub fn render_csv(report: &BenchReport) -> String {
    let mut s = String::from("detector,tp,fa,mean_tp,mean_fa,mean_delay_samples,mtd_seconds,loss,nb_retrain\n");
    for d in &report.detectors {
        let _ = writeln!(
            s,
            "{},{},{},{:.3},{:.3},{},{:.6},{},{}",
            d.id,
            d.tp,
            d.fa,
            d.mean_tp,
            d.mean_fa,
            opt(d.mean_delay_samples),
            d.mtd_seconds,
            opt(d.loss),
            d.nb_retrain.map_or(String::new(), |n| n.to_string()),
        );
    }
    s
}

/// Event rasters: per seed, one `truth` line with the true drifts followed
/// by one line per detector with its alarm indices.
pub fn render_plotdata(report: &BenchReport) -> String {
    let mut s = String::from("series,seed,indices\n");
    let join = |v: &mut dyn Iterator<Item = usize>| {
        v.map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    };
    for (k, &seed) in report.seeds.iter().enumerate() {
        if let Some(run) = report.detectors.first().map(|d| &d.runs[k]) {
            let _ = writeln!(s, "truth,{seed},{}", join(&mut run.true_drifts.iter().copied()));
        }
        for d in &report.detectors {
            let run = &d.runs[k];
            let _ = writeln!(
                s,
                "{},{seed},{}",
                d.id,
                join(&mut run.events.iter().map(|e| e.detected_at_index))
            );
        }
    }
    s
}

/// Write the requested renderings into `dir`; returns the written paths.
pub fn emit_report(report: &BenchReport, formats: &[ReportFormat], dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for &f in formats {
        let text = match f {
            ReportFormat::Csv => render_csv(report),
            ReportFormat::Json => serde_json::to_string_pretty(report)? + "\n",
            ReportFormat::Plotdata => render_plotdata(report),
        };
        let path = dir.join(f.file_name());
        write_text(&path, &text)?;
        written.push(path);
    }
    Ok(written)
}
