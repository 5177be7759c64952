//! The `driftlab` command line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use driftlab_core::addm::AddmConfig;
use driftlab_core::streams::{generate, DriftSchedule, Family, GeneratorSpec};
use serde::de::DeserializeOwned;

use crate::bench::{
    emit_report, render_csv, run_loss_protocol, run_synthetic, tune_detector, BenchConfig, DetectorEntry,
    DetectorSpec, ParamGrid, ReportFormat,
};
use crate::detect::{default_reference_len, detect_series, read_loss_column};
use crate::error::{DriftlabError, Result};
use crate::stream_io::{save_events, save_manifest, save_stream, write_events, write_text};

#[derive(Debug, Parser)]
#[command(name = "driftlab", version, about = "Concept drift detection on error streams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic stream and its drift manifest.
    Generate {
        /// friedman, friedman_no_return, brieman_2d_planes, mixed, agrawal_32 or agrawal_3213.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 20_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Manifest JSON overriding the family's evenly spaced schedule.
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Noise level; the family default when absent.
        #[arg(long)]
        noise: Option<f64>,
        /// Stream CSV; the manifest goes next to it as `<stem>.manifest.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one detector over a CSV column of per-sample losses.
    Detect {
        /// ADDM, ADWIN, DDM, EDDM, PH, KSWIN, HDDM_A, HDDM_W, NEVER or EVERY_<n>.
        #[arg(long)]
        detector: String,
        /// JSON: an ADDM config, or a map of baseline parameters.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        input: PathBuf,
        /// Loss column; defaults to `loss` or the file's only column.
        #[arg(long)]
        column: Option<String>,
        /// Leading losses used as ADDM's reference; one window by default.
        #[arg(long)]
        reference: Option<usize>,
        /// Overrides the seed of the detector config.
        #[arg(long)]
        seed: Option<u64>,
        /// JSON-lines event file; events go to stdout when absent.
        #[arg(long)]
        events_out: Option<PathBuf>,
    },
    /// Run a benchmark protocol and write report.csv, report.json and plotdata.csv.
    Bench {
        #[arg(value_enum)]
        protocol: BenchProtocol,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid-search one detector's parameters on an experimental stream.
    Tune {
        #[arg(long)]
        detector: String,
        /// JSON map from parameter name to candidate values.
        #[arg(long)]
        grid: PathBuf,
        /// Bench config whose stream is the experimental set.
        #[arg(long)]
        input: PathBuf,
        /// Result JSON; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchProtocol {
    Synthetic,
    Loss,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DriftlabError::BadConfig(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map_or("stream".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.manifest.json"))
}

/// Detector entry for `id`, with its parameters replaced by `config` when given.
fn entry_with_config(id: &str, config: Option<&Path>, seed: Option<u64>) -> Result<DetectorEntry> {
    let mut entry = DetectorEntry::from_id(id)?;
    match (&mut entry.spec, config) {
        (DetectorSpec::Addm(cfg), Some(path)) => *cfg = read_json::<AddmConfig>(path)?,
        (DetectorSpec::Baseline(cfg), Some(path)) => cfg.params = read_json::<BTreeMap<String, f64>>(path)?,
        (_, Some(_)) => {
            return Err(DriftlabError::BadConfig(format!("{} takes no config", entry.id())));
        }
        (_, None) => {}
    }
    if let Some(seed) = seed {
        match &mut entry.spec {
            DetectorSpec::Addm(cfg) => cfg.seed = seed,
            DetectorSpec::Baseline(cfg) => cfg.seed = seed,
            _ => {}
        }
    }
    Ok(entry)
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            family,
            n,
            seed,
            schedule,
            noise,
            out,
        } => {
            let family = Family::from_name(&family)
                .ok_or_else(|| DriftlabError::BadConfig(format!("unknown family `{family}`")))?;
            let mut spec = GeneratorSpec::standard(family, n, seed);
            if let Some(path) = schedule {
                spec.schedule = read_json::<DriftSchedule>(&path)?;
            }
            if let Some(noise) = noise {
                spec.noise_sigma = noise;
            }
            let (records, manifest) = generate(&spec)?;
            save_stream(&out, &records)?;
            let mpath = manifest_path(&out);
            save_manifest(&mpath, &manifest)?;
            println!(
                "{} samples, {} drifts at {:?} -> {}, {}",
                records.len(),
                manifest.n_drifts(),
                manifest.change_points,
                out.display(),
                mpath.display()
            );
        }
        Command::Detect {
            detector,
            config,
            input,
            column,
            reference,
            seed,
            events_out,
        } => {
            let entry = entry_with_config(&detector, config.as_deref(), seed)?;
            let losses = read_loss_column(&input, column.as_deref())?;
            let n_ref = reference.unwrap_or_else(|| default_reference_len(&entry));
            let events = detect_series(&entry, &losses, n_ref)?;
            match events_out {
                Some(path) => {
                    save_events(&path, &events)?;
                    println!("{} events -> {}", events.len(), path.display());
                }
                None => write_events(std::io::stdout().lock(), &events)?,
            }
        }
        Command::Bench { protocol, config, out } => {
            let mut cfg: BenchConfig = read_json(&config)?;
            let dir = out
                .or_else(|| cfg.output_dir.clone())
                .ok_or_else(|| DriftlabError::BadConfig("no output directory: pass --out".into()))?;
            cfg.output_dir = Some(dir.clone());
            let report = match protocol {
                BenchProtocol::Synthetic => run_synthetic(&cfg)?,
                BenchProtocol::Loss => run_loss_protocol(&cfg)?,
            };
            std::fs::create_dir_all(&dir).map_err(|e| DriftlabError::io(&dir, e))?;
            emit_report(&report, &ReportFormat::ALL, &dir)?;
            print!("{}", render_csv(&report));
        }
        Command::Tune {
            detector,
            grid,
            input,
            out,
        } => {
            let cfg: BenchConfig = read_json(&input)?;
            let grid: ParamGrid = read_json(&grid)?;
            let base = cfg
                .detectors
                .iter()
                .find(|d| d.id().eq_ignore_ascii_case(&detector))
                .cloned()
                .map_or_else(|| DetectorEntry::from_id(&detector), Ok)?;
            let result = tune_detector(&cfg, &base, &grid)?;
            let text = serde_json::to_string_pretty(&result)? + "\n";
            match out {
                Some(path) => write_text(&path, &text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}
