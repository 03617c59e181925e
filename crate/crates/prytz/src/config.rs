//! Run configuration: command-line flags merged over an optional JSON file
//! whose keys mirror the long flag names (snake_case).

use std::path::{Path, PathBuf};

use prytz_core::dynamics::DEFAULT_STEPS_PER_ELL;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};
use crate::scan::FamilySpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ell: Option<f64>,
    pub step: Option<f64>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub theta0: Option<f64>,
    pub samples: Option<usize>,
    pub base_index: Option<usize>,
    pub path: Option<PathBuf>,
    pub scales: Option<Vec<f64>>,
    pub family: Option<FamilySpec>,
    pub bind: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> AppResult<FileConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| AppError::Input(format!("invalid config {}: {e}", path.display())))
    }
}

/// Settings shared by every engine command after merging.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub ell: f64,
    pub step: f64,
    pub output_format: OutputFormat,
    pub seed: u64,
    pub theta0: f64,
    pub samples: usize,
}

pub const DEFAULT_SAMPLES: usize = 256;

/// The flags that feed [`RunConfig`].
#[derive(Debug, Clone, Default, clap::Args)]
pub struct CommonArgs {
    /// Rod length.
    #[arg(long, global = true)]
    pub ell: Option<f64>,
    /// Integration step (default ell/200).
    #[arg(long, global = true)]
    pub step: Option<f64>,
    /// Output format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Seed for randomized families.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Initial rod direction in radians.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta0: Option<f64>,
    /// Number of states kept in JSON/CSV/SVG trace output.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// JSON file of defaults; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

impl CommonArgs {
    pub fn file(&self) -> AppResult<FileConfig> {
        self.config.as_deref().map(FileConfig::load).transpose().map(Option::unwrap_or_default)
    }

    /// Merges flags over `file`. A missing rod length is a usage error.
    pub fn resolve(&self, file: &FileConfig, default_format: OutputFormat) -> AppResult<RunConfig> {
        let ell = self
            .ell
            .or(file.ell)
            .ok_or_else(|| AppError::Usage("missing --ell (rod length)".into()))?;
        if !(ell.is_finite() && ell > 0.0) {
            return Err(AppError::Usage(format!("--ell must be positive, got {ell}")));
        }
        let step = self.step.or(file.step).unwrap_or(ell / DEFAULT_STEPS_PER_ELL);
        if !(step.is_finite() && step > 0.0) {
            return Err(AppError::Usage(format!("--step must be positive, got {step}")));
        }
        let theta0 = self.theta0.or(file.theta0).unwrap_or(0.0);
        if !theta0.is_finite() {
            return Err(AppError::Usage("--theta0 must be finite".into()));
        }
        let samples = self.samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES);
        if samples < 2 {
            return Err(AppError::Usage("--samples must be at least 2".into()));
        }
        Ok(RunConfig {
            ell,
            step,
            output_format: self.format.or(file.format).unwrap_or(default_format),
            seed: self.seed.or(file.seed).unwrap_or(0),
            theta0,
            samples,
        })
    }
}
