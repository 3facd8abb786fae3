//! Settings resolved from flags and the optional `HDX_CONFIG` file, and the
//! run manifest written next to every JSON report.

use crate::args::Global;
use anyhow::{bail, Context, Result};
use hdx_core::cohomology::{Mode, SearchConfig, DEFAULT_BUDGET, DEFAULT_EXACT_THRESHOLD};
use hdx_core::spectral::{DEFAULT_EIGEN_CAP, TOLERANCE};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Keys accepted in the config file; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    threads: Option<usize>,
    seed: Option<u64>,
    exact_threshold: Option<usize>,
    budget: Option<usize>,
    mode: Option<String>,
    cap: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub seed: u64,
    pub exact_threshold: usize,
    pub budget: usize,
    pub mode: Mode,
    pub cap: usize,
    pub tolerance: f64,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub json: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(flags: &Global) -> Result<Settings> {
        let file = match std::env::var_os("HDX_CONFIG") {
            None => FileConfig::default(),
            Some(path) => {
                let text = std::fs::read_to_string(&path).with_context(|| format!("reading HDX_CONFIG {}", Path::new(&path).display()))?;
                toml::from_str(&text).with_context(|| format!("parsing HDX_CONFIG {}", Path::new(&path).display()))?
            }
        };
        let mode = match flags.mode.clone().or(file.mode) {
            None => Mode::Auto,
            Some(m) => m.parse()?,
        };
        let threads = flags.threads.or(file.threads);
        if threads == Some(0) {
            bail!("--threads must be positive");
        }
        Ok(Settings {
            seed: flags.seed.or(file.seed).unwrap_or(0),
            exact_threshold: flags.exact_threshold.or(file.exact_threshold).unwrap_or(DEFAULT_EXACT_THRESHOLD),
            budget: flags.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
            mode,
            cap: flags.cap.or(file.cap).unwrap_or(DEFAULT_EIGEN_CAP),
            tolerance: TOLERANCE,
            threads,
            json: flags.json.clone(),
        })
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig { mode: self.mode, exact_threshold: self.exact_threshold, budget: self.budget, seed: self.seed }
    }
}

#[derive(Debug, Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Stage {
    name: String,
    wall_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    command_line: Vec<String>,
    seed: u64,
    config: Settings,
    version: &'static str,
    inputs: Vec<InputDigest>,
    stages: Vec<Stage>,
    #[serde(skip)]
    clock: Option<(String, Instant)>,
}

impl Manifest {
    pub fn new(settings: &Settings) -> Manifest {
        Manifest {
            command_line: std::env::args().collect(),
            seed: settings.seed,
            config: settings.clone(),
            version: env!("CARGO_PKG_VERSION"),
            inputs: Vec::new(),
            stages: Vec::new(),
            clock: None,
        }
    }

    /// Reads an input file, recording its digest.
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: hex(&Sha256::digest(&bytes)) });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn stage(&mut self, name: &str) {
        self.finish_stage();
        self.clock = Some((name.to_string(), Instant::now()));
    }

    pub fn finish_stage(&mut self) {
        if let Some((name, t)) = self.clock.take() {
            self.stages.push(Stage { name, wall_ms: t.elapsed().as_secs_f64() * 1e3 });
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
