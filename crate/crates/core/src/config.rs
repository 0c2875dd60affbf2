//! Run configuration: budgets, horizons, output format, seed, and worker
//! count, loadable from a plain `key=value` text file with every key
//! overridable by a command-line flag.

use crate::error::{Error, Result};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Work cap for enumerations and reduction rounds.
    pub enum_cap: u64,
    /// Total-cell cap for the Cantor construction.
    pub cell_cap: u64,
    /// Default precision (window length) for series expansions.
    pub precision: usize,
    pub output: OutputFormat,
    pub seed: u64,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            enum_cap: 50_000_000,
            cell_cap: 1 << 24,
            precision: 64,
            output: OutputFormat::Json,
            seed: 1,
            workers: 1,
        }
    }
}

impl RunConfig {
    /// Parse a `key=value` file; `#` starts a comment, blank lines ignored.
    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Malformed(format!(
                    "{}:{}: expected key=value",
                    path.display(),
                    lineno + 1
                )));
            };
            cfg.set(key.trim(), value.trim()).map_err(|e| {
                Error::Malformed(format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Malformed(format!("bad {what} value `{value}`"));
        match key {
            "budget.enum" => self.enum_cap = value.parse().map_err(|_| bad("budget.enum"))?,
            "budget.cells" => self.cell_cap = value.parse().map_err(|_| bad("budget.cells"))?,
            "precision" => self.precision = value.parse().map_err(|_| bad("precision"))?,
            "output" => {
                self.output = match value {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(bad("output")),
                }
            }
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "workers" => {
                self.workers = value.parse().map_err(|_| bad("workers"))?;
                if self.workers == 0 {
                    return Err(Error::Malformed("workers must be positive".into()));
                }
            }
            _ => return Err(Error::Malformed(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    pub fn budget(&self) -> crate::lattice::Budget {
        crate::lattice::Budget::new(self.enum_cap)
    }
}
