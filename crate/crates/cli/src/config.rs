use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Deserialize;

use crate::Format;

/// Settings shared by all commands. A `--config` file uses the flag names
/// as keys; flags given on the command line win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub omega_limit: Option<u128>,
    pub shards: Option<usize>,
    pub checkpoint_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub integer_bound: Option<u64>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let cfg: RunConfig = match path {
            None => RunConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                serde_json::from_str(&text)
                    .map_err(|e| trusskit_core::Error::Parse(format!("config {}: {e}", p.display())))?
            }
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> anyhow::Result<()> {
        if self.omega_limit == Some(0) || self.shards == Some(0) || self.integer_bound == Some(0) {
            bail!(trusskit_core::Error::Parse("thresholds must be positive".into()));
        }
        Ok(())
    }

    pub fn overlay(mut self, threads: Option<usize>, seed: Option<u64>, omega_limit: Option<u128>) -> anyhow::Result<Self> {
        self.threads = threads.or(self.threads);
        self.seed = seed.or(self.seed);
        self.omega_limit = omega_limit.or(self.omega_limit);
        self.check()?;
        Ok(self)
    }

    pub fn omega_limit(&self) -> u128 {
        self.omega_limit.unwrap_or(trusskit_core::bimult::DEFAULT_OMEGA_LIMIT)
    }
}
