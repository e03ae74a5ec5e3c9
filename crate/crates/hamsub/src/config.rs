//! Run configuration: defaults, an optional `key=value` file, and CLI
//! overrides, merged in that order. Every run embeds the effective config
//! in its output header so results are replayable.

use std::path::Path;

use hamsub_core::{DEFAULT_DESK_CAP, DEFAULT_NU_CAP};
use serde_json::json;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub threads: usize,
    pub seed: u64,
    pub cap: usize,
    pub nu_cap: usize,
    pub eps1: f64,
    pub cprime: f64,
    pub strict: bool,
    pub timing: bool,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threads: 1,
            seed: 0,
            cap: DEFAULT_DESK_CAP,
            nu_cap: DEFAULT_NU_CAP,
            eps1: hamsub_core::expander::DEFAULT_EPS1,
            cprime: hamsub_core::expander::DEFAULT_C_PRIME,
            strict: false,
            timing: false,
            json: true,
        }
    }
}

impl RunConfig {
    pub fn apply_file(&mut self, path: &Path) -> anyhow::Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow::anyhow!("config line {} is not key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "threads" => self.threads = value.parse()?,
                "seed" => self.seed = value.parse()?,
                "cap" => self.cap = value.parse()?,
                "nu_cap" => self.nu_cap = value.parse()?,
                "eps1" => self.eps1 = value.parse()?,
                "cprime" => self.cprime = value.parse()?,
                "strict" => self.strict = value.parse()?,
                "timing" => self.timing = value.parse()?,
                "json" => self.json = value.parse()?,
                other => anyhow::bail!("unknown config key '{other}' on line {}", lineno + 1),
            }
        }
        Ok(())
    }

    /// The semantic config embedded in output headers. The worker count is
    /// deliberately absent: results are identical for any thread count.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "seed": self.seed,
            "cap": self.cap,
            "nu_cap": self.nu_cap,
            "eps1": self.eps1,
            "cprime": self.cprime,
            "strict": self.strict,
        })
    }

    pub fn count_options(&self) -> hamsub_core::counting::CountOptions {
        hamsub_core::counting::CountOptions { cap: self.cap, nu_cap: self.nu_cap }
    }
}
