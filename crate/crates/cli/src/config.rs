//! Parameter files, seed resolution and the `config.json` echoed into every
//! output directory.

use std::path::Path;

use anyhow::{bail, Context, Result};
use polex_core::compatibility::CompatParams;
use polex_core::fragmentation::PuzzleSpec;
use polex_core::geometry::GeometryParams;
use polex_core::io;
use polex_core::solver::SolverParams;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "POLEX_SEED";
pub const CONFIG_FILE: &str = "config.json";

/// Contents of `--params`. Missing sections and fields take their defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamFile {
    pub geometry: GeometryParams,
    pub compat: CompatParams,
    pub solver: SolverParams,
}

impl ParamFile {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let params: ParamFile = match path {
            Some(p) => io::read_json(p)?,
            None => ParamFile::default(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.compat.validate()?;
        self.solver.validate()?;
        Ok(())
    }
}

/// Seed from `POLEX_SEED`, if set.
pub fn seed_override() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("{SEED_ENV}={v:?} is not an unsigned integer")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => bail!("{SEED_ENV}: {e}"),
    }
}

/// `POLEX_SEED`, else the command-line seed, else `fallback`.
pub fn resolve_seed(cli: Option<u64>, fallback: u64) -> Result<u64> {
    Ok(seed_override()?.or(cli).unwrap_or(fallback))
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub args: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<PuzzleSpec>,
}

impl RunConfig {
    pub fn new<A: Serialize>(command: &str, args: &A) -> Result<Self> {
        Ok(Self {
            command: command.to_string(),
            seed: None,
            args: serde_json::to_value(args)?,
            params: None,
            spec: None,
        })
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn params(mut self, params: &ParamFile) -> Self {
        self.params = Some(params.clone());
        self
    }

    pub fn spec(mut self, spec: &PuzzleSpec) -> Self {
        self.spec = Some(spec.clone());
        self
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        io::ensure_dir(dir)?;
        io::write_json(&dir.join(CONFIG_FILE), self)?;
        Ok(())
    }

    /// Writes next to an output file.
    pub fn write_beside(&self, file: &Path) -> Result<()> {
        self.write(parent_dir(file))
    }
}

pub fn parent_dir(file: &Path) -> &Path {
    match file.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_param_file_fills_defaults() {
        let p: ParamFile = serde_json::from_str(r#"{"compat": {"gamma": 0.7}}"#).unwrap();
        assert_eq!(p.compat.gamma, 0.7);
        assert_eq!(p.compat.gap, CompatParams::default().gap);
        assert_eq!(p.solver, SolverParams::default());
    }

    #[test]
    fn unknown_sections_rejected() {
        assert!(serde_json::from_str::<ParamFile>(r#"{"compatt": {}}"#).is_err());
    }

    #[test]
    fn defaults_validate() {
        ParamFile::default().validate().unwrap();
        let mut p = ParamFile::default();
        p.compat.gamma = 1.5;
        assert!(p.validate().is_err());
    }
}
