//! Experiment configuration files. Numeric parameters are kept as strings
//! so rationals such as `1/2` survive a round trip exactly.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use taugraph_core::enumeration::{ENUMERATION_CAP, ENUMERATION_HARD_CAP};
use taugraph_core::minor::{MinorConfig, DEFAULT_NODE_BUDGET};
use taugraph_core::scalar::BigRational;
use taugraph_core::weight::Weighting;

use crate::error::{CliError, CliResult};
use crate::io::parse_param;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Built-in family name or path to a family JSON file.
    pub family: String,
    pub lambda: String,
    pub nu: String,
    /// Bridge and non-bridge edge parameters; both or neither.
    pub lambda0: Option<String>,
    pub lambda1: Option<String>,
    pub n_min: usize,
    pub n_max: usize,
    pub enumeration_cap: usize,
    pub minor_budget: u64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: "forests".into(),
            lambda: "1".into(),
            nu: "1".into(),
            lambda0: None,
            lambda1: None,
            n_min: 0,
            n_max: 6,
            enumeration_cap: ENUMERATION_CAP,
            minor_budget: DEFAULT_NODE_BUDGET,
            seed: 0,
            threads: None,
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let cfg: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.weighting()?;
        if self.enumeration_cap > ENUMERATION_HARD_CAP {
            return Err(CliError::config(format!(
                "enumeration_cap {} above the hard limit {ENUMERATION_HARD_CAP}",
                self.enumeration_cap
            )));
        }
        if self.n_min > self.n_max {
            return Err(CliError::config("n_min exceeds n_max"));
        }
        if self.minor_budget == 0 {
            return Err(CliError::config("minor_budget must be positive"));
        }
        if self.threads == Some(0) {
            return Err(CliError::config("threads must be positive"));
        }
        if let Some(out) = &self.out {
            let dir = out.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            if !dir.is_dir() {
                return Err(CliError::config(format!("output directory {} does not exist", dir.display())));
            }
        }
        Ok(())
    }

    pub fn weighting(&self) -> CliResult<Weighting<BigRational>> {
        let nu = parse_param(&self.nu)?;
        let w = match (&self.lambda0, &self.lambda1) {
            (None, None) => Weighting::new(parse_param(&self.lambda)?, nu)?,
            (Some(l0), Some(l1)) => Weighting::extended(parse_param(l0)?, parse_param(l1)?, nu)?,
            _ => return Err(CliError::config("lambda0 and lambda1 must be given together")),
        };
        Ok(w)
    }

    pub fn minor_config(&self) -> MinorConfig {
        MinorConfig {
            node_budget: self.minor_budget,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cfg = ExperimentConfig {
            family: "ex-k-disjoint-cycles:2".into(),
            lambda: "1/2".into(),
            nu: "3".into(),
            lambda0: Some("2".into()),
            lambda1: Some("1/3".into()),
            n_min: 1,
            n_max: 5,
            threads: Some(2),
            seed: 42,
            ..ExperimentConfig::default()
        };
        assert_eq!(ExperimentConfig::parse(&cfg.render()).unwrap(), cfg);
        let d = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::parse(&d.render()).unwrap(), d);
        assert_eq!(ExperimentConfig::parse("{}").unwrap(), d);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ExperimentConfig::parse(r#"{"lambda":"-1"}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"lambda0":"2"}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"enumeration_cap":9}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"unknown":1}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"out":"/no/such/dir/x.csv"}"#).is_err());
    }
}
