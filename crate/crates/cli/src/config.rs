use std::path::Path;

use serde::Deserialize;
use specprob::numerics::GridSpec;
use specprob::oscillator::OscillatorParams;

use crate::error::CliError;

/// Run configuration; every field is optional.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
    pub grid: GridSpec,
    pub mc_n: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            omega: 1.0,
            grid: GridSpec::symmetric(6.0, 601).expect("static grid"),
            mc_n: 1_000_000,
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            action: "read",
            path: path.to_path_buf(),
            source,
        })?;
        let cfg: Config = serde_json::from_str(&text)
            .map_err(|source| CliError::Parse { path: path.to_path_buf(), source })?;
        if cfg.mc_n < 100 {
            return Err(CliError::Usage(format!("mc_n must be at least 100, got {}", cfg.mc_n)));
        }
        cfg.oscillator()?;
        Ok(cfg)
    }

    pub fn oscillator(&self) -> Result<OscillatorParams, CliError> {
        Ok(OscillatorParams::new(self.hbar, self.mass, self.omega)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_fills_defaults() {
        let cfg: Config = serde_json::from_str(r#"{"mc_n": 5000}"#).unwrap();
        assert_eq!(cfg.mc_n, 5000);
        assert_eq!(cfg.grid.len(), 601);
        let full: Config = serde_json::from_str(
            r#"{"hbar":1,"mass":1,"omega":1,"grid":{"lo":-6,"hi":6,"n":601},"mc_n":1000000}"#,
        )
        .unwrap();
        assert_eq!(full.grid, Config::default().grid);
    }

    #[test]
    fn rejects_unknown_fields_and_even_grids() {
        assert!(serde_json::from_str::<Config>(r#"{"hbarr": 1}"#).is_err());
        assert!(serde_json::from_str::<Config>(r#"{"grid":{"lo":-1,"hi":1,"n":10}}"#).is_err());
    }
}
