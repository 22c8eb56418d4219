//! Run configuration shared by the command-line tool, stored as TOML.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linearization::Channel;
use crate::profile::{validate_frequency, ShootingOptions};
use crate::spectra::{AnalysisOptions, Tolerances};
use crate::sweep::{channels_up_to, SweepOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mass: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub steps: usize,
    pub ell_max: u32,
    /// Values of `|m|` to keep; empty keeps all.
    pub m: Vec<u32>,
    /// Values of `|eta|^2` for the bi-frequency channels.
    pub eta_norm_sq: Vec<f64>,
    pub n: usize,
    pub fine_n: Option<usize>,
    pub map_scale: f64,
    pub jobs: usize,
    pub refine_tol: f64,
    pub max_bisections: usize,
    pub tolerances: Tolerances,
    pub shooting: ShootingOptions,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SweepOptions::default();
        Self {
            mass: s.mass,
            omega_min: 0.1,
            omega_max: 0.99,
            steps: 90,
            ell_max: 2,
            m: Vec::new(),
            eta_norm_sq: vec![0.0],
            n: s.analysis.n,
            fine_n: s.analysis.fine_n,
            map_scale: s.analysis.map_scale,
            jobs: s.jobs,
            refine_tol: s.refine_tol,
            max_bisections: s.max_bisections,
            tolerances: s.analysis.tol,
            shooting: s.shooting,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let c: Self = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config is always serializable")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::InvalidArgument(format!("mass must be positive, got {}", self.mass)));
        }
        validate_frequency(self.omega_min, self.mass)?;
        validate_frequency(self.omega_max, self.mass)?;
        if self.omega_min >= self.omega_max {
            return Err(Error::InvalidArgument("omega_min must be below omega_max".into()));
        }
        if self.steps < 2 {
            return Err(Error::InvalidArgument("steps must be at least 2".into()));
        }
        if self.n < 16 || self.fine_n.is_some_and(|f| f <= self.n) {
            return Err(Error::InvalidArgument("need n >= 16 and fine_n > n".into()));
        }
        if !(self.map_scale > 0.0) || self.jobs == 0 {
            return Err(Error::InvalidArgument("map_scale and jobs must be positive".into()));
        }
        if self.eta_norm_sq.iter().any(|e| !(*e >= 0.0)) {
            return Err(Error::InvalidArgument("eta_norm_sq values must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn analysis(&self) -> AnalysisOptions {
        AnalysisOptions { n: self.n, map_scale: self.map_scale, fine_n: self.fine_n, tol: self.tolerances }
    }

    pub fn sweep_options(&self) -> SweepOptions {
        SweepOptions {
            mass: self.mass,
            analysis: self.analysis(),
            shooting: self.shooting.clone(),
            jobs: self.jobs,
            refine_tol: self.refine_tol,
            max_bisections: self.max_bisections,
        }
    }

    /// Channels `ell <= ell_max` with the selected `|m|`.
    pub fn channels(&self) -> Result<Vec<Channel>> {
        let all = channels_up_to(self.ell_max, &self.eta_norm_sq)?;
        Ok(all
            .into_iter()
            .filter(|c| self.m.is_empty() || self.m.contains(&c.m().unsigned_abs()))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn partial_file_uses_defaults() {
        let c = RunConfig::from_toml("ell_max = 4\nm = [0, 2]\n[tolerances]\nre_tol = 1e-5\n").unwrap();
        assert_eq!(c.ell_max, 4);
        assert_eq!(c.tolerances.re_tol, 1e-5);
        assert_eq!(c.tolerances.band_tol, Tolerances::default().band_tol);
        assert!(c.channels().unwrap().iter().all(|ch| ch.m() == 0 || ch.m() == 2));
    }

    #[test]
    fn rejects_invalid() {
        assert!(RunConfig::from_toml("omega_max = 1.5").is_err());
        assert!(RunConfig::from_toml("steps = 1").is_err());
        assert!(RunConfig::from_toml("bogus = 1").is_err());
    }
}
