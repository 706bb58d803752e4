//! Run configuration. Values are resolved in three layers: built-in defaults,
//! then a JSON config file, then command-line flags.

use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use reidlab::{FrequencyModel, ReidParams, SuperpositionCoefficients, ToleranceConfig};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Initial data: `q = a q1 + b q2` and `(q̃, q̃_t)` at `t0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ics {
    pub a: f64,
    pub b: f64,
    pub qtilde: f64,
    pub qtilde_t: f64,
}

/// Fully resolved configuration, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub m: u32,
    pub alpha: f64,
    pub wronskian: f64,
    pub frequency: FrequencyModel,
    pub t0: f64,
    pub t1: f64,
    pub tol: ToleranceConfig,
    pub ics: Ics,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m: 2,
            alpha: 1.0,
            wronskian: 1.0,
            frequency: FrequencyModel::constant(1.0),
            t0: 0.0,
            t1: 10.0,
            tol: ToleranceConfig::default(),
            ics: Ics { a: 1.0, b: 0.0, qtilde: 1.0, qtilde_t: 0.0 },
            output: OutputFormat::Csv,
            seed: 0,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TolLayer {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct IcsLayer {
    a: Option<f64>,
    b: Option<f64>,
    qtilde: Option<f64>,
    qtilde_t: Option<f64>,
}

/// One layer of overrides; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    m: Option<u32>,
    alpha: Option<f64>,
    wronskian: Option<f64>,
    frequency: Option<FrequencyModel>,
    t0: Option<f64>,
    t1: Option<f64>,
    tol: Option<TolLayer>,
    ics: Option<IcsLayer>,
    output: Option<OutputFormat>,
    seed: Option<u64>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Flag values; `None` means the flag was not given.
#[derive(Debug, Default, Clone)]
pub struct FlagOverrides {
    pub m: Option<u32>,
    pub alpha: Option<f64>,
    pub wronskian: Option<f64>,
    pub omega_sq: Option<f64>,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub tol_rel: Option<f64>,
    pub tol_abs: Option<f64>,
    pub max_steps: Option<usize>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub qtilde0: Option<f64>,
    pub qtilde_t0: Option<f64>,
    pub output: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl From<FlagOverrides> for ConfigLayer {
    fn from(f: FlagOverrides) -> Self {
        ConfigLayer {
            m: f.m,
            alpha: f.alpha,
            wronskian: f.wronskian,
            frequency: f.omega_sq.map(FrequencyModel::constant),
            t0: f.t0,
            t1: f.t1,
            tol: Some(TolLayer { rel_tol: f.tol_rel, abs_tol: f.tol_abs, max_steps: f.max_steps }),
            ics: Some(IcsLayer { a: f.a, b: f.b, qtilde: f.qtilde0, qtilde_t: f.qtilde_t0 }),
            output: f.output,
            seed: f.seed,
        }
    }
}

impl RunConfig {
    /// Applies `layer` on top of `self`.
    pub fn overlay(mut self, layer: ConfigLayer) -> Self {
        fn set<T>(slot: &mut T, v: Option<T>) {
            if let Some(v) = v {
                *slot = v;
            }
        }
        set(&mut self.m, layer.m);
        set(&mut self.alpha, layer.alpha);
        set(&mut self.wronskian, layer.wronskian);
        set(&mut self.frequency, layer.frequency);
        set(&mut self.t0, layer.t0);
        set(&mut self.t1, layer.t1);
        if let Some(tol) = layer.tol {
            set(&mut self.tol.rel_tol, tol.rel_tol);
            set(&mut self.tol.abs_tol, tol.abs_tol);
            set(&mut self.tol.max_steps, tol.max_steps);
        }
        if let Some(ics) = layer.ics {
            set(&mut self.ics.a, ics.a);
            set(&mut self.ics.b, ics.b);
            set(&mut self.ics.qtilde, ics.qtilde);
            set(&mut self.ics.qtilde_t, ics.qtilde_t);
        }
        set(&mut self.output, layer.output);
        set(&mut self.seed, layer.seed);
        self
    }

    /// Defaults, then the optional file, then flags; validated.
    pub fn resolve(file: Option<&Path>, flags: FlagOverrides) -> CliResult<Self> {
        let mut config = RunConfig::default();
        if let Some(path) = file {
            config = config.overlay(ConfigLayer::from_file(path)?);
        }
        let config = config.overlay(flags.into());
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.params()?;
        self.coefficients()?;
        self.tol.validate().map_err(CliError::config)?;
        self.frequency.validate().map_err(CliError::config)?;
        if !(self.wronskian.is_finite() && self.wronskian != 0.0) {
            return Err(CliError::Config("wronskian must be finite and nonzero".into()));
        }
        if !(self.t0.is_finite() && self.t1.is_finite() && self.t1 > self.t0) {
            return Err(CliError::Config(format!("need t1 > t0, got t0 = {}, t1 = {}", self.t0, self.t1)));
        }
        let (lo, hi) = self.frequency.domain();
        if self.t0 < lo || self.t1 > hi {
            return Err(CliError::Config(format!(
                "[t0, t1] = [{}, {}] leaves the frequency table [{lo}, {hi}]",
                self.t0, self.t1
            )));
        }
        if !(self.ics.qtilde > 0.0 && self.ics.qtilde.is_finite() && self.ics.qtilde_t.is_finite()) {
            return Err(CliError::Config(format!("qtilde(t0) must be positive, got {}", self.ics.qtilde)));
        }
        Ok(())
    }

    pub fn params(&self) -> CliResult<ReidParams> {
        ReidParams::new(self.m, self.alpha).map_err(|e| match e {
            reidlab::Error::InvalidParams(msg) => CliError::Config(msg),
            other => CliError::config(other),
        })
    }

    pub fn coefficients(&self) -> CliResult<SuperpositionCoefficients> {
        SuperpositionCoefficients::new(self.ics.a, self.ics.b).map_err(CliError::config)
    }
}
