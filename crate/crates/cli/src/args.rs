use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use reidlab::emden_fowler::Branch;

use crate::config::{FlagOverrides, OutputFormat};

#[derive(Debug, Parser)]
#[command(
    name = "reidlab",
    version,
    about = "Ermakov and Reid oscillators, their invariants and Emden-Fowler solutions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a Reid system and tabulate `t,q,q_t,qtilde,qtilde_t,Y,I`.
    Simulate(SimulateArgs),
    /// Run seeded property suites and print a JSON report.
    Verify(VerifyArgs),
    /// Tabulate the parametric Emden-Fowler solution at fixed invariant.
    Parametric(ParametricArgs),
    /// Tabulate the radial solution of the hyperbolic oscillator with its energy split.
    Kepler(KeplerArgs),
}

/// Run configuration flags; each overrides the config file.
#[derive(Debug, Args, Default)]
pub struct ConfigArgs {
    /// JSON file with any subset of the run configuration keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub wronskian: Option<f64>,
    /// Constant squared frequency; replaces the configured frequency model.
    #[arg(long, allow_negative_numbers = true)]
    pub omega_sq: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t1: Option<f64>,
    #[arg(long)]
    pub tol_rel: Option<f64>,
    #[arg(long)]
    pub tol_abs: Option<f64>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Coefficient of q1 in q = a q1 + b q2.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Coefficient of q2 in q = a q1 + b q2.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long)]
    pub qtilde0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub qtilde_t0: Option<f64>,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl ConfigArgs {
    pub fn overrides(&self) -> FlagOverrides {
        FlagOverrides {
            m: self.m,
            alpha: self.alpha,
            wronskian: self.wronskian,
            omega_sq: self.omega_sq,
            t0: self.t0,
            t1: self.t1,
            tol_rel: self.tol_rel,
            tol_abs: self.tol_abs,
            max_steps: self.max_steps,
            a: self.a,
            b: self.b,
            qtilde0: self.qtilde0,
            qtilde_t0: self.qtilde_t0,
            output: self.output,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args, Default)]
pub struct Destination {
    /// Table (csv) or full report (json) destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// In csv mode, also write the JSON report without tables here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub dest: Destination,
    /// Invariant formulation for the I column; defaults to m2_physical for m = 2
    /// and higher_physical otherwise.
    #[arg(long)]
    pub formulation: Option<String>,
    /// Bound on the relative invariant drift.
    #[arg(long, default_value_t = 1e-6)]
    pub drift_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Superposition,
    Invariants,
    EfChain,
    Abel,
    Mechanics,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParametricArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub dest: Destination,
    /// Value of the invariant I.
    #[arg(long, allow_negative_numbers = true)]
    pub invariant: f64,
    #[arg(long)]
    pub q_lo: f64,
    #[arg(long)]
    pub q_hi: f64,
    #[arg(long, default_value = "plus", value_parser = parse_branch)]
    pub branch: Branch,
    #[arg(long, default_value_t = 1.0)]
    pub tau0: f64,
    #[arg(long, default_value_t = 201)]
    pub n: usize,
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    s.parse().map_err(|e: reidlab::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct KeplerArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub dest: Destination,
    /// Angular momentum.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub l: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Number of uniformly spaced samples on [t0, t1].
    #[arg(long, default_value_t = 201)]
    pub n: usize,
}
