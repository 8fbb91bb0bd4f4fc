//! Batch front end: `hsstab <approx-point|densify|nilpotent|semidirect>`.
//!
//! Every run writes a JSON report (header with command, seed and resolved
//! config, a summary and the rows) and the rows as CSV. With `--out DIR` they
//! go to `DIR/report.json` and `DIR/rows.csv`; otherwise the JSON goes to
//! stdout. The exit code is 0 iff every certified bound passes, 1 if some
//! bound fails, and 2 on invalid input.

mod commands;
mod config;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::Parser;

pub use commands::{default_measure, execute, Outcome};
pub use config::{Command, RunConfig, WindowSpec};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "hsstab",
    version,
    about = "Finite-dimensional trace approximation on dyadic Heisenberg groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON document with RunConfig fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for report.json and rows.csv.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub n_min: Option<u32>,
    #[arg(long, global = true)]
    pub n_max: Option<u32>,
    /// Comma-separated odd levels.
    #[arg(long, global = true, value_delimiter = ',')]
    pub levels: Option<Vec<u64>>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Scales the approx-point bound (self-test when below 1).
    #[arg(long, global = true)]
    pub bound_multiplier: Option<f64>,
}

impl Cli {
    /// The config file (if any) with flags applied on top.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::from_json(&fs::read_to_string(p)?)?,
            None => RunConfig::default(),
        };
        if c.command.is_some_and(|cmd| cmd != self.command) {
            return Err(Error::Config(format!(
                "config is for a different command than {}",
                self.command.name()
            )));
        }
        c.command = Some(self.command);
        if let Some(v) = &self.out {
            c.out = Some(v.clone());
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.n_min {
            c.n_min = Some(v);
        }
        if let Some(v) = self.n_max {
            c.n_max = Some(v);
        }
        if let Some(v) = &self.levels {
            c.levels = v.clone();
        }
        if let Some(v) = self.tolerance {
            c.tolerance = v;
        }
        if let Some(v) = self.bound_multiplier {
            c.bound_multiplier = v;
        }
        Ok(c)
    }
}

fn run_cli(cli: &Cli) -> Result<bool> {
    let config = cli.resolve()?;
    let outcome = execute(cli.command, &config)?;
    match &config.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("report.json"), &outcome.json)?;
            fs::write(dir.join("rows.csv"), &outcome.csv)?;
            println!(
                "{}: {}",
                cli.command.name(),
                if outcome.pass { "PASS" } else { "FAIL" }
            );
        }
        None => print!("{}", outcome.json),
    }
    Ok(outcome.pass)
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_cli(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}
