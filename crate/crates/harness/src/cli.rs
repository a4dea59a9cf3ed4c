use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::run::{run, Command, PairInput, Settings};
use crate::symbol::parse_symbol_file;
use crate::{corpus, HarnessError, Table};

#[derive(Debug, Parser)]
#[command(
    name = "bloch-wco",
    version,
    about = "Norm and essential-norm estimates for weighted composition operators on the Bloch space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,

    /// Symbol file (repeatable). Without any, the bundled corpus is used.
    #[arg(long = "pair", value_name = "FILE", global = true)]
    pub pairs: Vec<PathBuf>,

    /// Radial nodes of the disk rule.
    #[arg(long, default_value_t = 64, global = true)]
    pub radial: usize,

    /// Angular nodes of the disk rule and the sup grid.
    #[arg(long, default_value_t = 256, global = true)]
    pub angular: usize,

    /// Radii levels of the grid of parameters `a`.
    #[arg(long = "sup-grid", value_name = "LEVELS", default_value_t = 8, global = true)]
    pub sup_grid: usize,

    /// Largest power `n` in `‖uφⁿ‖_B`.
    #[arg(long, default_value_t = 200, global = true)]
    pub powers: usize,

    /// Boundary levels for `limsup_{|φ(a)|→1}`, comma separated.
    #[arg(long, value_delimiter = ',', global = true)]
    pub levels: Option<Vec<f64>>,

    /// Thresholds `t` for the level-set moments, comma separated.
    #[arg(long, value_delimiter = ',', global = true)]
    pub tlevels: Option<Vec<f64>>,

    /// Seed of the random test polynomials.
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Slack allowed on audit margins.
    #[arg(long, default_value_t = 1e-8, global = true)]
    pub tol: f64,

    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandArg {
    /// Both additive norm estimates and their parts.
    Norm,
    /// The four essential-norm estimates and cross-check quantities.
    Essnorm,
    /// Boundedness and compactness verdicts with evidence.
    Classify,
    /// Both sides of every supporting inequality.
    Audit,
    /// Counting-function checks for polynomial symbols.
    Nevanlinna,
    /// Everything above, with corpus-wide ratio summaries.
    Sweep,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Norm => Command::Norm,
            CommandArg::Essnorm => Command::Essnorm,
            CommandArg::Classify => Command::Classify,
            CommandArg::Audit => Command::Audit,
            CommandArg::Nevanlinna => Command::Nevanlinna,
            CommandArg::Sweep => Command::Sweep,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Cli {
    pub fn settings(&self) -> Result<Settings, HarnessError> {
        let mut s = Settings::new(self.radial, self.angular, self.sup_grid)?;
        s.cfg.powers = self.powers;
        s.cfg.window = s.cfg.window.min(self.powers + 1);
        if let Some(l) = &self.levels {
            s.cfg.levels = l.clone();
        }
        if let Some(t) = &self.tlevels {
            s.cfg.thresholds = t.clone();
        }
        s.cfg.seed = self.seed;
        s.cfg.tol = self.tol;
        s.cfg.validate()?;
        Ok(s)
    }

    fn inputs(&self) -> Result<Vec<PairInput>, HarnessError> {
        if self.pairs.is_empty() {
            return Ok(corpus()?.into_iter().map(PairInput::from).collect());
        }
        Ok(self
            .pairs
            .iter()
            .map(|path| match parse_symbol_file(path) {
                Ok(p) => p.into(),
                Err(e) => PairInput {
                    label: path.display().to_string(),
                    pair: Err(e),
                },
            })
            .collect())
    }
}

/// Runs the command on the configured thread pool.
pub fn execute(cli: &Cli) -> Result<Table, HarnessError> {
    let settings = cli.settings()?;
    let inputs = cli.inputs()?;
    let command = Command::from(cli.command);
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| HarnessError::Usage(e.to_string()))?;
            pool.install(|| run(command, &inputs, &settings))
        }
        None => run(command, &inputs, &settings),
    }
}

/// Executes and writes the report to `--out` or standard output.
pub fn main_with(cli: &Cli) -> Result<(), HarnessError> {
    let table = execute(cli)?;
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(File::create(path).map_err(|e| HarnessError::Io {
            path: path.display().to_string(),
            source: e,
        })?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match cli.format {
        Format::Csv => table.write_csv(&mut sink)?,
        Format::Json => table.write_json(&mut sink)?,
    }
    sink.flush()?;
    Ok(())
}
