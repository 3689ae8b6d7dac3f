//! Command-line front end of the plane formation simulator: scenario and
//! point-list files, run orchestration, trace files and reports.
//!
//! Exit statuses: 0 when everything checked out (including a run that
//! correctly refuses an unsolvable input), 1 on a verification failure and
//! 2 on bad input.

pub mod error;
pub mod runner;
pub mod scenario;
pub mod trace;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use planeform::{Generator, GroupKind, Point3d, Tolerance64};

pub use error::{CliError, Result};
pub use runner::{analyze_report, run_scenario, solvable_report, RunOutcome};
pub use scenario::{parse_points, parse_scenario, write_scenario, AlgorithmSpec, FrameSpec, Scenario};
pub use trace::write_trace;

#[derive(Debug, Parser)]
#[command(name = "planeform", version, about = "Plane formation by oblivious synchronous robots in 3D")]
pub struct Cli {
    /// Relative tolerance for geometric predicates.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for random or adversarial frames.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cycle limit for `run` and `adversary`.
    #[arg(long, global = true)]
    pub max_cycles: Option<usize>,
    /// Output file: the trace for `run` and `adversary`, the points for
    /// `generate`, the report otherwise.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rotation group and orbit decomposition of a point set.
    Analyze {
        /// Point list, scenario file, or generator name.
        input: String,
    },
    /// Whether plane formation is solvable from a point set.
    Solvable { input: String },
    /// Run a scenario and verify its outcome.
    Run { scenario: PathBuf },
    /// Run an algorithm under symmetric adversarial frames.
    Adversary {
        input: String,
        /// Number of cycles (default: --max-cycles, else 50).
        #[arg(long)]
        cycles: Option<usize>,
        /// go_to_midpoint or symmetric_drift, with an optional parameter.
        #[arg(long, default_value = "go_to_midpoint")]
        algorithm: String,
        /// T, O or I; picked from the orbit sizes when omitted.
        #[arg(long)]
        group: Option<String>,
    },
    /// Print the vertices of a generated polyhedron.
    Generate {
        /// e.g. `cube`, `prism(5)`, `orbit(O)`, `sphenoid(1,2,3)`.
        name: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Emit a scenario instead of a plain point list.
        #[arg(long)]
        scenario: bool,
    },
}

/// Process exit status of a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

pub const INPUT_ERROR: u8 = 2;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Points from a file (point list or scenario), or from a generator name
/// at unit circumradius when no such file exists.
pub fn load_points(input: &str) -> Result<Vec<Point3d>> {
    let path = Path::new(input);
    if path.exists() {
        return parse_points(&read(path)?, input);
    }
    match input.parse::<Generator>() {
        Ok(g) => Ok(g.points(1.0)?),
        Err(_) => Err(CliError::Usage(format!("{input}: no such file or generator"))),
    }
}

impl Cli {
    fn tolerance(&self, base: Tolerance64) -> Result<Tolerance64> {
        match self.tol {
            Some(rel) => Ok(Tolerance64::new(rel, base.abs())?),
            None => Ok(base),
        }
    }

    /// Apply the global flags to a scenario.
    pub fn override_scenario(&self, mut s: Scenario) -> Result<Scenario> {
        s.tolerance = self.tolerance(s.tolerance)?;
        if let Some(seed) = self.seed {
            s.frames = s.frames.with_seed(seed);
        }
        if let Some(m) = self.max_cycles {
            if m == 0 {
                return Err(CliError::Usage("--max-cycles must be at least 1".into()));
            }
            s.max_cycles = m;
        }
        Ok(s)
    }

    fn emit(&self, text: &str, stdout: &mut dyn Write) -> Result<()> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => stdout_write(stdout, text),
        }
    }
}

fn stdout_write(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

fn finish_run(cli: &Cli, outcome: RunOutcome, stdout: &mut dyn Write) -> Result<Outcome> {
    if let Some(path) = &cli.out {
        write_file(path, &outcome.trace_text)?;
    }
    stdout_write(stdout, &outcome.report)?;
    Ok(if outcome.passed { Outcome::Ok } else { Outcome::VerificationFailed })
}

/// Run one parsed command line, writing reports to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze { input } => {
            let report = analyze_report(&load_points(input)?, &cli.tolerance(Tolerance64::default())?)?;
            cli.emit(&report, stdout)?;
            Ok(Outcome::Ok)
        }
        Command::Solvable { input } => {
            let report = solvable_report(&load_points(input)?, &cli.tolerance(Tolerance64::default())?)?;
            cli.emit(&report, stdout)?;
            Ok(Outcome::Ok)
        }
        Command::Run { scenario } => {
            let s = parse_scenario(&read(scenario)?, &scenario.display().to_string())?;
            let s = cli.override_scenario(s)?;
            finish_run(cli, run_scenario(&s)?, stdout)
        }
        Command::Adversary { input, cycles, algorithm, group } => {
            let group = match group.as_deref() {
                None => None,
                Some(g) => Some(
                    GroupKind::parse(g)
                        .filter(GroupKind::is_3d)
                        .ok_or_else(|| CliError::Usage(format!("--group must be T, O or I, got `{g}`")))?,
                ),
            };
            let words: Vec<&str> = algorithm.split_whitespace().collect();
            let algorithm = AlgorithmSpec::parse(&words).map_err(CliError::Usage)?;
            let s = Scenario {
                points: load_points(input)?,
                frames: FrameSpec::Adversarial(group, cli.seed.unwrap_or(0)),
                algorithm,
                max_cycles: cycles.or(cli.max_cycles).unwrap_or(50),
                ..Scenario::default()
            };
            if s.max_cycles == 0 {
                return Err(CliError::Usage("cycle count must be at least 1".into()));
            }
            let s = Scenario { tolerance: cli.tolerance(s.tolerance)?, ..s };
            finish_run(cli, run_scenario(&s)?, stdout)
        }
        Command::Generate { name, radius, scenario } => {
            let g: Generator = name.parse()?;
            let text = if *scenario {
                let s = Scenario { shells: vec![(g, *radius)], ..Scenario::default() };
                g.points(*radius)?;
                write_scenario(&cli.override_scenario(s)?)
            } else {
                scenario::write_point_list(&g.points(*radius)?)
            };
            cli.emit(&text, stdout)?;
            Ok(Outcome::Ok)
        }
    }
}
