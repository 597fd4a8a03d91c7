//! Command line front end: parses model files, runs the check suites and
//! prints tables or JSON reports.

pub mod commands;
pub mod error;
pub mod model_file;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

pub use commands::Outcome;
pub use error::CliError;
pub use model_file::ModelFile;

#[derive(Debug, Parser)]
#[command(name = "algebroid", version, about = "Exact checks for Kähler Lie algebroid models over a point")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the JSON report.
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,

    /// Print a human-readable table (default).
    #[arg(long, global = true)]
    pub table: bool,

    /// Half rank for `abelian-2m` and the b-geometry obstruction.
    #[arg(long, global = true)]
    pub m: Option<usize>,

    /// Add the wall-clock runtime to the output.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every model validation.
    Validate { model: String },
    /// Cohomology dimensions and optional refinements.
    Cohomology {
        model: String,
        #[arg(long)]
        bigraded: bool,
        #[arg(long)]
        harmonic: bool,
        /// Künneth product with a named Kähler ring.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Hard Lefschetz, dd*-lemma, Kähler identities and the pairing.
    Theorems {
        model: String,
        #[command(flatten)]
        flags: TheoremArgs,
    },
    /// b-cohomology dimensions and the Hard Lefschetz obstruction.
    Bgeometry {
        preset: Option<String>,
        /// Betti numbers of M, comma separated.
        #[arg(long, value_delimiter = ',')]
        bm: Option<Vec<usize>>,
        /// Betti numbers of Z, comma separated.
        #[arg(long, value_delimiter = ',')]
        bz: Option<Vec<usize>>,
    },
    /// Built-in models, Kähler rings and b-manifolds.
    ListPresets,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TheoremArgs {
    #[arg(long)]
    pub hard_lefschetz: bool,
    #[arg(long)]
    pub ddstar: bool,
    #[arg(long)]
    pub identities: bool,
    #[arg(long)]
    pub pairing: bool,
    /// Everything, plus the equivalence and Betti evenness checks.
    #[arg(long)]
    pub all: bool,
}

/// Rendered output and exit code of one invocation.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let m = cli.m.unwrap_or(1);
    match &cli.command {
        Command::Validate { model } => commands::cmd_validate(&commands::load_model(model, m)?),
        Command::Cohomology {
            model,
            bigraded,
            harmonic,
            ring,
        } => commands::cmd_cohomology(
            &commands::load_model(model, m)?,
            &commands::CohomologyFlags {
                bigraded: *bigraded,
                harmonic: *harmonic,
                ring: ring.clone(),
            },
        ),
        Command::Theorems { model, flags } => commands::cmd_theorems(
            &commands::load_model(model, m)?,
            commands::TheoremFlags {
                hard_lefschetz: flags.hard_lefschetz,
                ddstar: flags.ddstar,
                identities: flags.identities,
                pairing: flags.pairing,
                all: flags.all,
            },
        ),
        Command::Bgeometry { preset, bm, bz } => {
            commands::cmd_bgeometry(preset.as_deref(), bm.clone(), bz.clone(), cli.m)
        }
        Command::ListPresets => Ok(commands::cmd_list_presets()),
    }
}

pub fn run(cli: &Cli) -> Rendered {
    let start = Instant::now();
    match dispatch(cli) {
        Ok(mut outcome) => {
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            if cli.timing {
                if let Value::Object(doc) = &mut outcome.report {
                    doc.insert("runtime_ms".into(), serde_json::json!(elapsed));
                }
                outcome.table.push_str(&format!("runtime {elapsed:.3} ms\n"));
            }
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.report).expect("values serialize");
                s.push('\n');
                s
            } else {
                outcome.table.clone()
            };
            Rendered {
                stdout,
                stderr: String::new(),
                code: outcome.exit_code(),
            }
        }
        Err(e) => Rendered {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

/// Parses arguments (exit code 2 on usage errors) and runs.
pub fn run_args<I, T>(args: I) -> Rendered
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            Rendered { stdout, stderr, code }
        }
    }
}
