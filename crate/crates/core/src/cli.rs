//! Command-line front end. [`run`] does all the work and returns the exit
//! code, so it can be driven in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::scenario::{
    self, criteria_document, exactness_document, module_document, scenario_document,
    ChainFile, ESideFile, ExitStatus, ModuleFile, ReportDocument, ScenarioFile, CHAIN_SCHEMA,
};

/// Environment variable naming the directory for reports when `--out` is
/// not given.
pub const OUT_DIR_ENV: &str = "GALCOH_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "galcoh", version, about = "Free and trivial Galois cohomology of cyclic degree-p extensions")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a scenario file.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Evaluate the criteria at one degree.
    Criteria {
        #[command(subcommand)]
        action: CriteriaAction,
    },
    /// Analyze an F_p[G]-module file.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Check a chain file, or a scenario file with E-side data.
    Exactness {
        #[command(subcommand)]
        action: ExactnessAction,
    },
    /// Built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioAction {
    Run {
        file: PathBuf,
        /// Worker threads for per-degree evaluation.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CriteriaAction {
    Check {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModuleAction {
    Analyze { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ExactnessAction {
    Verify { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum FixturesAction {
    List,
    /// Print a fixture as a scenario file.
    Show { name: String },
}

fn report_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into())
}

fn execute(cli: &Cli) -> Result<(ReportDocument, String)> {
    match &cli.command {
        Command::Scenario {
            action: ScenarioAction::Run { file, threads },
        } => {
            let loaded = ScenarioFile::load(file)?;
            let doc = scenario_document(&loaded.scenario, loaded.eside.as_ref(), *threads)?;
            Ok((doc, report_name(file)))
        }
        Command::Criteria {
            action: CriteriaAction::Check { file, degree },
        } => {
            let loaded = ScenarioFile::load(file)?;
            let doc = criteria_document(&loaded.scenario, loaded.eside.as_ref(), *degree)?;
            Ok((doc, report_name(file)))
        }
        Command::Module {
            action: ModuleAction::Analyze { file },
        } => {
            let (module, vectors) = ModuleFile::load(file)?.build()?;
            Ok((module_document(&module, &vectors)?, report_name(file)))
        }
        Command::Exactness {
            action: ExactnessAction::Verify { file },
        } => {
            let text = fs::read_to_string(file)
                .map_err(|e| Error::Input(format!("{}: {e}", file.display())))?;
            let origin = file.display().to_string();
            let doc = if scenario::schema_of(&text, &origin)?.as_deref() == Some(CHAIN_SCHEMA) {
                let chain = ChainFile::parse(&text, &origin)?.build()?;
                exactness_document(Some(&chain), None)?
            } else {
                let loaded = ScenarioFile::parse(&text, &origin)?.build(file.parent())?;
                let eside = loaded.eside.ok_or_else(|| {
                    Error::Input(format!("{origin}: scenario has no E-side data to verify"))
                })?;
                exactness_document(None, Some((&loaded.scenario, &eside)))?
            };
            Ok((doc, report_name(file)))
        }
        Command::Fixtures {
            action: FixturesAction::List,
        } => {
            let entries: Vec<_> = scenario::fixture_catalogue()
                .iter()
                .map(|f| json!({ "name": f.name, "description": f.description }))
                .collect();
            let text = scenario::fixture_catalogue()
                .iter()
                .map(|f| format!("{:<26} {}\n", f.name, f.description))
                .collect();
            let json = json!({
                "schema": scenario::REPORT_SCHEMA,
                "kind": "fixtures",
                "status": ExitStatus::Ok,
                "fixtures": entries,
            });
            Ok((
                ReportDocument {
                    status: ExitStatus::Ok,
                    json,
                    text,
                },
                "fixtures".into(),
            ))
        }
        Command::Fixtures {
            action: FixturesAction::Show { name },
        } => {
            let (s, d) = scenario::find_fixture(name)?.build()?;
            let mut file = ScenarioFile::from_scenario(&s)?;
            file.eside = d.as_ref().map(|d| scenario::ESideSpec::Inline(ESideFile::from_data(d)));
            let json = serde_json::to_value(&file).expect("serializable");
            let text = file.to_json();
            Ok((
                ReportDocument {
                    status: ExitStatus::Ok,
                    json,
                    text,
                },
                name.clone(),
            ))
        }
    }
}

fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json_string(),
        Format::Text => doc.text.clone(),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 clean, 1 incomplete verdicts, 2 input error, 3 inconsistency.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitStatus::InputError.code() } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let (doc, name) = match execute(&cli) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return ExitStatus::InputError.code();
        }
    };
    let output = render(&doc, cli.format);
    let extension = match cli.format {
        Format::Json => "json",
        Format::Text => "txt",
    };
    let target = cli.out.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(format!("{name}.{extension}")))
    });
    match target {
        Some(path) => {
            if let Err(e) = fs::write(&path, &output) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return ExitStatus::InputError.code();
            }
            let _ = writeln!(stderr, "report written to {}", path.display());
        }
        None => {
            let _ = write!(stdout, "{output}");
        }
    }
    doc.status.code()
}
