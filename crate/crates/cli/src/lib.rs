//! Scenario-driven front end for the `stcga` engine.
//!
//! A scenario file declares a model (`cga5` or `cga7`), named objects and an
//! ordered list of queries. [`run_scenario_file`] validates it, executes the
//! queries and writes one deterministic JSON or CSV document. Failures map to
//! exit codes through [`CliError::exit_code`]: `1` for malformed or invalid
//! input, `2` for numerically degenerate configurations.

pub mod exec;
pub mod field;
pub mod output;
pub mod scenario;

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use exec::{execute, QueryResult};
pub use output::Document;
pub use scenario::{ModelKind, OutputFormat, Scenario};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("query {index} ({op}) is numerically degenerate: {source}")]
    Degeneracy {
        index: usize,
        op: &'static str,
        #[source]
        source: stcga::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Degeneracy { .. } => 2,
            CliError::Validation(_) | CliError::Io { .. } => 1,
        }
    }
}

/// Parses, validates and executes a scenario, returning the output document.
pub fn run_scenario(scenario: &Scenario) -> Result<Document, CliError> {
    let results = execute(scenario)?;
    Ok(Document::new(scenario.model, scenario.seed, results))
}

/// Runs the scenario at `path` and writes its document into `out_dir`.
/// `format` overrides the scenario's output format; the file extension
/// always matches the format used. Returns the written path.
pub fn run_scenario_file(path: &Path, out_dir: &Path, format: Option<OutputFormat>) -> Result<PathBuf, CliError> {
    let io = |p: &Path| {
        let p = p.to_path_buf();
        move |source| CliError::Io { path: p, source }
    };
    let text = fs::read_to_string(path).map_err(io(path))?;
    let scenario = Scenario::parse(&text)?;
    let format = format.unwrap_or(scenario.output.format);
    let name = match &scenario.output.path {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(path.file_stem().unwrap_or_else(|| "output".as_ref())),
    };
    if name.is_absolute() || name.components().any(|c| matches!(c, std::path::Component::ParentDir)) {
        return Err(CliError::Validation(format!(
            "output path `{}` must stay inside the output directory",
            name.display()
        )));
    }
    let document = run_scenario(&scenario)?;
    let target = out_dir.join(name.with_extension(format.extension()));
    if let Some(parent) = target.parent() {
        fs::create_dir_all(parent).map_err(io(parent))?;
    }
    fs::write(&target, document.render(format)).map_err(io(&target))?;
    Ok(target)
}
