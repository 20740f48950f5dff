//! Scenario files: strict JSON documents naming a model, a list of objects
//! and an ordered list of queries.
//!
//! ```json
//! {
//!   "version": 1,
//!   "model": "cga7",
//!   "seed": 0,
//!   "objects": [
//!     { "name": "P", "event": [2, 0, 0, 0] },
//!     { "name": "S", "shell": { "center": [0, 0, 0, 0], "r_squared": 1 } }
//!   ],
//!   "queries": [{ "op": "observe", "observer": "P", "shell": "S", "samples": 8 }],
//!   "output": { "format": "json", "path": "hadronization.json" }
//! }
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use stcga::dynamics::RotorForm;

use crate::CliError;

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Cga5,
    Cga7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: OutputFormat,
    /// File name relative to the output directory; defaults to the scenario
    /// file stem with the format's extension.
    #[serde(default)]
    pub path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereSpec {
    pub center: [f64; 3],
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShellSpec {
    pub center: [f64; 4],
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub expr: String,
    #[serde(default)]
    pub a: Option<f64>,
}

/// One named object. Exactly one of the geometric fields must be present.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDecl {
    pub name: String,
    #[serde(default)]
    pub point: Option<[f64; 3]>,
    #[serde(default)]
    pub sphere: Option<SphereSpec>,
    #[serde(default)]
    pub event: Option<[f64; 4]>,
    #[serde(default)]
    pub shell: Option<ShellSpec>,
    #[serde(default)]
    pub field: Option<FieldSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObjectDef {
    Point([f64; 3]),
    Sphere(SphereSpec),
    Event([f64; 4]),
    Shell(ShellSpec),
    Field(FieldSpec),
}

impl ObjectDef {
    pub fn kind(&self) -> &'static str {
        match self {
            ObjectDef::Point(_) => "point",
            ObjectDef::Sphere(_) => "sphere",
            ObjectDef::Event(_) => "event",
            ObjectDef::Shell(_) => "shell",
            ObjectDef::Field(_) => "field",
        }
    }

    fn model(&self) -> ModelKind {
        match self {
            ObjectDef::Point(_) | ObjectDef::Sphere(_) => ModelKind::Cga5,
            _ => ModelKind::Cga7,
        }
    }
}

impl ObjectDecl {
    pub fn definition(&self) -> Result<ObjectDef, CliError> {
        let mut defs = Vec::new();
        if let Some(p) = self.point {
            defs.push(ObjectDef::Point(p));
        }
        if let Some(s) = &self.sphere {
            defs.push(ObjectDef::Sphere(s.clone()));
        }
        if let Some(e) = self.event {
            defs.push(ObjectDef::Event(e));
        }
        if let Some(s) = &self.shell {
            defs.push(ObjectDef::Shell(s.clone()));
        }
        if let Some(f) = &self.field {
            defs.push(ObjectDef::Field(f.clone()));
        }
        match defs.len() {
            1 => Ok(defs.pop().expect("one definition")),
            0 => Err(CliError::Validation(format!("object `{}` has no definition", self.name))),
            _ => Err(CliError::Validation(format!("object `{}` has more than one definition", self.name))),
        }
    }
}

fn default_samples() -> usize {
    8
}

fn default_stride() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Query {
    /// Distance between two points (cga5) or squared interval between two
    /// events (cga7).
    Distance { a: String, b: String },
    /// Intersection of two dual objects; `name` stores the result for later
    /// queries.
    Meet {
        a: String,
        b: String,
        #[serde(default)]
        name: Option<String>,
    },
    /// Inner-product residual of a point or event against an object.
    Membership { object: String, point: String },
    /// Events on an observer's past lightcone that lie on a shell.
    Observe {
        observer: String,
        shell: String,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        name: Option<String>,
    },
    /// Proper-time integration of a charged particle in a constant field.
    Orbit {
        field: String,
        #[serde(default)]
        u0: Option<[f64; 4]>,
        #[serde(default)]
        x0: Option<[f64; 4]>,
        tau: f64,
        steps: usize,
        #[serde(default)]
        form: RotorForm,
        /// Emit every `stride`-th state (the final state is always emitted).
        #[serde(default = "default_stride")]
        stride: usize,
    },
    Signature {},
    Diagnostics {
        deltas: Vec<f64>,
        #[serde(default)]
        probe: Option<[f64; 4]>,
    },
}

impl Query {
    pub fn op(&self) -> &'static str {
        match self {
            Query::Distance { .. } => "distance",
            Query::Meet { .. } => "meet",
            Query::Membership { .. } => "membership",
            Query::Observe { .. } => "observe",
            Query::Orbit { .. } => "orbit",
            Query::Signature {} => "signature",
            Query::Diagnostics { .. } => "diagnostics",
        }
    }

    fn requires_cga7(&self) -> bool {
        matches!(self, Query::Observe { .. } | Query::Orbit { .. } | Query::Diagnostics { .. })
    }

    fn references(&self) -> Vec<&str> {
        match self {
            Query::Distance { a, b } | Query::Meet { a, b, .. } => vec![a, b],
            Query::Membership { object, point } => vec![object, point],
            Query::Observe { observer, shell, .. } => vec![observer, shell],
            Query::Orbit { field, .. } => vec![field],
            Query::Signature {} | Query::Diagnostics { .. } => vec![],
        }
    }

    fn defines(&self) -> Option<&str> {
        match self {
            Query::Meet { name, .. } | Query::Observe { name, .. } => name.as_deref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub model: ModelKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub objects: Vec<ObjectDecl>,
    pub queries: Vec<Query>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        let scenario: Scenario =
            serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed scenario: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    /// Static checks: version, one definition per object, model agreement,
    /// and that every reference names an object declared earlier or a result
    /// stored by an earlier query.
    pub fn validate(&self) -> Result<(), CliError> {
        let invalid = |msg: String| Err(CliError::Validation(msg));
        if self.version != SCENARIO_VERSION {
            return invalid(format!("unsupported scenario version {} (expected {SCENARIO_VERSION})", self.version));
        }
        let mut known = BTreeSet::new();
        for decl in &self.objects {
            let def = decl.definition()?;
            if decl.name.is_empty() {
                return invalid("object names must be non-empty".into());
            }
            if def.model() != self.model {
                return invalid(format!(
                    "object `{}` is a {} and cannot be used with model {:?}",
                    decl.name,
                    def.kind(),
                    self.model
                ));
            }
            if !known.insert(decl.name.as_str()) {
                return invalid(format!("object `{}` is declared twice", decl.name));
            }
        }
        for (index, query) in self.queries.iter().enumerate() {
            let op = query.op();
            if query.requires_cga7() && self.model != ModelKind::Cga7 {
                return invalid(format!("query {index} ({op}) requires model cga7"));
            }
            for name in query.references() {
                if !known.contains(name) {
                    return invalid(format!("query {index} ({op}) references unknown object `{name}`"));
                }
            }
            if let Some(name) = query.defines() {
                if !known.insert(name) {
                    return invalid(format!("query {index} ({op}) stores `{name}`, which already exists"));
                }
            }
            if let Query::Orbit { steps: 0, .. } = query {
                return invalid(format!("query {index} (orbit) needs at least one step"));
            }
            if let Query::Orbit { stride: 0, .. } = query {
                return invalid(format!("query {index} (orbit) needs a positive stride"));
            }
        }
        Ok(())
    }
}
