//! Query execution. Queries run in order against an environment of named
//! objects; `meet` and `observe` may add their results to it.

use std::collections::BTreeMap;

use serde::Serialize;
use stcga::algebra::Signature;
use stcga::cga5::{EuclidModel, EuclidPoint};
use stcga::cga7::{infinity_limit_diagnostics, infinity_limit_diagnostics_at, Event, LimitReport, Shell, SpacetimeModel};
use stcga::dynamics::{const_field_exact, integrate_rotor, FieldBivector, KinematicState, RotorForm};
use stcga::serial::NamedBlades;
use stcga::{meet, Multivector};

use crate::field::parse_field;
use crate::scenario::{ModelKind, ObjectDef, Query, Scenario};
use crate::CliError;

/// Relative tolerance behind every `member` flag:
/// `|X·A| ≤ MEMBERSHIP_TOL · ‖X‖ · ‖A‖`.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// Intervals with `|d²|` below this (relative to the coordinate scale) are
/// reported as lightlike.
const LIGHTLIKE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservedSample {
    pub event: Event,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateRow {
    pub tau: f64,
    pub position: Event,
    pub velocity: [f64; 4],
    pub rotor: NamedBlades,
}

impl StateRow {
    fn from_state(s: &KinematicState) -> StateRow {
        let c = s.velocity.vector_coords();
        StateRow {
            tau: s.tau,
            position: s.position,
            velocity: [c[0], c[1], c[2], c[3]],
            rotor: NamedBlades::from_multivector(&s.rotor),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum QueryResult {
    Distance {
        a: String,
        b: String,
        squared: f64,
        /// Euclidean distance (cga5 only).
        #[serde(skip_serializing_if = "Option::is_none")]
        distance: Option<f64>,
        /// `timelike`, `spacelike` or `lightlike` (cga7 only).
        #[serde(skip_serializing_if = "Option::is_none")]
        separation: Option<&'static str>,
    },
    Meet {
        a: String,
        b: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        grade: usize,
        blade: NamedBlades,
        /// Scalar part of the blade's square; its sign separates real from
        /// imaginary intersections.
        square: f64,
    },
    Membership {
        object: String,
        point: String,
        residual: NamedBlades,
        residual_norm: f64,
        tolerance: f64,
        member: bool,
    },
    Observe {
        observer: Event,
        shell: Shell,
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        blade: NamedBlades,
        seed: u64,
        samples: Vec<ObservedSample>,
        max_residual: f64,
    },
    Orbit {
        field: String,
        form: RotorForm,
        tau: f64,
        steps: usize,
        u0: [f64; 4],
        x0: Event,
        states: Vec<StateRow>,
        exact_final: StateRow,
        /// Largest coordinate gap between the integrated final state and the
        /// closed-form one (velocity and position).
        max_deviation_from_exact: f64,
    },
    Signature {
        model: ModelKind,
        #[serde(flatten)]
        signature: Signature,
    },
    Diagnostics(LimitReport),
}

enum Value {
    Point(EuclidPoint),
    Event(Event),
    /// Dual (inner-product) representation in the model algebra.
    Dual(Multivector),
    Shell(Shell),
    Field(FieldBivector, String),
}

enum Model {
    Euclid(EuclidModel),
    Spacetime(SpacetimeModel),
}

struct Env {
    model: Model,
    values: BTreeMap<String, Value>,
}

type QueryError = Result<QueryResult, stcga::Error>;

impl Env {
    fn dual_of(&self, name: &str) -> Result<Multivector, Failure> {
        Ok(match (&self.model, &self.values[name]) {
            (Model::Euclid(m), Value::Point(p)) => m.embed_point(*p)?,
            (Model::Spacetime(m), Value::Event(e)) => m.lightcone_of(*e)?,
            (Model::Spacetime(m), Value::Shell(s)) => m.shell_dual(s)?,
            (_, Value::Dual(d)) => d.clone(),
            _ => return Err(Failure::Usage(format!("`{name}` has no dual representation"))),
        })
    }

    fn embedded(&self, name: &str) -> Result<(Multivector, Vec<f64>), String> {
        match (&self.model, &self.values[name]) {
            (Model::Euclid(m), Value::Point(p)) => Ok((m.embed_point(*p).map_err(|e| e.to_string())?, p.0.to_vec())),
            (Model::Spacetime(m), Value::Event(e)) => {
                Ok((m.embed_event(*e).map_err(|e| e.to_string())?, e.0.to_vec()))
            }
            _ => Err(format!("`{name}` is not a point or event")),
        }
    }
}

/// Runs every query of a validated scenario.
pub fn execute(scenario: &Scenario) -> Result<Vec<QueryResult>, CliError> {
    let model = match scenario.model {
        ModelKind::Cga5 => Model::Euclid(EuclidModel::new()),
        ModelKind::Cga7 => Model::Spacetime(SpacetimeModel::new()),
    };
    let mut env = Env { model, values: BTreeMap::new() };
    for decl in &scenario.objects {
        let value = match (decl.definition()?, &env.model) {
            (ObjectDef::Point(p), _) => Value::Point(EuclidPoint(p)),
            (ObjectDef::Sphere(s), Model::Euclid(m)) => Value::Dual(
                m.dual_sphere(EuclidPoint(s.center), s.r_squared)
                    .map_err(|e| CliError::Validation(format!("object `{}`: {e}", decl.name)))?,
            ),
            (ObjectDef::Event(e), _) => Value::Event(Event(e)),
            (ObjectDef::Shell(s), _) => Value::Shell(Shell::new(Event(s.center), s.r_squared)),
            (ObjectDef::Field(f), Model::Spacetime(m)) => Value::Field(
                parse_field(m, &f.expr, f.a)
                    .map_err(|e| CliError::Validation(format!("object `{}`: {e}", decl.name)))?,
                f.expr.clone(),
            ),
            (def, _) => {
                return Err(CliError::Validation(format!(
                    "object `{}` ({}) does not belong to this model",
                    decl.name,
                    def.kind()
                )))
            }
        };
        env.values.insert(decl.name.clone(), value);
    }
    let mut results = Vec::with_capacity(scenario.queries.len());
    for (index, query) in scenario.queries.iter().enumerate() {
        let fail = |msg: String| CliError::Validation(format!("query {index} ({}): {msg}", query.op()));
        let result = run_query(&mut env, scenario, query).map_err(|e| match e {
            Failure::Usage(msg) => fail(msg),
            Failure::Core(source) if source.is_degeneracy() => {
                CliError::Degeneracy { index, op: query.op(), source }
            }
            Failure::Core(source) => fail(source.to_string()),
        })?;
        results.push(result);
    }
    Ok(results)
}

enum Failure {
    Usage(String),
    Core(stcga::Error),
}

impl From<stcga::Error> for Failure {
    fn from(e: stcga::Error) -> Self {
        Failure::Core(e)
    }
}

fn run_query(env: &mut Env, scenario: &Scenario, query: &Query) -> Result<QueryResult, Failure> {
    match query {
        Query::Distance { a, b } => distance(env, a, b),
        Query::Meet { a, b, name } => {
            let blade = meet(&env.dual_of(a)?, &env.dual_of(b)?)?;
            let result = meet_result(a, b, name, &blade)?;
            if let Some(n) = name {
                env.values.insert(n.clone(), Value::Dual(blade));
            }
            Ok(result)
        }
        Query::Membership { object, point } => {
            let dual = env.dual_of(object)?;
            let (x, _) = env.embedded(point).map_err(Failure::Usage)?;
            let residual = &x | &dual;
            let norm = residual.coeff_norm();
            let tolerance = MEMBERSHIP_TOL * x.coeff_norm() * dual.coeff_norm();
            Ok(QueryResult::Membership {
                object: object.clone(),
                point: point.clone(),
                residual: NamedBlades::from_multivector(&residual),
                residual_norm: norm,
                tolerance,
                member: norm <= tolerance,
            })
        }
        Query::Observe { observer, shell, samples, seed, name } => {
            let Model::Spacetime(m) = &env.model else { unreachable!("validated") };
            let (Value::Event(p), Value::Shell(s)) = (&env.values[observer], &env.values[shell]) else {
                return Err(Failure::Usage(format!("`{observer}` must be an event and `{shell}` a shell")));
            };
            let (p, s) = (*p, *s);
            let seed = seed.unwrap_or(scenario.seed);
            let blade = m.observe_intersection(p, &s)?;
            let events = m.sample_observed_events(p, &s, *samples, seed)?;
            let samples = events
                .into_iter()
                .map(|event| Ok(ObservedSample { event, residual: m.membership_residual(event, &blade)?.coeff_norm() }))
                .collect::<Result<Vec<_>, stcga::Error>>()?;
            let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
            let result = QueryResult::Observe {
                observer: p,
                shell: s,
                name: name.clone(),
                blade: NamedBlades::from_multivector(&blade),
                seed,
                samples,
                max_residual,
            };
            if let Some(n) = name {
                env.values.insert(n.clone(), Value::Dual(blade));
            }
            Ok(result)
        }
        Query::Orbit { field, u0, x0, tau, steps, form, stride } => {
            let Model::Spacetime(m) = &env.model else { unreachable!("validated") };
            let Value::Field(f, expr) = &env.values[field] else {
                return Err(Failure::Usage(format!("`{field}` is not a field")));
            };
            Ok(orbit(m, f, expr, u0.unwrap_or([1.0, 0.0, 0.0, 0.0]), Event(x0.unwrap_or([0.0; 4])), *tau, *steps, *form, *stride)?)
        }
        Query::Signature {} => Ok(QueryResult::Signature {
            model: scenario.model,
            signature: match &env.model {
                Model::Euclid(m) => m.signature(),
                Model::Spacetime(m) => m.spectrum(),
            },
        }),
        Query::Diagnostics { deltas, probe } => Ok(diagnostics(deltas, probe.map(Event))?),
    }
}

fn distance(env: &Env, a: &str, b: &str) -> Result<QueryResult, Failure> {
    let (pa, ca) = env.embedded(a).map_err(Failure::Usage)?;
    let (pb, cb) = env.embedded(b).map_err(Failure::Usage)?;
    let (squared, distance, separation) = match &env.model {
        Model::Euclid(m) => {
            let d2 = m.point_distance(&pa, &pb)?;
            (d2, Some(d2.max(0.0).sqrt()), None)
        }
        Model::Spacetime(m) => {
            let d2 = m.interval_between(&pa, &pb)?;
            let scale: f64 = ca.iter().zip(&cb).map(|(x, y)| (x - y).powi(2)).sum();
            let kind = if d2.abs() <= LIGHTLIKE_TOL * scale.max(1.0) {
                "lightlike"
            } else if d2 > 0.0 {
                "timelike"
            } else {
                "spacelike"
            };
            (d2, None, Some(kind))
        }
    };
    Ok(QueryResult::Distance { a: a.into(), b: b.into(), squared, distance, separation })
}

fn meet_result(a: &str, b: &str, name: &Option<String>, blade: &Multivector) -> QueryError {
    let grades = blade.grades();
    let grade = match grades.len() {
        1 => *grades.iter().next().expect("one grade"),
        0 => return Err(stcga::Error::Degenerate("the objects are linearly dependent; empty meet".into())),
        _ => return Err(stcga::Error::WrongGrade { expected: 2 }),
    };
    Ok(QueryResult::Meet {
        a: a.into(),
        b: b.into(),
        name: name.clone(),
        grade,
        square: (blade * blade).scalar_part(),
        blade: NamedBlades::from_multivector(blade),
    })
}

/// Integrates from `R = 1` and compares the end point with the closed form.
#[allow(clippy::too_many_arguments)]
pub fn orbit(
    m: &SpacetimeModel,
    field: &FieldBivector,
    expr: &str,
    u0: [f64; 4],
    x0: Event,
    tau: f64,
    steps: usize,
    form: RotorForm,
    stride: usize,
) -> QueryError {
    let (states, exact) = orbit_states(m, field, u0, x0, tau, steps, form)?;
    let last = states.last().expect("at least one state");
    let lc = last.velocity.vector_coords();
    let ec = exact.velocity.vector_coords();
    let deviation = (0..4)
        .map(|i| (lc[i] - ec[i]).abs().max((last.position.0[i] - exact.position.0[i]).abs()))
        .fold(0.0, f64::max);
    let stride = stride.max(1);
    let rows = states
        .iter()
        .enumerate()
        .filter(|(k, _)| k % stride == 0 || *k == states.len() - 1)
        .map(|(_, s)| StateRow::from_state(s))
        .collect();
    Ok(QueryResult::Orbit {
        field: expr.to_string(),
        form,
        tau,
        steps,
        u0,
        x0,
        states: rows,
        exact_final: StateRow::from_state(&exact),
        max_deviation_from_exact: deviation,
    })
}

/// Integrated states plus the closed-form state at `tau`. The closed form
/// solves the standard rotor equation; for the commutator form the
/// deviation documents how far the two equations disagree.
pub fn orbit_states(
    m: &SpacetimeModel,
    field: &FieldBivector,
    u0: [f64; 4],
    x0: Event,
    tau: f64,
    steps: usize,
    form: RotorForm,
) -> Result<(Vec<KinematicState>, KinematicState), stcga::Error> {
    let u0 = m.spacetime_vector(u0);
    let one = Multivector::scalar(m.algebra(), 1.0);
    let states = integrate_rotor(m, &one, &u0, x0, field, tau, steps, form)?;
    let exact = const_field_exact(&u0, x0, field, tau)?;
    Ok((states, exact))
}

pub fn diagnostics(deltas: &[f64], probe: Option<Event>) -> QueryError {
    let report = match probe {
        Some(p) => infinity_limit_diagnostics_at(deltas, p)?,
        None => infinity_limit_diagnostics(deltas)?,
    };
    Ok(QueryResult::Diagnostics(report))
}

pub fn signature(model: ModelKind) -> QueryResult {
    let signature = match model {
        ModelKind::Cga5 => EuclidModel::new().signature(),
        ModelKind::Cga7 => SpacetimeModel::new().spectrum(),
    };
    QueryResult::Signature { model, signature }
}
