//! Deterministic rendering of result documents.
//!
//! JSON output is pretty-printed with a fixed key order (struct declaration
//! order, blade maps sorted by name) and shortest round-trip float
//! formatting. CSV output flattens the same document into
//! `query,op,key,value` rows with dotted key paths.

use serde::Serialize;
use serde_json::Value;
use stcga::cga7::{ConventionRecord, CONVENTIONS};

use crate::exec::QueryResult;
use crate::scenario::{ModelKind, OutputFormat, SCENARIO_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EuclidConventions {
    pub model: &'static str,
    pub basis: [&'static str; 5],
    pub metric: &'static str,
    pub distance: &'static str,
    pub point_embedding: &'static str,
    pub sphere: &'static str,
    pub translator: &'static str,
}

pub const EUCLID_CONVENTIONS: EuclidConventions = EuclidConventions {
    model: "cga5",
    basis: ["e1", "e2", "e3", "o", "einf"],
    metric: "ei^2=+1, o^2=einf^2=0, o.einf=-1",
    distance: "d^2 = -2 (P.Q)/((P.einf)(Q.einf))",
    point_embedding: "P = o + p + (|p|^2/2) einf",
    sphere: "S^D = C - (r^2/2) einf",
    translator: "T(x) = 1 - (1/2) x einf translates points by +x",
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Conventions {
    Euclid(EuclidConventions),
    Spacetime(ConventionRecord),
}

impl Conventions {
    pub fn for_model(model: ModelKind) -> Conventions {
        match model {
            ModelKind::Cga5 => Conventions::Euclid(EUCLID_CONVENTIONS),
            ModelKind::Cga7 => Conventions::Spacetime(CONVENTIONS),
        }
    }
}

/// Self-describing output document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Document {
    pub version: u32,
    pub model: ModelKind,
    pub conventions: Conventions,
    pub seed: u64,
    pub results: Vec<QueryResult>,
}

impl Document {
    pub fn new(model: ModelKind, seed: u64, results: Vec<QueryResult>) -> Document {
        Document { version: SCENARIO_VERSION, model, conventions: Conventions::for_model(model), seed, results }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut write = |q: &str, op: &str, key: &str, value: &str| {
            w.write_record([q, op, key, value]).expect("writing to memory");
        };
        write("query", "op", "key", "value");
        let meta = serde_json::json!({
            "version": self.version,
            "model": self.model,
            "conventions": self.conventions,
            "seed": self.seed,
        });
        for (key, value) in flatten(&meta) {
            write("", "meta", &key, &value);
        }
        for (index, result) in self.results.iter().enumerate() {
            let value = serde_json::to_value(result).expect("results serialize");
            let op = value["op"].as_str().unwrap_or_default().to_string();
            for (key, v) in flatten(&value) {
                if key != "op" {
                    write(&index.to_string(), &op, &key, &v);
                }
            }
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

/// Leaf values of a JSON tree keyed by dotted paths, in document order.
fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    walk(&join(k), child, out);
                }
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&join(&i.to_string()), child, out);
                }
            }
            Value::Null => out.push((prefix.to_string(), String::new())),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}
