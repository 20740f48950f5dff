//! JSON-friendly forms of multivectors: coefficient maps keyed by blade names
//! such as `"e1^e2"`, with `"1"` for the scalar part.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::multivector::Multivector;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NamedBlades(pub BTreeMap<String, f64>);

impl NamedBlades {
    pub fn from_multivector(a: &Multivector) -> Self {
        let alg = a.algebra();
        NamedBlades(a.terms().map(|(b, c)| (alg.blade_name(b), c)).collect())
    }

    pub fn to_multivector(&self, alg: &Arc<Algebra>) -> Result<Multivector> {
        let terms = self
            .0
            .iter()
            .map(|(name, &c)| Ok((alg.parse_blade(name)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multivector::from_terms(alg, terms))
    }
}
