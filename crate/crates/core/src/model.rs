//! JSON model files.
//!
//! ```json
//! {
//!   "components": [
//!     {"id": "s1", "prior": {"alpha": 5, "beta": 2}, "tests": {"n": 2, "x": 2}},
//!     {"id": "s2", "prior": {"theta_hat": 0.8, "n_pr": 10}}
//!   ],
//!   "structure": ["series", "s1", "s2"],
//!   "system_tests": {"n_ts": 4, "x_ts": 4}
//! }
//! ```
//!
//! `tests`, `structure` and `system_tests` are optional. A prior is given
//! either as shapes or as an elicitation, never both.

use std::collections::HashSet;

use serde::Deserialize;
use serde_json::Value;

use crate::beta::{conjugate_update, elicit_prior, BetaParams, PriorElicitation, TestRecord};
use crate::engine::{ParamMap, SystemTestData};
use crate::error::{Error, Result};
use crate::rbd::BlockNode;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorSpec {
    Shapes(BetaParams),
    Elicited(PriorElicitation),
}

impl PriorSpec {
    pub fn to_beta(&self) -> BetaParams {
        match self {
            PriorSpec::Shapes(p) => *p,
            PriorSpec::Elicited(e) => elicit_prior(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSpec {
    pub id: String,
    pub prior: PriorSpec,
    pub tests: Option<TestRecord>,
}

impl ComponentSpec {
    pub fn posterior(&self) -> BetaParams {
        let prior = self.prior.to_beta();
        match &self.tests {
            Some(t) => conjugate_update(&prior, t),
            None => prior,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub components: Vec<ComponentSpec>,
    pub structure: Option<BlockNode>,
    pub system_tests: Option<SystemTestData>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    components: Vec<RawComponent>,
    #[serde(default)]
    structure: Option<Value>,
    #[serde(default)]
    system_tests: Option<RawSystemTests>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    id: String,
    prior: RawPrior,
    #[serde(default)]
    tests: Option<RawTests>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrior {
    alpha: Option<f64>,
    beta: Option<f64>,
    theta_hat: Option<f64>,
    n_pr: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTests {
    n: u64,
    x: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystemTests {
    n_ts: u64,
    x_ts: u64,
}

fn prior_from_raw(raw: RawPrior) -> Result<PriorSpec> {
    match raw {
        RawPrior {
            alpha: Some(a),
            beta: Some(b),
            theta_hat: None,
            n_pr: None,
        } => Ok(PriorSpec::Shapes(BetaParams::new(a, b)?)),
        RawPrior {
            alpha: None,
            beta: None,
            theta_hat: Some(t),
            n_pr: Some(n),
        } => Ok(PriorSpec::Elicited(PriorElicitation::new(t, n)?)),
        _ => Err(Error::Model(
            "prior must be exactly one of {alpha, beta} or {theta_hat, n_pr}".into(),
        )),
    }
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawModel = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;

        let mut seen = HashSet::new();
        let mut components = Vec::with_capacity(raw.components.len());
        for c in raw.components {
            let id = c.id;
            let ctx = |e: Error| Error::Model(format!("component `{id}`: {e}"));
            if id.is_empty() {
                return Err(Error::Model("component id must be nonempty".into()));
            }
            if !seen.insert(id.clone()) {
                return Err(Error::Model(format!("duplicate component id `{id}`")));
            }
            let prior = prior_from_raw(c.prior).map_err(ctx)?;
            let tests = c
                .tests
                .map(|t| TestRecord::new(t.n, t.x))
                .transpose()
                .map_err(ctx)?;
            components.push(ComponentSpec { id, prior, tests });
        }

        let structure = raw
            .structure
            .map(BlockNode::try_from)
            .transpose()
            .map_err(|e| Error::Model(format!("structure: {e}")))?;
        if let Some(node) = &structure {
            let undeclared: Vec<&str> = node
                .leaf_ids()
                .into_iter()
                .filter(|id| !seen.contains(*id))
                .collect();
            if !undeclared.is_empty() {
                return Err(Error::Model(format!(
                    "structure references undeclared components {undeclared:?}"
                )));
            }
        }

        let system_tests = raw
            .system_tests
            .map(|s| SystemTestData::new(s.n_ts, s.x_ts))
            .transpose()
            .map_err(|e| Error::Model(format!("system_tests: {e}")))?;

        Ok(Self {
            components,
            structure,
            system_tests,
        })
    }

    pub fn component(&self, id: &str) -> Option<&ComponentSpec> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn priors(&self) -> ParamMap {
        self.components
            .iter()
            .map(|c| (c.id.clone(), c.prior.to_beta()))
            .collect()
    }

    /// Every component updated with its own test record.
    pub fn posteriors(&self) -> ParamMap {
        self.components
            .iter()
            .map(|c| (c.id.clone(), c.posterior()))
            .collect()
    }

    /// Posteriors restricted to the components that appear in the structure.
    pub fn structure_posteriors(&self) -> Option<(&BlockNode, ParamMap)> {
        let node = self.structure.as_ref()?;
        let all = self.posteriors();
        let map = node
            .leaf_ids()
            .into_iter()
            .map(|id| (id.to_string(), all[id]))
            .collect();
        Some((node, map))
    }
}
