//! Reliability block diagrams.
//!
//! A diagram is a tree of components combined in series (every child must
//! work) or in parallel (at least one child must work). Each component id
//! appears exactly once; the subsystems are treated as independent.
//!
//! The textual form is a JSON expression: a component is a string, and a
//! composite is an array whose first element is `"series"` or `"parallel"`
//! followed by the children, e.g. `["series", "s1", ["parallel", "s2", "s3"]]`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::beta::BetaParams;
use crate::error::{Error, Result};

pub type ThetaAssignment = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Value", into = "Value")]
pub enum BlockNode {
    Component(String),
    Series(Vec<BlockNode>),
    Parallel(Vec<BlockNode>),
}

impl BlockNode {
    pub fn component(id: impl Into<String>) -> Self {
        BlockNode::Component(id.into())
    }

    /// Series of plain components, in the given order.
    pub fn series_of<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        BlockNode::Series(ids.into_iter().map(BlockNode::component).collect())
    }

    pub fn parallel_of<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        BlockNode::Parallel(ids.into_iter().map(BlockNode::component).collect())
    }

    /// Leaf ids in canonical (document) order.
    pub fn leaf_ids(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            BlockNode::Component(id) => out.push(id),
            BlockNode::Series(children) | BlockNode::Parallel(children) => {
                children.iter().for_each(|c| c.collect_leaves(out))
            }
        }
    }

    pub fn contains_parallel(&self) -> bool {
        match self {
            BlockNode::Component(_) => false,
            BlockNode::Parallel(_) => true,
            BlockNode::Series(children) => children.iter().any(BlockNode::contains_parallel),
        }
    }

    /// Checks the structural invariants: nonempty composites, nonempty and
    /// unique component ids.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        self.validate_into(&mut seen)
    }

    fn validate_into<'a>(&'a self, seen: &mut HashSet<&'a str>) -> Result<()> {
        match self {
            BlockNode::Component(id) => {
                if id.is_empty() {
                    return Err(Error::MalformedStructure("empty component id".into()));
                }
                if !seen.insert(id) {
                    return Err(Error::DuplicateComponent(id.clone()));
                }
                Ok(())
            }
            BlockNode::Series(children) | BlockNode::Parallel(children) => {
                if children.is_empty() {
                    return Err(Error::EmptyChildren(self.kind()));
                }
                children.iter().try_for_each(|c| c.validate_into(seen))
            }
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            BlockNode::Component(_) => "component",
            BlockNode::Series(_) => "series",
            BlockNode::Parallel(_) => "parallel",
        }
    }

    fn to_value(&self) -> Value {
        match self {
            BlockNode::Component(id) => Value::String(id.clone()),
            BlockNode::Series(children) | BlockNode::Parallel(children) => {
                let mut items = Vec::with_capacity(children.len() + 1);
                items.push(Value::String(self.kind().to_string()));
                items.extend(children.iter().map(BlockNode::to_value));
                Value::Array(items)
            }
        }
    }
}

fn node_from_value(value: &Value) -> Result<BlockNode> {
    match value {
        Value::String(id) => Ok(BlockNode::Component(id.clone())),
        Value::Array(items) => {
            let (head, rest) = items
                .split_first()
                .ok_or_else(|| Error::MalformedStructure("empty array".into()))?;
            let children = rest
                .iter()
                .map(node_from_value)
                .collect::<Result<Vec<_>>>()?;
            match head.as_str() {
                Some("series") => Ok(BlockNode::Series(children)),
                Some("parallel") => Ok(BlockNode::Parallel(children)),
                _ => Err(Error::MalformedStructure(format!(
                    "expected \"series\" or \"parallel\" as first array element, got {head}"
                ))),
            }
        }
        other => Err(Error::MalformedStructure(format!(
            "expected a component id or an array, got {other}"
        ))),
    }
}

impl TryFrom<Value> for BlockNode {
    type Error = Error;

    fn try_from(value: Value) -> Result<Self> {
        let node = node_from_value(&value)?;
        node.validate()?;
        Ok(node)
    }
}

impl From<BlockNode> for Value {
    fn from(node: BlockNode) -> Value {
        node.to_value()
    }
}

pub fn parse_structure(text: &str) -> Result<BlockNode> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedStructure(e.to_string()))?;
    BlockNode::try_from(value)
}

/// Canonical compact text; children keep their order.
pub fn serialize_structure(node: &BlockNode) -> String {
    node.to_value().to_string()
}

/// Tree with leaves replaced by their position in canonical order.
#[derive(Debug, Clone)]
pub(crate) enum IndexedNode {
    Leaf(usize),
    Series(Vec<IndexedNode>),
    Parallel(Vec<IndexedNode>),
}

#[derive(Debug, Clone)]
pub(crate) struct IndexedTree {
    pub(crate) leaves: Vec<String>,
    pub(crate) root: IndexedNode,
}

impl IndexedTree {
    pub(crate) fn new(node: &BlockNode) -> Result<Self> {
        node.validate()?;
        let mut leaves = Vec::new();
        let root = index_node(node, &mut leaves);
        Ok(Self { leaves, root })
    }

    /// Values of `map` in leaf order; the key set must equal the leaf set.
    pub(crate) fn bind<T: Copy>(&self, map: &BTreeMap<String, T>) -> Result<Vec<T>> {
        let leaf_set: BTreeSet<&str> = self.leaves.iter().map(String::as_str).collect();
        let missing: Vec<String> = self
            .leaves
            .iter()
            .filter(|id| !map.contains_key(*id))
            .cloned()
            .collect();
        let extra: Vec<String> = map
            .keys()
            .filter(|id| !leaf_set.contains(id.as_str()))
            .cloned()
            .collect();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(Error::StructureMismatch { missing, extra });
        }
        Ok(self.leaves.iter().map(|id| map[id]).collect())
    }

    #[inline]
    pub(crate) fn evaluate(&self, thetas: &[f64]) -> f64 {
        self.root.evaluate(thetas)
    }
}

fn index_node(node: &BlockNode, leaves: &mut Vec<String>) -> IndexedNode {
    match node {
        BlockNode::Component(id) => {
            leaves.push(id.clone());
            IndexedNode::Leaf(leaves.len() - 1)
        }
        BlockNode::Series(children) => {
            IndexedNode::Series(children.iter().map(|c| index_node(c, leaves)).collect())
        }
        BlockNode::Parallel(children) => {
            IndexedNode::Parallel(children.iter().map(|c| index_node(c, leaves)).collect())
        }
    }
}

impl IndexedNode {
    fn evaluate(&self, thetas: &[f64]) -> f64 {
        match self {
            IndexedNode::Leaf(i) => thetas[*i],
            IndexedNode::Series(children) | IndexedNode::Parallel(children)
                if children.len() == 1 =>
            {
                children[0].evaluate(thetas)
            }
            IndexedNode::Series(children) => children.iter().map(|c| c.evaluate(thetas)).product(),
            IndexedNode::Parallel(children) => {
                1.0 - children
                    .iter()
                    .map(|c| 1.0 - c.evaluate(thetas))
                    .product::<f64>()
            }
        }
    }

    fn moments(&self, leaf_moments: &[Moments]) -> Moments {
        match self {
            IndexedNode::Leaf(i) => leaf_moments[*i],
            IndexedNode::Series(children) | IndexedNode::Parallel(children)
                if children.len() == 1 =>
            {
                children[0].moments(leaf_moments)
            }
            IndexedNode::Series(children) => {
                let (mut m1, mut m2) = (1.0, 1.0);
                for c in children {
                    let m = c.moments(leaf_moments);
                    m1 *= m.mean;
                    m2 *= m.second_moment;
                }
                Moments {
                    mean: m1,
                    second_moment: m2,
                }
            }
            IndexedNode::Parallel(children) => {
                // with U = 1 − X: E[U] = 1 − E[X], E[U²] = 1 − 2E[X] + E[X²]
                let (mut u1, mut u2) = (1.0, 1.0);
                for c in children {
                    let m = c.moments(leaf_moments);
                    u1 *= 1.0 - m.mean;
                    u2 *= 1.0 - 2.0 * m.mean + m.second_moment;
                }
                Moments {
                    mean: 1.0 - u1,
                    second_moment: 1.0 - 2.0 * u1 + u2,
                }
            }
        }
    }
}

/// Evaluates the diagram at fixed component reliabilities.
pub fn system_reliability(node: &BlockNode, thetas: &ThetaAssignment) -> Result<f64> {
    let tree = IndexedTree::new(node)?;
    let values = tree.bind(thetas)?;
    if let Some((id, v)) = thetas.iter().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
        return Err(Error::invalid(format!(
            "reliability of `{id}` must lie in [0, 1], got {v}"
        )));
    }
    Ok(tree.evaluate(&values))
}

/// First two raw moments of a reliability value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub second_moment: f64,
}

impl Moments {
    pub fn variance(&self) -> f64 {
        self.second_moment - self.mean * self.mean
    }
}

/// Exact mean and second moment of system reliability when each component
/// reliability is an independent beta variable.
pub fn analytic_first_two_moments(
    node: &BlockNode,
    priors: &BTreeMap<String, BetaParams>,
) -> Result<Moments> {
    let tree = IndexedTree::new(node)?;
    let leaf_moments: Vec<Moments> = tree
        .bind(priors)?
        .iter()
        .map(|p| Moments {
            mean: p.mean(),
            second_moment: p.second_moment(),
        })
        .collect();
    Ok(tree.root.moments(&leaf_moments))
}
