//! Injective simplicial maps and finite rigidity.
//!
//! A subcomplex `X ⊆ C` is rigid with respect to `C'` when every injective
//! simplicial map `X → C'` extends to exactly one injective simplicial map
//! `C → C'`. For finite complexes this is decided by brute force in
//! [`rigidity_report`]. The [`pipeline`] functions pass between maps on the
//! arc complex and maps on the flip graph: a map on arcs induces one on
//! triangulations, and a map on triangulations gives back the arc map by
//! reading off `λ_F(T) \ λ_F(T')` along flip edges.
//!
//! On flip graphs, "simplicial" means "graph morphism": edges go to edges.

pub mod pipeline;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

pub use pipeline::{
    count_tree_extensions, extract_arc_map, farey_linear_map, induce_flip_map, round_trip, RoundTrip,
    TreeExtensionCount,
};
pub use search::{enumerate_injective_simplicial_maps, extensions, is_injective_simplicial, rigidity_report};

use crate::complexes::ComplexError;
use crate::models::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("map is not injective: {0} is hit twice")]
    NotInjective(String),
    #[error("map domain does not match the vertices of the complex")]
    DomainMismatch,
    #[error("arc {0} of the subgraph has no image")]
    MissingArc(Arc),
    #[error("image of {0} is not a triangulation of the target")]
    ImageNotTriangulation(String),
    #[error("flip edge {0} is not carried to a flip edge")]
    EdgeNotPreserved(String),
    #[error("the flip subgraph is not connected")]
    Disconnected,
    #[error("no flip edge of the subgraph removes {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
    NoWitnessEdge(Vec<Arc>),
    #[error("flip edges disagree on the image of {arc}: {first} vs {second}")]
    Inconsistent { arc: Arc, first: String, second: String },
    #[error("matrix {0:?} is not invertible over the integers")]
    NotUnimodular([[i64; 2]; 2]),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainKind {
    ArcComplex,
    FlipGraph,
}

/// A partial map on vertices, injective by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap<V: Ord, W: Ord = V> {
    assignments: BTreeMap<V, W>,
    kind: DomainKind,
}

impl<V: Ord + Clone + fmt::Display, W: Ord + Clone + fmt::Display> VertexMap<V, W> {
    pub fn new(kind: DomainKind, pairs: impl IntoIterator<Item = (V, W)>) -> Result<Self, RigidityError> {
        let mut assignments = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (v, w) in pairs {
            if let Some(previous) = assignments.get(&v) {
                if previous != &w {
                    return Err(RigidityError::NotInjective(format!("{v} is assigned twice")));
                }
                continue;
            }
            if !images.insert(w.clone()) {
                return Err(RigidityError::NotInjective(w.to_string()));
            }
            assignments.insert(v, w);
        }
        Ok(Self { assignments, kind })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn get(&self, v: &V) -> Option<&W> {
        self.assignments.get(v)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &V> {
        self.assignments.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, &W)> {
        self.assignments.iter()
    }

    pub fn restrict(&self, keep: &BTreeSet<V>) -> Self {
        Self {
            assignments: self
                .assignments
                .iter()
                .filter(|(v, _)| keep.contains(*v))
                .map(|(v, w)| (v.clone(), w.clone()))
                .collect(),
            kind: self.kind,
        }
    }

    /// `[[source, image], ...]` in domain order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.assignments
                .iter()
                .map(|(v, w)| json!([v.to_string(), w.to_string()]))
                .collect(),
        )
    }

    pub(crate) fn from_assignments(kind: DomainKind, assignments: BTreeMap<V, W>) -> Self {
        Self { assignments, kind }
    }

    pub(crate) fn assignments(&self) -> &BTreeMap<V, W> {
        &self.assignments
    }
}

impl<V: Ord + Clone> VertexMap<V, V> {
    /// The identity on the given vertices.
    pub fn identity(kind: DomainKind, vertices: impl IntoIterator<Item = V>) -> Self {
        Self {
            assignments: vertices.into_iter().map(|v| (v.clone(), v)).collect(),
            kind,
        }
    }
}

impl<V: Ord + fmt::Display, W: Ord + fmt::Display> fmt::Display for VertexMap<V, W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (v, w)) in self.assignments.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {w}")?;
        }
        f.write_str("}")
    }
}

/// One injective simplicial map from the subcomplex and what became of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRecord<V: Ord, W: Ord> {
    pub lambda: VertexMap<V, W>,
    pub extension_count: usize,
    pub extensions: Option<Vec<VertexMap<V, W>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport<V: Ord, W: Ord> {
    pub records: Vec<LambdaRecord<V, W>>,
}

impl<V: Ord + Clone + fmt::Display, W: Ord + Clone + fmt::Display> RigidityReport<V, W> {
    pub fn lambda_count(&self) -> usize {
        self.records.len()
    }

    pub fn unique(&self) -> usize {
        self.records.iter().filter(|r| r.extension_count == 1).count()
    }

    pub fn none(&self) -> usize {
        self.records.iter().filter(|r| r.extension_count == 0).count()
    }

    pub fn multiple(&self) -> usize {
        self.records.iter().filter(|r| r.extension_count > 1).count()
    }

    /// Every λ extends in exactly one way.
    pub fn rigid(&self) -> bool {
        self.unique() == self.lambda_count()
    }

    pub fn to_json(&self) -> Value {
        let details: Vec<Value> = self
            .records
            .iter()
            .map(|r| json!({ "lambda": r.lambda.to_json(), "extensions": r.extension_count }))
            .collect();
        json!({
            "lambda_count": self.lambda_count(),
            "unique": self.unique(),
            "none": self.none(),
            "multiple": self.multiple(),
            "rigid": self.rigid(),
            "details": details,
        })
    }
}
