use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::models::{Arc, Model, Triangulation};

/// A simplex of an arc complex: a sorted set of pairwise disjoint arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    arcs: Vec<Arc>,
}

impl Simplex {
    pub fn new(arcs: impl IntoIterator<Item = Arc>) -> Self {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        Self { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// `k` for a simplex on `k + 1` vertices; `-1` for the empty simplex.
    pub fn dimension(&self) -> isize {
        self.arcs.len() as isize - 1
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex::new(
            self.arcs
                .iter()
                .copied()
                .filter(|a| other.arcs.binary_search(a).is_ok()),
        )
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.arcs.iter().all(|a| other.arcs.binary_search(a).is_ok())
    }
}

/// The top-dimensional simplex of the arc complex spanned by the arcs of a
/// triangulation. Triangulations sharing all but one arc map to simplices
/// meeting in a codimension-one face, which realises the flip graph as the
/// dual graph of the arc complex.
pub fn pi(t: &Triangulation) -> Simplex {
    Simplex::new(t.arcs().iter().copied())
}

/// Anything that can answer "is this vertex set a simplex?".
///
/// Finite complexes answer from their maximal simplices; [`ArcComplex`]
/// answers for the full (possibly infinite) arc complex of a model.
pub trait SimplexOracle<V> {
    fn has_vertex(&self, v: &V) -> bool;
    fn is_simplex(&self, vertices: &[V]) -> bool;
}

/// A finite simplicial complex stored by its maximal simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex<V: Ord> {
    vertices: BTreeSet<V>,
    maximal: BTreeSet<Vec<V>>,
    /// For each vertex, indices into `maximal_list` of the simplices holding it.
    incidence: BTreeMap<V, Vec<usize>>,
    maximal_list: Vec<Vec<V>>,
}

impl<V: Ord + Clone> SimplicialComplex<V> {
    /// Build from any generating simplices; faces of other generators are
    /// dropped so only maximal simplices remain.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Vec<V>>) -> Self {
        let mut generators: Vec<Vec<V>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort();
                s.dedup();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        generators.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        generators.dedup();

        let mut kept: Vec<Vec<V>> = Vec::new();
        for s in generators {
            let contained = kept
                .iter()
                .any(|k| k.len() > s.len() && s.iter().all(|v| k.binary_search(v).is_ok()));
            if !contained {
                kept.push(s);
            }
        }
        Self::from_maximal(kept)
    }

    fn from_maximal(maximal: Vec<Vec<V>>) -> Self {
        let maximal: BTreeSet<Vec<V>> = maximal.into_iter().collect();
        let maximal_list: Vec<Vec<V>> = maximal.iter().cloned().collect();
        let mut incidence: BTreeMap<V, Vec<usize>> = BTreeMap::new();
        for (k, s) in maximal_list.iter().enumerate() {
            for v in s {
                incidence.entry(v.clone()).or_default().push(k);
            }
        }
        Self {
            vertices: incidence.keys().cloned().collect(),
            maximal,
            incidence,
            maximal_list,
        }
    }

    pub fn vertices(&self) -> &BTreeSet<V> {
        &self.vertices
    }

    pub fn maximal_simplices(&self) -> &BTreeSet<Vec<V>> {
        &self.maximal
    }

    /// Maximal simplices containing `v`.
    pub fn star(&self, v: &V) -> impl Iterator<Item = &Vec<V>> {
        self.incidence
            .get(v)
            .into_iter()
            .flatten()
            .map(move |&k| &self.maximal_list[k])
    }

    /// Vertices sharing a simplex with `v`.
    pub fn link_vertices(&self, v: &V) -> BTreeSet<V> {
        self.star(v).flatten().filter(|w| *w != v).cloned().collect()
    }

    pub fn dimension(&self) -> isize {
        self.maximal.iter().map(|s| s.len() as isize - 1).max().unwrap_or(-1)
    }

    /// The full subcomplex on a vertex subset.
    pub fn induced(&self, keep: &BTreeSet<V>) -> Self {
        Self::from_simplices(
            self.maximal
                .iter()
                .map(|s| s.iter().filter(|v| keep.contains(v)).cloned().collect::<Vec<V>>()),
        )
    }

    pub fn is_subcomplex_of(&self, whole: &SimplicialComplex<V>) -> bool {
        self.maximal.iter().all(|s| whole.is_simplex(s))
    }
}

impl<V: Ord + Clone> SimplexOracle<V> for SimplicialComplex<V> {
    fn has_vertex(&self, v: &V) -> bool {
        self.vertices.contains(v)
    }

    fn is_simplex(&self, vertices: &[V]) -> bool {
        let Some(first) = vertices.first() else {
            return true;
        };
        self.star(first)
            .any(|s| vertices.iter().all(|v| s.binary_search(v).is_ok()))
    }
}

impl<V: Ord + Clone + fmt::Display> SimplicialComplex<V> {
    /// `{"vertices": [...], "maximal_simplices": [[...], ...]}`, ordered
    /// lexicographically by the text form of each vertex.
    pub fn to_json(&self) -> Value {
        let mut vertices: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        vertices.sort();
        let mut simplices: Vec<Vec<String>> = self
            .maximal
            .iter()
            .map(|s| {
                let mut names: Vec<String> = s.iter().map(ToString::to_string).collect();
                names.sort();
                names
            })
            .collect();
        simplices.sort();
        json!({ "vertices": vertices, "maximal_simplices": simplices })
    }
}

/// The complete arc complex of a model, answered pointwise from the
/// model's disjointness relation. Works for the infinite Farey complex.
#[derive(Debug, Clone, Copy)]
pub struct ArcComplex<'a> {
    model: &'a Model,
}

impl<'a> ArcComplex<'a> {
    pub fn new(model: &'a Model) -> Self {
        Self { model }
    }
}

impl SimplexOracle<Arc> for ArcComplex<'_> {
    fn has_vertex(&self, v: &Arc) -> bool {
        self.model.contains(*v)
    }

    fn is_simplex(&self, vertices: &[Arc]) -> bool {
        vertices.iter().all(|&a| self.model.contains(a))
            && vertices.iter().enumerate().all(|(k, &a)| {
                vertices[k + 1..]
                    .iter()
                    .all(|&b| self.model.disjoint(a, b).unwrap_or(false))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pruning_keeps_only_maximal_simplices() {
        let k = SimplicialComplex::from_simplices(vec![vec![1, 2, 3], vec![2, 3], vec![4], vec![3, 4], vec![3, 2, 1]]);
        assert_eq!(
            k.maximal_simplices().iter().cloned().collect::<Vec<_>>(),
            vec![vec![1, 2, 3], vec![3, 4]]
        );
        assert_eq!(k.vertices().len(), 4);
        assert!(k.is_simplex(&[1, 3]));
        assert!(!k.is_simplex(&[1, 4]));
        assert_eq!(k.dimension(), 2);
        assert_eq!(k.link_vertices(&3), BTreeSet::from([1, 2, 4]));
    }

    #[test]
    fn simplex_dimension_and_faces() {
        let a = Arc::Chord { i: 0, j: 2 };
        let b = Arc::Chord { i: 0, j: 3 };
        let s = Simplex::new([b, a]);
        assert_eq!(s.arcs(), &[a, b]);
        assert_eq!(s.dimension(), 1);
        let f = Simplex::new([a]);
        assert!(f.is_face_of(&s));
        assert_eq!(s.intersection(&f), f);
        assert_eq!(Simplex::new([]).dimension(), -1);
    }

    #[test]
    fn farey_oracle() {
        let torus = Model::once_punctured_torus();
        let complex = ArcComplex::new(&torus);
        let s = |p, q| Arc::slope(p, q).unwrap();
        assert!(complex.is_simplex(&[s(0, 1), s(1, 0), s(1, 1)]));
        assert!(!complex.is_simplex(&[s(0, 1), s(1, 0), s(1, 2)]));
        assert!(!complex.has_vertex(&Arc::Radial(0)));
    }
}
