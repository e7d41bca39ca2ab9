use std::fmt;

use super::Arc;

/// A set of arcs kept in canonical (sorted, duplicate-free) order.
///
/// Equality and hashing are exact because every arc is canonical. Whether
/// the set really triangulates a surface is a question for
/// [`Model::is_triangulation`](super::Model::is_triangulation); values
/// handed out by a [`Model`](super::Model) always do.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    arcs: Vec<Arc>,
}

impl Triangulation {
    pub(crate) fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        Self { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    /// Arcs of `self` that are not in `other`.
    pub fn difference(&self, other: &Triangulation) -> Vec<Arc> {
        self.arcs.iter().copied().filter(|a| !other.contains(a)).collect()
    }

    pub fn common_count(&self, other: &Triangulation) -> usize {
        self.arcs.iter().filter(|a| other.contains(a)).count()
    }

    pub(crate) fn replace(&self, old: Arc, new: Arc) -> Triangulation {
        Triangulation::from_arcs(self.arcs.iter().map(|&a| if a == old { new } else { a }))
    }

    /// Arc strings in lexicographic order, the form used by every export.
    pub fn serialized_arcs(&self) -> Vec<String> {
        let mut names: Vec<String> = self.arcs.iter().map(Arc::to_string).collect();
        names.sort();
        names
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.serialized_arcs().join(","))
    }
}

/// One side of a triangle in a triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(Arc),
    /// Boundary segment from vertex `k` to vertex `k + 1 (mod n)`.
    Boundary(u32),
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Arc(a) => a.fmt(f),
            Side::Boundary(k) => write!(f, "B({k})"),
        }
    }
}

/// A triangle of a triangulation, as its three sides.
///
/// When an arc occurs twice the triangle is self-folded: the repeated arc
/// is the inner arc and the remaining side the outer arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    sides: [Side; 3],
}

impl Face {
    pub(crate) fn new(mut sides: [Side; 3]) -> Self {
        sides.sort_unstable();
        Self { sides }
    }

    pub fn sides(&self) -> &[Side; 3] {
        &self.sides
    }

    pub fn self_folded(&self) -> bool {
        self.inner_arc().is_some()
    }

    pub fn inner_arc(&self) -> Option<Arc> {
        let [a, b, c] = self.sides;
        let repeated = if a == b || a == c {
            a
        } else if b == c {
            b
        } else {
            return None;
        };
        match repeated {
            Side::Arc(arc) => Some(arc),
            Side::Boundary(_) => None,
        }
    }

    pub fn outer_side(&self) -> Option<Side> {
        let inner = Side::Arc(self.inner_arc()?);
        self.sides.iter().copied().find(|&s| s != inner)
    }

    /// How many of the three side slots carry `arc`.
    pub fn slots(&self, arc: Arc) -> usize {
        self.sides.iter().filter(|&&s| s == Side::Arc(arc)).count()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.sides;
        write!(f, "<{a},{b},{c}>")
    }
}
