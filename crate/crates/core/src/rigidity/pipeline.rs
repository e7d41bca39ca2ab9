//! Passing between maps on arcs and maps on triangulations.

use std::collections::{BTreeMap, BTreeSet};

use super::{extensions, DomainKind, RigidityError, VertexMap};
use crate::complexes::{flip_ball, FlipSubgraph};
use crate::models::{Arc, Model, ModelError, Triangulation};

/// The arcs appearing in some vertex of `x_f`.
fn arcs_of(x_f: &FlipSubgraph) -> BTreeSet<Arc> {
    x_f.vertices().iter().flat_map(|t| t.arcs().iter().copied()).collect()
}

/// `λ_F(T) = {λ_A(a) : a ∈ T}` for every vertex `T` of `x_f`.
///
/// Fails if some image is not a triangulation of `target_model`, if two
/// vertices collide, or if a flip edge is not carried to a flip edge.
pub fn induce_flip_map(
    lambda_a: &VertexMap<Arc>,
    x_f: &FlipSubgraph,
    target_model: &Model,
) -> Result<VertexMap<Triangulation>, RigidityError> {
    let mut images = Vec::with_capacity(x_f.vertex_count());
    for t in x_f.vertices() {
        let arcs = t
            .arcs()
            .iter()
            .map(|a| lambda_a.get(a).copied().ok_or(RigidityError::MissingArc(*a)))
            .collect::<Result<Vec<Arc>, _>>()?;
        let image = target_model.triangulation(arcs.iter().copied()).map_err(|_| {
            let shown: Vec<String> = arcs.iter().map(ToString::to_string).collect();
            RigidityError::ImageNotTriangulation(format!("{t} -> {{{}}}", shown.join(", ")))
        })?;
        images.push(image);
    }
    let d = target_model.complexity();
    for e in x_f.edges() {
        let (x, y) = (&images[e.a], &images[e.b]);
        if x == y || x.common_count(y) + 1 != d {
            let (s, t) = (&x_f.vertices()[e.a], &x_f.vertices()[e.b]);
            return Err(RigidityError::EdgeNotPreserved(format!("{s} -- {t}")));
        }
    }
    VertexMap::new(DomainKind::FlipGraph, x_f.vertices().iter().cloned().zip(images))
}

/// Recover the arc map from a map on a connected flip subgraph.
///
/// For each arc `a`, every edge `(T, T')` with `T \ T' = {a}` is a witness,
/// and `a` goes to the single arc of `λ_F(T) \ λ_F(T')`. All witnesses must
/// agree.
pub fn extract_arc_map(
    lambda_f: &VertexMap<Triangulation>,
    x_f: &FlipSubgraph,
) -> Result<VertexMap<Arc>, RigidityError> {
    if lambda_f.len() != x_f.vertex_count() || !x_f.vertices().iter().all(|t| lambda_f.get(t).is_some()) {
        return Err(RigidityError::DomainMismatch);
    }
    if !x_f.is_connected() {
        return Err(RigidityError::Disconnected);
    }
    let mut found: BTreeMap<Arc, Arc> = BTreeMap::new();
    for e in x_f.edges() {
        let (s, t) = (&x_f.vertices()[e.a], &x_f.vertices()[e.b]);
        let (ls, lt) = (
            lambda_f.get(s).expect("domain checked"),
            lambda_f.get(t).expect("domain checked"),
        );
        for (from, to, lfrom, lto) in [(s, t, ls, lt), (t, s, lt, ls)] {
            let &[a] = from.difference(to).as_slice() else { continue };
            let &[image] = lfrom.difference(lto).as_slice() else {
                return Err(RigidityError::EdgeNotPreserved(format!("{s} -- {t}")));
            };
            match found.get(&a) {
                Some(&previous) if previous != image => {
                    return Err(RigidityError::Inconsistent {
                        arc: a,
                        first: previous.to_string(),
                        second: image.to_string(),
                    })
                }
                Some(_) => {}
                None => {
                    found.insert(a, image);
                }
            }
        }
    }
    let missing: Vec<Arc> = arcs_of(x_f).into_iter().filter(|a| !found.contains_key(a)).collect();
    if !missing.is_empty() {
        return Err(RigidityError::NoWitnessEdge(missing));
    }
    VertexMap::new(DomainKind::ArcComplex, found)
}

/// Result of inducing `λ_F` from `λ_A` and extracting the arc map again.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub lambda_f: VertexMap<Triangulation>,
    pub recovered: VertexMap<Arc>,
    /// `recovered` equals `λ_A` restricted to the arcs of `x_f`.
    pub agrees: bool,
}

pub fn round_trip(
    lambda_a: &VertexMap<Arc>,
    x_f: &FlipSubgraph,
    target_model: &Model,
) -> Result<RoundTrip, RigidityError> {
    let lambda_f = induce_flip_map(lambda_a, x_f, target_model)?;
    let recovered = extract_arc_map(&lambda_f, x_f)?;
    let agrees = recovered == lambda_a.restrict(&arcs_of(x_f));
    Ok(RoundTrip {
        lambda_f,
        recovered,
        agrees,
    })
}

/// The action of an integer matrix of determinant ±1 on slopes:
/// `p/q ↦ (ap + bq)/(cp + dq)` for `[[a, b], [c, d]]`.
///
/// ```
/// use fliplab::models::Arc;
/// use fliplab::rigidity::farey_linear_map;
///
/// let arcs = ["0/1", "1/0", "1/1"].map(|s| s.parse::<Arc>().unwrap());
/// let shift = farey_linear_map([[1, 1], [0, 1]], &arcs).unwrap();
/// assert_eq!(shift.get(&arcs[2]).unwrap().to_string(), "2/1");
/// ```
pub fn farey_linear_map(matrix: [[i64; 2]; 2], arcs: &[Arc]) -> Result<VertexMap<Arc>, RigidityError> {
    let [[a, b], [c, d]] = matrix;
    if (a * d - b * c).abs() != 1 {
        return Err(RigidityError::NotUnimodular(matrix));
    }
    let mut pairs = Vec::with_capacity(arcs.len());
    for &arc in arcs {
        let Arc::Slope { p, q } = arc else {
            return Err(RigidityError::Complex(
                ModelError::ModelMismatch {
                    arc,
                    model: Model::once_punctured_torus().to_string(),
                }
                .into(),
            ));
        };
        let image = Arc::slope(a * p + b * q, c * p + d * q).expect("unimodular image is primitive");
        pairs.push((arc, image));
    }
    VertexMap::new(DomainKind::ArcComplex, pairs)
}

/// Outcome of extending the identity on a Farey flip ball by one layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeExtensionCount {
    pub radius: usize,
    pub shell_vertices: usize,
    pub lambda_count: usize,
    pub extension_count: usize,
    /// `2^shell_vertices`: each outermost vertex may swap its two children.
    pub expected: u128,
}

impl TreeExtensionCount {
    pub fn matches(&self) -> bool {
        self.extension_count as u128 == self.expected
    }
}

/// Count the injective graph morphisms of the radius-`r + 1` ball of the
/// Farey flip tree into itself that restrict to the identity on the
/// radius-`r` ball.
pub fn count_tree_extensions(r: usize) -> Result<TreeExtensionCount, RigidityError> {
    let model = Model::once_punctured_torus();
    let center = model.base_triangulation();
    let outer = flip_ball(&model, &center, r + 1)?;
    let inner = outer.restrict_to_radius(r);
    let (x, whole) = (inner.as_complex(), outer.as_complex());
    let identity = VertexMap::identity(DomainKind::FlipGraph, x.vertices().iter().cloned());
    let found = extensions(&identity, &x, &whole, &whole)?;
    let shell_vertices = outer.shell(r).len();
    Ok(TreeExtensionCount {
        radius: r,
        shell_vertices,
        lambda_count: 1,
        extension_count: found.len(),
        expected: 1u128 << shell_vertices,
    })
}
