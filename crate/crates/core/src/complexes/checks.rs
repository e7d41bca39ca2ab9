use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{pi, ComplexError, FlipSubgraph, SimplicialComplex};
use crate::models::{Arc, Model, Side, Triangulation};

/// `X_A`: the union of the simplices `π(T)` over the vertices `T` of `x_f`.
pub fn dual_subcomplex(x_f: &FlipSubgraph) -> Result<SimplicialComplex<Arc>, ComplexError> {
    if x_f.vertex_count() == 0 {
        return Err(ComplexError::EmptySubgraph);
    }
    let complex = SimplicialComplex::from_simplices(x_f.vertices().iter().map(|t| pi(t).arcs().to_vec()));
    // Distinct top-dimensional simplices never contain one another.
    assert_eq!(
        complex.maximal_simplices().len(),
        x_f.vertex_count(),
        "containment pruning removed a top simplex"
    );
    Ok(complex)
}

/// The full arc complex of a finite model.
pub fn arc_complex(model: &Model) -> Result<SimplicialComplex<Arc>, ComplexError> {
    dual_subcomplex(&super::full_flip_graph(model)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityViolation {
    pub first: Triangulation,
    pub second: Triangulation,
    pub is_edge: bool,
    pub shared_arcs: usize,
    pub codimension_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub pairs_checked: usize,
    pub violations: Vec<DualityViolation>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| {
                json!({
                    "first": v.first.to_string(),
                    "second": v.second.to_string(),
                    "edge": v.is_edge,
                    "shared_arcs": v.shared_arcs,
                    "codimension_one": v.codimension_one,
                })
            })
            .collect();
        json!({ "pairs_checked": self.pairs_checked, "violations": violations, "pass": self.passed() })
    }
}

/// For every pair of vertices, check that the three descriptions of
/// adjacency agree: an edge of `x_f`, sharing `d − 1` arcs, and dual
/// simplices meeting in a codimension-one face. Pi must also be injective.
pub fn check_duality(x_f: &FlipSubgraph) -> DualityReport {
    let d = x_f.model().complexity();
    let simplices: Vec<_> = x_f.vertices().iter().map(pi).collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for x in 0..simplices.len() {
        for y in x + 1..simplices.len() {
            pairs_checked += 1;
            let is_edge = x_f.has_edge(x, y);
            let shared_arcs = x_f.vertices()[x].common_count(&x_f.vertices()[y]);
            let meet = simplices[x].intersection(&simplices[y]);
            let codimension_one =
                meet.dimension() + 1 == simplices[x].dimension() && meet.dimension() + 1 == simplices[y].dimension();
            let injective = simplices[x] != simplices[y];
            if !(injective && is_edge == (shared_arcs + 1 == d) && is_edge == codimension_one) {
                violations.push(DualityViolation {
                    first: x_f.vertices()[x].clone(),
                    second: x_f.vertices()[y].clone(),
                    is_edge,
                    shared_arcs,
                    codimension_one,
                });
            }
        }
    }
    DualityReport {
        pairs_checked,
        violations,
    }
}

/// Distances from `center` inside `x_f`, after confirming that the true
/// ball of radius `r` lies in `x_f`: every vertex closer than `r` must have
/// all of its flip neighbours present.
fn contained_ball(x_f: &FlipSubgraph, center: &Triangulation, r: usize) -> Result<Vec<Option<usize>>, ComplexError> {
    let not_contained = || ComplexError::BallNotContained {
        center: center.to_string(),
        radius: r,
    };
    let c = x_f.index_of(center).ok_or_else(not_contained)?;
    let dist = x_f.distances_from(c);
    for (v, d) in dist.iter().enumerate() {
        if d.is_some_and(|d| d < r) {
            let neighbours = x_f.model().flip_neighbors(&x_f.vertices()[v])?;
            if neighbours.iter().any(|(_, t, _)| !x_f.contains(t)) {
                return Err(not_contained());
            }
        }
    }
    Ok(dist)
}

/// Arcs present in every triangulation within distance `r` of `center`.
pub fn ball_common_arcs(x_f: &FlipSubgraph, center: &Triangulation, r: usize) -> Result<BTreeSet<Arc>, ComplexError> {
    let dist = contained_ball(x_f, center, r)?;
    let mut common: BTreeSet<Arc> = center.arcs().iter().copied().collect();
    for (v, d) in dist.iter().enumerate() {
        if d.is_some_and(|d| d <= r) {
            common.retain(|a| x_f.vertices()[v].contains(a));
        }
    }
    Ok(common)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoBallOutcome {
    /// No arc survives the whole 2-ball.
    Pass,
    /// Some arcs lie in every vertex of the 2-ball.
    Fail(BTreeSet<Arc>),
    /// The 2-shell is empty, so the statement does not apply.
    Skipped,
}

/// Check that no arc is common to the 2-ball around `center`.
pub fn two_ball_check(x_f: &FlipSubgraph, center: &Triangulation) -> Result<TwoBallOutcome, ComplexError> {
    let dist = contained_ball(x_f, center, 2)?;
    if !dist.contains(&Some(2)) {
        return Ok(TwoBallOutcome::Skipped);
    }
    let common = ball_common_arcs(x_f, center, 2)?;
    Ok(if common.is_empty() {
        TwoBallOutcome::Pass
    } else {
        TwoBallOutcome::Fail(common)
    })
}

/// A two-flip path that removes an unflippable arc: flip the outer arc of
/// its self-folded triangle, then the (now flippable) inner arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub outer: Arc,
    pub inner: Arc,
    pub middle: Triangulation,
    pub end: Triangulation,
}

pub fn unflippable_witness(model: &Model, t: &Triangulation, a: Arc) -> Result<Witness, ComplexError> {
    if model.flippable(t, a)? {
        return Err(ComplexError::ArcIsFlippable(a));
    }
    let folded = model
        .faces(t)?
        .into_iter()
        .find(|f| f.inner_arc() == Some(a))
        .expect("an unflippable arc is the inner arc of a self-folded face");
    let outer = match folded.outer_side() {
        Some(Side::Arc(b)) => b,
        _ => {
            return Err(ComplexError::WitnessFailed(format!(
                "self-folded face {folded} has no outer arc"
            )))
        }
    };

    let (middle, _) = model.flip(t, outer)?;
    if !model.flippable(&middle, a)? {
        return Err(ComplexError::WitnessFailed(format!(
            "{a} still unflippable after flipping {outer}"
        )));
    }
    let (end, _) = model.flip(&middle, a)?;
    if end.contains(&a) || t.difference(&end).len() != 2 {
        return Err(ComplexError::WitnessFailed(format!(
            "{end} is not in the 2-shell of {t} without {a}"
        )));
    }
    Ok(Witness {
        outer,
        inner: a,
        middle,
        end,
    })
}
