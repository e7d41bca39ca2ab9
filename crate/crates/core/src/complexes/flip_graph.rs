use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{ComplexError, SimplicialComplex};
use crate::models::{Arc, Model, Triangulation};

/// An edge between vertices `a < b`. When the two triangulations differ by
/// a single arc, `label` holds `(removed, added)`: the arc of `a` missing
/// from `b` and the arc of `b` missing from `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipEdge {
    pub a: usize,
    pub b: usize,
    pub label: Option<(Arc, Arc)>,
}

/// A finite subgraph of the flip graph of a model.
///
/// Vertices are stored sorted by their text form, so two constructions of
/// the same subgraph are equal value-for-value.
#[derive(Debug, Clone)]
pub struct FlipSubgraph {
    model: Model,
    vertices: Vec<Triangulation>,
    index: HashMap<Triangulation, usize>,
    edges: Vec<FlipEdge>,
    adjacency: Vec<Vec<usize>>,
    center: Option<usize>,
    radius: Option<usize>,
    distance: Vec<Option<usize>>,
}

impl PartialEq for FlipSubgraph {
    fn eq(&self, other: &Self) -> bool {
        self.model == other.model && self.vertices == other.vertices && self.edges == other.edges
    }
}

fn edge_label(x: &Triangulation, y: &Triangulation) -> Option<(Arc, Arc)> {
    match (x.difference(y).as_slice(), y.difference(x).as_slice()) {
        (&[removed], &[added]) => Some((removed, added)),
        _ => None,
    }
}

impl FlipSubgraph {
    /// Assemble a subgraph from vertices and index pairs into `vertices`.
    /// No flip relation is checked here; [`check_duality`](super::check_duality)
    /// audits arbitrary edge sets.
    pub fn from_parts(
        model: Model,
        vertices: Vec<Triangulation>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        let keys: Vec<String> = vertices.iter().map(ToString::to_string).collect();
        order.sort_by(|&x, &y| keys[x].cmp(&keys[y]));
        let mut position = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let sorted: Vec<Triangulation> = order.iter().map(|&old| vertices[old].clone()).collect();

        let pairs: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(x, y)| (position[x], position[y]))
            .filter(|(x, y)| x != y)
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect();
        let edges: Vec<FlipEdge> = pairs
            .into_iter()
            .map(|(a, b)| FlipEdge {
                a,
                b,
                label: edge_label(&sorted[a], &sorted[b]),
            })
            .collect();

        let mut adjacency = vec![Vec::new(); sorted.len()];
        for e in &edges {
            adjacency[e.a].push(e.b);
            adjacency[e.b].push(e.a);
        }
        let index = sorted.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
        let n = sorted.len();
        Self {
            model,
            vertices: sorted,
            index,
            edges,
            adjacency,
            center: None,
            radius: None,
            distance: vec![None; n],
        }
    }

    /// The subgraph of the flip graph induced on `vertices`.
    pub fn induced(model: &Model, vertices: Vec<Triangulation>) -> Result<Self, ComplexError> {
        let lookup: HashMap<&Triangulation, usize> = vertices.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let neighbours: Vec<Vec<(Arc, Triangulation, Arc)>> = vertices
            .par_iter()
            .map(|t| model.flip_neighbors(t))
            .collect::<Result<_, _>>()?;
        let mut edges = Vec::new();
        for (k, list) in neighbours.iter().enumerate() {
            for (_, next, _) in list {
                if let Some(&j) = lookup.get(next) {
                    edges.push((k, j));
                }
            }
        }
        Ok(Self::from_parts(model.clone(), vertices, edges))
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn vertices(&self) -> &[Triangulation] {
        &self.vertices
    }

    pub fn edges(&self) -> &[FlipEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &Triangulation) -> bool {
        self.index.contains_key(t)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adjacency[x].contains(&y)
    }

    pub fn center(&self) -> Option<&Triangulation> {
        self.center.map(|c| &self.vertices[c])
    }

    pub fn radius(&self) -> Option<usize> {
        self.radius
    }

    /// Distance from the ball centre, for subgraphs built as balls.
    pub fn distance(&self, v: usize) -> Option<usize> {
        self.distance[v]
    }

    /// Vertices at distance exactly `k` from the ball centre.
    pub fn shell(&self, k: usize) -> Vec<&Triangulation> {
        (0..self.vertices.len())
            .filter(|&v| self.distance[v] == Some(k))
            .map(|v| &self.vertices[v])
            .collect()
    }

    /// Breadth-first distances from `source` inside this subgraph.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have distances");
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertices.len()];
        let mut count = 0;
        for v in 0..self.vertices.len() {
            if seen[v] {
                continue;
            }
            count += 1;
            for (w, d) in self.distances_from(v).into_iter().enumerate() {
                if d.is_some() {
                    seen[w] = true;
                }
            }
        }
        count
    }

    /// A forest has exactly `V − components` edges.
    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + self.component_count() == self.vertices.len()
    }

    /// Induced subgraph on the vertices within `r` of the centre.
    pub fn restrict_to_radius(&self, r: usize) -> FlipSubgraph {
        let keep: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| self.distance[v].is_some_and(|d| d <= r))
            .collect();
        let mut sub = self.subgraph(&keep);
        if let Some(c) = self.center() {
            let c = sub.index_of(c).expect("centre is kept");
            sub.set_center(c, r);
        }
        sub
    }

    /// Induced subgraph on the given vertex indices.
    pub fn subgraph(&self, keep: &[usize]) -> FlipSubgraph {
        let mut local = HashMap::new();
        for (k, &v) in keep.iter().enumerate() {
            local.insert(v, k);
        }
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|e| Some((*local.get(&e.a)?, *local.get(&e.b)?)))
            .collect();
        FlipSubgraph::from_parts(self.model.clone(), vertices, edges)
    }

    /// `count` distinct vertices at distance at most `max_distance` from the
    /// centre, drawn with a seeded generator and returned in vertex order.
    pub fn sample_within(&self, max_distance: usize, count: usize, seed: u64) -> Vec<Triangulation> {
        let pool: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| self.distance[v].is_some_and(|d| d <= max_distance))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<usize> = pool.choose_multiple(&mut rng, count.min(pool.len())).copied().collect();
        picked.sort_unstable();
        picked.into_iter().map(|v| self.vertices[v].clone()).collect()
    }

    pub(crate) fn set_center(&mut self, center: usize, radius: usize) {
        self.distance = self.distances_from(center);
        self.center = Some(center);
        self.radius = Some(radius);
    }

    /// The flip graph viewed as a one-dimensional simplicial complex: edges
    /// are the maximal simplices, plus any isolated vertices.
    pub fn as_complex(&self) -> SimplicialComplex<Triangulation> {
        let edges = self
            .edges
            .iter()
            .map(|e| vec![self.vertices[e.a].clone(), self.vertices[e.b].clone()]);
        let isolated = (0..self.vertices.len())
            .filter(|&v| self.adjacency[v].is_empty())
            .map(|v| vec![self.vertices[v].clone()]);
        SimplicialComplex::from_simplices(edges.chain(isolated))
    }

    /// Graphviz rendering. Vertex labels are serialised triangulations and
    /// edge labels read `-removed/+added`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph flip {\n");
        for (k, t) in self.vertices.iter().enumerate() {
            writeln!(out, "  {k} [label=\"{t}\"];").unwrap();
        }
        for e in &self.edges {
            match e.label {
                Some((removed, added)) => {
                    writeln!(out, "  {} -- {} [label=\"-{removed}/+{added}\"];", e.a, e.b).unwrap()
                }
                None => writeln!(out, "  {} -- {};", e.a, e.b).unwrap(),
            }
        }
        out.push_str("}\n");
        out
    }

    /// `{"vertices": [[arcs...], ...], "edges": [[i, j], ...]}`.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Vec<String>> = self.vertices.iter().map(Triangulation::serialized_arcs).collect();
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|e| [e.a, e.b]).collect();
        json!({ "vertices": vertices, "edges": edges })
    }
}

/// All triangulations within flip distance `r` of `center`, with every flip
/// edge between them. Each vertex records its distance from the centre.
pub fn flip_ball(model: &Model, center: &Triangulation, r: usize) -> Result<FlipSubgraph, ComplexError> {
    if !model.is_triangulation(center.arcs()) {
        return Err(ComplexError::Model(crate::models::ModelError::NotTriangulation(
            format!("{center} is not a triangulation of {model}"),
        )));
    }
    let mut found: Vec<Triangulation> = vec![center.clone()];
    let mut seen: HashMap<Triangulation, usize> = HashMap::from([(center.clone(), 0)]);
    let mut frontier = vec![0usize];
    for _ in 0..r {
        let expanded: Vec<Vec<(Arc, Triangulation, Arc)>> = frontier
            .par_iter()
            .map(|&v| model.flip_neighbors(&found[v]))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for list in expanded {
            for (_, t, _) in list {
                if !seen.contains_key(&t) {
                    seen.insert(t.clone(), found.len());
                    next.push(found.len());
                    found.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut ball = FlipSubgraph::induced(model, found)?;
    let c = ball.index_of(center).expect("centre is a vertex");
    ball.set_center(c, r);
    Ok(ball)
}

/// The whole flip graph of a finite model.
///
/// Vertices come from exhaustive enumeration of maximal disjoint arc sets,
/// edges from pairs sharing all but one arc. This construction is
/// independent of [`flip_ball`], and the two are cross-checked in tests.
pub fn full_flip_graph(model: &Model) -> Result<FlipSubgraph, ComplexError> {
    let vertices = model.all_triangulations()?;
    let d = model.complexity();
    let pairs: Vec<(usize, usize)> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|x| {
            let vertices = &vertices;
            (x + 1..vertices.len())
                .filter(move |&y| vertices[x].common_count(&vertices[y]) + 1 == d)
                .map(move |y| (x, y))
        })
        .collect();
    Ok(FlipSubgraph::from_parts(model.clone(), vertices, pairs))
}
