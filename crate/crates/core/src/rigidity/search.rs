//! Backtracking search for injective simplicial maps between finite complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use super::{DomainKind, LambdaRecord, RigidityError, RigidityReport, VertexMap};
use crate::complexes::{SimplexOracle, SimplicialComplex};

/// Injective, and every maximal simplex of `x` lands inside a simplex of
/// `target` (which is equivalent to every simplex doing so).
pub fn is_injective_simplicial<V, W, T>(
    m: &VertexMap<V, W>,
    x: &SimplicialComplex<V>,
    target: &T,
) -> Result<bool, RigidityError>
where
    V: Ord + Clone + fmt::Display,
    W: Ord + Clone + fmt::Display,
    T: SimplexOracle<W>,
{
    if !m.domain().eq(x.vertices().iter()) {
        return Err(RigidityError::DomainMismatch);
    }
    let images: BTreeSet<&W> = m.iter().map(|(_, w)| w).collect();
    if images.len() != m.len() {
        return Ok(false);
    }
    if !images.iter().all(|w| target.has_vertex(w)) {
        return Ok(false);
    }
    Ok(x.maximal_simplices().iter().all(|s| {
        let image: Vec<W> = s.iter().map(|v| m.get(v).expect("domain checked").clone()).collect();
        target.is_simplex(&image)
    }))
}

struct Search<'a, V: Ord, W: Ord> {
    source: &'a SimplicialComplex<V>,
    target: &'a SimplicialComplex<W>,
    order: Vec<V>,
    /// For each position in `order`, an earlier-mapped neighbour (if any)
    /// whose image's link bounds the candidates.
    anchor: Vec<Option<V>>,
}

impl<'a, V, W> Search<'a, V, W>
where
    V: Ord + Clone + Send + Sync,
    W: Ord + Clone + Send + Sync,
{
    fn new(source: &'a SimplicialComplex<V>, target: &'a SimplicialComplex<W>, fixed: &BTreeSet<V>) -> Self {
        // Greedy connectivity order: repeatedly take the free vertex with
        // most neighbours already placed, breaking ties by degree.
        let links: BTreeMap<&V, BTreeSet<V>> = source.vertices().iter().map(|v| (v, source.link_vertices(v))).collect();
        let mut placed: BTreeSet<V> = fixed.clone();
        let mut free: Vec<&V> = source.vertices().iter().filter(|v| !fixed.contains(*v)).collect();
        let mut order = Vec::new();
        let mut anchor = Vec::new();
        while !free.is_empty() {
            let (k, _) = free
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| {
                    let score = |v: &V| (links[v].intersection(&placed).count(), links[v].len());
                    score(a).cmp(&score(b)).then_with(|| b.cmp(a))
                })
                .expect("non-empty");
            let v = free.remove(k);
            anchor.push(links[v].iter().find(|u| placed.contains(*u)).cloned());
            placed.insert(v.clone());
            order.push(v.clone());
        }
        Self {
            source,
            target,
            order,
            anchor,
        }
    }

    fn candidates(&self, depth: usize, map: &BTreeMap<V, W>, used: &BTreeSet<W>) -> Vec<W> {
        let v = &self.order[depth];
        let pool: Vec<W> = match &self.anchor[depth] {
            Some(u) => self.target.link_vertices(&map[u]).into_iter().collect(),
            None => self.target.vertices().iter().cloned().collect(),
        };
        pool.into_iter()
            .filter(|w| !used.contains(w))
            .filter(|w| {
                self.source.star(v).all(|simplex| {
                    let mut image: Vec<W> = simplex.iter().filter_map(|u| map.get(u).cloned()).collect();
                    image.push(w.clone());
                    self.target.is_simplex(&image)
                })
            })
            .collect()
    }

    fn descend(&self, depth: usize, map: &mut BTreeMap<V, W>, used: &mut BTreeSet<W>, out: &mut Vec<BTreeMap<V, W>>) {
        if depth == self.order.len() {
            out.push(map.clone());
            return;
        }
        for w in self.candidates(depth, map, used) {
            map.insert(self.order[depth].clone(), w.clone());
            used.insert(w.clone());
            self.descend(depth + 1, map, used, out);
            used.remove(&w);
            map.remove(&self.order[depth]);
        }
    }

    fn run(&self, fixed: BTreeMap<V, W>) -> Vec<BTreeMap<V, W>> {
        let used: BTreeSet<W> = fixed.values().cloned().collect();
        if self.order.is_empty() {
            return vec![fixed];
        }
        let first = self.candidates(0, &fixed, &used);
        let mut all: Vec<BTreeMap<V, W>> = first
            .into_par_iter()
            .flat_map_iter(|w| {
                let mut map = fixed.clone();
                let mut used = used.clone();
                map.insert(self.order[0].clone(), w.clone());
                used.insert(w);
                let mut out = Vec::new();
                self.descend(1, &mut map, &mut used, &mut out);
                out
            })
            .collect();
        all.sort();
        all
    }
}

/// Every injective simplicial map `x → target`, in canonical order.
pub fn enumerate_injective_simplicial_maps<V, W>(
    x: &SimplicialComplex<V>,
    target: &SimplicialComplex<W>,
    kind: DomainKind,
) -> Vec<VertexMap<V, W>>
where
    V: Ord + Clone + Send + Sync + fmt::Display,
    W: Ord + Clone + Send + Sync + fmt::Display,
{
    Search::new(x, target, &BTreeSet::new())
        .run(BTreeMap::new())
        .into_iter()
        .map(|m| VertexMap::from_assignments(kind, m))
        .collect()
}

/// Every injective simplicial map `whole → target` that agrees with
/// `lambda` on `x`. `lambda` must be defined on exactly the vertices of `x`.
pub fn extensions<V, W>(
    lambda: &VertexMap<V, W>,
    x: &SimplicialComplex<V>,
    whole: &SimplicialComplex<V>,
    target: &SimplicialComplex<W>,
) -> Result<Vec<VertexMap<V, W>>, RigidityError>
where
    V: Ord + Clone + Send + Sync + fmt::Display,
    W: Ord + Clone + Send + Sync + fmt::Display,
{
    if !is_injective_simplicial(lambda, x, target)? || !x.is_subcomplex_of(whole) {
        return Ok(Vec::new());
    }
    // Simplices of `whole` lying inside the fixed part but not in `x`
    // are never revisited by the search, so check them up front.
    let consistent = whole.maximal_simplices().iter().all(|s| {
        let image: Vec<W> = s.iter().filter_map(|v| lambda.get(v).cloned()).collect();
        target.is_simplex(&image)
    });
    if !consistent {
        return Ok(Vec::new());
    }
    let fixed: BTreeSet<V> = lambda.domain().cloned().collect();
    Ok(Search::new(whole, target, &fixed)
        .run(lambda.assignments().clone())
        .into_iter()
        .map(|m| VertexMap::from_assignments(lambda.kind(), m))
        .collect())
}

/// Enumerate every injective simplicial `λ: x → target` and count its
/// extensions to `whole`. `x` is rigid when every count is one.
pub fn rigidity_report<V, W>(
    x: &SimplicialComplex<V>,
    whole: &SimplicialComplex<V>,
    target: &SimplicialComplex<W>,
    kind: DomainKind,
    keep_extensions: bool,
) -> Result<RigidityReport<V, W>, RigidityError>
where
    V: Ord + Clone + Send + Sync + fmt::Display,
    W: Ord + Clone + Send + Sync + fmt::Display,
{
    let mut records = Vec::new();
    for lambda in enumerate_injective_simplicial_maps(x, target, kind) {
        let found = extensions(&lambda, x, whole, target)?;
        records.push(LambdaRecord {
            lambda,
            extension_count: found.len(),
            extensions: keep_extensions.then_some(found),
        });
    }
    Ok(RigidityReport { records })
}
