//! The three arc models with exact combinatorics.
//!
//! * `Polygon(n)`: a disc with `n ≥ 4` marked points on its boundary,
//!   `S_{0,0,(n)}`. Arcs are the diagonals.
//! * `PuncturedPolygon(n)`: the same disc with one interior marked point,
//!   `S_{0,1,(n)}`, `n ≥ 3`. Arcs are chords on either side of the
//!   puncture, radials to the puncture, and loops around it.
//! * `OncePuncturedTorus`: `S_{1,1}`, whose arcs are the rational slopes.
//!   Two slopes are disjoint exactly when they are Farey neighbours, so the
//!   arc complex is the Farey complex and triangulations are Farey triples.

mod arc;
mod planar;
mod triangulation;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use arc::{Arc, PunctureSide};
pub use triangulation::{Face, Side, Triangulation};

use crate::surface::SurfaceSig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("cannot parse model spec {0:?}; expected polygon:N, ppolygon:N or torus")]
    ParseModel(String),
    #[error("cannot parse arc {0:?}")]
    ParseArc(String),
    #[error("arc {arc} does not belong to model {model}")]
    ModelMismatch { arc: Arc, model: String },
    #[error("model {0} has infinitely many arcs")]
    Unbounded(String),
    #[error("not a triangulation: {0}")]
    NotTriangulation(String),
    #[error("arc {0} is not in the triangulation")]
    ArcNotInTriangulation(Arc),
    #[error("arc {0} is the inner arc of a self-folded triangle and cannot be flipped")]
    NotFlippable(Arc),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Polygon(u32),
    PuncturedPolygon(u32),
    OncePuncturedTorus,
}

/// A marked surface with an exactly computable arc complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    kind: ModelKind,
    surface: SurfaceSig,
}

impl Model {
    pub fn new(kind: ModelKind) -> Result<Self, ModelError> {
        let surface = match kind {
            ModelKind::Polygon(n) if n >= 4 => SurfaceSig::new(0, 0, [n]),
            ModelKind::PuncturedPolygon(n) if n >= 3 => SurfaceSig::new(0, 1, [n]),
            ModelKind::OncePuncturedTorus => SurfaceSig::closed(1, 1),
            ModelKind::Polygon(n) => {
                return Err(ModelError::InvalidModel(format!(
                    "polygon needs at least 4 vertices, got {n}"
                )))
            }
            ModelKind::PuncturedPolygon(n) => {
                return Err(ModelError::InvalidModel(format!(
                    "punctured polygon needs at least 3 vertices, got {n}"
                )))
            }
        }
        .map_err(|e| ModelError::InvalidModel(e.to_string()))?;
        Ok(Self { kind, surface })
    }

    pub fn polygon(n: u32) -> Result<Self, ModelError> {
        Self::new(ModelKind::Polygon(n))
    }

    pub fn punctured_polygon(n: u32) -> Result<Self, ModelError> {
        Self::new(ModelKind::PuncturedPolygon(n))
    }

    pub fn once_punctured_torus() -> Self {
        Self::new(ModelKind::OncePuncturedTorus).expect("S_{1,1} is valid")
    }

    /// The model realising a signature, if this crate implements one.
    pub fn for_surface(sig: &SurfaceSig) -> Option<Self> {
        let kind = match (sig.genus(), sig.interior_marks(), sig.boundary_marks()) {
            (0, 0, &[n]) if n >= 4 => ModelKind::Polygon(n),
            (0, 1, &[n]) if n >= 3 => ModelKind::PuncturedPolygon(n),
            (1, 1, &[]) => ModelKind::OncePuncturedTorus,
            _ => return None,
        };
        Self::new(kind).ok()
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn surface(&self) -> &SurfaceSig {
        &self.surface
    }

    /// Number of arcs in every triangulation.
    pub fn complexity(&self) -> usize {
        self.surface.complexity() as usize
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, ModelKind::OncePuncturedTorus)
    }

    /// Number of boundary segments (sides of faces that are not arcs).
    pub fn boundary_segments(&self) -> usize {
        match self.kind {
            ModelKind::Polygon(n) | ModelKind::PuncturedPolygon(n) => n as usize,
            ModelKind::OncePuncturedTorus => 0,
        }
    }

    /// Whether `arc` is a canonical essential arc of this model.
    pub fn contains(&self, arc: Arc) -> bool {
        if !arc.is_canonical() {
            return false;
        }
        match (self.kind, arc) {
            (ModelKind::Polygon(n), Arc::Chord { i, j }) => j < n && j - i >= 2 && !(i == 0 && j == n - 1),
            (ModelKind::PuncturedPolygon(n), Arc::PChord { j, .. }) => {
                // The puncture-free side must contain a boundary vertex.
                j < n && planar::free_interval(n, arc).is_some_and(|f| f.len >= 2)
            }
            (ModelKind::PuncturedPolygon(n), Arc::Radial(k) | Arc::Loop(k)) => k < n,
            (ModelKind::OncePuncturedTorus, Arc::Slope { .. }) => true,
            _ => false,
        }
    }

    pub fn check_arc(&self, arc: Arc) -> Result<(), ModelError> {
        if self.contains(arc) {
            Ok(())
        } else {
            Err(ModelError::ModelMismatch {
                arc,
                model: self.to_string(),
            })
        }
    }

    /// Every arc of a finite model, in canonical order.
    pub fn all_arcs(&self) -> Result<Vec<Arc>, ModelError> {
        let mut arcs = Vec::new();
        match self.kind {
            ModelKind::Polygon(n) => {
                for i in 0..n {
                    for j in i + 2..n {
                        arcs.push(Arc::Chord { i, j });
                    }
                }
            }
            ModelKind::PuncturedPolygon(n) => {
                for i in 0..n {
                    for j in i + 1..n {
                        for side in [PunctureSide::Forward, PunctureSide::Backward] {
                            arcs.push(Arc::PChord { i, j, side });
                        }
                    }
                    arcs.push(Arc::Radial(i));
                    arcs.push(Arc::Loop(i));
                }
            }
            ModelKind::OncePuncturedTorus => return Err(ModelError::Unbounded(self.to_string())),
        }
        arcs.retain(|&a| self.contains(a));
        arcs.sort_unstable();
        Ok(arcs)
    }

    /// Whether the two arc classes have representatives with disjoint
    /// interiors. Arcs sharing a marked endpoint count as disjoint, and so
    /// does an arc with itself.
    pub fn disjoint(&self, a: Arc, b: Arc) -> Result<bool, ModelError> {
        self.check_arc(a)?;
        self.check_arc(b)?;
        Ok(self.disjoint_unchecked(a, b))
    }

    pub(crate) fn disjoint_unchecked(&self, a: Arc, b: Arc) -> bool {
        match self.kind {
            ModelKind::Polygon(n) | ModelKind::PuncturedPolygon(n) => planar::disjoint(n, a, b),
            ModelKind::OncePuncturedTorus => match (a, b) {
                (Arc::Slope { p, q }, Arc::Slope { p: r, q: s }) => farey_det(p, q, r, s) <= 1,
                _ => false,
            },
        }
    }

    fn pairwise_disjoint(&self, arcs: &[Arc]) -> bool {
        arcs.iter()
            .enumerate()
            .all(|(k, &a)| arcs[k + 1..].iter().all(|&b| self.disjoint_unchecked(a, b)))
    }

    /// Pairwise disjoint, of size `d(S)`, and maximal. Maximality is checked
    /// directly rather than inferred from the size.
    pub fn is_triangulation(&self, arcs: &[Arc]) -> bool {
        self.triangulation_defect(arcs).is_none()
    }

    fn triangulation_defect(&self, arcs: &[Arc]) -> Option<String> {
        if let Some(a) = arcs.iter().find(|&&a| !self.contains(a)) {
            return Some(format!("{a} is not an arc of {self}"));
        }
        let set = Triangulation::from_arcs(arcs.iter().copied());
        if set.len() != arcs.len() {
            return Some("repeated arc".into());
        }
        if !self.pairwise_disjoint(set.arcs()) {
            return Some("arcs intersect".into());
        }
        if set.len() != self.complexity() {
            return Some(format!("{} arcs, expected {}", set.len(), self.complexity()));
        }
        let extra = match self.kind {
            ModelKind::OncePuncturedTorus => torus_extension(set.arcs()),
            _ => self
                .all_arcs()
                .expect("finite model")
                .into_iter()
                .find(|&b| !set.contains(&b) && set.arcs().iter().all(|&a| self.disjoint_unchecked(a, b))),
        };
        extra.map(|b| format!("not maximal: {b} is disjoint from every arc"))
    }

    /// Validate `arcs` and wrap them as a triangulation of this model.
    pub fn triangulation(&self, arcs: impl IntoIterator<Item = Arc>) -> Result<Triangulation, ModelError> {
        let arcs: Vec<Arc> = arcs.into_iter().collect();
        match self.triangulation_defect(&arcs) {
            None => Ok(Triangulation::from_arcs(arcs)),
            Some(why) => Err(ModelError::NotTriangulation(why)),
        }
    }

    /// Parse a triangulation from arc text forms separated by commas,
    /// semicolons or whitespace, optionally wrapped in brackets.
    pub fn parse_triangulation(&self, text: &str) -> Result<Triangulation, ModelError> {
        let inner = text.trim().trim_start_matches(['[', '{']).trim_end_matches([']', '}']);
        let mut arcs = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for ch in inner.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    current.push(ch);
                }
                ',' | ';' | ' ' if depth == 0 => {
                    if !current.trim().is_empty() {
                        arcs.push(current.trim().parse::<Arc>()?);
                    }
                    current.clear();
                }
                _ => current.push(ch),
            }
        }
        if !current.trim().is_empty() {
            arcs.push(current.trim().parse::<Arc>()?);
        }
        self.triangulation(arcs)
    }

    fn check_triangulation(&self, t: &Triangulation) -> Result<(), ModelError> {
        for &a in t.arcs() {
            self.check_arc(a)?;
        }
        if t.len() != self.complexity() {
            return Err(ModelError::NotTriangulation(format!(
                "{} arcs, expected {}",
                t.len(),
                self.complexity()
            )));
        }
        Ok(())
    }

    /// Triangles of `t`. Every arc fills exactly two side slots, so
    /// `3·faces = 2·d(S) + boundary segments`.
    pub fn faces(&self, t: &Triangulation) -> Result<Vec<Face>, ModelError> {
        self.check_triangulation(t)?;
        match self.kind {
            ModelKind::Polygon(n) | ModelKind::PuncturedPolygon(n) => {
                let mut faces = planar::trace_faces(n, t.arcs())
                    .iter()
                    .map(|sides| planar::triangle(sides))
                    .collect::<Option<Vec<Face>>>()
                    .ok_or_else(|| ModelError::NotTriangulation(format!("{t} has a non-triangular face")))?;
                faces.sort();
                Ok(faces)
            }
            ModelKind::OncePuncturedTorus => {
                let [a, b, c] = [t.arcs()[0], t.arcs()[1], t.arcs()[2]].map(Side::Arc);
                let face = Face::new([a, b, c]);
                Ok(vec![face.clone(), face])
            }
        }
    }

    /// An arc is flippable unless it is the inner arc of a self-folded face.
    pub fn flippable(&self, t: &Triangulation, a: Arc) -> Result<bool, ModelError> {
        if !t.contains(&a) {
            return Err(ModelError::ArcNotInTriangulation(a));
        }
        let faces = self.faces(t)?;
        Ok(!faces.iter().any(|f| f.slots(a) == 2))
    }

    /// Replace `a` by the other diagonal of the quadrilateral around it.
    /// Returns the new triangulation and the inserted arc.
    pub fn flip(&self, t: &Triangulation, a: Arc) -> Result<(Triangulation, Arc), ModelError> {
        if !self.flippable(t, a)? {
            return Err(ModelError::NotFlippable(a));
        }
        let new = match self.kind {
            ModelKind::OncePuncturedTorus => {
                let rest: Vec<Arc> = t.arcs().iter().copied().filter(|&b| b != a).collect();
                farey_flip(rest[0], rest[1], a)
            }
            _ => {
                let rest: Vec<Arc> = t.arcs().iter().copied().filter(|&b| b != a).collect();
                let others: Vec<Arc> = self.completions(&rest)?.into_iter().filter(|&b| b != a).collect();
                match others.as_slice() {
                    &[b] => b,
                    _ => {
                        return Err(ModelError::NotTriangulation(format!(
                            "{t} minus {a} has {} alternative completions",
                            others.len()
                        )))
                    }
                }
            }
        };
        Ok((t.replace(a, new), new))
    }

    /// Arcs outside `partial` that are disjoint from all of it.
    pub fn completions(&self, partial: &[Arc]) -> Result<Vec<Arc>, ModelError> {
        Ok(self
            .all_arcs()?
            .into_iter()
            .filter(|b| !partial.contains(b) && partial.iter().all(|&a| self.disjoint_unchecked(a, *b)))
            .collect())
    }

    /// All flips out of `t` as `(removed, neighbour, added)`, in arc order.
    pub fn flip_neighbors(&self, t: &Triangulation) -> Result<Vec<(Arc, Triangulation, Arc)>, ModelError> {
        let mut out = Vec::new();
        for &a in t.arcs() {
            if self.flippable(t, a)? {
                let (next, added) = self.flip(t, a)?;
                out.push((a, next, added));
            }
        }
        Ok(out)
    }

    /// A fixed starting triangulation.
    ///
    /// Polygon: the fan at vertex 0. Punctured polygon: `L(0)` and `R(0)`
    /// plus the fan of chords from vertex 0 that keep the puncture on the
    /// loop's side. Torus: `{0/1, 1/0, 1/1}`.
    pub fn base_triangulation(&self) -> Triangulation {
        let arcs: Vec<Arc> = match self.kind {
            ModelKind::Polygon(n) => (2..n - 1).map(|j| Arc::Chord { i: 0, j }).collect(),
            ModelKind::PuncturedPolygon(n) => [Arc::Loop(0), Arc::Radial(0)]
                .into_iter()
                .chain((2..n).map(|j| Arc::PChord {
                    i: 0,
                    j,
                    side: PunctureSide::Backward,
                }))
                .collect(),
            ModelKind::OncePuncturedTorus => vec![
                Arc::Slope { p: 0, q: 1 },
                Arc::Slope { p: 1, q: 0 },
                Arc::Slope { p: 1, q: 1 },
            ],
        };
        Triangulation::from_arcs(arcs)
    }

    /// Every maximal pairwise-disjoint arc set of a finite model, found by
    /// clique enumeration on the disjointness graph. The sets are returned
    /// as they are found; callers check their sizes.
    pub fn maximal_disjoint_sets(&self) -> Result<Vec<Vec<Arc>>, ModelError> {
        let arcs = self.all_arcs()?;
        let m = arcs.len();
        let adjacent: Vec<Vec<bool>> = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| x != y && self.disjoint_unchecked(arcs[x], arcs[y]))
                    .collect()
            })
            .collect();

        // Bron–Kerbosch with pivoting.
        fn expand(
            adjacent: &[Vec<bool>],
            current: &mut Vec<usize>,
            mut candidates: Vec<usize>,
            mut excluded: Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if candidates.is_empty() && excluded.is_empty() {
                out.push(current.clone());
                return;
            }
            let pivot = *candidates
                .iter()
                .chain(excluded.iter())
                .max_by_key(|&&u| candidates.iter().filter(|&&v| adjacent[u][v]).count())
                .expect("non-empty");
            let branch: Vec<usize> = candidates.iter().copied().filter(|&v| !adjacent[pivot][v]).collect();
            for v in branch {
                current.push(v);
                let next_c = candidates.iter().copied().filter(|&u| adjacent[v][u]).collect();
                let next_x = excluded.iter().copied().filter(|&u| adjacent[v][u]).collect();
                expand(adjacent, current, next_c, next_x, out);
                current.pop();
                candidates.retain(|&u| u != v);
                excluded.push(v);
            }
        }

        let mut found = Vec::new();
        expand(&adjacent, &mut Vec::new(), (0..m).collect(), Vec::new(), &mut found);
        Ok(found
            .into_iter()
            .map(|set| {
                let mut set: Vec<Arc> = set.into_iter().map(|x| arcs[x]).collect();
                set.sort_unstable();
                set
            })
            .collect())
    }

    /// Every triangulation of a finite model, sorted.
    pub fn all_triangulations(&self) -> Result<Vec<Triangulation>, ModelError> {
        let d = self.complexity();
        let mut all = Vec::new();
        for set in self.maximal_disjoint_sets()? {
            if set.len() != d {
                return Err(ModelError::NotTriangulation(format!(
                    "maximal disjoint set of size {} in {self}",
                    set.len()
                )));
            }
            all.push(Triangulation::from_arcs(set));
        }
        all.sort();
        Ok(all)
    }
}

fn farey_det(p: i64, q: i64, r: i64, s: i64) -> u128 {
    (i128::from(p) * i128::from(s) - i128::from(q) * i128::from(r)).unsigned_abs()
}

fn slope_parts(a: Arc) -> (i64, i64) {
    match a {
        Arc::Slope { p, q } => (p, q),
        _ => unreachable!("torus arcs are slopes"),
    }
}

/// The two determinant-one completions of the Farey edge `{x, y}` are
/// `x + y` and `x − y`; return the one that is not `old`.
fn farey_flip(x: Arc, y: Arc, old: Arc) -> Arc {
    let ((p, q), (r, s)) = (slope_parts(x), slope_parts(y));
    let sum = Arc::slope(p + r, q + s).expect("neighbours are independent");
    let diff = Arc::slope(p - r, q - s).expect("neighbours are independent");
    if sum == old {
        diff
    } else {
        sum
    }
}

/// For three pairwise-disjoint slopes, a fourth slope disjoint from all of
/// them, if one exists. Slopes disjoint from a Farey edge `{x, y}` are
/// `x`, `y`, `x + y` and `x − y` only.
fn torus_extension(arcs: &[Arc]) -> Option<Arc> {
    let [x, y, z] = [arcs[0], arcs[1], arcs[2]];
    let ((p, q), (r, s)) = (slope_parts(x), slope_parts(y));
    let (u, v) = slope_parts(z);
    [Arc::slope(p + r, q + s), Arc::slope(p - r, q - s)]
        .into_iter()
        .flatten()
        .find(|&c| {
            c != z && {
                let (cp, cq) = slope_parts(c);
                farey_det(cp, cq, u, v) <= 1
            }
        })
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Polygon(n) => write!(f, "polygon:{n}"),
            ModelKind::PuncturedPolygon(n) => write!(f, "ppolygon:{n}"),
            ModelKind::OncePuncturedTorus => f.write_str("torus"),
        }
    }
}

impl FromStr for Model {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "torus" {
            return Ok(Self::once_punctured_torus());
        }
        let (name, n) = s.split_once(':').ok_or_else(|| ModelError::ParseModel(s.to_string()))?;
        let n: u32 = n.parse().map_err(|_| ModelError::ParseModel(s.to_string()))?;
        match name {
            "polygon" => Self::polygon(n),
            "ppolygon" => Self::punctured_polygon(n),
            _ => Err(ModelError::ParseModel(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests;
