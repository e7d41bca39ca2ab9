//! Surface signatures `S_{g,n,(p_1,...,p_b)}` and their complexity.
//!
//! A signature records the genus, the number of marked points in the
//! interior, and the number of marked points on each boundary component.
//! Boundary counts are kept as a sorted multiset, so two signatures compare
//! equal exactly when they describe the same homeomorphism type.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("boundary component {index} carries no marked point")]
    EmptyBoundary { index: usize },
    #[error("surface has no marked points")]
    NoMarkedPoints,
    #[error("cannot parse surface signature {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Homeomorphism type of a compact orientable surface with marked points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSig {
    genus: u32,
    interior_marks: u32,
    boundary_marks: Vec<u32>,
}

impl SurfaceSig {
    pub fn new(genus: u32, interior_marks: u32, boundary_marks: impl Into<Vec<u32>>) -> Result<Self, SurfaceError> {
        let mut boundary_marks = boundary_marks.into();
        if let Some(index) = boundary_marks.iter().position(|&p| p == 0) {
            return Err(SurfaceError::EmptyBoundary { index });
        }
        let total = u64::from(interior_marks) + boundary_marks.iter().map(|&p| u64::from(p)).sum::<u64>();
        if total == 0 {
            return Err(SurfaceError::NoMarkedPoints);
        }
        boundary_marks.sort_unstable();
        Ok(Self {
            genus,
            interior_marks,
            boundary_marks,
        })
    }

    /// The closed surface `S_{g,n}`.
    pub fn closed(genus: u32, interior_marks: u32) -> Result<Self, SurfaceError> {
        Self::new(genus, interior_marks, Vec::new())
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn interior_marks(&self) -> u32 {
        self.interior_marks
    }

    /// Marked points per boundary component, in ascending order.
    pub fn boundary_marks(&self) -> &[u32] {
        &self.boundary_marks
    }

    pub fn boundary_components(&self) -> usize {
        self.boundary_marks.len()
    }

    /// `d(S) = 6g + 3b + 3n + Σp_i − 6`, the number of arcs in a
    /// triangulation for every model this crate implements.
    ///
    /// Degenerate signatures (discs with few marked points, for instance)
    /// give zero or negative values.
    ///
    /// ```
    /// use fliplab::SurfaceSig;
    /// assert_eq!(SurfaceSig::closed(1, 1).unwrap().complexity(), 3);
    /// assert_eq!(SurfaceSig::new(0, 0, [5]).unwrap().complexity(), 2);
    /// ```
    pub fn complexity(&self) -> i64 {
        let g = i64::from(self.genus);
        let n = i64::from(self.interior_marks);
        let b = self.boundary_marks.len() as i64;
        let p: i64 = self.boundary_marks.iter().map(|&p| i64::from(p)).sum();
        6 * g + 3 * b + 3 * n + p - 6
    }

    /// Same homeomorphism type: equal genus, equal interior count and equal
    /// boundary multisets.
    pub fn same_type(&self, other: &SurfaceSig) -> bool {
        self == other
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}", self.genus, self.interior_marks)?;
        if !self.boundary_marks.is_empty() {
            let parts: Vec<String> = self.boundary_marks.iter().map(u32::to_string).collect();
            write!(f, ",({})", parts.join(","))?;
        }
        f.write_str("}")
    }
}

impl FromStr for SurfaceSig {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| SurfaceError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("S_{")
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| fail("expected the form S_{g,n} or S_{g,n,(p1,...,pb)}"))?;

        let (head, boundary) = match body.find('(') {
            Some(open) => {
                let tail = &body[open..];
                let inner = tail
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| fail("unbalanced boundary list"))?;
                let head = body[..open]
                    .strip_suffix(',')
                    .ok_or_else(|| fail("missing comma before boundary list"))?;
                let marks = if inner.is_empty() {
                    Vec::new()
                } else {
                    inner
                        .split(',')
                        .map(|p| p.parse::<u32>().map_err(|_| fail("bad boundary count")))
                        .collect::<Result<Vec<_>, _>>()?
                };
                (head, marks)
            }
            None => (body, Vec::new()),
        };

        let mut fields = head.split(',');
        let genus = fields
            .next()
            .and_then(|g| g.parse::<u32>().ok())
            .ok_or_else(|| fail("bad genus"))?;
        let interior = fields
            .next()
            .and_then(|n| n.parse::<u32>().ok())
            .ok_or_else(|| fail("bad interior marked-point count"))?;
        if fields.next().is_some() {
            return Err(fail("too many fields"));
        }
        SurfaceSig::new(genus, interior, boundary)
    }
}
