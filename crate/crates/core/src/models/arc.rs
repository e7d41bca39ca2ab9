use std::fmt;
use std::str::FromStr;

use super::ModelError;

/// Which of the two boundary intervals between the endpoints of a
/// punctured-polygon chord lies on the same side as the puncture.
///
/// For a chord between `i < j`, the *forward* interval is `i+1, ..., j-1`
/// and the *backward* interval is `j+1, ..., n-1, 0, ..., i-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PunctureSide {
    Forward = 0,
    Backward = 1,
}

impl PunctureSide {
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(s: u8) -> Option<Self> {
        match s {
            0 => Some(Self::Forward),
            1 => Some(Self::Backward),
            _ => None,
        }
    }
}

/// Canonical label of an essential arc class in one of the three models.
///
/// Boundary vertices are numbered `0..n` counterclockwise. Each isotopy
/// class has exactly one encoding; [`Arc::canonical`] normalises raw input
/// and the model constructors reject anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arc {
    /// Diagonal of an unpunctured polygon, `i < j`.
    Chord { i: u32, j: u32 },
    /// Boundary-to-boundary arc of a punctured polygon, `i < j`.
    PChord { i: u32, j: u32, side: PunctureSide },
    /// Arc from boundary vertex `i` to the puncture.
    Radial(u32),
    /// Arc from boundary vertex `i` back to itself enclosing only the puncture.
    Loop(u32),
    /// Slope `p/q` on the once-punctured torus; `q > 0` and coprime, or `1/0`.
    Slope { p: i64, q: i64 },
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Arc {
    /// A slope in lowest terms with the sign carried by the numerator.
    ///
    /// Returns `None` for `0/0`.
    pub fn slope(p: i64, q: i64) -> Option<Arc> {
        let g = gcd(p, q);
        if g == 0 {
            return None;
        }
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Some(Arc::Slope { p, q })
    }

    /// Re-normalise an encoding. Idempotent on canonical arcs.
    pub fn canonical(self) -> Option<Arc> {
        match self {
            Arc::Chord { i, j } if i != j => Some(Arc::Chord {
                i: i.min(j),
                j: i.max(j),
            }),
            Arc::Chord { .. } => None,
            Arc::PChord { i, j, side } if i < j => Some(Arc::PChord { i, j, side }),
            Arc::PChord { i, j, side } if i > j => {
                // Swapping the endpoints exchanges the forward and backward intervals.
                let side = match side {
                    PunctureSide::Forward => PunctureSide::Backward,
                    PunctureSide::Backward => PunctureSide::Forward,
                };
                Some(Arc::PChord { i: j, j: i, side })
            }
            Arc::PChord { .. } => None,
            Arc::Radial(_) | Arc::Loop(_) => Some(self),
            Arc::Slope { p, q } => Arc::slope(p, q),
        }
    }

    pub fn is_canonical(self) -> bool {
        self.canonical() == Some(self)
    }

    pub fn family(self) -> &'static str {
        match self {
            Arc::Chord { .. } => "chord",
            Arc::PChord { .. } => "punctured chord",
            Arc::Radial(_) => "radial",
            Arc::Loop(_) => "loop",
            Arc::Slope { .. } => "slope",
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Chord { i, j } => write!(f, "C({i},{j})"),
            Arc::PChord { i, j, side } => write!(f, "PC({i},{j},{})", side.index()),
            Arc::Radial(i) => write!(f, "R({i})"),
            Arc::Loop(i) => write!(f, "L({i})"),
            Arc::Slope { p, q } => write!(f, "{p}/{q}"),
        }
    }
}

impl FromStr for Arc {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = || ModelError::ParseArc(s.to_string());
        let s = s.trim();

        let args = |prefix: &str| -> Option<Vec<u32>> {
            let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|x| x.trim().parse().ok()).collect()
        };

        let arc = if s.starts_with("PC") {
            match args("PC").as_deref() {
                Some(&[i, j, side]) => {
                    let side = u8::try_from(side)
                        .ok()
                        .and_then(PunctureSide::from_index)
                        .ok_or_else(fail)?;
                    Arc::PChord { i, j, side }
                }
                _ => return Err(fail()),
            }
        } else if s.starts_with('C') {
            match args("C").as_deref() {
                Some(&[i, j]) => Arc::Chord { i, j },
                _ => return Err(fail()),
            }
        } else if s.starts_with('R') {
            match args("R").as_deref() {
                Some(&[i]) => Arc::Radial(i),
                _ => return Err(fail()),
            }
        } else if s.starts_with('L') {
            match args("L").as_deref() {
                Some(&[i]) => Arc::Loop(i),
                _ => return Err(fail()),
            }
        } else {
            let (p, q) = s.split_once('/').ok_or_else(fail)?;
            let p: i64 = p.trim().parse().map_err(|_| fail())?;
            let q: i64 = q.trim().parse().map_err(|_| fail())?;
            Arc::Slope { p, q }
        };
        arc.canonical().ok_or_else(fail)
    }
}
