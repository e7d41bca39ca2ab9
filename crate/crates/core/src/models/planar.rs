//! Combinatorics of the two disc models (polygon and once-punctured polygon).
//!
//! Both models are drawn in a fixed picture: boundary vertices `0..n` placed
//! counterclockwise on the unit circle, the puncture (if any) at the origin.
//! A boundary-to-boundary arc cuts the disc in two; the half without the
//! puncture meets the circle in a closed *free interval* `[start, start+len]`.
//! Disjointness and the cyclic order of arc ends at every vertex are read off
//! from these intervals, and faces are traced from that rotation system.

use super::{Arc, Face, PunctureSide, Side};

/// Closed run of boundary vertices `start, start+1, ..., start+len (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct FreeInterval {
    pub start: u32,
    pub len: u32,
}

impl FreeInterval {
    fn offset(n: u32, from: u32, to: u32) -> u32 {
        (to + n - from) % n
    }

    pub fn end(self, n: u32) -> u32 {
        (self.start + self.len) % n
    }

    pub fn strictly_contains(self, n: u32, k: u32) -> bool {
        let off = Self::offset(n, self.start, k);
        off > 0 && off < self.len
    }

    fn within(self, n: u32, outer: FreeInterval) -> bool {
        Self::offset(n, outer.start, self.start) + self.len <= outer.len
    }

    fn interiors_meet(self, n: u32, other: FreeInterval) -> bool {
        let off = Self::offset(n, self.start, other.start);
        !(off >= self.len && off + other.len <= n)
    }

    /// Two arcs hugging these intervals can be drawn without crossing.
    pub fn compatible(self, n: u32, other: FreeInterval) -> bool {
        self.within(n, other) || other.within(n, self) || !self.interiors_meet(n, other)
    }
}

/// Free interval of a boundary-to-boundary arc. Polygon chords use the
/// forward interval; either side would do without a puncture.
pub(crate) fn free_interval(n: u32, arc: Arc) -> Option<FreeInterval> {
    match arc {
        Arc::Chord { i, j }
        | Arc::PChord {
            i,
            j,
            side: PunctureSide::Backward,
        } => Some(FreeInterval { start: i, len: j - i }),
        Arc::PChord {
            i,
            j,
            side: PunctureSide::Forward,
        } => Some(FreeInterval {
            start: j,
            len: n - (j - i),
        }),
        _ => None,
    }
}

/// Disjointness in the disc models. Both arcs must already be valid for
/// the model; shared endpoints do not count as intersections.
pub(crate) fn disjoint(n: u32, a: Arc, b: Arc) -> bool {
    if a == b {
        return true;
    }
    match (free_interval(n, a), free_interval(n, b)) {
        (Some(x), Some(y)) => x.compatible(n, y),
        (Some(x), None) => !x.strictly_contains(n, endpoint(b)),
        (None, Some(y)) => !y.strictly_contains(n, endpoint(a)),
        (None, None) => match (a, b) {
            (Arc::Radial(_), Arc::Radial(_)) => true,
            // A loop encloses the puncture and nothing else, so it only
            // tolerates the radial (or loop) based at its own vertex.
            (Arc::Loop(k), Arc::Radial(m) | Arc::Loop(m)) | (Arc::Radial(m), Arc::Loop(k)) => k == m,
            _ => false,
        },
    }
}

fn endpoint(arc: Arc) -> u32 {
    match arc {
        Arc::Radial(k) | Arc::Loop(k) => k,
        _ => unreachable!("only radials and loops have a single boundary endpoint"),
    }
}

/// Position of an arc end in the counterclockwise order at its vertex.
/// At a boundary vertex the order runs from the segment towards `k+1`,
/// through the interior, to the segment towards `k-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Key(u8, u32);

const SEGMENT_FORWARD: u8 = 0;
const FREE_FORWARD: u8 = 1;
const LOOP_FIRST: u8 = 2;
const RADIAL: u8 = 3;
const LOOP_SECOND: u8 = 4;
const FREE_BACKWARD: u8 = 5;
const SEGMENT_BACKWARD: u8 = 6;

#[derive(Debug, Clone, Copy)]
struct End {
    vertex: u32,
    key: Key,
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    side: Side,
    ends: [End; 2],
}

fn edges(n: u32, arcs: &[Arc]) -> Vec<Edge> {
    let puncture = n;
    let mut edges: Vec<Edge> = (0..n)
        .map(|k| Edge {
            side: Side::Boundary(k),
            ends: [
                End {
                    vertex: k,
                    key: Key(SEGMENT_FORWARD, 0),
                },
                End {
                    vertex: (k + 1) % n,
                    key: Key(SEGMENT_BACKWARD, 0),
                },
            ],
        })
        .collect();
    for &arc in arcs {
        let ends = match arc {
            Arc::Radial(k) => [
                End {
                    vertex: k,
                    key: Key(RADIAL, 0),
                },
                End {
                    vertex: puncture,
                    key: Key(0, k),
                },
            ],
            Arc::Loop(k) => [
                End {
                    vertex: k,
                    key: Key(LOOP_FIRST, 0),
                },
                End {
                    vertex: k,
                    key: Key(LOOP_SECOND, 0),
                },
            ],
            _ => {
                let free = free_interval(n, arc).expect("boundary-to-boundary arc");
                [
                    End {
                        vertex: free.start,
                        key: Key(FREE_FORWARD, free.len),
                    },
                    End {
                        vertex: free.end(n),
                        key: Key(FREE_BACKWARD, n - free.len),
                    },
                ]
            }
        };
        edges.push(Edge {
            side: Side::Arc(arc),
            ends,
        });
    }
    edges
}

/// Faces of the planar map formed by the boundary and `arcs`, outer face
/// excluded. Each face is returned as its cyclic list of sides.
pub(crate) fn trace_faces(n: u32, arcs: &[Arc]) -> Vec<Vec<Side>> {
    let edges = edges(n, arcs);

    // rotation[v] = (key, edge, end) sorted counterclockwise.
    let mut rotation: Vec<Vec<(Key, usize, usize)>> = vec![Vec::new(); n as usize + 1];
    for (e, edge) in edges.iter().enumerate() {
        for (which, end) in edge.ends.iter().enumerate() {
            rotation[end.vertex as usize].push((end.key, e, which));
        }
    }
    for fan in &mut rotation {
        fan.sort_unstable();
    }

    // A dart (e, which) leaves from edge e's end `which`.
    let dart_index = |e: usize, which: usize| 2 * e + which;
    let mut visited = vec![false; 2 * edges.len()];
    let mut faces = Vec::new();

    for start_edge in 0..edges.len() {
        for start_which in 0..2 {
            if visited[dart_index(start_edge, start_which)] {
                continue;
            }
            let mut sides = Vec::new();
            let mut outer = false;
            let (mut e, mut which) = (start_edge, start_which);
            while !visited[dart_index(e, which)] {
                visited[dart_index(e, which)] = true;
                sides.push(edges[e].side);
                if matches!(edges[e].side, Side::Boundary(_)) && which == 1 {
                    outer = true;
                }
                // Arrive at the far end, then turn to the clockwise neighbour.
                let arrival = edges[e].ends[1 - which];
                let fan = &rotation[arrival.vertex as usize];
                let pos = fan
                    .iter()
                    .position(|&(_, fe, fw)| fe == e && fw == 1 - which)
                    .expect("every end is in its vertex fan");
                let (_, ne, nw) = fan[(pos + fan.len() - 1) % fan.len()];
                (e, which) = (ne, nw);
            }
            if !outer {
                faces.push(sides);
            }
        }
    }
    faces
}

pub(crate) fn triangle(sides: &[Side]) -> Option<Face> {
    match *sides {
        [a, b, c] => Some(Face::new([a, b, c])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_relations() {
        let n = 6;
        let a = FreeInterval { start: 0, len: 2 };
        let b = FreeInterval { start: 0, len: 4 };
        let c = FreeInterval { start: 1, len: 2 };
        let d = FreeInterval { start: 2, len: 4 };
        assert!(a.compatible(n, b));
        assert!(!a.compatible(n, c));
        assert!(a.compatible(n, d));
        // [2,0] and [0,2] share both endpoints only.
        assert!(FreeInterval { start: 2, len: 4 }.compatible(n, FreeInterval { start: 0, len: 2 }));
        // Wrap-around overlap at both ends crosses.
        assert!(!FreeInterval { start: 0, len: 3 }.compatible(4, FreeInterval { start: 2, len: 3 }));
    }

    #[test]
    fn pentagon_fan_faces() {
        let arcs = [Arc::Chord { i: 0, j: 2 }, Arc::Chord { i: 0, j: 3 }];
        let faces = trace_faces(5, &arcs);
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.len() == 3));
    }
}
