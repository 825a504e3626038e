use std::fmt;

use super::{edge_of, SurfaceMap};
use crate::error::Result;
use crate::graph::{two_color, OddCycleWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColoringKind {
    /// Adjacent vertices differ (bipartite skeleton).
    Vertex2,
    /// Faces sharing an edge differ (bipartite dual).
    Face2,
    /// Consecutive edges around every face differ.
    EdgeAlternating,
}

impl fmt::Display for ColoringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColoringKind::Vertex2 => "vertex2",
            ColoringKind::Face2 => "face2",
            ColoringKind::EdgeAlternating => "edge-alternating",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub kind: ColoringKind,
    /// Color of each vertex / face / edge, indexed like the map's orbits.
    pub assignment: Vec<u8>,
}

/// Odd cycle in the constraint graph of `kind`. Nodes are vertices, faces or
/// edges; links are edges (vertex2, face2) or darts (edge-alternating, where
/// dart `d` joins `edge(d)` and `edge(phi(d))`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub kind: ColoringKind,
    pub cycle: OddCycleWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoColoring {
    Colorable(Coloring),
    Impossible(OddCycle),
}

impl TwoColoring {
    pub fn is_colorable(&self) -> bool {
        matches!(self, TwoColoring::Colorable(_))
    }
}

fn constraint_edges(m: &SurfaceMap, kind: ColoringKind) -> (usize, Vec<(usize, usize)>) {
    match kind {
        ColoringKind::Vertex2 => {
            let v = m.vertices();
            let edges = (0..m.edge_count())
                .map(|k| (v.index_of(2 * k), v.index_of(2 * k + 1)))
                .collect();
            (v.count(), edges)
        }
        ColoringKind::Face2 => {
            let f = m.faces();
            let edges = (0..m.edge_count())
                .map(|k| (f.index_of(2 * k), f.index_of(2 * k + 1)))
                .collect();
            (f.count(), edges)
        }
        ColoringKind::EdgeAlternating => {
            let edges = (0..m.dart_count())
                .map(|d| (edge_of(d), edge_of(m.phi(d))))
                .collect();
            (m.edge_count(), edges)
        }
    }
}

/// A 2-coloring of the requested kind, or an odd cycle proving none exists.
///
/// Face and edge colorings need the faces of the map, so they require an
/// orientable map.
pub fn two_colorings(m: &SurfaceMap, kind: ColoringKind) -> Result<TwoColoring> {
    let m = match kind {
        ColoringKind::Vertex2 => m.clone(),
        _ => m.oriented()?,
    };
    let (n, edges) = constraint_edges(&m, kind);
    Ok(match two_color(n, &edges) {
        Ok(assignment) => TwoColoring::Colorable(Coloring { kind, assignment }),
        Err(cycle) => TwoColoring::Impossible(OddCycle { kind, cycle }),
    })
}

impl Coloring {
    /// Re-checks every constraint directly on the map.
    pub fn is_valid_for(&self, m: &SurfaceMap) -> bool {
        match self.kind {
            ColoringKind::Vertex2 => {
                let v = m.vertices();
                self.assignment.len() == v.count()
                    && (0..m.edge_count()).all(|k| {
                        self.assignment[v.index_of(2 * k)] != self.assignment[v.index_of(2 * k + 1)]
                    })
            }
            ColoringKind::Face2 => {
                let Ok(m) = m.oriented() else { return false };
                let f = m.faces();
                self.assignment.len() == f.count()
                    && (0..m.dart_count()).all(|d| {
                        self.assignment[f.index_of(d)] != self.assignment[f.index_of(d ^ 1)]
                    })
            }
            ColoringKind::EdgeAlternating => {
                let Ok(m) = m.oriented() else { return false };
                self.assignment.len() == m.edge_count()
                    && m.faces().cycles().iter().all(|face| {
                        (0..face.len()).all(|i| {
                            let (a, b) = (face[i], face[(i + 1) % face.len()]);
                            self.assignment[edge_of(a)] != self.assignment[edge_of(b)]
                        })
                    })
            }
        }
    }
}

impl OddCycle {
    pub fn len(&self) -> usize {
        self.cycle.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.nodes.is_empty()
    }

    /// Re-checks that the witness is an odd closed walk of constraints of the map.
    pub fn is_valid_for(&self, m: &SurfaceMap) -> bool {
        let Ok(m) = (match self.kind {
            ColoringKind::Vertex2 => Ok(m.clone()),
            _ => m.oriented(),
        }) else {
            return false;
        };
        let nodes = &self.cycle.nodes;
        let k = nodes.len();
        if k.is_multiple_of(2) || self.cycle.links.len() != k {
            return false;
        }
        let joins = |link: usize, a: usize, b: usize| -> bool {
            match self.kind {
                ColoringKind::Vertex2 => {
                    let v = m.vertices();
                    link < m.edge_count() && {
                        let (x, y) = (v.index_of(2 * link), v.index_of(2 * link + 1));
                        (x, y) == (a, b) || (x, y) == (b, a)
                    }
                }
                ColoringKind::Face2 => {
                    let f = m.faces();
                    link < m.edge_count() && {
                        let (x, y) = (f.index_of(2 * link), f.index_of(2 * link + 1));
                        (x, y) == (a, b) || (x, y) == (b, a)
                    }
                }
                ColoringKind::EdgeAlternating => {
                    link < m.dart_count() && {
                        let (x, y) = (edge_of(link), edge_of(m.phi(link)));
                        (x, y) == (a, b) || (x, y) == (b, a)
                    }
                }
            }
        };
        (0..k).all(|i| joins(self.cycle.links[i], nodes[i], nodes[(i + 1) % k]))
    }
}
