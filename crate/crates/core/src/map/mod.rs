//! Maps on closed surfaces encoded as (signed) rotation systems.
//!
//! Darts are `0..2E`; darts `2k` and `2k + 1` are the two halves of edge `k`,
//! so `twin(d) = d ^ 1`. `sigma(d)` is the next dart around the origin vertex
//! of `d`. Faces are the orbits of `phi = sigma ∘ twin`.

mod canonical;
mod coloring;
mod format;

pub use canonical::{canonical_form, canonical_form_oriented, is_canonical_root, CanonicalForm};
pub use coloring::{two_colorings, Coloring, ColoringKind, OddCycle, TwoColoring};
pub use format::{parse_map, serialize_map};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Dart = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Partition of the darts into cycles of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    of: Vec<usize>,
    cycles: Vec<Vec<Dart>>,
}

impl Orbits {
    /// Orbits of `perm`, numbered by their least dart, each listed in
    /// permutation order starting from that dart.
    pub fn of_permutation(perm: impl Fn(Dart) -> Dart, darts: usize) -> Orbits {
        let mut of = vec![usize::MAX; darts];
        let mut cycles = Vec::new();
        for start in 0..darts {
            if of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                of[d] = id;
                cycle.push(d);
                d = perm(d);
                if d == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        Orbits { of, cycles }
    }

    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    /// Orbit containing dart `d`.
    pub fn index_of(&self, d: Dart) -> usize {
        self.of[d]
    }

    pub fn cycle(&self, i: usize) -> &[Dart] {
        &self.cycles[i]
    }

    pub fn cycles(&self) -> &[Vec<Dart>] {
        &self.cycles
    }

    /// Position of `d` inside its cycle.
    pub fn position(&self, d: Dart) -> usize {
        self.cycles[self.of[d]]
            .iter()
            .position(|&x| x == d)
            .expect("dart belongs to its orbit")
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycles.iter().map(Vec::len)
    }
}

/// A map on a closed surface.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfaceMap {
    name: String,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    signs: Option<Vec<Sign>>,
}

impl fmt::Debug for SurfaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceMap")
            .field("name", &self.name)
            .field("sigma", &self.sigma)
            .field("signs", &self.signs)
            .finish()
    }
}

impl SurfaceMap {
    /// Builds and validates a map. `signs`, when given, must have one entry per edge.
    pub fn new(
        name: impl Into<String>,
        sigma: Vec<Dart>,
        signs: Option<Vec<Sign>>,
    ) -> Result<Self> {
        let n = sigma.len();
        if !n.is_multiple_of(2) {
            return Err(Error::NotPermutation(format!("odd number of darts ({n})")));
        }
        let mut sigma_inv = vec![usize::MAX; n];
        for (d, &s) in sigma.iter().enumerate() {
            if s >= n {
                return Err(Error::NotPermutation(format!(
                    "sigma({d}) = {s} out of range"
                )));
            }
            if sigma_inv[s] != usize::MAX {
                return Err(Error::NotPermutation(format!("value {s} appears twice")));
            }
            sigma_inv[s] = d;
        }
        if let Some(signs) = &signs {
            if signs.len() != n / 2 {
                return Err(Error::SignCount {
                    expected: n / 2,
                    got: signs.len(),
                });
            }
        }
        let signs = signs.filter(|s| s.contains(&Sign::Minus));
        let map = SurfaceMap {
            name: name.into(),
            sigma,
            sigma_inv,
            signs,
        };
        if !map.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(map)
    }

    /// Builds an unsigned map from its face permutation: `sigma(d) = phi(twin(d))`.
    pub fn from_phi(name: impl Into<String>, phi: &[Dart]) -> Result<Self> {
        let sigma = (0..phi.len()).map(|d| phi[twin(d)]).collect();
        SurfaceMap::new(name, sigma, None)
    }

    pub fn empty(name: impl Into<String>) -> Self {
        SurfaceMap {
            name: name.into(),
            sigma: Vec::new(),
            sigma_inv: Vec::new(),
            signs: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    #[inline]
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }

    /// Face successor `sigma(twin(d))`.
    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[twin(d)]
    }

    #[inline]
    pub fn phi_inv(&self, d: Dart) -> Dart {
        twin(self.sigma_inv[d])
    }

    pub fn sigma_slice(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn sign(&self, edge: usize) -> Sign {
        match &self.signs {
            Some(s) => s[edge],
            None => Sign::Plus,
        }
    }

    /// Per-edge signs, present only if some edge is negative.
    pub fn signs(&self) -> Option<&[Sign]> {
        self.signs.as_deref()
    }

    pub fn is_signed(&self) -> bool {
        self.signs.is_some()
    }

    pub fn vertices(&self) -> Orbits {
        Orbits::of_permutation(|d| self.sigma[d], self.dart_count())
    }

    /// Face orbits of `phi`. Only meaningful for unsigned maps; signed maps
    /// must be [`oriented`](Self::oriented) first.
    pub fn faces(&self) -> Orbits {
        debug_assert!(!self.is_signed());
        Orbits::of_permutation(|d| self.phi(d), self.dart_count())
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        self.vertices().sizes().collect()
    }

    /// Face lengths; for signed maps they come from the signed face walk, in
    /// sorted order.
    pub fn face_lengths(&self) -> Vec<usize> {
        if self.is_signed() {
            return self.signed_face_lengths();
        }
        self.faces().sizes().collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.dart_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [self.sigma[d], self.sigma_inv[d], twin(d)] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == n
    }

    /// Local orientation of every vertex making all edges positive, if one exists.
    fn orientation_states(&self) -> Option<Vec<Sign>> {
        let verts = self.vertices();
        let mut state: Vec<Option<Sign>> = vec![None; verts.count()];
        for root in 0..verts.count() {
            if state[root].is_some() {
                continue;
            }
            state[root] = Some(Sign::Plus);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let sv = state[v].expect("visited");
                for &d in verts.cycle(v) {
                    let w = verts.index_of(twin(d));
                    let want = sv.times(self.sign(edge_of(d)));
                    match state[w] {
                        None => {
                            state[w] = Some(want);
                            stack.push(w);
                        }
                        Some(s) if s != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(
            state
                .into_iter()
                .map(|s| s.expect("all vertices visited"))
                .collect(),
        )
    }

    pub fn is_orientable(&self) -> bool {
        !self.is_signed() || self.orientation_states().is_some()
    }

    /// The equivalent unsigned map, obtained by reversing the rotation at
    /// vertices whose local orientation disagrees with the root's.
    pub fn oriented(&self) -> Result<SurfaceMap> {
        if !self.is_signed() {
            return Ok(self.clone());
        }
        let states = self.orientation_states().ok_or(Error::NonOrientable)?;
        let verts = self.vertices();
        let sigma = (0..self.dart_count())
            .map(|d| match states[verts.index_of(d)] {
                Sign::Plus => self.sigma[d],
                Sign::Minus => self.sigma_inv[d],
            })
            .collect();
        SurfaceMap::new(self.name.clone(), sigma, None)
    }

    /// Mirror image: every rotation reversed.
    pub fn mirror(&self) -> SurfaceMap {
        SurfaceMap {
            name: self.name.clone(),
            sigma: self.sigma_inv.clone(),
            sigma_inv: self.sigma.clone(),
            signs: self.signs.clone(),
        }
    }

    /// Renames darts by a permutation `perm` that respects the edge pairing
    /// (`perm(d ^ 1) == perm(d) ^ 1`).
    pub fn relabel(&self, perm: &[Dart]) -> Result<SurfaceMap> {
        let n = self.dart_count();
        let mut sigma = vec![0; n];
        for d in 0..n {
            if perm[twin(d)] != twin(perm[d]) {
                return Err(Error::NotPermutation(
                    "relabeling breaks edge pairing".into(),
                ));
            }
            sigma[perm[d]] = perm[self.sigma[d]];
        }
        let signs = self.signs.as_ref().map(|s| {
            let mut out = vec![Sign::Plus; s.len()];
            for (e, &sg) in s.iter().enumerate() {
                out[edge_of(perm[2 * e])] = sg;
            }
            out
        });
        SurfaceMap::new(self.name.clone(), sigma, signs)
    }

    /// Number of faces, traced with the signed face-walk rule
    /// `(d, s) ↦ (sigma^{s'}(twin d), s')`, `s' = s·sign(d)`.
    pub fn face_count(&self) -> usize {
        if !self.is_signed() {
            return self.faces().count();
        }
        self.signed_face_lengths().len()
    }

    // Every face is traced once in each direction, with the same length both
    // times, so the sorted orbit lengths list each face length twice.
    fn signed_face_lengths(&self) -> Vec<usize> {
        let n = self.dart_count();
        let mut seen = vec![[false; 2]; n];
        let mut lengths = Vec::new();
        for d0 in 0..n {
            for s0 in 0..2 {
                if seen[d0][s0] {
                    continue;
                }
                let (mut d, mut s, mut len) = (d0, s0, 0);
                while !seen[d][s] {
                    seen[d][s] = true;
                    len += 1;
                    let e = twin(d);
                    if self.sign(edge_of(d)) == Sign::Minus {
                        s ^= 1;
                    }
                    d = if s == 0 {
                        self.sigma[e]
                    } else {
                        self.sigma_inv[e]
                    };
                }
                lengths.push(len);
            }
        }
        lengths.sort_unstable();
        lengths.into_iter().step_by(2).collect()
    }

    /// Underlying multigraph; vertex `i` is the `i`-th vertex orbit.
    pub fn skeleton(&self) -> Graph {
        let verts = self.vertices();
        let edges = (0..self.edge_count())
            .map(|k| (verts.index_of(2 * k), verts.index_of(2 * k + 1)))
            .collect();
        Graph::new(self.name.clone(), verts.count(), edges)
    }
}

/// Euler characteristic and orientability of a closed surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub orientable: bool,
    pub genus: Genus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Genus {
    /// Number of handles.
    Orientable(u64),
    /// Number of cross-caps.
    NonOrientable(u64),
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Orientable(g) => write!(f, "{g}"),
            Genus::NonOrientable(k) => write!(f, "{k} crosscaps"),
        }
    }
}

impl SurfaceStats {
    pub fn is_torus(&self) -> bool {
        self.orientable && self.chi == 0
    }
}

pub fn classify_surface(m: &SurfaceMap) -> SurfaceStats {
    let vertices = m.vertices().count();
    let edges = m.edge_count();
    let faces = m.face_count();
    let chi = vertices as i64 - edges as i64 + faces as i64;
    let orientable = m.is_orientable();
    let genus = if orientable {
        Genus::Orientable(((2 - chi) / 2).max(0) as u64)
    } else {
        Genus::NonOrientable((2 - chi).max(0) as u64)
    };
    SurfaceStats {
        vertices,
        edges,
        faces,
        chi,
        orientable,
        genus,
    }
}

/// Combinatorial dual: vertices and faces trade places, darts keep their labels.
pub fn dual_map(m: &SurfaceMap) -> Result<SurfaceMap> {
    let m = m.oriented()?;
    let sigma = (0..m.dart_count()).map(|d| m.phi(d)).collect();
    SurfaceMap::new(format!("{}*", m.name()), sigma, None)
}

/// Skeleton and its girth.
pub fn skeleton_and_girth(m: &SurfaceMap) -> (Graph, crate::graph::Girth) {
    let g = m.skeleton();
    let girth = g.girth();
    (g, girth)
}
