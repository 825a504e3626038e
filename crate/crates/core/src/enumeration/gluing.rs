//! Isomorph-free generation of maps by gluing polygon sides.
//!
//! `F` copies of the `n`-gon are glued side to side, starting from face 0.
//! At every node the engine picks one unpaired side of an attached face (a
//! deterministic function of the partial gluing) and tries each partner: an
//! unpaired side of an attached face, or side 0 of the next fresh face. A
//! finished gluing is therefore reached exactly once per rooted flag
//! `(face 0, side 0, orientation)`, and it is kept only when that flag is a
//! canonical root of the resulting map. So every isomorphism class is
//! produced exactly once.
//!
//! Vertices are tracked as chains of face corners. A side has two ends,
//! `2s` (its origin) and `2s + 1` (its head); an unpaired end is the end of a
//! chain, and pairing two sides joins chain ends. A chain that closes up is
//! a finished vertex whose degree is its number of corners.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use crate::map::{is_canonical_root, Sign, SurfaceMap};

const NONE: u32 = u32::MAX;

/// One step of the search: pair side `s` with `t`, possibly reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Choice {
    s: u32,
    t: u32,
    twisted: bool,
}

#[derive(Debug, Clone, Copy)]
enum Undo {
    End {
        e: u32,
        other: u32,
        len: u16,
        root: bool,
    },
    Degree(u16),
    Closed,
}

/// Limits shared by all workers of one run.
pub(crate) struct Limits {
    pub start: Instant,
    pub seconds: Option<u64>,
    pub nodes: Option<u64>,
    pub node_count: AtomicU64,
    pub aborted: AtomicBool,
}

impl Limits {
    pub(crate) fn tick(&self) -> bool {
        let k = self.node_count.fetch_add(1, Ordering::Relaxed) + 1;
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.is_some_and(|cap| k > cap) {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        if k.is_multiple_of(4096) {
            if let Some(s) = self.seconds {
                if self.start.elapsed().as_secs() >= s {
                    self.aborted.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone)]
pub(crate) struct Gluing {
    n: usize,
    faces: usize,
    vertices: usize,
    twisted_allowed: bool,
    partner: Vec<u32>,
    twist: Vec<bool>,
    other_end: Vec<u32>,
    len: Vec<u16>,
    root: Vec<bool>,
    attached: usize,
    /// Remaining vertex degrees (`None`: unconstrained).
    degrees_left: Option<Vec<u16>>,
    min_degree: Option<usize>,
    closed: usize,
    unpaired: usize,
    trail: Vec<Undo>,
    marks: Vec<(usize, bool)>,
}

impl Gluing {
    pub(crate) fn new(
        n: usize,
        faces: usize,
        vertices: usize,
        degrees: Option<&[usize]>,
        twisted_allowed: bool,
    ) -> Self {
        let sides = n * faces;
        let mut other_end = vec![NONE; 2 * sides];
        for f in 0..faces {
            for i in 0..n {
                // corner i of face f: origin of side i and head of side i-1
                let a = 2 * (f * n + i);
                let b = 2 * (f * n + (i + n - 1) % n) + 1;
                other_end[a] = b as u32;
                other_end[b] = a as u32;
            }
        }
        let mut root = vec![false; 2 * sides];
        root[0] = true;
        root[2 * (n - 1) + 1] = true;
        let degrees_left = degrees.map(|ds| {
            let top = ds.iter().copied().max().unwrap_or(0);
            let mut c = vec![0u16; top + 1];
            for &d in ds {
                c[d] += 1;
            }
            c
        });
        Gluing {
            n,
            faces,
            vertices,
            twisted_allowed,
            partner: vec![NONE; sides],
            twist: vec![false; sides],
            other_end,
            len: vec![1; 2 * sides],
            root,
            attached: 1,
            min_degree: degrees.and_then(|ds| ds.iter().copied().min()),
            degrees_left,
            closed: 0,
            unpaired: n,
            trail: Vec::new(),
            marks: Vec::new(),
        }
    }

    fn max_degree_left(&self) -> usize {
        match &self.degrees_left {
            Some(c) => c.iter().rposition(|&x| x > 0).unwrap_or(0),
            None => 2 * self.n * self.faces,
        }
    }

    fn set_end(&mut self, e: u32, other: u32, len: u16, root: bool) {
        let i = e as usize;
        self.trail.push(Undo::End {
            e,
            other: self.other_end[i],
            len: self.len[i],
            root: self.root[i],
        });
        self.other_end[i] = other;
        self.len[i] = len;
        self.root[i] = root;
    }

    /// Joins two free chain ends. Returns false if the result is infeasible.
    fn join(&mut self, x: u32, y: u32) -> bool {
        let (xi, yi) = (x as usize, y as usize);
        if self.other_end[xi] == y {
            let deg = self.len[xi] as usize;
            if self.root[xi] && self.min_degree.is_some_and(|m| deg != m) {
                return false;
            }
            self.trail.push(Undo::Closed);
            self.closed += 1;
            if self.closed > self.vertices {
                return false;
            }
            if let Some(c) = &mut self.degrees_left {
                if deg >= c.len() || c[deg] == 0 {
                    return false;
                }
                c[deg] -= 1;
                self.trail.push(Undo::Degree(deg as u16));
            }
            return true;
        }
        let a = self.other_end[xi];
        let b = self.other_end[yi];
        let len = self.len[xi] + self.len[yi];
        let root = self.root[xi] || self.root[yi];
        self.set_end(a, b, len, root);
        self.set_end(b, a, len, root);
        if len as usize > self.max_degree_left() {
            return false;
        }
        if root && self.min_degree.is_some_and(|m| len as usize > m) {
            return false;
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Undo::End {
                    e,
                    other,
                    len,
                    root,
                } => {
                    let i = e as usize;
                    self.other_end[i] = other;
                    self.len[i] = len;
                    self.root[i] = root;
                }
                Undo::Degree(d) => {
                    if let Some(c) = &mut self.degrees_left {
                        c[d as usize] += 1;
                    }
                }
                Undo::Closed => self.closed -= 1,
            }
        }
    }

    /// Applies a choice; on infeasibility the state is still pushed and must
    /// be popped with [`Gluing::pop`].
    pub(crate) fn push(&mut self, c: Choice) -> bool {
        let (s, t) = (c.s as usize, c.t as usize);
        let fresh = t / self.n == self.attached;
        self.marks.push((self.trail.len(), fresh));
        if fresh {
            self.attached += 1;
            self.unpaired += self.n;
        }
        self.partner[s] = c.t;
        self.partner[t] = c.s;
        self.twist[s] = c.twisted;
        self.twist[t] = c.twisted;
        self.unpaired -= 2;
        let (s, t) = (c.s, c.t);
        if c.twisted {
            self.join(2 * s, 2 * t) && self.join(2 * s + 1, 2 * t + 1)
        } else {
            self.join(2 * s, 2 * t + 1) && self.join(2 * s + 1, 2 * t)
        }
    }

    pub(crate) fn pop(&mut self, c: Choice) {
        let (mark, fresh) = self.marks.pop().expect("push before pop");
        self.undo_to(mark);
        let (s, t) = (c.s as usize, c.t as usize);
        self.partner[s] = NONE;
        self.partner[t] = NONE;
        self.twist[s] = false;
        self.twist[t] = false;
        self.unpaired += 2;
        if fresh {
            self.attached -= 1;
            self.unpaired -= self.n;
        }
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.attached == self.faces && self.unpaired == 0
    }

    /// Side to pair next: on the longest vertex chain, lowest id on ties.
    fn pick_side(&self) -> Option<usize> {
        let mut best: Option<(u16, usize)> = None;
        for s in 0..self.attached * self.n {
            if self.partner[s] != NONE {
                continue;
            }
            let l = self.len[2 * s].max(self.len[2 * s + 1]);
            if best.is_none_or(|(bl, _)| l > bl) {
                best = Some((l, s));
            }
        }
        best.map(|(_, s)| s)
    }

    pub(crate) fn choices(&self) -> Vec<Choice> {
        let Some(s) = self.pick_side() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for t in 0..self.attached * self.n {
            if t == s || self.partner[t] != NONE {
                continue;
            }
            out.push(Choice {
                s: s as u32,
                t: t as u32,
                twisted: false,
            });
            if self.twisted_allowed {
                out.push(Choice {
                    s: s as u32,
                    t: t as u32,
                    twisted: true,
                });
            }
        }
        if self.attached < self.faces {
            out.push(Choice {
                s: s as u32,
                t: (self.attached * self.n) as u32,
                twisted: false,
            });
        }
        out
    }

    /// The finished gluing as a (signed) map rooted at dart 0, if it is the
    /// canonical representative of its class.
    pub(crate) fn leaf(&self) -> Option<SurfaceMap> {
        if self.closed != self.vertices {
            return None;
        }
        if let Some(c) = &self.degrees_left {
            if c.iter().any(|&x| x != 0) {
                return None;
            }
        }
        let m = gluing_to_map(self.n, self.faces, &self.partner, &self.twist);
        is_canonical_root(&m, 0).then_some(m)
    }
}

/// Converts a complete side pairing into a rotation system.
///
/// Each vertex is found by walking its corners; the walk records at every
/// corner whether it runs with or against the face orientation, and an edge
/// is negative when its two corners along a face disagree.
pub(crate) fn gluing_to_map(n: usize, faces: usize, partner: &[u32], twist: &[bool]) -> SurfaceMap {
    let sides = n * faces;
    let next = |s: usize| (s / n) * n + (s % n + 1) % n;
    let prev = |s: usize| (s / n) * n + (s % n + n - 1) % n;
    // edges ordered by their smaller side
    let mut edge_of_side = vec![usize::MAX; sides];
    let mut edges = 0;
    for s in 0..sides {
        let t = partner[s] as usize;
        if s < t {
            edge_of_side[s] = edges;
            edge_of_side[t] = edges;
            edges += 1;
        }
    }
    // half-edge (s, e): e = 0 at the origin of side s, e = 1 at its head
    let other = |s: usize, e: usize| -> (usize, usize) {
        let t = partner[s] as usize;
        if twist[s] {
            (t, e)
        } else {
            (t, 1 - e)
        }
    };
    let dart = |s: usize, e: usize| -> usize {
        let t = partner[s] as usize;
        if s < t {
            2 * edge_of_side[s] + e
        } else {
            2 * edge_of_side[s] + other(s, e).1
        }
    };
    let mut sigma = vec![usize::MAX; 2 * edges];
    let mut state: Vec<Option<bool>> = vec![None; sides];
    for c0 in 0..sides {
        if state[c0].is_some() {
            continue;
        }
        let (mut c, mut b) = (c0, false);
        let mut ring = Vec::new();
        loop {
            state[c] = Some(b);
            let (s, e) = if b { (prev(c), 1) } else { (c, 0) };
            ring.push(dart(s, e));
            let (t, f) = other(s, e);
            b ^= twist[s];
            c = if f == 0 { t } else { next(t) };
            if c == c0 {
                debug_assert!(!b, "vertex neighbourhood is not a disk");
                break;
            }
        }
        for i in 0..ring.len() {
            sigma[ring[i]] = ring[(i + 1) % ring.len()];
        }
    }
    let signs: Vec<Sign> = (0..sides)
        .filter(|&s| s < partner[s] as usize)
        .map(|s| {
            if state[s] == state[next(s)] {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    SurfaceMap::new("", sigma, Some(signs)).expect("a complete gluing is a connected map")
}

/// Depth-first search below the current state, reporting canonical leaves.
pub(crate) fn search(g: &mut Gluing, limits: &Limits, out: &mut Vec<SurfaceMap>) {
    if !limits.tick() {
        return;
    }
    if g.is_complete() {
        if let Some(m) = g.leaf() {
            out.push(m);
        }
        return;
    }
    for c in g.choices() {
        if g.push(c) {
            search(g, limits, out);
        }
        g.pop(c);
        if limits.aborted.load(Ordering::Relaxed) {
            return;
        }
    }
}

/// Splits the tree into subtrees for parallel work: the choice paths of all
/// feasible nodes at `depth`, plus leaves met earlier.
pub(crate) fn frontier(
    g: &mut Gluing,
    depth: usize,
    limits: &Limits,
    path: &mut Vec<Choice>,
    out: &mut Vec<Vec<Choice>>,
) {
    if depth == 0 || g.is_complete() {
        out.push(path.clone());
        return;
    }
    if !limits.tick() {
        return;
    }
    for c in g.choices() {
        if g.push(c) {
            path.push(c);
            frontier(g, depth - 1, limits, path, out);
            path.pop();
        }
        g.pop(c);
    }
}

/// Replays a choice path on a fresh copy; false if it became infeasible.
pub(crate) fn replay(g: &mut Gluing, path: &[Choice]) -> bool {
    path.iter().all(|&c| g.push(c))
}
