//! Canonical forms of (signed) rotation systems.
//!
//! From a starting dart and a local orientation, darts are relabeled vertex
//! by vertex in breadth-first order; the code lists, per vertex, its degree
//! followed by the label of each dart's twin and the edge sign relative to
//! the orientations chosen at its two ends. The canonical form is the least
//! code over all starts (and both orientations unless asked otherwise).

use std::cmp::Ordering;
use std::fmt;

use super::{edge_of, twin, Dart, Sign, SurfaceMap};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn code(&self) -> &[u32] {
        &self.0
    }

    /// Big-endian byte encoding; equal forms give equal bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(len {})", self.0.len())
    }
}

/// Incremental code generator from one start, so candidates can be compared
/// and abandoned early.
struct CodeWalk<'a> {
    m: &'a SurfaceMap,
    label: Vec<u32>,
    state: Vec<bool>,
    order: Vec<Dart>,
    pos: usize,
    block_start: Vec<bool>,
    degree_done: bool,
    pending: [u32; 2],
    pending_len: usize,
}

const UNSET: u32 = u32::MAX;

impl<'a> CodeWalk<'a> {
    fn new(m: &'a SurfaceMap, start: Dart, reversed: bool, scratch: &mut Vec<u32>) -> Self {
        let n = m.dart_count();
        scratch.clear();
        scratch.resize(n, UNSET);
        let mut w = CodeWalk {
            m,
            label: std::mem::take(scratch),
            state: vec![false; n],
            order: Vec::with_capacity(n),
            pos: 0,
            block_start: Vec::with_capacity(n),
            degree_done: false,
            pending: [0; 2],
            pending_len: 0,
        };
        w.label_vertex(start, reversed);
        w
    }

    fn label_vertex(&mut self, first: Dart, reversed: bool) {
        let mut d = first;
        let mut head = true;
        loop {
            self.block_start.push(head);
            head = false;
            self.label[d] = self.order.len() as u32;
            self.state[d] = reversed;
            self.order.push(d);
            d = if reversed {
                self.m.sigma_inv(d)
            } else {
                self.m.sigma(d)
            };
            if d == first {
                break;
            }
        }
    }

    fn degree_at(&self, d: Dart) -> u32 {
        let mut k = 1;
        let mut x = self.m.sigma(d);
        while x != d {
            k += 1;
            x = self.m.sigma(x);
        }
        k
    }

    fn next(&mut self) -> Option<u32> {
        if self.pending_len > 0 {
            self.pending_len -= 1;
            return Some(self.pending[self.pending_len]);
        }
        if self.pos >= self.order.len() {
            return None;
        }
        let d = self.order[self.pos];
        if self.block_start[self.pos] && !self.degree_done {
            self.degree_done = true;
            return Some(self.degree_at(d));
        }
        let t = twin(d);
        let sign = self.m.sign(edge_of(d)) == Sign::Minus;
        if self.label[t] == UNSET {
            self.label_vertex(t, self.state[d] ^ sign);
        }
        let relative = (self.state[d] ^ self.state[t] ^ sign) as u32;
        self.pos += 1;
        self.degree_done = false;
        self.pending = [relative, 0];
        self.pending_len = 1;
        Some(self.label[t])
    }

    fn into_scratch(self) -> Vec<u32> {
        self.label
    }
}

fn full_code(m: &SurfaceMap, start: Dart, reversed: bool) -> Vec<u32> {
    let mut scratch = Vec::new();
    let mut walk = CodeWalk::new(m, start, reversed, &mut scratch);
    let mut out = Vec::with_capacity(3 * m.dart_count());
    while let Some(x) = walk.next() {
        out.push(x);
    }
    out
}

/// Compares the code from `(start, reversed)` against `best`; returns the
/// ordering and, if smaller, the new code.
fn compare_against(
    m: &SurfaceMap,
    start: Dart,
    reversed: bool,
    best: &[u32],
    scratch: &mut Vec<u32>,
) -> (Ordering, Option<Vec<u32>>) {
    let mut walk = CodeWalk::new(m, start, reversed, scratch);
    let mut i = 0;
    loop {
        let x = walk.next();
        match (x, best.get(i)) {
            (None, None) => {
                *scratch = walk.into_scratch();
                return (Ordering::Equal, None);
            }
            (Some(a), Some(&b)) if a == b => i += 1,
            (Some(a), Some(&b)) if a > b => {
                *scratch = walk.into_scratch();
                return (Ordering::Greater, None);
            }
            _ => {
                // smaller (or a strict prefix): finish the code
                let mut code = best[..i].to_vec();
                if let Some(a) = x {
                    code.push(a);
                }
                while let Some(a) = walk.next() {
                    code.push(a);
                }
                *scratch = walk.into_scratch();
                return (Ordering::Less, Some(code));
            }
        }
    }
}

fn starts(m: &SurfaceMap) -> Vec<Dart> {
    // The code opens with the degree of the start vertex, so only darts at
    // vertices of minimum degree can achieve the minimum.
    let verts = m.vertices();
    let min = verts.sizes().min().unwrap_or(0);
    (0..m.dart_count())
        .filter(|&d| verts.cycle(verts.index_of(d)).len() == min)
        .collect()
}

fn canonical(m: &SurfaceMap, both_orientations: bool) -> CanonicalForm {
    let mut header = vec![m.dart_count() as u32, m.is_signed() as u32];
    if m.dart_count() == 0 {
        return CanonicalForm(header);
    }
    let candidates = starts(m);
    let mut best = full_code(m, candidates[0], false);
    let mut scratch = Vec::new();
    for &d in &candidates {
        for reversed in [false, true] {
            if reversed && !both_orientations {
                continue;
            }
            if let (Ordering::Less, Some(code)) =
                compare_against(m, d, reversed, &best, &mut scratch)
            {
                best = code;
            }
        }
    }
    header.extend(best);
    CanonicalForm(header)
}

/// Canonical form up to relabeling and reflection.
pub fn canonical_form(m: &SurfaceMap) -> CanonicalForm {
    canonical(m, true)
}

/// Canonical form up to orientation-preserving relabeling only.
pub fn canonical_form_oriented(m: &SurfaceMap) -> CanonicalForm {
    canonical(m, false)
}

/// Does the code read from `root` (unreversed) equal the canonical code?
/// Used by the enumerator to keep one rooted representative per class.
pub fn is_canonical_root(m: &SurfaceMap, root: Dart) -> bool {
    let verts = m.vertices();
    let min = verts.sizes().min().unwrap_or(0);
    if verts.cycle(verts.index_of(root)).len() != min {
        return false;
    }
    let own = full_code(m, root, false);
    let mut scratch = Vec::new();
    for d in starts(m) {
        for reversed in [false, true] {
            if d == root && !reversed {
                continue;
            }
            if compare_against(m, d, reversed, &own, &mut scratch).0 == Ordering::Less {
                return false;
            }
        }
    }
    true
}
