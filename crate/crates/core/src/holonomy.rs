//! Exact developments of equilateral maps into the triangular and square
//! lattices.
//!
//! Every face `f` gets the same regular polygon in local coordinates: its
//! least dart runs from `0` to `1` and each following dart turns left by the
//! exterior angle. Crossing a dart `d` (from `face(d)` into `face(twin d)`)
//! is the motion `L_d` that carries the local coordinates of the far face to
//! those of the near face, so the holonomy of a dual loop `d1, …, dk` is
//! `L_{d1} ∘ … ∘ L_{dk}`, expressed in the frame of the first face.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::cone_metric::{check_family, cone_points, Family};
use crate::error::{Error, Result};
use crate::lattice::{
    hermite_basis, Coefficient, Lattice, LatticeBasis, LatticeMotion, LatticePoint,
};
use crate::map::{classify_surface, edge_of, twin, two_colorings, Dart, Orbits, SurfaceMap};
use crate::report::Report;

/// A closed sequence of dart crossings in the dual graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualLoop {
    pub crossings: Vec<Dart>,
}

impl DualLoop {
    pub fn new(crossings: Vec<Dart>) -> Self {
        DualLoop { crossings }
    }

    /// Same loop traversed backwards.
    pub fn reversed(&self) -> DualLoop {
        DualLoop::new(self.crossings.iter().rev().map(|&d| twin(d)).collect())
    }

    /// Concatenation; both loops must start in the same face.
    pub fn then(&self, other: &DualLoop) -> DualLoop {
        let mut c = self.crossings.clone();
        c.extend_from_slice(&other.crossings);
        DualLoop::new(c)
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }
}

impl FromStr for DualLoop {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(DualLoop::new(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<Dart>()
                    .map_err(|_| Error::InvalidLoop(format!("bad dart {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DualLoop::new)
    }
}

impl fmt::Display for DualLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossings.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Cyclic holonomy group `C_{N/d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyGroup {
    pub lattice_order: u32,
    /// Generator angle is `2π·d/N`.
    pub divisor: u32,
    pub generator_loops: Vec<DualLoop>,
}

impl HolonomyGroup {
    pub fn order(&self) -> u32 {
        self.lattice_order / self.divisor
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Is the group contained in `C_k`?
    pub fn is_subgroup_of_cyclic(&self, k: u32) -> bool {
        k.is_multiple_of(self.order())
    }
}

impl fmt::Display for HolonomyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.order())
    }
}

/// Translation lattice of a flat map, in ring coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationLattice<T = i64> {
    pub basis: LatticeBasis<T>,
    /// Index in the translation lattice of the regular tiling.
    pub index: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalPair<T = i64> {
    pub alpha: DualLoop,
    pub beta: DualLoop,
    pub h_alpha: LatticeMotion<T>,
    pub h_beta: LatticeMotion<T>,
    /// `ĥ(α)∘ĥ(β)∘ĥ(α)⁻¹∘ĥ(β)⁻¹`.
    pub h_commutator: LatticeMotion<T>,
}

/// Faces placed in the plane along a breadth-first dual spanning tree.
#[derive(Debug, Clone)]
pub struct Development<T = i64> {
    map: SurfaceMap,
    family: Family,
    faces: Orbits,
    /// Corners of the local polygon, `corners[n] == corners[0]`.
    corners: Vec<LatticePoint<T>>,
    frames: Vec<LatticeMotion<T>>,
    /// Dart of the parent face crossed to reach each face; `None` at the root.
    parent: Vec<Option<Dart>>,
    tree_edge: Vec<bool>,
}

pub fn develop(m: &SurfaceMap, family: Family) -> Result<Development> {
    develop_in::<i64>(m, family)
}

/// Development with coordinates in any integer type.
pub fn develop_in<T: Coefficient>(m: &SurfaceMap, family: Family) -> Result<Development<T>> {
    if m.is_empty() {
        return Err(Error::EmptyMap);
    }
    let m = m.oriented()?;
    check_family(&m, family)?;
    let lattice = family.lattice();
    let n = family.face_len();
    let turn = family.turn() as i64;
    let mut corners = vec![LatticePoint::zero(lattice)];
    for k in 0..n {
        let next = corners[k].clone() + lattice.unit(k as i64 * turn);
        corners.push(next);
    }
    debug_assert!(corners[n].is_zero());
    let faces = m.faces();
    let mut dev = Development {
        frames: vec![LatticeMotion::identity(lattice); faces.count()],
        parent: vec![None; faces.count()],
        tree_edge: vec![false; m.edge_count()],
        map: m,
        family,
        faces,
        corners,
    };
    let mut seen = vec![false; dev.faces.count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let mut darts = dev.faces.cycle(f).to_vec();
        darts.sort_unstable();
        for d in darts {
            let g = dev.faces.index_of(twin(d));
            if seen[g] {
                continue;
            }
            seen[g] = true;
            dev.frames[g] = dev.frames[f].compose(&dev.gluing(d));
            dev.parent[g] = Some(d);
            dev.tree_edge[edge_of(d)] = true;
            queue.push_back(g);
        }
    }
    Ok(dev)
}

impl<T: Coefficient> Development<T> {
    pub fn map(&self) -> &SurfaceMap {
        &self.map
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn lattice(&self) -> Lattice {
        self.family.lattice()
    }

    pub fn face_count(&self) -> usize {
        self.faces.count()
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.faces.index_of(d)
    }

    /// Darts of face `f` starting from its least dart.
    pub fn face_darts(&self, f: usize) -> &[Dart] {
        self.faces.cycle(f)
    }

    pub fn frame(&self, f: usize) -> &LatticeMotion<T> {
        &self.frames[f]
    }

    pub fn parent_dart(&self, f: usize) -> Option<Dart> {
        self.parent[f]
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.tree_edge[edge]
    }

    fn local(&self, d: Dart) -> (LatticePoint<T>, LatticePoint<T>) {
        let i = self.faces.position(d);
        let dir = self.corners[i + 1].clone() - self.corners[i].clone();
        (self.corners[i].clone(), dir)
    }

    /// Start point and unit direction of `d` in the root frame.
    pub fn dart_geometry(&self, d: Dart) -> (LatticePoint<T>, LatticePoint<T>) {
        let (p, u) = self.local(d);
        let frame = &self.frames[self.faces.index_of(d)];
        (frame.apply(&p), frame.apply_linear(&u))
    }

    /// Motion from the local frame of `face(twin d)` to that of `face(d)`.
    pub fn gluing(&self, d: Dart) -> LatticeMotion<T> {
        let n = self.family.order() as i64;
        let turn = self.family.turn() as i64;
        let i = self.faces.position(d) as i64;
        let j = self.faces.position(twin(d)) as i64;
        let rot = n / 2 + (i - j) * turn;
        let end = self.corners[i as usize + 1].clone();
        let start_far = self.corners[j as usize].clone();
        LatticeMotion::new(rot, end - start_far.rotate(rot))
    }

    /// Checks that consecutive crossings share a face.
    pub fn validate_loop(&self, lp: &DualLoop) -> Result<()> {
        let k = lp.crossings.len();
        for &d in &lp.crossings {
            if d >= self.map.dart_count() {
                return Err(Error::InvalidLoop(format!("dart {d} out of range")));
            }
        }
        for i in 0..k {
            let d = lp.crossings[i];
            let e = lp.crossings[(i + 1) % k];
            if self.faces.index_of(twin(d)) != self.faces.index_of(e) {
                return Err(Error::InvalidLoop(format!(
                    "crossing {d} leads to face {}, but {e} leaves face {}",
                    self.faces.index_of(twin(d)),
                    self.faces.index_of(e)
                )));
            }
        }
        Ok(())
    }

    /// `ĥ` of a loop, in the local frame of the face it starts in.
    pub fn loop_holonomy(&self, lp: &DualLoop) -> Result<LatticeMotion<T>> {
        self.validate_loop(lp)?;
        Ok(self.compose_crossings(&lp.crossings))
    }

    fn compose_crossings(&self, darts: &[Dart]) -> LatticeMotion<T> {
        darts
            .iter()
            .fold(LatticeMotion::identity(self.lattice()), |acc, &d| {
                acc.compose(&self.gluing(d))
            })
    }

    /// Minimal loop around the origin vertex of `d`, starting in `face(d)`,
    /// oriented so that its rotation is the vertex curvature.
    pub fn vertex_loop(&self, d: Dart) -> DualLoop {
        let mut darts = vec![d];
        let mut x = self.map.sigma(d);
        while x != d {
            darts.push(x);
            x = self.map.sigma(x);
        }
        DualLoop::new(darts)
    }

    /// Tree path from the root face to `f`, as crossings.
    fn root_path(&self, mut f: usize) -> Vec<Dart> {
        let mut path = Vec::new();
        while let Some(d) = self.parent[f] {
            path.push(d);
            f = self.faces.index_of(d);
        }
        path.reverse();
        path
    }

    /// Lower dart of every edge outside the dual tree, ascending.
    pub fn cotree_darts(&self) -> Vec<Dart> {
        (0..self.map.edge_count())
            .filter(|&e| !self.tree_edge[e])
            .map(|e| 2 * e)
            .collect()
    }

    /// Loop based at the root face: down the tree to `face(d)`, across `d`,
    /// and back up from `face(twin d)`.
    pub fn cotree_loop(&self, d: Dart) -> DualLoop {
        let mut out: Vec<Dart> = Vec::new();
        let there = self.root_path(self.faces.index_of(d));
        let back: Vec<Dart> = self
            .root_path(self.faces.index_of(twin(d)))
            .into_iter()
            .rev()
            .map(twin)
            .collect();
        for x in there.into_iter().chain([d]).chain(back) {
            if out.last() == Some(&twin(x)) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        DualLoop::new(out)
    }

    /// `M_f ∘ L_d ∘ M_g⁻¹`, the root-frame holonomy of the co-tree loop of `d`.
    pub fn cotree_mismatch(&self, d: Dart) -> LatticeMotion<T> {
        let f = self.faces.index_of(d);
        let g = self.faces.index_of(twin(d));
        self.frames[f]
            .compose(&self.gluing(d))
            .compose(&self.frames[g].inverse())
    }

    pub fn holonomy_group(&self) -> HolonomyGroup {
        let n = self.family.order();
        let mut divisor = n;
        let mut generator_loops = Vec::new();
        for d in self.cotree_darts() {
            let rot = self.cotree_mismatch(d).rot;
            let next = divisor.gcd(&rot);
            if next != divisor {
                divisor = next;
                generator_loops.push(self.cotree_loop(d));
            }
        }
        HolonomyGroup {
            lattice_order: n,
            divisor,
            generator_loops,
        }
    }

    /// Two co-tree loops generating the fundamental group of the torus, from
    /// the edges left over by a tree-cotree decomposition.
    pub fn fundamental_pair(&self) -> Result<FundamentalPair<T>> {
        let stats = classify_surface(&self.map);
        if !stats.is_torus() {
            return Err(Error::NotTorus { chi: stats.chi });
        }
        let verts = self.map.vertices();
        let mut uf: Vec<usize> = (0..verts.count()).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut leftover = Vec::new();
        for e in (0..self.map.edge_count()).filter(|&e| !self.tree_edge[e]) {
            let a = find(&mut uf, verts.index_of(2 * e));
            let b = find(&mut uf, verts.index_of(2 * e + 1));
            if a != b {
                uf[a] = b;
            } else {
                leftover.push(2 * e);
            }
        }
        debug_assert_eq!(leftover.len(), 2);
        let alpha = self.cotree_loop(leftover[0]);
        let beta = self.cotree_loop(leftover[1]);
        let h_alpha = self.cotree_mismatch(leftover[0]);
        let h_beta = self.cotree_mismatch(leftover[1]);
        let h_commutator = LatticeMotion::commutator(&h_alpha, &h_beta);
        Ok(FundamentalPair {
            alpha,
            beta,
            h_alpha,
            h_beta,
            h_commutator,
        })
    }

    /// Lattice of all holonomy translations when the holonomy group is trivial.
    pub fn translation_lattice(&self) -> Option<TranslationLattice<T>> {
        let mismatches: Vec<_> = self
            .cotree_darts()
            .into_iter()
            .map(|d| self.cotree_mismatch(d))
            .collect();
        if mismatches.iter().any(|m| m.rot != 0) {
            return None;
        }
        let points: Vec<_> = mismatches.into_iter().map(|m| m.trans).collect();
        let basis = hermite_basis(self.lattice(), &points)?;
        let cell = T::from(match self.family {
            Family::Hexangulation => 3,
            _ => 1,
        });
        let index = basis.index() / cell;
        Some(TranslationLattice { basis, index })
    }
}

pub fn holonomy_group(m: &SurfaceMap, family: Family) -> Result<HolonomyGroup> {
    Ok(develop(m, family)?.holonomy_group())
}

pub fn loop_holonomy<T: Coefficient>(
    dev: &Development<T>,
    lp: &DualLoop,
) -> Result<LatticeMotion<T>> {
    dev.loop_holonomy(lp)
}

pub fn fundamental_pair_holonomy<T: Coefficient>(
    dev: &Development<T>,
) -> Result<FundamentalPair<T>> {
    dev.fundamental_pair()
}

pub fn translation_lattice<T: Coefficient>(dev: &Development<T>) -> Option<TranslationLattice<T>> {
    dev.translation_lattice()
}

/// Frame-independent representative of a Burgers vector: the rotation of
/// `trans` with lexicographically least coordinates.
pub fn burgers_vector<T: Coefficient>(motion: &LatticeMotion<T>) -> Option<LatticePoint<T>> {
    motion
        .is_translation()
        .then(|| motion.trans.canonical_rotation())
}

/// Unit steps, each followed by a left turn of `turns[i]` units of `2π/N`.
/// Returns the motion taking the start frame to the end frame.
pub fn develop_walk<T: Coefficient>(turns: &[i64], family: Family) -> LatticeMotion<T> {
    let lattice = family.lattice();
    let mut pos = LatticePoint::zero(lattice);
    let mut rot = 0i64;
    for &t in turns {
        pos = pos + lattice.unit(rot);
        rot += t;
    }
    LatticeMotion::new(rot, pos)
}

/// Compares the coloring side and the holonomy side of the index-two
/// criterion, each computed on its own.
pub fn lemma2_crosscheck(m: &SurfaceMap, family: Family) -> Result<Report> {
    let dev = develop(m, family)?;
    let h = dev.holonomy_group();
    let half = family.order() / 2;
    let bounded = h.is_subgroup_of_cyclic(half);
    let kind = family.coloring_kind();
    let colorable = two_colorings(m, kind)?.is_colorable();
    let mut r = Report::new(format!("index-two criterion for {}", m.name()));
    r.field("family", family);
    r.field("holonomy", &h);
    r.field("coloring", kind);
    r.field("colorable", colorable);
    r.field(format!("h_in_c{half}"), bounded);
    r.field("agree", colorable == bounded);
    r.line(format!(
        "H = {h}; {kind} coloring {}",
        if colorable { "exists" } else { "impossible" }
    ));
    if colorable != bounded {
        r.fail("coloring and holonomy disagree");
    }
    Ok(r)
}

/// Holonomy of the minimal loop around every vertex, with its curvature.
pub fn cone_loop_table<T: Coefficient>(
    dev: &Development<T>,
) -> Result<Vec<(usize, i64, LatticeMotion<T>)>> {
    let cones = cone_points(dev.map(), dev.family())?;
    let verts = dev.map().vertices();
    Ok((0..verts.count())
        .map(|v| {
            let d = verts.cycle(v)[0];
            let h = dev
                .loop_holonomy(&dev.vertex_loop(d))
                .expect("vertex loops are valid");
            (v, cones.curvature_units[v], h)
        })
        .collect())
}
