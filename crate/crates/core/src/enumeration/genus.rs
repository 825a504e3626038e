//! Non-toroidality certificates by face counting, and a small exact genus
//! search by face tracing.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64};
use std::time::Instant;

use super::gluing::Limits;
use super::Budget;
use crate::cone_metric::Family;
use crate::constructions::{graph_edge_swap, lattice_quotient};
use crate::graph::{Girth, Graph};
use crate::lattice::{Lattice, LatticeBasis, LatticePoint};
use crate::map::{classify_surface, twin, Genus, SurfaceMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NonToroidalByTheorem,
    /// The genus search exhausted every rotation system of genus at most one.
    NonToroidalBySearch,
    ToroidalWithWitness,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NonToroidalByTheorem => "non-toroidal-by-theorem",
            Verdict::NonToroidalBySearch => "non-toroidal-by-search",
            Verdict::ToroidalWithWitness => "toroidal-with-witness",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Which forbidden torus map a hypothetical embedding would be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileCase {
    /// Average degree 6: a 5,7-triangulation.
    A,
    /// Average degree 4, girth at least 4: a 3,5-quadrangulation.
    B,
    /// Average degree 3, girth at least 6, bipartite: a bipartite 2,4-hexangulation.
    C,
}

impl fmt::Display for ProfileCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProfileCase::A => "a",
            ProfileCase::B => "b",
            ProfileCase::C => "c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub case: Option<ProfileCase>,
    pub reasoning: String,
    pub vertices: usize,
    pub edges: usize,
    pub girth: Girth,
    /// Face length every torus embedding would need, when forced.
    pub forced_face: Option<usize>,
    pub witness: Option<SurfaceMap>,
}

impl Certificate {
    pub fn key_values(&self) -> String {
        let mut s = format!(
            "verdict={}\ncase={}\nvertices={}\nedges={}\ngirth={}\nforced_face={}\n",
            self.verdict,
            self.case.map_or("none".to_string(), |c| c.to_string()),
            self.vertices,
            self.edges,
            self.girth,
            self.forced_face
                .map_or("none".to_string(), |k| k.to_string()),
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!("witness_edges={}\n", w.edge_count()));
        }
        s
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.reasoning)?;
        writeln!(f, "--")?;
        f.write_str(&self.key_values())
    }
}

/// Decides non-toroidality by face counting when the graph has average
/// degree `k ∈ {6, 4, 3}` and girth at least `k̄ = 2k/(k − 2)`.
///
/// Then `0 = χ ≤ V − E + F ≤ V − E + 2E/k̄ = 0`, so any torus embedding is a
/// cellular map whose faces are all `k̄`-gons. If, in addition, one vertex has
/// degree `k − 1`, one `k + 1` and all others `k` (bipartite too when
/// `k = 3`), that map would be one of the forbidden ones.
pub fn certify_non_toroidal(g: &Graph) -> Certificate {
    let v = g.vertex_count();
    let e = g.edge_count();
    let girth = g.girth();
    let mut cert = Certificate {
        verdict: Verdict::Unknown,
        case: None,
        reasoning: String::new(),
        vertices: v,
        edges: e,
        girth,
        forced_face: None,
        witness: None,
    };
    if v == 0 || !g.is_connected() {
        cert.reasoning =
            "graph is empty or disconnected; counting argument needs a connected graph".into();
        return cert;
    }
    if !(2 * e).is_multiple_of(v) {
        cert.reasoning = format!("average degree 2E/V = {}/{v} is not an integer", 2 * e);
        return cert;
    }
    let k = 2 * e / v;
    let (kbar, case) = match k {
        6 => (3, ProfileCase::A),
        4 => (4, ProfileCase::B),
        3 => (6, ProfileCase::C),
        _ => {
            cert.reasoning = format!("average degree {k} is not 3, 4 or 6");
            return cert;
        }
    };
    if !girth.at_least(kbar) {
        cert.reasoning = format!(
            "average degree {k} needs girth at least {kbar} to force {kbar}-gon faces, but girth is {girth}"
        );
        return cert;
    }
    cert.forced_face = Some(kbar);
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    let mut want = vec![k; v];
    if v >= 2 {
        want[0] = k - 1;
        want[v - 1] = k + 1;
    }
    if v < 2 || degrees != want {
        cert.reasoning = format!(
            "any torus embedding would be a map with {kbar}-gon faces, but the degrees are not \
             one {}, one {} and the rest {k}",
            k - 1,
            k + 1
        );
        return cert;
    }
    if case == ProfileCase::C && g.bipartition().is_err() {
        cert.reasoning = "a torus embedding would be a 2,4-hexangulation, which may exist when \
                          the graph is not bipartite"
            .into();
        return cert;
    }
    cert.verdict = Verdict::NonToroidalByTheorem;
    cert.case = Some(case);
    cert.reasoning = match case {
        ProfileCase::A => {
            "a torus embedding would be a 5,7-triangulation, and there is none".into()
        }
        ProfileCase::B => {
            "a torus embedding would be a 3,5-quadrangulation, and there is none".into()
        }
        ProfileCase::C => {
            "a torus embedding would be a bipartite 2,4-hexangulation, and there is none".into()
        }
    };
    cert
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenusOutcome {
    /// An orientable embedding of genus at most the cap.
    Witness {
        map: SurfaceMap,
        genus: u64,
    },
    /// No embedding of genus at most the cap exists. `by_counting` is set
    /// when the face bound alone ruled it out.
    Exhausted {
        nodes: u64,
        by_counting: bool,
    },
    BudgetExceeded {
        nodes: u64,
    },
    /// The search needs a connected graph.
    Disconnected,
}

struct GenusSearch<'a> {
    vert: Vec<usize>,
    degree: Vec<usize>,
    /// Darts at each vertex.
    at: Vec<Vec<usize>>,
    next: Vec<usize>,
    prev: Vec<usize>,
    faced: Vec<bool>,
    closed: usize,
    /// Darts in closed faces.
    used: usize,
    target: usize,
    min_face: usize,
    limits: &'a Limits,
}

const UNSET: usize = usize::MAX;

impl GenusSearch<'_> {
    fn darts(&self) -> usize {
        self.next.len()
    }

    /// Upper bound on the final face count with an open face of `open` darts.
    fn bound(&self, open: usize) -> usize {
        let rest = self.darts() - self.used;
        if rest == 0 {
            return self.closed;
        }
        self.closed + 1 + (rest - open.max(self.min_face).min(rest)) / self.min_face
    }

    /// Heads of chains at the vertex of `x` that may follow `x`.
    fn options(&self, x: usize) -> Vec<usize> {
        if self.next[x] != UNSET {
            return vec![self.next[x]];
        }
        let v = self.vert[x];
        let mut head = x;
        let mut len = 1;
        while self.prev[head] != UNSET {
            head = self.prev[head];
            len += 1;
        }
        self.at[v]
            .iter()
            .copied()
            .filter(|&y| self.prev[y] == UNSET && (y != head || len == self.degree[v]))
            .collect()
    }

    fn start_face(&mut self) -> Option<SurfaceMap> {
        // fail-first: the open dart whose continuation has the fewest options
        let start = (0..self.darts())
            .filter(|&d| !self.faced[d])
            .min_by_key(|&d| self.options(twin(d)).len());
        let Some(start) = start else {
            if self.closed >= self.target {
                return SurfaceMap::new("", self.next.clone(), None).ok();
            }
            return None;
        };
        self.faced[start] = true;
        let found = self.trace(start, start, 1);
        self.faced[start] = false;
        found
    }

    fn trace(&mut self, start: usize, cur: usize, len: usize) -> Option<SurfaceMap> {
        if !self.limits.tick() {
            return None;
        }
        let x = twin(cur);
        let forced = self.next[x] != UNSET;
        for y in self.options(x) {
            if y != start && self.faced[y] {
                continue;
            }
            if !forced {
                self.next[x] = y;
                self.prev[y] = x;
            }
            let found = if y == start {
                self.closed += 1;
                self.used += len;
                let found = if self.bound(0) >= self.target {
                    self.start_face()
                } else {
                    None
                };
                self.closed -= 1;
                self.used -= len;
                found
            } else if self.bound(len + 1) >= self.target {
                self.faced[y] = true;
                let found = self.trace(start, y, len + 1);
                self.faced[y] = false;
                found
            } else {
                None
            };
            if !forced {
                self.next[x] = UNSET;
                self.prev[y] = UNSET;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Looks for an orientable embedding of genus at most `genus_cap` by
/// tracing faces one at a time and choosing rotations as the faces need
/// them. A branch is cut when even the best completion (every remaining
/// face as short as the girth allows) has too few faces.
pub fn min_genus_search(g: &Graph, genus_cap: u64, budget: Budget) -> GenusOutcome {
    let v = g.vertex_count();
    let e = g.edge_count();
    if e == 0 {
        if v <= 1 {
            let map = SurfaceMap::empty(g.name());
            return GenusOutcome::Witness { map, genus: 0 };
        }
        return GenusOutcome::Exhausted {
            nodes: 0,
            by_counting: false,
        };
    }
    let limits = Limits {
        start: Instant::now(),
        seconds: budget.seconds,
        nodes: budget.nodes,
        node_count: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    let nodes = || limits.node_count.load(std::sync::atomic::Ordering::Relaxed);
    if !g.is_connected() {
        return GenusOutcome::Disconnected;
    }
    // Euler: F = E − V + 2 − 2γ ≥ E − V + 2 − 2·cap.
    let target = (e + 2).saturating_sub(v + 2 * genus_cap as usize).max(1);
    let min_face = match g.girth() {
        Girth::Finite(k) => k,
        // a tree has one face
        Girth::Infinite => 2 * e,
    };
    let mut vert = vec![0; 2 * e];
    let mut at = vec![Vec::new(); v];
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        vert[2 * k] = a;
        vert[2 * k + 1] = b;
        at[a].push(2 * k);
        at[b].push(2 * k + 1);
    }
    let mut s = GenusSearch {
        degree: at.iter().map(Vec::len).collect(),
        vert,
        at,
        next: vec![UNSET; 2 * e],
        prev: vec![UNSET; 2 * e],
        faced: vec![false; 2 * e],
        closed: 0,
        used: 0,
        target,
        min_face,
        limits: &limits,
    };
    if s.bound(0) < target {
        return GenusOutcome::Exhausted {
            nodes: 0,
            by_counting: true,
        };
    }
    match s.start_face() {
        Some(map) => {
            let map = map.with_name(g.name());
            let genus = match classify_surface(&map).genus {
                Genus::Orientable(h) => h,
                Genus::NonOrientable(_) => unreachable!("unsigned rotation systems are orientable"),
            };
            GenusOutcome::Witness { map, genus }
        }
        None if limits.aborted.load(std::sync::atomic::Ordering::Relaxed) => {
            GenusOutcome::BudgetExceeded { nodes: nodes() }
        }
        None => GenusOutcome::Exhausted {
            nodes: nodes(),
            by_counting: false,
        },
    }
}

/// Certificate from the counting argument, falling back to the genus search
/// when the argument is inconclusive.
pub fn certify_with_search(g: &Graph, budget: Budget) -> Certificate {
    let mut cert = certify_non_toroidal(g);
    if cert.verdict != Verdict::Unknown {
        return cert;
    }
    match min_genus_search(g, 1, budget) {
        GenusOutcome::Witness { map, genus } => {
            cert.verdict = Verdict::ToroidalWithWitness;
            cert.reasoning = format!(
                "{}; search found an embedding of genus {genus}",
                cert.reasoning
            );
            cert.witness = Some(map);
        }
        GenusOutcome::Exhausted { nodes, .. } => {
            cert.verdict = Verdict::NonToroidalBySearch;
            cert.reasoning = format!(
                "{}; search exhausted all embeddings of genus at most 1 ({nodes} nodes)",
                cert.reasoning
            );
        }
        GenusOutcome::BudgetExceeded { nodes } => {
            cert.reasoning = format!(
                "{}; search budget exceeded after {nodes} nodes",
                cert.reasoning
            );
        }
        GenusOutcome::Disconnected => {}
    }
    cert
}

/// A graph with the degree and girth profile of `case`: a regular graph of
/// average degree `k` with one edge `ij` swapped for `ik`, where `k` is far
/// enough from `i` to keep the girth (and, for case c, the bipartition).
pub fn forbidden_profile_graph(case: ProfileCase) -> Graph {
    let (base, ok): (Graph, fn(usize) -> bool) = match case {
        ProfileCase::A => {
            // K8 minus a perfect matching
            let mut edges = Vec::new();
            for u in 0..8 {
                for w in u + 1..8 {
                    if w != (u ^ 1) {
                        edges.push((u, w));
                    }
                }
            }
            (Graph::new("k8-minus-matching", 8, edges), |d| d >= 2)
        }
        ProfileCase::B => {
            let lat = Lattice::Gaussian;
            let basis =
                LatticeBasis::new(LatticePoint::new(lat, 5, 0), LatticePoint::new(lat, 0, 5));
            let m = lattice_quotient(&basis, Family::Quadrangulation).expect("valid basis");
            (m.skeleton().renamed("torus-grid-5x5"), |d| d >= 3)
        }
        ProfileCase::C => {
            let lat = Lattice::Eisenstein;
            let basis =
                LatticeBasis::new(LatticePoint::new(lat, 9, 0), LatticePoint::new(lat, 0, 9));
            let m = lattice_quotient(&basis, Family::Hexangulation).expect("valid basis");
            (m.skeleton().renamed("honeycomb-quotient"), |d| {
                d >= 5 && d % 2 == 1
            })
        }
    };
    let i = 0;
    let j = base.adjacency()[i][0].0;
    let dist = base.distances_from(i);
    let k = (0..base.vertex_count())
        .find(|&w| dist[w].is_some_and(ok))
        .expect("base graph has a far vertex");
    graph_edge_swap(&base, i, j, k).expect("swap preconditions hold")
}
