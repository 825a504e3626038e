//! Abstract multigraphs (loops and parallel edges allowed), girth, and
//! 2-coloring with odd-cycle witnesses.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

impl Graph {
    pub fn new(name: impl Into<String>, n: usize, edges: Vec<(usize, usize)>) -> Graph {
        debug_assert!(edges.iter().all(|&(u, v)| u < n && v < n));
        Graph {
            name: name.into(),
            n,
            edges,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Graph {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degrees, counting a loop twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// `adjacency()[u]` lists `(neighbour, edge index)`; a loop appears twice.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Breadth-first distances from `src`.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &(w, _) in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle: 1 for a loop, 2 for parallel edges.
    pub fn girth(&self) -> Girth {
        if self.edges.iter().any(|&(u, v)| u == v) {
            return Girth::Finite(1);
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &self.edges {
            if !seen.insert((u.min(v), u.max(v))) {
                return Girth::Finite(2);
            }
        }
        let adj = self.adjacency();
        let mut best = usize::MAX;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut via = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &(w, e) in &adj[u] {
                    if e == via[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = e;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Proper 2-coloring of the vertices, or an odd cycle.
    pub fn bipartition(&self) -> std::result::Result<Vec<u8>, OddCycleWitness> {
        two_color(self.n, &self.edges)
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lineno, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let name = header
            .strip_prefix("graph")
            .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
            .ok_or(Error::Parse {
                line: lineno,
                msg: "expected `graph <name>`".into(),
            })?
            .trim()
            .to_string();
        let mut edges = Vec::new();
        let mut n = 0;
        for (lineno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let parsed: Vec<usize> = toks.iter().filter_map(|t| t.parse().ok()).collect();
            if toks.len() != 2 || parsed.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected `u v`".into(),
                });
            }
            n = n.max(parsed[0] + 1).max(parsed[1] + 1);
            edges.push((parsed[0], parsed[1]));
        }
        Ok(Graph::new(name, n, edges))
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("graph {}\n", self.name);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A closed walk of odd length in a constraint graph: `nodes[i]` and
/// `nodes[i + 1]` (cyclically) are joined by constraint edge `links[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycleWitness {
    pub nodes: Vec<usize>,
    pub links: Vec<usize>,
}

impl OddCycleWitness {
    /// Checks the witness against the edge list it was derived from.
    pub fn is_valid_for(&self, edges: &[(usize, usize)]) -> bool {
        let k = self.nodes.len();
        if k == 0 || k.is_multiple_of(2) || self.links.len() != k {
            return false;
        }
        (0..k).all(|i| {
            let (a, b) = (self.nodes[i], self.nodes[(i + 1) % k]);
            edges
                .get(self.links[i])
                .is_some_and(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
        })
    }
}

/// BFS 2-coloring of the graph on `n` nodes with the given edges.
pub(crate) fn two_color(
    n: usize,
    edges: &[(usize, usize)],
) -> std::result::Result<Vec<u8>, OddCycleWitness> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            return Err(OddCycleWitness {
                nodes: vec![u],
                links: vec![i],
            });
        }
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut color = vec![u8::MAX; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adj[u] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = Some((u, e));
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return Err(odd_cycle(u, w, e, &parent, &depth));
                }
            }
        }
    }
    Ok(color)
}

/// Tree paths from `u` and `w` up to their common ancestor, closed by edge `e`.
fn odd_cycle(
    u: usize,
    w: usize,
    e: usize,
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
) -> OddCycleWitness {
    let (mut a, mut b) = (u, w);
    let mut up_a: Vec<(usize, usize)> = Vec::new();
    let mut up_b: Vec<(usize, usize)> = Vec::new();
    while depth[a] > depth[b] {
        let (p, pe) = parent[a].expect("non-root");
        up_a.push((a, pe));
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, pe) = parent[b].expect("non-root");
        up_b.push((b, pe));
        b = p;
    }
    while a != b {
        let (pa, ea) = parent[a].expect("non-root");
        let (pb, eb) = parent[b].expect("non-root");
        up_a.push((a, ea));
        up_b.push((b, eb));
        a = pa;
        b = pb;
    }
    // cycle: lca -> ... -> u -(e)-> w -> ... -> lca
    let mut nodes = vec![a];
    let mut links = Vec::new();
    for &(x, ex) in up_a.iter().rev() {
        links.push(ex);
        nodes.push(x);
    }
    links.push(e);
    for &(x, ex) in &up_b {
        nodes.push(x);
        links.push(ex);
    }
    OddCycleWitness { nodes, links }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(k: usize) -> Graph {
        Graph::new("c", k, (0..k).map(|i| (i, (i + 1) % k)).collect())
    }

    #[test]
    fn girth_of_cycles_and_forests() {
        assert_eq!(cycle(5).girth(), Girth::Finite(5));
        assert_eq!(cycle(6).girth(), Girth::Finite(6));
        assert_eq!(
            Graph::new("p", 3, vec![(0, 1), (1, 2)]).girth(),
            Girth::Infinite
        );
        assert_eq!(Graph::new("l", 1, vec![(0, 0)]).girth(), Girth::Finite(1));
        assert_eq!(
            Graph::new("m", 2, vec![(0, 1), (1, 0)]).girth(),
            Girth::Finite(2)
        );
    }

    #[test]
    fn girth_of_petersen() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        assert_eq!(Graph::new("petersen", 10, edges).girth(), Girth::Finite(5));
    }

    #[test]
    fn odd_cycle_witnesses_are_valid() {
        for k in [3, 5, 7, 9] {
            let g = cycle(k);
            let w = g.bipartition().unwrap_err();
            assert!(w.is_valid_for(g.edges()), "{w:?}");
            assert_eq!(w.nodes.len(), k);
        }
        let g = cycle(8);
        let c = g.bipartition().unwrap();
        for &(u, v) in g.edges() {
            assert_ne!(c[u], c[v]);
        }
    }

    #[test]
    fn odd_cycle_inside_larger_graph() {
        // square with a pendant triangle hanging off vertex 3
        let g = Graph::new(
            "x",
            6,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 3)],
        );
        let w = g.bipartition().unwrap_err();
        assert!(w.is_valid_for(g.edges()), "{w:?}");
        assert_eq!(w.nodes.len(), 3);
    }

    #[test]
    fn loop_witness() {
        let g = Graph::new("x", 2, vec![(0, 1), (1, 1)]);
        let w = g.bipartition().unwrap_err();
        assert_eq!(w.nodes, vec![1]);
        assert!(w.is_valid_for(g.edges()));
    }

    #[test]
    fn parse_and_serialize() {
        let g = Graph::parse("graph k3\n0 1\n1 2\n# c\n2 0\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert_eq!(Graph::parse(&g.serialize()).unwrap(), g);
        assert!(Graph::parse("graph x\n0 1 2\n").is_err());
        assert!(Graph::parse("grph x\n").is_err());
    }
}
