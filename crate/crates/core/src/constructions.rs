//! Quotients of the regular tilings, refinements, edge flips, graph edge
//! swaps, and the catalogue of named example maps.

use std::collections::HashMap;

use crate::cone_metric::{check_family, Family};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{Coefficient, Lattice, LatticeBasis, LatticePoint};
use crate::map::{parse_map, twin, Dart, SurfaceMap};

/// Builds a map from face cycles over provisional dart ids and a twin
/// pairing of those ids. Darts are renumbered so twins become `2k, 2k + 1`.
fn assemble(name: String, faces: &[Vec<usize>], twin_of: &[usize]) -> Result<SurfaceMap> {
    let n = twin_of.len();
    let mut num = vec![usize::MAX; n];
    let mut next = 0;
    for t in 0..n {
        if num[t] == usize::MAX {
            num[t] = next;
            num[twin_of[t]] = next + 1;
            next += 2;
        }
    }
    let mut phi = vec![usize::MAX; n];
    for face in faces {
        for i in 0..face.len() {
            phi[num[face[i]]] = num[face[(i + 1) % face.len()]];
        }
    }
    SurfaceMap::from_phi(name, &phi)
}

/// The quotient of the regular tiling of `family` by the translation
/// lattice spanned by `basis`.
///
/// Coordinates are ring coordinates. Hexagon centres sit at the points with
/// `a ≡ b (mod 3)`; those translations are exactly the ones preserving the
/// tiling and the 2-coloring of its vertices, so hexangulation bases must
/// consist of such points.
pub fn lattice_quotient<T: Coefficient>(
    basis: &LatticeBasis<T>,
    family: Family,
) -> Result<SurfaceMap> {
    if basis.lattice != family.lattice() {
        return Err(Error::BadBasis(format!(
            "{} basis for a {family}",
            basis.lattice
        )));
    }
    if basis.det().is_zero() {
        return Err(Error::BadBasis("vectors are linearly dependent".into()));
    }
    let three = T::from(3);
    let is_center = |p: &LatticePoint<T>| (p.a.clone() - p.b.clone()).is_multiple_of(&three);
    if family == Family::Hexangulation && !(is_center(&basis.u) && is_center(&basis.v)) {
        return Err(Error::BadBasis(
            "hexangulation translations must satisfy a ≡ b (mod 3)".into(),
        ));
    }
    let h = basis.hermite().expect("nonzero determinant");
    let n = family.order() as i64;
    let half = n / 2;
    let lattice = family.lattice();

    // vertex representatives in the box 0 ≤ x < a, 0 ≤ y < c
    let a = h.u.a.clone();
    let c = h.v.b.clone();
    let mut reps = Vec::new();
    let mut y = T::zero();
    while y < c {
        let mut x = T::zero();
        while x < a {
            let p = LatticePoint::new(lattice, x.clone(), y.clone());
            if family != Family::Hexangulation || !is_center(&p) {
                reps.push(p);
            }
            x = x + T::one();
        }
        y = y + T::one();
    }
    let index: HashMap<LatticePoint<T>, usize> = reps
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();

    // Directions at each vertex and which of them own their edge.
    let dirs = |p: &LatticePoint<T>| -> Vec<i64> {
        match family {
            Family::Hexangulation => {
                let t = (p.a.clone() - p.b.clone()).mod_floor(&three);
                if t.is_one() {
                    vec![0, 2, 4]
                } else {
                    vec![1, 3, 5]
                }
            }
            _ => (0..n).collect(),
        }
    };
    let owns = |p: &LatticePoint<T>, k: i64| -> bool {
        match family {
            Family::Hexangulation => dirs(p)[0] == 0,
            _ => k < half,
        }
    };
    let mut edge_of_slot: HashMap<(usize, i64), usize> = HashMap::new();
    for (i, p) in reps.iter().enumerate() {
        for k in dirs(p) {
            if owns(p, k) {
                let id = edge_of_slot.len();
                edge_of_slot.insert((i, k), id);
            }
        }
    }
    let dart_at = |i: usize, k: i64| -> Dart {
        let p = &reps[i];
        if owns(p, k) {
            2 * edge_of_slot[&(i, k)]
        } else {
            let q = h
                .reduce(&(p.clone() + lattice.unit(k)))
                .expect("basis has full rank");
            2 * edge_of_slot[&(index[&q], (k + half).rem_euclid(n))] + 1
        }
    };
    let mut sigma = vec![0; 2 * edge_of_slot.len()];
    for (i, p) in reps.iter().enumerate() {
        let ds = dirs(p);
        for (j, &k) in ds.iter().enumerate() {
            // clockwise: the previous direction in counterclockwise order
            let prev = ds[(j + ds.len() - 1) % ds.len()];
            sigma[dart_at(i, k)] = dart_at(i, prev);
        }
    }
    let name = format!(
        "{family}-quotient-({},{})-({},{})",
        basis.u.a, basis.u.b, basis.v.a, basis.v.b
    );
    SurfaceMap::new(name, sigma, None)
}

/// Splits every triangle into four through the edge midpoints, or every
/// quadrangle into four through the edge midpoints and the face centre.
pub fn refine(m: &SurfaceMap, family: Family) -> Result<SurfaceMap> {
    let m = m.oriented()?;
    check_family(&m, family)?;
    let faces = m.faces();
    let half_darts = 2 * m.dart_count();
    // provisional ids: 2d is the first half of dart d, 2d + 1 the second
    let mut twin_of: Vec<usize> = (0..half_darts)
        .map(|t| 2 * twin(t / 2) + (1 - t % 2))
        .collect();
    let mut new_faces = Vec::new();
    match family {
        Family::Triangulation => {
            for face in faces.cycles() {
                let base = twin_of.len();
                // c_i runs mid_{i+1} -> mid_i, m_i runs mid_i -> mid_{i+1}
                for i in 0..3 {
                    twin_of.push(base + 3 + i);
                }
                for i in 0..3 {
                    twin_of.push(base + i);
                }
                for i in 0..3 {
                    let (d, e) = (face[i], face[(i + 1) % 3]);
                    new_faces.push(vec![2 * d + 1, 2 * e, base + i]);
                }
                new_faces.push((0..3).map(|i| base + 3 + i).collect());
            }
        }
        Family::Quadrangulation => {
            for face in faces.cycles() {
                let base = twin_of.len();
                // s_i runs mid_{i+1} -> centre, t_i runs centre -> mid_i
                for i in 0..4 {
                    twin_of.push(base + 4 + (i + 1) % 4);
                }
                for i in 0..4 {
                    twin_of.push(base + (i + 3) % 4);
                }
                for i in 0..4 {
                    let (d, e) = (face[i], face[(i + 1) % 4]);
                    new_faces.push(vec![2 * d + 1, 2 * e, base + i, base + 4 + i]);
                }
            }
        }
        Family::Hexangulation => {
            return Err(Error::UnknownFamily(
                "refinement is defined for triangulations and quadrangulations".into(),
            ))
        }
    }
    assemble(format!("{}-refined", m.name()), &new_faces, &twin_of)
}

/// Replaces the diagonal `edge` of the quadrilateral formed by its two
/// triangles with the other diagonal.
pub fn flip_edge(m: &SurfaceMap, edge: usize) -> Result<SurfaceMap> {
    if edge >= m.edge_count() {
        return Err(Error::NoSuchEdge(edge));
    }
    let m = m.oriented()?;
    check_family(&m, Family::Triangulation)?;
    let (d, e) = (2 * edge, 2 * edge + 1);
    let (a1, b1) = (m.phi(d), m.phi(e));
    let (a2, b2) = (m.phi(a1), m.phi(b1));
    let faces = m.faces();
    if faces.index_of(d) == faces.index_of(e) {
        return Err(Error::DegenerateFlip {
            edge,
            reason: "both sides lie on the same face".into(),
        });
    }
    let mut outer: Vec<usize> = [a1, a2, b1, b2].iter().map(|&x| x / 2).collect();
    outer.sort_unstable();
    outer.dedup();
    if outer.len() != 4 {
        return Err(Error::DegenerateFlip {
            edge,
            reason: "the surrounding quadrilateral repeats an edge".into(),
        });
    }
    // d: x -> y, a1: y -> p, a2: p -> x; e: y -> x, b1: x -> q, b2: q -> y.
    // Afterwards d runs q -> p and e runs p -> q.
    let mut phi: Vec<Dart> = (0..m.dart_count()).map(|x| m.phi(x)).collect();
    phi[d] = a2;
    phi[a2] = b1;
    phi[b1] = d;
    phi[e] = b2;
    phi[b2] = a1;
    phi[a1] = e;
    SurfaceMap::from_phi(format!("{}-flip{edge}", m.name()), &phi)
}

/// Removes an edge `ij` and inserts `ik`. Keeps the edge's position and
/// orientation in the edge list so a reverse swap restores the input.
pub fn graph_edge_swap(g: &Graph, i: usize, j: usize, k: usize) -> Result<Graph> {
    let n = g.vertex_count();
    if i >= n || j >= n || k >= n {
        return Err(Error::EdgeSwap("vertex out of range".into()));
    }
    if i == j || j == k || i == k {
        return Err(Error::EdgeSwap("i, j, k must be distinct".into()));
    }
    if g.has_edge(i, k) {
        return Err(Error::EdgeSwap(format!("{k} is already adjacent to {i}")));
    }
    let pos = g
        .edges()
        .iter()
        .position(|&(u, v)| (u, v) == (i, j) || (u, v) == (j, i))
        .ok_or_else(|| Error::EdgeSwap(format!("no edge {i}-{j}")))?;
    let mut edges = g.edges().to_vec();
    edges[pos] = if edges[pos].0 == i { (i, k) } else { (k, i) };
    Ok(Graph::new(g.name(), n, edges))
}

/// Names of the catalogue entries.
pub const CATALOGUE: [&str; 15] = [
    "fig1a", "fig1b", "fig1c-1", "fig1c-2", "fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig3d",
    "fig4a", "fig4b", "fig5a", "fig5b", "fig5c",
];

fn golden(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig1a" => include_str!("../../../data/fig1a.map"),
        "fig1b" => include_str!("../../../data/fig1b.map"),
        "fig1c-1" => include_str!("../../../data/fig1c-1.map"),
        "fig1c-2" => include_str!("../../../data/fig1c-2.map"),
        "fig2a" => include_str!("../../../data/fig2a.map"),
        "fig2b" => include_str!("../../../data/fig2b.map"),
        "fig3a" => include_str!("../../../data/fig3a.map"),
        "fig3b" => include_str!("../../../data/fig3b.map"),
        "fig3c" => include_str!("../../../data/fig3c.map"),
        "fig3d" => include_str!("../../../data/fig3d.map"),
        "fig4a" => include_str!("../../../data/fig4a.map"),
        "fig4b" => include_str!("../../../data/fig4b.map"),
        "fig5a" => include_str!("../../../data/fig5a.map"),
        "fig5b" => include_str!("../../../data/fig5b.map"),
        "fig5c" => include_str!("../../../data/fig5c.map"),
        _ => return None,
    })
}

/// Family of each catalogue entry.
pub fn catalogue_family(name: &str) -> Option<Family> {
    Some(match name {
        "fig4a" | "fig4b" => Family::Quadrangulation,
        "fig5a" | "fig5b" | "fig5c" => Family::Hexangulation,
        n if CATALOGUE.contains(&n) => Family::Triangulation,
        _ => return None,
    })
}

/// Golden MAP text of a catalogue entry.
pub fn catalogue_text(name: &str) -> Result<&'static str> {
    golden(name).ok_or_else(|| Error::UnknownCatalogueEntry(name.to_string()))
}

pub fn catalogue(name: &str) -> Result<SurfaceMap> {
    parse_map(catalogue_text(name)?)
}

/// Rebuilds a catalogue entry from its description: lattice quotients and a
/// flip for the regular and 5²7² entries, and the first class found by the
/// enumerator with the stated family, vertex count and degrees otherwise.
/// The golden files hold the output of this function.
pub fn derive_catalogue_entry(name: &str) -> Result<SurfaceMap> {
    use crate::enumeration::{collect_maps, EnumSpec};
    use crate::map::{two_colorings, ColoringKind};
    let tri = |u: (i64, i64), v: (i64, i64)| {
        let l = Lattice::Eisenstein;
        lattice_quotient(
            &LatticeBasis::new(
                LatticePoint::new(l, u.0, u.1),
                LatticePoint::new(l, v.0, v.1),
            ),
            Family::Triangulation,
        )
    };
    let first = |spec: EnumSpec, keep: &dyn Fn(&SurfaceMap) -> bool| -> Result<SurfaceMap> {
        collect_maps(&spec)?
            .into_iter()
            .find(|m| keep(m))
            .ok_or_else(|| Error::UnknownCatalogueEntry(format!("{name}: no map found")))
    };
    let any = |_: &SurfaceMap| true;
    let (fam_tri, fam_quad, fam_hex) = (
        Family::Triangulation,
        Family::Quadrangulation,
        Family::Hexangulation,
    );
    let m = match name {
        "fig1a" => tri((1, 0), (0, 1))?,
        "fig1b" => tri((2, 0), (0, 1))?,
        "fig1c-1" => tri((3, 0), (0, 1))?,
        "fig1c-2" => tri((3, 0), (1, 1))?,
        "fig2a" => {
            let r = refine(&tri((1, 0), (0, 1))?, fam_tri)?;
            (0..r.edge_count())
                .filter_map(|e| flip_edge(&r, e).ok())
                .find(|f| {
                    let mut d = f.vertex_degrees();
                    d.sort_unstable();
                    d == [5, 5, 7, 7]
                })
                .ok_or_else(|| Error::UnknownCatalogueEntry(name.into()))?
        }
        "fig2b" => first(
            EnumSpec::new(fam_tri, 5)
                .vertices(5)
                .exceptional(&[5, 7])
                .non_orientable(),
            &|m: &SurfaceMap| !m.is_orientable(),
        )?,
        "fig3a" => first(
            EnumSpec::new(fam_tri, 2).vertices(2).exceptional(&[4, 8]),
            &any,
        )?,
        "fig3b" => first(
            EnumSpec::new(fam_tri, 2).vertices(2).exceptional(&[3, 9]),
            &any,
        )?,
        "fig3c" => first(
            EnumSpec::new(fam_tri, 2).vertices(2).exceptional(&[2, 10]),
            &any,
        )?,
        "fig3d" => first(
            EnumSpec::new(fam_tri, 2).vertices(2).exceptional(&[1, 11]),
            &any,
        )?,
        "fig4a" => first(
            EnumSpec::new(fam_quad, 2).vertices(2).exceptional(&[2, 6]),
            &any,
        )?,
        "fig4b" => first(
            EnumSpec::new(fam_quad, 7)
                .vertices(7)
                .exceptional(&[3, 3, 5, 5]),
            &any,
        )?,
        "fig5a" => first(
            EnumSpec::new(fam_hex, 2).vertices(2).exceptional(&[2, 4]),
            &any,
        )?,
        "fig5b" => first(
            EnumSpec::new(fam_hex, 2).vertices(2).exceptional(&[1, 5]),
            &any,
        )?,
        "fig5c" => first(
            EnumSpec::new(fam_hex, 12).exceptional(&[1, 5]),
            &|m: &SurfaceMap| {
                two_colorings(m, ColoringKind::Vertex2).is_ok_and(|c| c.is_colorable())
            },
        )?,
        _ => return Err(Error::UnknownCatalogueEntry(name.to_string())),
    };
    Ok(m.with_name(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::map::{classify_surface, parse_map};

    fn basis(l: Lattice, u: (i64, i64), v: (i64, i64)) -> LatticeBasis<i64> {
        LatticeBasis::new(
            LatticePoint::new(l, u.0, u.1),
            LatticePoint::new(l, v.0, v.1),
        )
    }

    #[test]
    fn quotients_are_regular_tori() {
        for (fam, b, verts) in [
            (
                Family::Triangulation,
                basis(Lattice::Eisenstein, (1, 0), (0, 1)),
                1,
            ),
            (
                Family::Triangulation,
                basis(Lattice::Eisenstein, (2, 0), (0, 1)),
                2,
            ),
            (
                Family::Triangulation,
                basis(Lattice::Eisenstein, (2, 1), (-1, 3)),
                7,
            ),
            (
                Family::Quadrangulation,
                basis(Lattice::Gaussian, (3, 0), (1, 2)),
                6,
            ),
            (
                Family::Hexangulation,
                basis(Lattice::Eisenstein, (1, 1), (-1, 2)),
                2,
            ),
            (
                Family::Hexangulation,
                basis(Lattice::Eisenstein, (3, 0), (0, 3)),
                6,
            ),
        ] {
            let m = lattice_quotient(&b, fam).unwrap();
            let st = classify_surface(&m);
            assert!(st.is_torus(), "{fam} {b:?}");
            assert_eq!(st.vertices, verts);
            assert!(m
                .vertex_degrees()
                .iter()
                .all(|&k| k == fam.regular_degree()));
            assert!(m.face_lengths().iter().all(|&k| k == fam.face_len()));
        }
    }

    #[test]
    fn hexangulation_basis_must_keep_centres() {
        let b = basis(Lattice::Eisenstein, (1, 0), (0, 1));
        assert!(matches!(
            lattice_quotient(&b, Family::Hexangulation),
            Err(Error::BadBasis(_))
        ));
        let flat = basis(Lattice::Eisenstein, (1, 0), (2, 0));
        assert!(lattice_quotient(&flat, Family::Triangulation).is_err());
    }

    #[test]
    fn refinement_counts() {
        let t1 = parse_map("map t1\nedges 3\nsigma 2 3 4 5 1 0\n").unwrap();
        let r = refine(&t1, Family::Triangulation).unwrap();
        let st = classify_surface(&r);
        assert_eq!((st.vertices, st.edges, st.faces), (4, 12, 8));
        assert!(r.vertex_degrees().iter().all(|&k| k == 6));

        let q = lattice_quotient(
            &basis(Lattice::Gaussian, (2, 0), (0, 1)),
            Family::Quadrangulation,
        )
        .unwrap();
        let r = refine(&q, Family::Quadrangulation).unwrap();
        let st = classify_surface(&r);
        assert_eq!((st.vertices, st.faces), (2 + 4 + 2, 8));
        assert!(st.is_torus());
    }

    #[test]
    fn flips() {
        let t1 = parse_map("map t1\nedges 3\nsigma 2 3 4 5 1 0\n").unwrap();
        assert!(matches!(
            flip_edge(&t1, 0),
            Err(Error::DegenerateFlip { .. })
        ));
        let r = refine(&t1, Family::Triangulation).unwrap();
        let f = flip_edge(&r, 0).unwrap();
        assert!(classify_surface(&f).is_torus());
        let mut degs = f.vertex_degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![5, 5, 7, 7]);
    }

    #[test]
    fn edge_swap_round_trip() {
        let g = Graph::new("p", 4, vec![(0, 1), (1, 2), (2, 3)]);
        let s = graph_edge_swap(&g, 1, 0, 3).unwrap();
        assert_eq!(s.degrees(), vec![0, 2, 2, 2]);
        assert_eq!(graph_edge_swap(&s, 1, 3, 0).unwrap(), g);
        assert!(graph_edge_swap(&g, 1, 2, 0).is_err());
        assert!(graph_edge_swap(&g, 0, 3, 2).is_err());
    }
}
