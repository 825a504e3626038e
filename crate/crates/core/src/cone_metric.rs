//! Degree and face profiles, the counting relations they satisfy, and the
//! curvature of the equilateral metric in which every face is a regular
//! unit polygon.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::map::{classify_surface, ColoringKind, SurfaceMap};
use crate::report::Report;

/// Map families whose faces tile the plane when made regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Triangulation,
    Quadrangulation,
    Hexangulation,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::Triangulation,
        Family::Quadrangulation,
        Family::Hexangulation,
    ];

    /// Face length `n`.
    pub fn face_len(self) -> usize {
        match self {
            Family::Triangulation => 3,
            Family::Quadrangulation => 4,
            Family::Hexangulation => 6,
        }
    }

    /// Regular vertex degree `2n/(n-2)`.
    pub fn regular_degree(self) -> usize {
        match self {
            Family::Triangulation => 6,
            Family::Quadrangulation => 4,
            Family::Hexangulation => 3,
        }
    }

    pub fn lattice(self) -> Lattice {
        match self {
            Family::Quadrangulation => Lattice::Gaussian,
            _ => Lattice::Eisenstein,
        }
    }

    /// Rotation order `N` of the lattice.
    pub fn order(self) -> u32 {
        self.lattice().order()
    }

    /// Exterior angle of a face corner in units of `2π/N`.
    pub fn turn(self) -> u32 {
        self.order() / self.face_len() as u32
    }

    /// Curvature of a degree-`k` vertex in units of `2π/N`: `N(1 - k/n̄)`.
    pub fn curvature_units(self, degree: usize) -> i64 {
        let n = self.order() as i64;
        n - (n * degree as i64) / self.regular_degree() as i64
    }

    /// Faces per vertex on a torus.
    pub fn faces_for_vertices(self, v: usize) -> Option<usize> {
        let twice_e = v * self.regular_degree();
        twice_e
            .is_multiple_of(self.face_len())
            .then(|| twice_e / self.face_len())
    }

    /// Vertex count of the smallest regular map on the torus.
    pub fn min_regular_vertices(self) -> usize {
        match self {
            Family::Hexangulation => 2,
            _ => 1,
        }
    }

    /// Coloring whose existence is equivalent to holonomy in the index-two subgroup.
    pub fn coloring_kind(self) -> ColoringKind {
        match self {
            Family::Triangulation => ColoringKind::Face2,
            Family::Quadrangulation => ColoringKind::EdgeAlternating,
            Family::Hexangulation => ColoringKind::Vertex2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Triangulation => "triangulation",
            Family::Quadrangulation => "quadrangulation",
            Family::Hexangulation => "hexangulation",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "triangulation" | "tri" | "3" => Ok(Family::Triangulation),
            "quadrangulation" | "quad" | "4" => Ok(Family::Quadrangulation),
            "hexangulation" | "hex" | "6" => Ok(Family::Hexangulation),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// `v[k]`: number of vertices of degree `k`.
    pub v: BTreeMap<usize, usize>,
    /// `p[k]`: number of faces of length `k`.
    pub p: BTreeMap<usize, usize>,
    pub chi: i64,
}

fn histogram(xs: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for x in xs {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

pub fn degree_profiles(m: &SurfaceMap) -> DegreeProfile {
    DegreeProfile {
        v: histogram(m.vertex_degrees()),
        p: histogram(m.face_lengths()),
        chi: classify_surface(m).chi,
    }
}

impl DegreeProfile {
    pub fn vertex_count(&self) -> usize {
        self.v.values().sum()
    }

    pub fn degree_sum(&self) -> usize {
        self.v.iter().map(|(k, c)| k * c).sum()
    }

    pub fn face_side_sum(&self) -> usize {
        self.p.iter().map(|(k, c)| k * c).sum()
    }

    /// Degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        self.v
            .iter()
            .flat_map(|(&k, &c)| std::iter::repeat_n(k, c))
            .collect()
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |h: &BTreeMap<usize, usize>| {
            h.iter()
                .map(|(k, c)| format!("{k}:{c}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "v={{{}}} p={{{}}} chi={}",
            show(&self.v),
            show(&self.p),
            self.chi
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    /// Left side minus right side; zero when the relation holds. For the
    /// parity relations this is the sum modulo 2.
    pub residual: i64,
    pub applicable: bool,
}

impl Relation {
    pub fn holds(&self) -> bool {
        !self.applicable || self.residual == 0
    }
}

/// Residuals of the three counting relations. The first one needs a common
/// face length, taken from `family` or, failing that, from the profile.
pub fn counting_relations(dp: &DegreeProfile, family: Option<Family>) -> Vec<Relation> {
    let n = match family {
        Some(f) => Some(f.face_len() as i64),
        None if dp.p.len() == 1 => dp.p.keys().next().map(|&k| k as i64),
        None => None,
    };
    // Σ(n̄ − k)v_k = n̄χ, scaled by (n − 2) to stay integral.
    let euler_n = match n {
        Some(n) if n > 2 && dp.p.keys().all(|&k| k as i64 == n) => {
            let lhs: i64 =
                dp.v.iter()
                    .map(|(&k, &c)| (2 * n - (n - 2) * k as i64) * c as i64)
                    .sum();
            let resid = lhs - 2 * n * dp.chi;
            let scale = n - 2;
            Relation {
                name: "euler-n",
                residual: if resid % scale == 0 {
                    resid / scale
                } else {
                    resid
                },
                applicable: true,
            }
        }
        _ => Relation {
            name: "euler-n",
            residual: 0,
            applicable: false,
        },
    };
    let four = |h: &BTreeMap<usize, usize>| -> i64 {
        h.iter().map(|(&k, &c)| (4 - k as i64) * c as i64).sum()
    };
    let euler_4 = Relation {
        name: "euler-4",
        residual: four(&dp.p) + four(&dp.v) - 4 * dp.chi,
        applicable: true,
    };
    let odd = |h: &BTreeMap<usize, usize>| -> i64 {
        h.iter()
            .filter(|(&k, _)| k != 4)
            .map(|(&k, &c)| (k * c) as i64)
            .sum::<i64>()
            .rem_euclid(2)
    };
    let parity_p = Relation {
        name: "parity-faces",
        residual: odd(&dp.p),
        applicable: true,
    };
    let parity_v = Relation {
        name: "parity-vertices",
        residual: odd(&dp.v),
        applicable: true,
    };
    vec![euler_n, euler_4, parity_p, parity_v]
}

pub fn check_counting_relations(dp: &DegreeProfile, family: Option<Family>) -> Report {
    let mut r = Report::new("counting relations");
    r.field("profile", dp);
    for rel in counting_relations(dp, family) {
        if !rel.applicable {
            r.line(format!("{}: not applicable (mixed face lengths)", rel.name));
            r.field(rel.name, "n/a");
            continue;
        }
        r.line(format!(
            "{}: residual {} {}",
            rel.name,
            rel.residual,
            if rel.holds() { "ok" } else { "VIOLATED" }
        ));
        r.field(rel.name, rel.residual);
        if !rel.holds() {
            r.passed = false;
        }
    }
    r
}

/// Curvature of every vertex in units of `2π/N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeStructure {
    pub family: Family,
    pub order: u32,
    /// Indexed like `m.vertices()`.
    pub curvature_units: Vec<i64>,
    pub degrees: Vec<usize>,
}

/// Parameter of a pair of opposite cone points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConePair {
    /// Units `±N/n'` for an integer `n' ≥ 2`.
    Applicable {
        n_prime: u32,
    },
    NotApplicable,
}

impl ConeStructure {
    /// `(vertex, units)` for every vertex of nonzero curvature.
    pub fn cone_points(&self) -> Vec<(usize, i64)> {
        self.curvature_units
            .iter()
            .enumerate()
            .filter(|(_, &u)| u != 0)
            .map(|(v, &u)| (v, u))
            .collect()
    }

    pub fn total_units(&self) -> i64 {
        self.curvature_units.iter().sum()
    }

    pub fn cone_pair(&self) -> ConePair {
        let cones = self.cone_points();
        if cones.len() != 2 || cones[0].1 != -cones[1].1 {
            return ConePair::NotApplicable;
        }
        let u = cones[0].1.unsigned_abs() as u32;
        if self.order.is_multiple_of(u) && self.order / u >= 2 {
            ConePair::Applicable {
                n_prime: self.order / u,
            }
        } else {
            ConePair::NotApplicable
        }
    }

    pub fn n_prime(&self) -> Option<u32> {
        match self.cone_pair() {
            ConePair::Applicable { n_prime } => Some(n_prime),
            ConePair::NotApplicable => None,
        }
    }
}

/// Checks that every face has the family's length.
pub fn check_family(m: &SurfaceMap, family: Family) -> Result<()> {
    let want = family.face_len();
    match m.face_lengths().iter().position(|&l| l != want) {
        Some(face) => Err(Error::FamilyMismatch {
            family: family.to_string(),
            face,
            len: m.face_lengths()[face],
            expected: want,
        }),
        None => Ok(()),
    }
}

pub fn cone_points(m: &SurfaceMap, family: Family) -> Result<ConeStructure> {
    check_family(m, family)?;
    let degrees = m.vertex_degrees();
    Ok(ConeStructure {
        family,
        order: family.order(),
        curvature_units: degrees.iter().map(|&k| family.curvature_units(k)).collect(),
        degrees,
    })
}
