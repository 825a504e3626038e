//! Combinatorial maps on closed surfaces and their equilateral cone metrics.
//!
//! Maps are rotation systems on darts `0..2E` with `twin(d) = d ^ 1`. Lattice
//! arithmetic is generic over the integer coefficient type; the aliases below
//! fix it to `i64`.

pub mod cone_metric;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod holonomy;
pub mod lattice;
pub mod map;
pub mod report;
pub mod svg;

pub use cone_metric::{cone_points, degree_profiles, ConeStructure, DegreeProfile, Family};
pub use error::{Error, Result};
pub use graph::{Girth, Graph, OddCycleWitness};
pub use holonomy::{develop, develop_in, develop_walk, DualLoop, FundamentalPair, HolonomyGroup};
pub use lattice::{hermite_basis, Coefficient, Lattice, LatticeBasis, LatticeMotion, LatticePoint};
pub use map::{
    classify_surface, dual_map, parse_map, serialize_map, skeleton_and_girth, Sign, SurfaceMap,
    SurfaceStats,
};

pub type Point = LatticePoint<i64>;
pub type Motion = LatticeMotion<i64>;
pub type Basis = LatticeBasis<i64>;
pub use report::Report;
pub use svg::{render_svg, RenderOptions};
pub type Development = holonomy::Development<i64>;
