//! Exhaustive generation of torus maps, the exhaustive checks, and
//! non-toroidality certificates.

mod genus;
mod gluing;
mod oracle;
mod verify;

pub use genus::{
    certify_non_toroidal, certify_with_search, forbidden_profile_graph, min_genus_search,
    Certificate, GenusOutcome, ProfileCase, Verdict,
};
pub use oracle::brute_force_classes;
pub use verify::{verify_theorem, TheoremId, VerifyOptions};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::cone_metric::Family;
use crate::error::{Error, Result};
use crate::map::SurfaceMap;
use gluing::{frontier, replay, search, Gluing, Limits};

/// Which vertex degrees are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeConstraint {
    Any,
    /// These exceptional degrees, every other vertex regular.
    Exceptional(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub family: Family,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub degrees: DegreeConstraint,
    /// When false, Klein-bottle maps (signed) are generated too.
    pub orientable_only: bool,
}

impl EnumSpec {
    pub fn new(family: Family, max_vertices: usize) -> Self {
        EnumSpec {
            family,
            min_vertices: 1,
            max_vertices,
            degrees: DegreeConstraint::Any,
            orientable_only: true,
        }
    }

    pub fn exceptional(mut self, degrees: &[usize]) -> Self {
        self.degrees = DegreeConstraint::Exceptional(degrees.to_vec());
        self
    }

    pub fn regular(self) -> Self {
        self.exceptional(&[])
    }

    pub fn vertices(mut self, v: usize) -> Self {
        self.min_vertices = v;
        self.max_vertices = v;
        self
    }

    pub fn with_min_vertices(mut self, v: usize) -> Self {
        self.min_vertices = v;
        self
    }

    pub fn non_orientable(mut self) -> Self {
        self.orientable_only = false;
        self
    }

    /// Full degree multiset for `v` vertices, if the constraint allows `v`.
    fn degree_multiset(&self, v: usize) -> Option<Option<Vec<usize>>> {
        match &self.degrees {
            DegreeConstraint::Any => Some(None),
            DegreeConstraint::Exceptional(exc) => {
                if exc.len() > v {
                    return None;
                }
                let mut all = exc.clone();
                all.resize(v, self.family.regular_degree());
                all.sort_unstable();
                Some(Some(all))
            }
        }
    }
}

impl fmt::Display for EnumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} V={}..={}",
            self.family, self.min_vertices, self.max_vertices
        )?;
        match &self.degrees {
            DegreeConstraint::Any => f.write_str(" degrees=any")?,
            DegreeConstraint::Exceptional(e) if e.is_empty() => f.write_str(" degrees=regular")?,
            DegreeConstraint::Exceptional(e) => {
                let s: Vec<String> = e.iter().map(|d| d.to_string()).collect();
                write!(f, " exceptional={}", s.join(","))?
            }
        }
        if !self.orientable_only {
            f.write_str(" non-orientable")?;
        }
        Ok(())
    }
}

/// Wall-clock and node limits; exceeding either flags the run as partial.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub seconds: Option<u64>,
    pub nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// 0 or 1: deterministic single-threaded search.
    pub threads: usize,
    pub budget: Budget,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            threads: 1,
            budget: Budget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumOutcome {
    pub count: usize,
    /// Classes per vertex count.
    pub per_size: BTreeMap<usize, usize>,
    pub nodes: u64,
    /// True when a budget ran out; the count is then a lower bound.
    pub partial: bool,
    pub elapsed: Duration,
}

/// Faces of a `χ = 0` map with `v` vertices, if integral.
pub fn torus_face_count(family: Family, v: usize) -> Option<usize> {
    family.faces_for_vertices(v).filter(|&f| f > 0)
}

/// Visits one map per isomorphism class matching `spec`, in a fixed order:
/// by vertex count, then by search order.
pub fn enumerate_maps(
    spec: &EnumSpec,
    opts: &EnumOptions,
    mut visit: impl FnMut(&SurfaceMap),
) -> Result<EnumOutcome> {
    if spec.min_vertices == 0 || spec.max_vertices < spec.min_vertices {
        return Err(Error::Parse {
            line: 0,
            msg: "vertex range must satisfy 1 <= min <= max".into(),
        });
    }
    if let DegreeConstraint::Exceptional(e) = &spec.degrees {
        if e.contains(&0) {
            return Err(Error::Parse {
                line: 0,
                msg: "degrees must be positive".into(),
            });
        }
    }
    let limits = Limits {
        start: Instant::now(),
        seconds: opts.budget.seconds,
        nodes: opts.budget.nodes,
        node_count: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })?;
    let mut per_size = BTreeMap::new();
    let mut count = 0;
    let n = spec.family.face_len();
    for v in spec.min_vertices..=spec.max_vertices {
        let Some(faces) = torus_face_count(spec.family, v) else {
            continue;
        };
        let Some(degrees) = spec.degree_multiset(v) else {
            continue;
        };
        if let Some(ds) = &degrees {
            // A degree multiset off the Euler relation has no maps at all.
            if ds.iter().sum::<usize>() != n * faces {
                per_size.insert(v, 0);
                continue;
            }
        }
        let root = Gluing::new(n, faces, v, degrees.as_deref(), !spec.orientable_only);
        let found = if opts.threads <= 1 {
            let mut g = root;
            let mut out = Vec::new();
            search(&mut g, &limits, &mut out);
            out
        } else {
            let mut g = root.clone();
            let mut paths = Vec::new();
            let depth = 4.min(faces * n / 2);
            frontier(&mut g, depth, &limits, &mut Vec::new(), &mut paths);
            let parts: Vec<Vec<SurfaceMap>> = pool.install(|| {
                paths
                    .par_iter()
                    .map(|p| {
                        let mut g = root.clone();
                        let mut out = Vec::new();
                        if replay(&mut g, p) {
                            search(&mut g, &limits, &mut out);
                        }
                        out
                    })
                    .collect()
            });
            parts.into_iter().flatten().collect()
        };
        per_size.insert(v, found.len());
        count += found.len();
        for (i, m) in found.into_iter().enumerate() {
            let name = format!("{}-v{v}-{i}", spec.family);
            visit(&m.with_name(name));
        }
        if limits.aborted.load(Ordering::Relaxed) {
            break;
        }
    }
    Ok(EnumOutcome {
        count,
        per_size,
        nodes: limits.node_count.load(Ordering::Relaxed),
        partial: limits.aborted.load(Ordering::Relaxed),
        elapsed: limits.start.elapsed(),
    })
}

/// Collects all classes matching `spec` (single-threaded, unlimited).
pub fn collect_maps(spec: &EnumSpec) -> Result<Vec<SurfaceMap>> {
    Ok(collect_with(spec, &EnumOptions::default())?.0)
}

/// Collects all classes matching `spec` together with the run summary.
pub fn collect_with(spec: &EnumSpec, opts: &EnumOptions) -> Result<(Vec<SurfaceMap>, EnumOutcome)> {
    let mut out = Vec::new();
    let outcome = enumerate_maps(spec, opts, |m| out.push(m.clone()))?;
    Ok((out, outcome))
}
