//! Exhaustive checks of the non-existence and holonomy statements over all
//! maps up to a vertex bound.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::{collect_with, Budget, EnumOptions, EnumSpec};
use crate::cone_metric::{check_counting_relations, cone_points, degree_profiles, Family};
use crate::error::{Error, Result};
use crate::holonomy::develop;
use crate::map::{classify_surface, two_colorings, SurfaceMap};
use crate::report::Report;

/// Which statement to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// No 5,7-triangulation of the torus.
    T1,
    /// No 3,5-quadrangulation of the torus.
    T2,
    /// 2,4-hexangulations are not vertex 2-colorable.
    T3,
    /// 4,8-triangulations are not face 2-colorable.
    T4,
    /// 2,6-quadrangulations have no edge coloring alternating around faces.
    T5,
    /// Two opposite cone points of order `n'` force `C_{n'}` to be a proper subgroup of `H`.
    Hol,
    /// Colorability holds iff `H` lies in the index-two subgroup.
    L2,
    /// Regular maps are lattice quotients of the regular tiling.
    T6,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::Hol,
        TheoremId::L2,
        TheoremId::T6,
    ];
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::Hol => "HOL",
            TheoremId::L2 => "L2",
            TheoremId::T6 => "T6",
        })
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown theorem id '{s}' (expected T1..T6, HOL or L2)"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_vertices: usize,
    pub threads: usize,
    pub budget: Budget,
}

impl VerifyOptions {
    pub fn new(max_vertices: usize) -> Self {
        VerifyOptions {
            max_vertices,
            threads: 1,
            budget: Budget::default(),
        }
    }
}

/// Two-exceptional-vertex slices with opposite cone points.
const CONE_PAIR_SLICES: [(Family, [usize; 2]); 6] = [
    (Family::Triangulation, [5, 7]),
    (Family::Triangulation, [4, 8]),
    (Family::Triangulation, [3, 9]),
    (Family::Quadrangulation, [3, 5]),
    (Family::Quadrangulation, [2, 6]),
    (Family::Hexangulation, [2, 4]),
];

/// Every two-exceptional slice `{k, 2n̄ − k}`, used for the coloring criterion.
fn all_pair_slices() -> Vec<(Family, [usize; 2])> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let nbar = family.regular_degree();
        for k in 1..nbar {
            out.push((family, [k, 2 * nbar - k]));
        }
    }
    out
}

/// Running tally shared by the checks.
struct Tally {
    report: Report,
    instances: usize,
    failures: usize,
    partial: bool,
    nodes: u64,
    deadline: Option<Instant>,
    opts: VerifyOptions,
}

impl Tally {
    fn new(id: TheoremId, opts: VerifyOptions) -> Self {
        let mut report = Report::new(format!("{id} up to {} vertices", opts.max_vertices));
        report.field("theorem", id);
        report.field("max_vertices", opts.max_vertices);
        Tally {
            report,
            instances: 0,
            failures: 0,
            partial: false,
            nodes: 0,
            deadline: opts
                .budget
                .seconds
                .map(|s| Instant::now() + std::time::Duration::from_secs(s)),
            opts,
        }
    }

    fn fail(&mut self, m: &SurfaceMap, why: impl fmt::Display) {
        self.failures += 1;
        if self.failures <= 20 {
            self.report.fail(format!("{}: {why}", m.name()));
        }
    }

    /// Runs one slice; `check` returns an error message for a bad instance.
    fn slice(
        &mut self,
        spec: &EnumSpec,
        mut check: impl FnMut(&SurfaceMap) -> Result<std::result::Result<(), String>>,
    ) -> Result<usize> {
        let seconds = match self.deadline {
            Some(d) => {
                let left = d.saturating_duration_since(Instant::now()).as_secs();
                if left == 0 {
                    self.partial = true;
                    return Ok(0);
                }
                Some(left)
            }
            None => None,
        };
        let opts = EnumOptions {
            threads: self.opts.threads,
            budget: Budget {
                seconds,
                nodes: self.opts.budget.nodes,
            },
        };
        let (maps, outcome) = collect_with(spec, &opts)?;
        self.nodes += outcome.nodes;
        self.partial |= outcome.partial;
        for m in &maps {
            self.instances += 1;
            let sound = sound(m, spec.family);
            if let Err(why) = sound {
                self.fail(m, why);
                continue;
            }
            if let Err(why) = check(m)? {
                self.fail(m, why);
            }
        }
        let per: Vec<String> = outcome
            .per_size
            .iter()
            .map(|(v, c)| format!("{v}:{c}"))
            .collect();
        self.report.line(format!(
            "{spec}: {} classes [{}]",
            maps.len(),
            per.join(" ")
        ));
        Ok(maps.len())
    }

    fn finish(mut self) -> Report {
        self.report.field("instances", self.instances);
        self.report.field("failures", self.failures);
        self.report.field("nodes", self.nodes);
        self.report.field("partial", self.partial);
        if self.partial {
            self.report
                .fail("budget exhausted before the search finished");
        }
        self.report
    }
}

/// Soundness of an enumerated instance: torus, right faces, counting relations.
fn sound(m: &SurfaceMap, family: Family) -> std::result::Result<(), String> {
    let s = classify_surface(m);
    if !s.is_torus() {
        return Err(format!(
            "not a torus (chi {}, orientable {})",
            s.chi, s.orientable
        ));
    }
    if m.face_lengths().iter().any(|&l| l != family.face_len()) {
        return Err("wrong face length".into());
    }
    let r = check_counting_relations(&degree_profiles(m), Some(family));
    if !r.passed {
        return Err(format!("counting relations fail: {}", r.key_values()));
    }
    let cones = cone_points(m, family).map_err(|e| e.to_string())?;
    if cones.total_units() != 0 {
        return Err("curvature does not sum to zero".into());
    }
    Ok(())
}

fn pair_spec(family: Family, pair: [usize; 2], max_vertices: usize) -> EnumSpec {
    EnumSpec::new(family, max_vertices).exceptional(&pair)
}

/// Runs the exhaustive check for `id` over all maps with at most
/// `opts.max_vertices` vertices. The report fails on any counterexample,
/// on an unexpected absence of instances, or when a budget ran out.
pub fn verify_theorem(id: TheoremId, opts: &VerifyOptions) -> Result<Report> {
    let max = opts.max_vertices;
    let mut t = Tally::new(id, *opts);
    match id {
        TheoremId::T1 | TheoremId::T2 => {
            let (family, pair) = if id == TheoremId::T1 {
                (Family::Triangulation, [5, 7])
            } else {
                (Family::Quadrangulation, [3, 5])
            };
            t.slice(&pair_spec(family, pair, max), |_| {
                Ok(Err("a map exists".into()))
            })?;
        }
        TheoremId::T3 | TheoremId::T4 | TheoremId::T5 => {
            let (family, pair) = match id {
                TheoremId::T3 => (Family::Hexangulation, [2, 4]),
                TheoremId::T4 => (Family::Triangulation, [4, 8]),
                _ => (Family::Quadrangulation, [2, 6]),
            };
            let kind = family.coloring_kind();
            let found = t.slice(&pair_spec(family, pair, max), |m| {
                Ok(match two_colorings(m, kind)? {
                    crate::map::TwoColoring::Colorable(_) => Err(format!("{kind} coloring exists")),
                    crate::map::TwoColoring::Impossible(w) if !w.is_valid_for(m) => {
                        Err("odd-cycle witness does not check".into())
                    }
                    crate::map::TwoColoring::Impossible(_) => Ok(()),
                })
            })?;
            t.report.field("coloring", kind);
            if found == 0 && !t.partial {
                t.report.fail("no instance found; expected at least one");
            }
        }
        TheoremId::Hol => {
            let mut pairs = 0;
            for (family, pair) in CONE_PAIR_SLICES {
                t.slice(&pair_spec(family, pair, max), |m| {
                    pairs += 1;
                    hol_check(m, family)
                })?;
            }
            t.report.field("cone_pairs", pairs);
        }
        TheoremId::L2 => {
            let mut agree_yes = 0;
            let mut neither = 0;
            let mut specs: Vec<EnumSpec> = Family::ALL
                .into_iter()
                .map(|f| EnumSpec::new(f, max).regular())
                .collect();
            specs.extend(
                all_pair_slices()
                    .into_iter()
                    .map(|(f, p)| pair_spec(f, p, max)),
            );
            for spec in specs {
                let family = spec.family;
                t.slice(&spec, |m| {
                    let colorable = two_colorings(m, family.coloring_kind())?.is_colorable();
                    let h = develop(m, family)?.holonomy_group();
                    let bounded = h.is_subgroup_of_cyclic(family.order() / 2);
                    match (colorable, bounded) {
                        (true, true) => agree_yes += 1,
                        (false, false) => neither += 1,
                        _ => {}
                    }
                    Ok(if colorable == bounded {
                        Ok(())
                    } else {
                        Err(format!("colorable={colorable} but H = {h}"))
                    })
                })?;
            }
            t.report.field("colorable_and_bounded", agree_yes);
            t.report.field("neither", neither);
            if agree_yes == 0 || neither == 0 {
                t.report
                    .fail("one direction of the equivalence was never exercised");
            }
        }
        TheoremId::T6 => {
            for family in Family::ALL {
                let vmin = family.min_regular_vertices();
                let spec = EnumSpec::new(family, max).regular();
                t.slice(&spec, |m| {
                    let v = m.vertices().count();
                    let dev = develop(m, family)?;
                    Ok(match dev.translation_lattice() {
                        None => Err("holonomy is not trivial".into()),
                        Some(l) if l.index as usize * vmin != v => {
                            Err(format!("lattice index {} for {v} vertices", l.index))
                        }
                        Some(_) => Ok(()),
                    })
                })?;
            }
            let counts = |v: usize| {
                super::collect_maps(
                    &EnumSpec::new(Family::Triangulation, v)
                        .vertices(v)
                        .regular(),
                )
                .map(|ms| ms.len())
            };
            if max >= 3 {
                let (c2, c3) = (counts(2)?, counts(3)?);
                t.report.field("regular_tri_v2", c2);
                t.report.field("regular_tri_v3", c3);
                if (c2, c3) != (1, 2) {
                    t.report.fail(format!(
                        "regular triangulation counts {c2}, {c3}; expected 1, 2"
                    ));
                }
            }
        }
    }
    Ok(t.finish())
}

/// Holonomy of a two-cone-point torus: `C_{n'}` is a proper subgroup of `H`,
/// `H` is the full rotation group of the lattice, and the commutator of a
/// fundamental pair is a nonzero translation.
fn hol_check(m: &SurfaceMap, family: Family) -> Result<std::result::Result<(), String>> {
    let cones = cone_points(m, family)?;
    let Some(np) = cones.n_prime() else {
        return Ok(Err("cone points are not an opposite pair".into()));
    };
    let dev = develop(m, family)?;
    let h = dev.holonomy_group();
    let order = h.order();
    if order % np != 0 || order <= np {
        return Ok(Err(format!("H = {h} does not properly contain C{np}")));
    }
    if order != family.order() {
        return Ok(Err(format!("H = {h}, expected C{}", family.order())));
    }
    let pair = dev.fundamental_pair()?;
    if !pair.h_commutator.is_translation() || pair.h_commutator.is_identity() {
        return Ok(Err(format!(
            "commutator {} is not a nonzero translation",
            pair.h_commutator
        )));
    }
    if pair.h_alpha.rot == 0 && pair.h_beta.rot == 0 {
        return Ok(Err("both generators are translations".into()));
    }
    Ok(Ok(()))
}
