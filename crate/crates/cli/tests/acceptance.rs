//! Acceptance suite: one line per criterion, then a non-zero exit if any is red.
//!
//! Runs without the libtest harness so the lines always show under
//! `cargo test`. Bounds and budgets are pinned below.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use torusmaps::constructions::{catalogue, catalogue_family, refine, CATALOGUE};
use torusmaps::enumeration::{
    brute_force_classes, certify_non_toroidal, collect_maps, forbidden_profile_graph,
    min_genus_search, Budget, EnumSpec, GenusOutcome, ProfileCase, Verdict,
};
use torusmaps::holonomy::{develop_in, lemma2_crosscheck};
use torusmaps::map::canonical_form;
use torusmaps::{classify_surface, develop, Family, Graph, SurfaceMap};

/// Per-slice budget handed to the CLI and to the genus search.
const BUDGET_SECONDS: u64 = 600;
const TRI_MAX: usize = 9;
const QUAD_MAX: usize = 10;
const HEX_MAX: usize = 12;
/// Turn sequence of the walk around the regular-vertex loop.
const WALK_TURNS: &str = "0,1,0,1,1,1,0,1,1";

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("torusmaps").chain(args.iter().copied());
    let code = torusmaps_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn field<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs `verify` through the CLI and checks exit 0 and `instances` against `want`.
fn verify(theorem: &str, max: usize, want: impl Fn(usize) -> bool) -> Result<String, String> {
    let max_s = max.to_string();
    let budget = BUDGET_SECONDS.to_string();
    let (code, out) = cli(&[
        "verify",
        "--theorem",
        theorem,
        "--max-vertices",
        &max_s,
        "--budget-seconds",
        &budget,
    ]);
    ensure(code == 0, format!("{theorem}: exit {code}\n{out}"))?;
    ensure(
        field(&out, "partial") == Some("false"),
        format!("{theorem}: partial run"),
    )?;
    let n: usize = field(&out, "instances")
        .and_then(|s| s.parse().ok())
        .ok_or(format!("{theorem}: no instances field"))?;
    ensure(want(n), format!("{theorem}: {n} instances"))?;
    Ok(out)
}

fn slice(family: Family, max: usize, degrees: &[usize]) -> Vec<SurfaceMap> {
    collect_maps(&EnumSpec::new(family, max).exceptional(degrees)).expect("enumeration")
}

fn criterion_1() -> Check {
    let t = Instant::now();
    verify("T1", TRI_MAX, |n| n == 0)?;
    let secs = t.elapsed();
    ensure(secs < Duration::from_secs(BUDGET_SECONDS), "T1 over budget")?;
    let dir = std::env::temp_dir().join(format!("torusmaps-accept-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = dir.join("fig2b.map");
    let file_s = file.to_string_lossy().to_string();
    let (code, _) = cli(&["catalogue", "fig2b", "--out", &file_s]);
    ensure(code == 0, "catalogue fig2b failed")?;
    let (code, out) = cli(&["validate", &file_s]);
    let _ = fs::remove_dir_all(&dir);
    ensure(code == 0, format!("fig2b does not validate\n{out}"))?;
    ensure(
        field(&out, "chi") == Some("0") && field(&out, "orientable") == Some("false"),
        "fig2b is not a Klein bottle",
    )?;
    let degrees = {
        let mut d = catalogue("fig2b").unwrap().vertex_degrees();
        d.sort_unstable();
        d
    };
    ensure(
        degrees == [5, 6, 6, 6, 7],
        format!("fig2b degrees {degrees:?}"),
    )?;
    Ok(format!(
        "T1 V<={TRI_MAX}: 0 instances in {:.2}s; fig2b Klein bottle validates",
        secs.as_secs_f64()
    ))
}

fn criterion_2() -> Check {
    let t = Instant::now();
    verify("T2", QUAD_MAX, |n| n == 0)?;
    Ok(format!(
        "T2 V<={QUAD_MAX}: 0 instances in {:.2}s",
        t.elapsed().as_secs_f64()
    ))
}

fn criterion_3() -> Check {
    let mut parts = Vec::new();
    for (id, max, family, fig) in [
        ("T3", HEX_MAX, Family::Hexangulation, "fig5a"),
        ("T4", TRI_MAX, Family::Triangulation, "fig3a"),
        ("T5", QUAD_MAX, Family::Quadrangulation, "fig4a"),
    ] {
        let out = verify(id, max, |n| n >= 1)?;
        ensure(
            field(&out, "failures") == Some("0"),
            format!("{id}: a map was colorable"),
        )?;
        let n = field(&out, "instances").unwrap();
        // the smallest figure is in the slice at V = 2
        let m = catalogue(fig).unwrap();
        ensure(m.vertices().count() == 2, format!("{fig} is not at V = 2"))?;
        let r = lemma2_crosscheck(&m, family).map_err(|e| e.to_string())?;
        ensure(
            r.get("colorable") == Some("false"),
            format!("{fig} is colorable"),
        )?;
        parts.push(format!("{id} {n} maps"));
    }
    Ok(format!("{}; 0 colorings", parts.join(", ")))
}

/// Two-cone-point slices with the exact group each must have.
fn cone_pair_slices() -> Vec<(Family, usize, [usize; 2], u32)> {
    vec![
        (Family::Triangulation, TRI_MAX, [4, 8], 6),
        (Family::Triangulation, TRI_MAX, [3, 9], 6),
        (Family::Hexangulation, HEX_MAX, [2, 4], 6),
        (Family::Quadrangulation, QUAD_MAX, [2, 6], 4),
        (Family::Triangulation, TRI_MAX, [5, 7], 6),
        (Family::Quadrangulation, QUAD_MAX, [3, 5], 4),
    ]
}

fn criterion_4() -> Check {
    verify("HOL", HEX_MAX, |n| n >= 1)?;
    let mut total = 0;
    for (family, max, pair, want) in cone_pair_slices() {
        for m in slice(family, max, &pair) {
            let cones = torusmaps::cone_points(&m, family).map_err(|e| e.to_string())?;
            let n_prime = cones
                .n_prime()
                .ok_or(format!("{}: not a cone pair", m.name()))?;
            let h = develop(&m, family)
                .map_err(|e| e.to_string())?
                .holonomy_group()
                .order();
            ensure(
                h % n_prime == 0 && h > n_prime,
                format!("{}: |H| = {h}, n' = {n_prime}", m.name()),
            )?;
            ensure(
                h == want,
                format!("{}: H = C{h}, expected C{want}", m.name()),
            )?;
            total += 1;
        }
    }
    ensure(total > 0, "no two-cone-point tori")?;
    Ok(format!(
        "{total} two-cone-point tori, n' | |H| > n', exact C6/C4, 0 exceptions"
    ))
}

fn criterion_5() -> Check {
    verify("L2", HEX_MAX, |n| n >= 1)?;
    let mut maps: Vec<(SurfaceMap, Family)> = Vec::new();
    for (family, max) in [
        (Family::Triangulation, TRI_MAX),
        (Family::Quadrangulation, QUAD_MAX),
        (Family::Hexangulation, HEX_MAX),
    ] {
        maps.extend(slice(family, max, &[]).into_iter().map(|m| (m, family)));
    }
    for (family, max, pair, _) in cone_pair_slices() {
        maps.extend(slice(family, max, &pair).into_iter().map(|m| (m, family)));
    }
    let (mut forward, mut backward) = (0, 0);
    for (m, family) in &maps {
        let r = lemma2_crosscheck(m, *family).map_err(|e| e.to_string())?;
        let colorable = r.get("colorable") == Some("true");
        let half = family.order() / 2;
        let bounded = r.get(&format!("h_in_c{half}")) == Some("true");
        // each direction on its own
        if colorable {
            ensure(
                bounded,
                format!("{}: colorable but H not in C{half}", m.name()),
            )?;
            forward += 1;
        }
        if bounded {
            ensure(
                colorable,
                format!("{}: H in C{half} but not colorable", m.name()),
            )?;
            backward += 1;
        }
    }
    ensure(
        forward > 0 && forward < maps.len(),
        "one side of the equivalence never exercised",
    )?;
    Ok(format!(
        "{} maps agree; colorable=>bounded {forward}, bounded=>colorable {backward}",
        maps.len()
    ))
}

fn criterion_6() -> Check {
    let out = verify("T6", 9, |n| n >= 1)?;
    ensure(
        field(&out, "regular_tri_v2") == Some("1"),
        "regular triangulations at V = 2",
    )?;
    ensure(
        field(&out, "regular_tri_v3") == Some("2"),
        "regular triangulations at V = 3",
    )?;
    let mut n = 0;
    for family in [
        Family::Triangulation,
        Family::Quadrangulation,
        Family::Hexangulation,
    ] {
        let vmin = family.min_regular_vertices();
        for m in slice(family, 9, &[]) {
            let v = m.vertices().count();
            let dev = develop(&m, family).map_err(|e| e.to_string())?;
            let t = dev
                .translation_lattice()
                .ok_or(format!("{}: no translation lattice", m.name()))?;
            ensure(
                t.index as usize * vmin == v,
                format!("{}: index {} at V = {v}", m.name(), t.index),
            )?;
            n += 1;
        }
    }
    Ok(format!(
        "{n} regular maps V<=9 have index V/Vmin; tri counts V2=1, V3=2"
    ))
}

fn criterion_7() -> Check {
    let (code, out) = cli(&["walk", "--turns", WALK_TURNS, "--family", "triangulation"]);
    ensure(code == 0, "walk failed")?;
    ensure(
        field(&out, "rotation") == Some("0"),
        format!("walk rotation {:?}", field(&out, "rotation")),
    )?;
    ensure(
        field(&out, "translation_norm") == Some("1"),
        "walk translation is not a unit",
    )?;
    let m =
        refine(&catalogue("fig3a").unwrap(), Family::Triangulation).map_err(|e| e.to_string())?;
    let pair = develop(&m, Family::Triangulation)
        .and_then(|d| d.fundamental_pair())
        .map_err(|e| e.to_string())?;
    let c = &pair.h_commutator;
    ensure(
        c.rot == 0 && !c.trans.is_zero(),
        format!("commutator {c:?}"),
    )?;
    ensure(
        pair.h_alpha.rot != 0 || pair.h_beta.rot != 0,
        "both generators are translations",
    )?;
    Ok(format!(
        "walk: rot 0, unit step; refined fig3a: [a,b] = {}, rot(a)={} rot(b)={}",
        c.trans, pair.h_alpha.rot, pair.h_beta.rot
    ))
}

fn complete(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::new(format!("K{n}"), n, edges)
}

fn criterion_8() -> Check {
    for (case, profile) in [
        (ProfileCase::A, (6, 3)),
        (ProfileCase::B, (4, 4)),
        (ProfileCase::C, (3, 6)),
    ] {
        let g = forbidden_profile_graph(case);
        let (k, girth) = profile;
        let mut ds = g.degrees();
        ds.sort_unstable();
        let mut want = vec![k - 1, k + 1];
        want.resize(g.vertex_count(), k);
        want.sort_unstable();
        ensure(ds == want, format!("case {case} degrees"))?;
        ensure(g.girth().at_least(girth), format!("case {case} girth"))?;
        let cert = certify_non_toroidal(&g);
        ensure(
            cert.verdict == Verdict::NonToroidalByTheorem && cert.case == Some(case),
            format!("case {case}: {}", cert.verdict),
        )?;
    }
    let budget = Budget {
        seconds: Some(BUDGET_SECONDS),
        nodes: None,
    };
    let GenusOutcome::Witness { map, genus } = min_genus_search(&complete(5), 1, budget) else {
        return Err("K5: no torus witness".into());
    };
    let s = classify_surface(&map);
    ensure(
        genus == 1 && s.chi == 0 && s.orientable,
        "K5 witness is not a torus",
    )?;
    ensure(
        map.skeleton().edge_count() == 10,
        "K5 witness has the wrong skeleton",
    )?;
    let g = forbidden_profile_graph(ProfileCase::A);
    ensure(
        g.vertex_count() == 8 && g.edge_count() == 3 * 8,
        "{5,6^6,7} graph is not E = 3V",
    )?;
    let t = Instant::now();
    let outcome = min_genus_search(&g, 1, budget);
    let GenusOutcome::Exhausted { nodes, .. } = outcome else {
        return Err(format!("{{5,6^6,7}}: {outcome:?}"));
    };
    Ok(format!(
        "cases a/b/c certified; K5 torus witness chi=0; {{5,6^6,7}} exhausted ({nodes} nodes, {:.2}s)",
        t.elapsed().as_secs_f64()
    ))
}

fn criterion_9() -> Check {
    let mut parts = Vec::new();
    for (family, max) in [
        (Family::Triangulation, 2),
        (Family::Quadrangulation, 2),
        (Family::Hexangulation, 3),
    ] {
        let mut n = 0;
        for v in 1..=max {
            let brute: BTreeSet<_> = brute_force_classes(family, v, None).into_keys().collect();
            let search: BTreeSet<_> = collect_maps(&EnumSpec::new(family, v).vertices(v))
                .map_err(|e| e.to_string())?
                .iter()
                .map(canonical_form)
                .collect();
            ensure(
                brute == search,
                format!("{family} V={v}: {} vs {}", brute.len(), search.len()),
            )?;
            n += brute.len();
        }
        parts.push(format!("{family} V<={max}: {n}"));
    }
    Ok(parts.join(", "))
}

/// Source files of the library that may mention floating-point types.
const FLOAT_ALLOWED: &[&str] = &["svg.rs"];

fn rust_files(dir: &Path, out: &mut Vec<std::path::PathBuf>) {
    for e in fs::read_dir(dir).expect("source dir").flatten() {
        let p = e.path();
        if p.is_dir() {
            rust_files(&p, out);
        } else if p.extension().is_some_and(|x| x == "rs") {
            out.push(p);
        }
    }
}

fn criterion_10() -> Check {
    // no float type anywhere on the computation path
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/src");
    let mut files = Vec::new();
    rust_files(&src, &mut files);
    ensure(!files.is_empty(), "no sources found")?;
    for f in &files {
        if FLOAT_ALLOWED.iter().any(|a| f.ends_with(a)) {
            continue;
        }
        let text = fs::read_to_string(f).map_err(|e| e.to_string())?;
        let hit = text.lines().position(|l| {
            l.split(|c: char| !c.is_alphanumeric() && c != '_')
                .any(|w| w == "f32" || w == "f64" || w == "Float")
        });
        if let Some(i) = hit {
            return Err(format!("floating point in {}:{}", f.display(), i + 1));
        }
    }
    // every fixture develops identically over arbitrary-precision integers
    let mut fixtures: Vec<(SurfaceMap, Family)> = CATALOGUE
        .iter()
        .map(|n| (catalogue(n).unwrap(), catalogue_family(n).unwrap()))
        .filter(|(m, _)| m.is_orientable())
        .collect();
    fixtures.push((
        refine(&catalogue("fig3a").unwrap(), Family::Triangulation).unwrap(),
        Family::Triangulation,
    ));
    for (family, max, pair, _) in cone_pair_slices() {
        fixtures.extend(slice(family, max, &pair).into_iter().map(|m| (m, family)));
    }
    let big = |x: &i64| BigInt::from(*x);
    for (m, family) in &fixtures {
        let a = develop(m, *family).map_err(|e| e.to_string())?;
        let b = develop_in::<BigInt>(m, *family).map_err(|e| e.to_string())?;
        for d in 0..m.dart_count() {
            let (p, u) = a.dart_geometry(d);
            let (q, w) = b.dart_geometry(d);
            ensure(
                p.map_coefficients(big) == q && u.map_coefficients(big) == w,
                format!("{}: dart {d}", m.name()),
            )?;
        }
        let (pa, pb) = (a.fundamental_pair(), b.fundamental_pair());
        if let (Ok(pa), Ok(pb)) = (pa, pb) {
            ensure(
                pa.h_commutator.rot == pb.h_commutator.rot
                    && pa.h_commutator.trans.map_coefficients(big) == pb.h_commutator.trans,
                format!("{}: commutator differs", m.name()),
            )?;
        }
    }
    Ok(format!(
        "{} source files float-free outside svg.rs; {} developments equal in i64 and BigInt",
        files.len() - FLOAT_ALLOWED.len(),
        fixtures.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("5,7 triangulations absent", criterion_1),
        ("3,5 quadrangulations absent", criterion_2),
        ("2-colorings fail", criterion_3),
        ("holonomy of cone pairs", criterion_4),
        ("coloring vs holonomy", criterion_5),
        ("regular translation lattices", criterion_6),
        ("Burgers fixtures", criterion_7),
        ("non-toroidality", criterion_8),
        ("oracle equivalence", criterion_9),
        ("exactness", criterion_10),
    ];
    let mut red = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                red += 1;
                println!("[FAIL] {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {red} failed", criteria.len() - red);
    if red > 0 {
        std::process::exit(1);
    }
}
