use std::collections::BTreeSet;

use torusmaps::enumeration::{
    brute_force_classes, collect_maps, enumerate_maps, Budget, EnumOptions, EnumSpec,
};
use torusmaps::map::canonical_form;
use torusmaps::{classify_surface, Family};

fn forms(spec: &EnumSpec) -> BTreeSet<torusmaps::map::CanonicalForm> {
    let maps = collect_maps(spec).unwrap();
    let set: BTreeSet<_> = maps.iter().map(canonical_form).collect();
    assert_eq!(set.len(), maps.len(), "duplicate class in {spec}");
    set
}

fn oracle_matches(family: Family, v: usize, degrees: Option<&[usize]>) {
    let mut spec = EnumSpec::new(family, v).vertices(v);
    if let Some(d) = degrees {
        let regular = family.regular_degree();
        let exc: Vec<usize> = d.iter().copied().filter(|&x| x != regular).collect();
        spec = spec.exceptional(&exc);
    }
    let oracle: BTreeSet<_> = brute_force_classes(family, v, degrees)
        .into_keys()
        .collect();
    assert_eq!(forms(&spec), oracle, "{spec}");
}

#[test]
fn tri_one_vertex_matches_brute_force() {
    oracle_matches(Family::Triangulation, 1, None);
}

#[test]
fn tri_two_vertices_matches_brute_force() {
    oracle_matches(Family::Triangulation, 2, None);
    oracle_matches(Family::Triangulation, 2, Some(&[4, 8]));
    oracle_matches(Family::Triangulation, 2, Some(&[6, 6]));
}

#[test]
fn quad_small_matches_brute_force() {
    oracle_matches(Family::Quadrangulation, 1, None);
    oracle_matches(Family::Quadrangulation, 2, None);
    oracle_matches(Family::Quadrangulation, 2, Some(&[2, 6]));
}

#[test]
fn hex_two_vertices_matches_brute_force() {
    oracle_matches(Family::Hexangulation, 2, None);
}

#[test]
fn off_euler_profiles_are_empty() {
    let spec = EnumSpec::new(Family::Triangulation, 2)
        .vertices(2)
        .exceptional(&[5, 8]);
    assert!(collect_maps(&spec).unwrap().is_empty());
}

#[test]
fn every_output_is_a_torus_with_the_right_faces() {
    for family in Family::ALL {
        for m in collect_maps(&EnumSpec::new(family, 4)).unwrap() {
            let s = classify_surface(&m);
            assert!(s.is_torus(), "{}", m.name());
            assert!(m.face_lengths().iter().all(|&l| l == family.face_len()));
        }
    }
}

#[test]
fn twisted_gluings_give_klein_bottles_or_tori() {
    let spec = EnumSpec::new(Family::Triangulation, 3).non_orientable();
    let maps = collect_maps(&spec).unwrap();
    let mut klein = 0;
    for m in &maps {
        let s = classify_surface(m);
        assert_eq!(s.chi, 0, "{}", m.name());
        assert!(m.face_lengths().iter().all(|&l| l == 3));
        if !m.is_orientable() {
            klein += 1;
        }
    }
    let tori = collect_maps(&EnumSpec::new(Family::Triangulation, 3))
        .unwrap()
        .len();
    assert_eq!(maps.len() - klein, tori);
    assert!(klein > 0);
}

#[test]
fn parallel_run_agrees_with_serial() {
    let spec = EnumSpec::new(Family::Triangulation, 4);
    let serial = forms(&spec);
    let mut par = BTreeSet::new();
    let opts = EnumOptions {
        threads: 4,
        budget: Budget::default(),
    };
    let out = enumerate_maps(&spec, &opts, |m| {
        par.insert(canonical_form(m));
    })
    .unwrap();
    assert!(!out.partial);
    assert_eq!(out.count, serial.len());
    assert_eq!(par, serial);
}

#[test]
fn node_budget_marks_partial() {
    let spec = EnumSpec::new(Family::Triangulation, 6);
    let opts = EnumOptions {
        threads: 1,
        budget: Budget {
            seconds: None,
            nodes: Some(50),
        },
    };
    let out = enumerate_maps(&spec, &opts, |_| {}).unwrap();
    assert!(out.partial);
}

/// Regular maps from the search equal the quotients of the regular tiling
/// by every sublattice of the right index (checked independently).
#[test]
fn regular_classes_are_exactly_the_lattice_quotients() {
    use torusmaps::constructions::lattice_quotient;
    use torusmaps::{Basis, Point};
    for family in Family::ALL {
        let lat = family.lattice();
        for v in 1..=9 {
            let Some(_) = family.faces_for_vertices(v) else {
                continue;
            };
            let det = match family {
                Family::Hexangulation => 3 * v / 2,
                _ => v,
            } as i64;
            let mut quotients = BTreeSet::new();
            for a in 1..=det {
                if det % a != 0 {
                    continue;
                }
                let c = det / a;
                for b in 0..a {
                    let basis = Basis::new(Point::new(lat, a, 0), Point::new(lat, b, c));
                    if let Ok(m) = lattice_quotient(&basis, family) {
                        quotients.insert(canonical_form(&m));
                    }
                }
            }
            let search = forms(&EnumSpec::new(family, v).vertices(v).regular());
            assert_eq!(search, quotients, "{family} V={v}");
        }
    }
}

/// Degree pruning loses nothing: filtering the unconstrained stream by
/// degree multiset gives the same classes as the constrained search.
#[test]
fn constrained_search_agrees_with_filtered_unconstrained() {
    use std::collections::BTreeMap;
    for (family, vmax) in [
        (Family::Triangulation, 4),
        (Family::Quadrangulation, 5),
        (Family::Hexangulation, 6),
    ] {
        for v in 1..=vmax {
            let mut by_profile: BTreeMap<Vec<usize>, BTreeSet<_>> = BTreeMap::new();
            for m in collect_maps(&EnumSpec::new(family, v).vertices(v)).unwrap() {
                let regular = family.regular_degree();
                let mut exc: Vec<usize> = m
                    .vertex_degrees()
                    .into_iter()
                    .filter(|&d| d != regular)
                    .collect();
                exc.sort_unstable();
                by_profile
                    .entry(exc)
                    .or_default()
                    .insert(canonical_form(&m));
            }
            for (exc, classes) in by_profile {
                let spec = EnumSpec::new(family, v).vertices(v).exceptional(&exc);
                assert_eq!(forms(&spec), classes, "{spec}");
            }
        }
    }
}
