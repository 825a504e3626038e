//! Independent brute-force generator, for cross-checking the gluing search
//! on small sizes. Every face permutation of the right cycle type is built
//! and the results are deduplicated by canonical form.

use std::collections::BTreeMap;

use crate::cone_metric::Family;
use crate::map::{canonical_form, CanonicalForm, SurfaceMap};

/// One orientable map per class with `v` vertices, keyed by canonical form.
/// With `degrees`, only maps with that sorted degree multiset are kept.
///
/// Cost grows like `(2E)! / (n^F F!)`; meant for a handful of darts.
pub fn brute_force_classes(
    family: Family,
    v: usize,
    degrees: Option<&[usize]>,
) -> BTreeMap<CanonicalForm, SurfaceMap> {
    let mut out = BTreeMap::new();
    let Some(faces) = family.faces_for_vertices(v).filter(|&f| f > 0) else {
        return out;
    };
    let n = family.face_len();
    let darts = n * faces;
    let want: Option<Vec<usize>> = degrees.map(|d| {
        let mut d = d.to_vec();
        d.sort_unstable();
        d
    });
    let mut phi = vec![usize::MAX; darts];
    let mut used = vec![false; darts];
    let mut visit = |phi: &[usize]| {
        let Ok(m) = SurfaceMap::from_phi("", phi) else {
            return;
        };
        let mut ds = m.vertex_degrees();
        if ds.len() != v {
            return;
        }
        if let Some(w) = &want {
            ds.sort_unstable();
            if &ds != w {
                return;
            }
        }
        out.entry(canonical_form(&m)).or_insert(m);
    };
    cycles(n, &mut phi, &mut used, &mut visit);
    out
}

/// All permutations made of `n`-cycles, each cycle led by its least dart.
fn cycles(n: usize, phi: &mut [usize], used: &mut [bool], visit: &mut impl FnMut(&[usize])) {
    let Some(first) = used.iter().position(|&u| !u) else {
        visit(phi);
        return;
    };
    used[first] = true;
    let mut cycle = vec![first];
    extend(n, first, &mut cycle, phi, used, visit);
    used[first] = false;
}

fn extend(
    n: usize,
    first: usize,
    cycle: &mut Vec<usize>,
    phi: &mut [usize],
    used: &mut [bool],
    visit: &mut impl FnMut(&[usize]),
) {
    if cycle.len() == n {
        for i in 0..n {
            phi[cycle[i]] = cycle[(i + 1) % n];
        }
        cycles(n, phi, used, visit);
        return;
    }
    for d in first + 1..used.len() {
        if used[d] {
            continue;
        }
        used[d] = true;
        cycle.push(d);
        extend(n, first, cycle, phi, used, visit);
        cycle.pop();
        used[d] = false;
    }
}
