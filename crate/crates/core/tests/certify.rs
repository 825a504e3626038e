use std::time::Instant;

use torusmaps::enumeration::{
    certify_non_toroidal, certify_with_search, forbidden_profile_graph, min_genus_search, Budget,
    GenusOutcome, ProfileCase, Verdict,
};
use torusmaps::graph::Girth;
use torusmaps::{classify_surface, Graph};

fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            edges.push((u, w));
        }
    }
    Graph::new(format!("k{n}"), n, edges)
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

#[test]
fn case_a_graph_is_certified() {
    let g = forbidden_profile_graph(ProfileCase::A);
    assert_eq!(sorted_degrees(&g), vec![5, 6, 6, 6, 6, 6, 6, 7]);
    assert_eq!(g.girth(), Girth::Finite(3));
    let c = certify_non_toroidal(&g);
    assert_eq!(c.verdict, Verdict::NonToroidalByTheorem);
    assert_eq!(c.case, Some(ProfileCase::A));
    assert_eq!(c.forced_face, Some(3));
}

#[test]
fn case_b_graph_is_certified() {
    let g = forbidden_profile_graph(ProfileCase::B);
    let d = sorted_degrees(&g);
    assert_eq!((d[0], d[1], d[d.len() - 2], d[d.len() - 1]), (3, 4, 4, 5));
    assert!(g.girth().at_least(4));
    let c = certify_non_toroidal(&g);
    assert_eq!(
        (c.verdict, c.case),
        (Verdict::NonToroidalByTheorem, Some(ProfileCase::B))
    );
}

#[test]
fn case_c_graph_is_certified() {
    let g = forbidden_profile_graph(ProfileCase::C);
    let d = sorted_degrees(&g);
    assert_eq!((d[0], d[1], d[d.len() - 2], d[d.len() - 1]), (2, 3, 3, 4));
    assert!(g.girth().at_least(6));
    assert!(g.bipartition().is_ok());
    let c = certify_non_toroidal(&g);
    assert_eq!(
        (c.verdict, c.case),
        (Verdict::NonToroidalByTheorem, Some(ProfileCase::C))
    );
}

#[test]
fn k5_is_inconclusive_by_counting() {
    let c = certify_non_toroidal(&complete(5));
    assert_eq!(c.verdict, Verdict::Unknown);
    assert_eq!(c.forced_face, None);
}

#[test]
fn k5_has_a_torus_witness() {
    let GenusOutcome::Witness { map, genus } = min_genus_search(&complete(5), 1, Budget::default())
    else {
        panic!("K5 embeds in the torus");
    };
    assert_eq!(genus, 1);
    let s = classify_surface(&map);
    assert_eq!((s.chi, s.orientable), (0, true));
    assert_eq!(map.skeleton().edge_count(), 10);
    let c = certify_with_search(&complete(5), Budget::default());
    assert_eq!(c.verdict, Verdict::ToroidalWithWitness);
}

#[test]
fn k4_is_planar() {
    let GenusOutcome::Witness { genus, .. } = min_genus_search(&complete(4), 0, Budget::default())
    else {
        panic!("K4 is planar");
    };
    assert_eq!(genus, 0);
    assert!(matches!(
        min_genus_search(&complete(5), 0, Budget::default()),
        GenusOutcome::Exhausted { .. }
    ));
}

#[test]
fn k8_is_ruled_out_by_counting_alone() {
    assert_eq!(
        min_genus_search(&complete(8), 1, Budget::default()),
        GenusOutcome::Exhausted {
            nodes: 0,
            by_counting: true
        }
    );
}

#[test]
fn case_a_graph_has_no_torus_embedding() {
    let t = Instant::now();
    let out = min_genus_search(
        &forbidden_profile_graph(ProfileCase::A),
        1,
        Budget {
            seconds: Some(600),
            nodes: None,
        },
    );
    assert!(
        matches!(
            out,
            GenusOutcome::Exhausted {
                by_counting: false,
                ..
            }
        ),
        "{out:?}"
    );
    eprintln!("case a search: {:?}", t.elapsed());
}

#[test]
fn search_never_contradicts_a_counting_verdict() {
    for case in [ProfileCase::A, ProfileCase::B] {
        let g = forbidden_profile_graph(case);
        let budget = Budget {
            seconds: Some(20),
            nodes: None,
        };
        assert!(!matches!(
            min_genus_search(&g, 1, budget),
            GenusOutcome::Witness { .. }
        ));
    }
}

#[test]
fn tiny_budget_is_reported() {
    let g = forbidden_profile_graph(ProfileCase::A);
    let out = min_genus_search(
        &g,
        1,
        Budget {
            seconds: None,
            nodes: Some(10),
        },
    );
    assert!(matches!(out, GenusOutcome::BudgetExceeded { .. }));
}

#[test]
fn classic_toroidal_graphs_have_witnesses() {
    let petersen = Graph::new(
        "petersen",
        10,
        vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    );
    let k33 = Graph::new(
        "k33",
        6,
        (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
    );
    for g in [complete(6), complete(7), k33, petersen] {
        match min_genus_search(
            &g,
            1,
            Budget {
                seconds: Some(60),
                nodes: None,
            },
        ) {
            GenusOutcome::Witness { map, genus } => {
                assert_eq!(genus, 1, "{}", g.name());
                assert_eq!(classify_surface(&map).chi, 0);
                let mut got = sorted_degrees(&map.skeleton());
                got.sort_unstable();
                assert_eq!(got, sorted_degrees(&g));
            }
            other => panic!("{}: {other:?}", g.name()),
        }
    }
}

/// Maximum face count over every rotation system, by exhaustion.
fn brute_force_max_faces(g: &Graph) -> usize {
    let e = g.edge_count();
    let mut at = vec![Vec::new(); g.vertex_count()];
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        at[a].push(2 * k);
        at[b].push(2 * k + 1);
    }
    // all cyclic orders of each vertex: fix the first dart, permute the rest
    fn perms(rest: &[usize]) -> Vec<Vec<usize>> {
        if rest.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..rest.len() {
            let mut r = rest.to_vec();
            let x = r.remove(i);
            for mut p in perms(&r) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let choices: Vec<Vec<Vec<usize>>> = at
        .iter()
        .map(|ds| {
            if ds.is_empty() {
                return vec![vec![]];
            }
            perms(&ds[1..])
                .into_iter()
                .map(|mut p| {
                    p.insert(0, ds[0]);
                    p
                })
                .collect()
        })
        .collect();
    let mut best = 0;
    let mut idx = vec![0; choices.len()];
    loop {
        let mut sigma = vec![0; 2 * e];
        for (v, c) in choices.iter().enumerate() {
            let cyc = &c[idx[v]];
            for i in 0..cyc.len() {
                sigma[cyc[i]] = cyc[(i + 1) % cyc.len()];
            }
        }
        let m = torusmaps::SurfaceMap::new("", sigma, None).unwrap();
        best = best.max(m.face_count());
        let mut v = 0;
        loop {
            if v == idx.len() {
                return best;
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

#[test]
fn search_matches_brute_force_genus_on_random_graphs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 40 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(n - 1..=9);
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let g = Graph::new("random", n, edges);
        let work: usize = g
            .degrees()
            .iter()
            .map(|&d| (1..d.max(1)).product::<usize>())
            .product();
        if !g.is_connected() || work > 100_000 {
            continue;
        }
        tested += 1;
        let fmax = brute_force_max_faces(&g);
        let min_genus = (2 + g.edge_count() - n - fmax) / 2;
        for cap in 0..=3u64 {
            let out = min_genus_search(&g, cap, Budget::default());
            let found = matches!(out, GenusOutcome::Witness { .. });
            assert_eq!(
                found,
                cap >= min_genus as u64,
                "{:?} cap {cap}: {out:?}",
                g.edges()
            );
        }
    }
}
