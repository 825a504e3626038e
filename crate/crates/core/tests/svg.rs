use torusmaps::constructions::{catalogue, catalogue_family, CATALOGUE};
use torusmaps::{develop, render_svg, Error, Family, RenderOptions, SurfaceMap};

const FIG3A_LOOP: &str = include_str!("golden/fig3a_loop.svg");

fn count(svg: &str, tag: &str) -> usize {
    svg.matches(&format!("<{tag} ")).count()
}

/// Loop around the degree-4 vertex of fig3a.
fn fig3a_with_loop() -> RenderOptions {
    let m = catalogue("fig3a").unwrap();
    let dev = develop(&m, Family::Triangulation).unwrap();
    let v = m.vertex_degrees().iter().position(|&d| d == 4).unwrap();
    let d = m.vertices().cycle(v)[0];
    RenderOptions {
        highlight: Some(dev.vertex_loop(d)),
        ..RenderOptions::default()
    }
}

#[test]
fn fig1a_draws_two_triangles() {
    let svg = render_svg(
        &catalogue("fig1a").unwrap(),
        Family::Triangulation,
        &RenderOptions::default(),
    )
    .unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("version=\"1.1\""));
    assert_eq!(count(&svg, "polygon"), 2);
    assert_eq!(count(&svg, "polyline"), 0);
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn fig3a_loop_matches_reviewed_golden() {
    let m = catalogue("fig3a").unwrap();
    let svg = render_svg(&m, Family::Triangulation, &fig3a_with_loop()).unwrap();
    assert_eq!(count(&svg, "polygon"), 4);
    assert_eq!(count(&svg, "polyline"), 1);
    assert_eq!(svg, FIG3A_LOOP);
}

#[test]
fn loop_polyline_closes_only_up_to_its_holonomy() {
    // the degree-4 vertex has rotation, so the polyline has one point per
    // crossing plus the return face
    let opts = fig3a_with_loop();
    let k = opts.highlight.as_ref().unwrap().len();
    let svg = render_svg(&catalogue("fig3a").unwrap(), Family::Triangulation, &opts).unwrap();
    let line = svg.lines().find(|l| l.contains("<polyline")).unwrap();
    let pts = line
        .split("points=\"")
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    assert_eq!(pts.split(' ').count(), k + 1);
}

#[test]
fn every_entry_renders_one_polygon_per_face() {
    for name in CATALOGUE {
        let m = catalogue(name).unwrap();
        let family = catalogue_family(name).unwrap();
        let res = render_svg(&m, family, &RenderOptions::default());
        if !m.is_orientable() {
            assert!(res.is_err(), "{name}");
            continue;
        }
        assert_eq!(count(&res.unwrap(), "polygon"), m.face_count(), "{name}");
    }
}

#[test]
fn copies_tile_flat_maps_only() {
    let opts = RenderOptions {
        copies: 3,
        ..RenderOptions::default()
    };
    let flat = render_svg(&catalogue("fig1b").unwrap(), Family::Triangulation, &opts).unwrap();
    assert_eq!(count(&flat, "polygon"), 9 * 4);
    let cone = render_svg(&catalogue("fig3a").unwrap(), Family::Triangulation, &opts).unwrap();
    assert_eq!(count(&cone, "polygon"), 4);
}

#[test]
fn empty_map_has_nothing_to_develop() {
    let err = render_svg(
        &SurfaceMap::empty("e"),
        Family::Triangulation,
        &RenderOptions::default(),
    )
    .unwrap_err();
    assert_eq!(err, Error::EmptyMap);
}

#[test]
fn rendering_is_deterministic() {
    let m = catalogue("fig4b").unwrap();
    let a = render_svg(&m, Family::Quadrangulation, &RenderOptions::default()).unwrap();
    let b = render_svg(&m, Family::Quadrangulation, &RenderOptions::default()).unwrap();
    assert_eq!(a, b);
}
