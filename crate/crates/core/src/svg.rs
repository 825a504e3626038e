//! SVG pictures of developments. This is the only place where exact lattice
//! coordinates become floating point.

use std::fmt::Write;

use num_traits::Float;

use crate::cone_metric::Family;
use crate::error::{Error, Result};
use crate::holonomy::{develop, DualLoop};
use crate::lattice::{Lattice, LatticeMotion, LatticePoint};
use crate::map::SurfaceMap;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Pixels per unit edge.
    pub scale: f64,
    /// For flat maps, draw a `copies × copies` block of translated domains.
    pub copies: usize,
    /// Dual loop to highlight.
    pub highlight: Option<DualLoop>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 40.0,
            copies: 1,
            highlight: None,
        }
    }
}

/// Plane coordinates of a lattice point: `(a + b/2, b·√3/2)` or `(a, b)`.
fn to_plane<F: Float>(p: &LatticePoint<i64>) -> (F, F) {
    let a = F::from(p.a).expect("finite");
    let b = F::from(p.b).expect("finite");
    match p.lattice {
        Lattice::Eisenstein => {
            let half = F::from(0.5).expect("finite");
            let h = F::from(3.0).expect("finite").sqrt() * half;
            (a + b * half, b * h)
        }
        Lattice::Gaussian => (a, b),
    }
}

struct Canvas<F> {
    polygons: Vec<(Vec<(F, F)>, bool)>,
    lines: Vec<Vec<(F, F)>>,
}

impl<F: Float + std::fmt::Display> Canvas<F> {
    fn bounds(&self) -> (F, F, F, F) {
        let mut lo = (F::infinity(), F::infinity());
        let mut hi = (F::neg_infinity(), F::neg_infinity());
        let pts = self
            .polygons
            .iter()
            .flat_map(|(p, _)| p.iter())
            .chain(self.lines.iter().flatten());
        for &(x, y) in pts {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        (lo.0, lo.1, hi.0, hi.1)
    }

    fn render(&self, scale: F) -> String {
        let (x0, y0, x1, y1) = self.bounds();
        let margin = F::from(0.5).expect("finite");
        let w = (x1 - x0 + margin + margin) * scale;
        let h = (y1 - y0 + margin + margin) * scale;
        // flip y so the picture reads counterclockwise
        let tx = |x: F| (x - x0 + margin) * scale;
        let ty = |y: F| (y1 - y + margin) * scale;
        let pts = |ps: &[(F, F)]| {
            ps.iter()
                .map(|&(x, y)| format!("{:.3},{:.3}", tx(x), ty(y)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.3}\" height=\"{h:.3}\" viewBox=\"0 0 {w:.3} {h:.3}\">"
        );
        for (poly, copy) in &self.polygons {
            let fill = if *copy { "#eeeeee" } else { "#dde8f4" };
            let _ = writeln!(
                s,
                "  <polygon class=\"face\" points=\"{}\" fill=\"{fill}\" stroke=\"#333333\" stroke-width=\"1\"/>",
                pts(poly)
            );
        }
        for line in &self.lines {
            let _ = writeln!(
                s,
                "  <polyline class=\"loop\" points=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"3\"/>",
                pts(line)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn centroid<F: Float>(pts: &[LatticePoint<i64>]) -> (F, F) {
    let n = F::from(pts.len()).expect("finite");
    let (sx, sy) = pts
        .iter()
        .map(to_plane::<F>)
        .fold((F::zero(), F::zero()), |(ax, ay), (x, y)| (ax + x, ay + y));
    (sx / n, sy / n)
}

/// Draws every face of the development once (in its spanning-tree position),
/// plus translated copies for flat maps and an optional highlighted loop.
pub fn render_svg(m: &SurfaceMap, family: Family, opts: &RenderOptions) -> Result<String> {
    if m.is_empty() {
        return Err(Error::EmptyMap);
    }
    let dev = develop(m, family)?;
    let corners = |f: usize| -> Vec<LatticePoint<i64>> {
        dev.face_darts(f)
            .iter()
            .map(|&d| dev.dart_geometry(d).0)
            .collect()
    };
    let mut canvas: Canvas<f64> = Canvas {
        polygons: Vec::new(),
        lines: Vec::new(),
    };
    let shifts: Vec<LatticePoint<i64>> = match (opts.copies > 1, dev.translation_lattice()) {
        (true, Some(t)) => {
            let k = opts.copies as i64;
            (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let u = t.basis.u.clone();
                    let v = t.basis.v.clone();
                    LatticePoint::new(u.lattice, i * u.a + j * v.a, i * u.b + j * v.b)
                })
                .collect()
        }
        _ => vec![LatticePoint::zero(dev.lattice())],
    };
    for shift in &shifts {
        for f in 0..dev.face_count() {
            let poly = corners(f)
                .into_iter()
                .map(|p| to_plane(&(p + shift.clone())))
                .collect();
            canvas.polygons.push((poly, !shift.is_zero()));
        }
    }
    if let Some(lp) = &opts.highlight {
        dev.validate_loop(lp)?;
        if !lp.is_empty() {
            let f0 = dev.face_of(lp.crossings[0]);
            let mut at: LatticeMotion<i64> = dev.frame(f0).clone();
            let mut line = Vec::new();
            let mut face = f0;
            for &d in &lp.crossings {
                let place = at.compose(&dev.frame(face).inverse());
                let pts: Vec<_> = corners(face).iter().map(|p| place.apply(p)).collect();
                line.push(centroid(&pts));
                at = at.compose(&dev.gluing(d));
                face = dev.face_of(d ^ 1);
            }
            let place = at.compose(&dev.frame(face).inverse());
            let pts: Vec<_> = corners(face).iter().map(|p| place.apply(p)).collect();
            line.push(centroid(&pts));
            canvas.lines.push(line);
        }
    }
    Ok(canvas.render(opts.scale))
}
