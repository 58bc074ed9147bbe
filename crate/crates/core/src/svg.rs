//! Static SVG drawings of the slice polygon and of gluing diagrams.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use crate::slice::SlicePolytope;
use crate::topology::{sign_copy_facet, EdgeMap, GluedSurface};

const FONT: &str = "font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"middle\"";

fn header(s: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(a: Vec<f64>) -> Vec<f64> {
    let n = dot(&a, &a).sqrt();
    a.into_iter().map(|x| x / n).collect()
}

/// Coordinates of the vertices in an orthonormal basis of the plane
/// orthogonal to `zeta`.
fn planar_coordinates(slice: &SlicePolytope) -> Vec<(f64, f64)> {
    let verts = slice.vertices_f64();
    let z = unit(slice.spec.zeta().to_f64());
    let project = |v: &[f64]| {
        let k = dot(v, &z);
        v.iter().zip(&z).map(|(x, zz)| x - k * zz).collect::<Vec<f64>>()
    };
    let e1 = unit(project(&sub(&verts[1], &verts[0])));
    let e2 = match e1.len() {
        3 => vec![z[1] * e1[2] - z[2] * e1[1], z[2] * e1[0] - z[0] * e1[2], z[0] * e1[1] - z[1] * e1[0]],
        _ => vec![0.0; e1.len()],
    };
    verts.iter().map(|v| (dot(v, &e1), dot(v, &e2))).collect()
}

/// The slice polygon with vertex coordinates and edge labels `E_j`.
pub fn slice_svg(slice: &SlicePolytope) -> String {
    let (size, margin) = (520.0, 100.0);
    let pts = planar_coordinates(slice);
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(f64::MIN_POSITIVE);
    let k = (size - 2.0 * margin) / span;
    let map = |(x, y): (f64, f64)| {
        let px = margin + (x - lo_x) * k + (size - 2.0 * margin - (hi_x - lo_x) * k) / 2.0;
        let py = size - margin - (y - lo_y) * k - (size - 2.0 * margin - (hi_y - lo_y) * k) / 2.0;
        (px, py)
    };
    let screen: Vec<(f64, f64)> = pts.iter().map(|&p| map(p)).collect();
    let n = screen.len() as f64;
    let cx = screen.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = screen.iter().map(|p| p.1).sum::<f64>() / n;

    let mut s = String::new();
    header(&mut s, size, size + 30.0);
    let caption =
        format!("slice: zeta = {}, c = {}", slice.spec.zeta(), crate::linalg::format_rational(slice.spec.level()));
    let _ = writeln!(s, "<text x=\"{:.1}\" y=\"20\" font-size=\"14\" {FONT}>{}</text>", size / 2.0, escape(&caption));
    let path: Vec<String> = screen.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(s, "<g transform=\"translate(0,30)\">");
    let _ =
        writeln!(s, "<polygon points=\"{}\" fill=\"#e8f0fa\" stroke=\"#1f4e79\" stroke-width=\"2\"/>", path.join(" "));
    let push = |x: f64, y: f64, by: f64| {
        let (dx, dy) = (x - cx, y - cy);
        let r = dx.hypot(dy).max(1e-9);
        (x + by * dx / r, y + by * dy / r)
    };
    for e in &slice.edges {
        let (a, b) = (screen[e.from], screen[e.to]);
        let (x, y) = push((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0, 16.0);
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"14\" fill=\"#1f4e79\" {FONT}>E{}</text>",
            e.facet + 1
        );
    }
    for (i, (&(x, y), v)) in screen.iter().zip(&slice.vertices).enumerate() {
        let _ = writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#1f4e79\"/>");
        let (tx, ty) = push(x, y, 22.0);
        let _ = writeln!(
            s,
            "<text x=\"{tx:.2}\" y=\"{ty:.2}\" font-size=\"10\" {FONT}>v{} {}</text>",
            i + 1,
            escape(&v.to_string())
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

/// Spreadsheet-style label for pairing `p`: `a`, ..., `z`, `aa`, ...
fn pair_label(mut p: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (p % 26) as u8);
        if p < 26 {
            break;
        }
        p = p / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// The gluing diagram: one labelled polygon per face, arranged in a grid.
/// Edges carrying the same pairing label are glued; a trailing `~` marks
/// pairings that send start to end. Faces with sign-vector labels also
/// show the facet `E_j` of each edge.
pub fn gluing_svg(surface: &GluedSurface) -> String {
    let faces = surface.face_count();
    let cols = (faces as f64).sqrt().ceil().max(1.0) as usize;
    let rows = faces.div_ceil(cols).max(1);
    let cell = 200.0;
    let radius = 70.0;
    let mut labels: Vec<Vec<String>> = surface.sides.iter().map(|&n| vec![String::new(); n]).collect();
    for (p, pair) in surface.edge_pairings.iter().enumerate() {
        let mut l = pair_label(p);
        if pair.map == EdgeMap::Reversed {
            l.push('~');
        }
        labels[pair.a.0][pair.a.1] = l.clone();
        labels[pair.b.0][pair.b.1] = l;
    }

    let mut s = String::new();
    header(&mut s, cols as f64 * cell, rows as f64 * cell + 30.0);
    let caption = format!(
        "{} faces, {} edges, {} vertices: glue edges with equal labels",
        faces,
        surface.edge_count(),
        surface.vertex_count()
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"18\" font-size=\"13\" {FONT}>{}</text>",
        cols as f64 * cell / 2.0,
        escape(&caption)
    );
    for (f, (&n, face_labels)) in surface.sides.iter().zip(&labels).enumerate() {
        let cx = (f % cols) as f64 * cell + cell / 2.0;
        let cy = (f / cols) as f64 * cell + cell / 2.0 + 30.0;
        // vertex k at angle pi/2 + 2 pi k / n, counter-clockwise on screen
        let corner = |k: usize| {
            let a = PI / 2.0 + TAU * k as f64 / n as f64;
            (cx + radius * a.cos(), cy - radius * a.sin())
        };
        let pts: Vec<String> = (0..n)
            .map(|k| {
                let (x, y) = corner(k);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"#f4f4f4\" stroke=\"#333\" stroke-width=\"1.5\"/>",
            pts.join(" ")
        );
        let title = match &surface.labels[f] {
            Some(sv) => sv.to_string(),
            None => format!("face {}", f + 1),
        };
        let _ = writeln!(
            s,
            "<text x=\"{cx:.2}\" y=\"{cy:.2}\" font-size=\"15\" font-weight=\"bold\" {FONT}>{}</text>",
            escape(&title)
        );
        for (e, label) in face_labels.iter().enumerate() {
            let (a, b) = (corner(e), corner((e + 1) % n));
            let (mx, my) = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let (dx, dy) = (mx - cx, my - cy);
            let r = dx.hypot(dy).max(1e-9);
            let (ox, oy) = (mx + 12.0 * dx / r, my + 12.0 * dy / r);
            let _ = writeln!(
                s,
                "<text x=\"{ox:.2}\" y=\"{oy:.2}\" font-size=\"12\" fill=\"#a01010\" {FONT}>{label}</text>"
            );
            if surface.labels[f].is_some() {
                let (ix, iy) = (mx - 14.0 * dx / r, my - 14.0 * dy / r);
                let facet = sign_copy_facet(e, n) + 1;
                let _ = writeln!(
                    s,
                    "<text x=\"{ix:.2}\" y=\"{iy:.2}\" font-size=\"9\" fill=\"#555\" {FONT}>E{facet}</text>"
                );
            }
        }
    }
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::genus_family;
    use crate::slice::{compute_slice, SliceSpec};
    use crate::topology::build_glued_surface;

    #[test]
    fn labels() {
        assert_eq!(pair_label(0), "a");
        assert_eq!(pair_label(25), "z");
        assert_eq!(pair_label(26), "aa");
        assert_eq!(pair_label(27), "ab");
        assert_eq!(pair_label(52), "ba");
    }

    #[test]
    fn drawings_are_complete_and_stable() {
        let cone = genus_family(2).unwrap();
        let slice = compute_slice(&cone, &SliceSpec::standard(&cone).unwrap()).unwrap();
        let a = slice_svg(&slice);
        assert_eq!(a, slice_svg(&slice));
        for j in 1..=5 {
            assert!(a.contains(&format!(">E{j}<")));
        }
        assert!(!a.contains("NaN"));
        let surface = build_glued_surface(&slice, &cone).unwrap();
        let g = gluing_svg(&surface);
        assert_eq!(g.matches("<polygon").count(), 8);
        // every pairing label appears on exactly two edges
        for p in 0..surface.edge_count() {
            let needle = format!(">{}<", pair_label(p));
            assert_eq!(g.matches(&needle).count(), 2, "{needle}");
        }
        assert!(g.contains(">+-+<"));
        assert!(g.ends_with("</svg>\n"));
    }
}
