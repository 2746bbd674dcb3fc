//! Static SVG drawing of the track with both robots' traces.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::geometry::{CircleId, PhysPoint};
use crate::trajectory::SampledTrajectory;

const SIZE: f64 = 480.0;
const RADIUS: f64 = 90.0;

/// Direction from the vertex to the centre of each circle.
fn centre_angle(c: CircleId) -> f64 {
    PI / 2.0 + 2.0 * PI / 3.0 * (c.index() as f64 - 1.0)
}

/// Canvas coordinates of a track position. Circles touch at the canvas centre
/// and increasing `t` runs counterclockwise on screen.
pub fn layout(p: &PhysPoint) -> (f64, f64) {
    let (ox, oy) = (SIZE / 2.0, SIZE / 2.0);
    match *p {
        PhysPoint::Vertex => (ox, oy),
        PhysPoint::OnCircle { circle, t } => {
            let th = centre_angle(circle);
            let (cx, cy) = (RADIUS * th.cos(), RADIUS * th.sin());
            let phi = th + PI + 2.0 * PI * t;
            // Flip y: SVG's axis points down.
            (ox + cx + RADIUS * phi.cos(), oy - (cy + RADIUS * phi.sin()))
        }
    }
}

fn polyline(points: &[(f64, f64)]) -> String {
    let mut s = String::new();
    for (k, (x, y)) in points.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x:.2},{y:.2}");
    }
    s
}

pub fn render_svg(traj: &SampledTrajectory) -> String {
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r##"  <g id="track" fill="none" stroke="#888" stroke-width="2">"##);
    for c in CircleId::ALL {
        let (px, py) = layout(&PhysPoint::pole(c));
        let (cx, cy) = ((px + SIZE / 2.0) / 2.0, (py + SIZE / 2.0) / 2.0);
        let _ = writeln!(out, r#"    <circle cx="{cx:.2}" cy="{cy:.2}" r="{RADIUS}"/>"#);
        let _ = writeln!(
            out,
            r##"    <text x="{px:.2}" y="{:.2}" font-size="14" fill="#444" stroke="none" text-anchor="middle">{c}</text>"##,
            py + if py < SIZE / 2.0 { -8.0 } else { 20.0 }
        );
    }
    let _ = writeln!(out, r##"    <circle cx="{0}" cy="{0}" r="4" fill="#444"/>"##, SIZE / 2.0);
    let _ = writeln!(out, "  </g>");

    let a: Vec<_> = traj.samples.iter().map(|(_, s)| layout(&s.a())).collect();
    let b: Vec<_> = traj.samples.iter().map(|(_, s)| layout(&s.b())).collect();
    for (name, pts, colour, dash) in [("A", &a, "#d62728", ""), ("B", &b, "#1f77b4", r##" stroke-dasharray="6 4""##)] {
        let _ = writeln!(out, r#"  <g id="robot-{name}">"#);
        let _ = writeln!(
            out,
            r#"    <polyline points="{}" fill="none" stroke="{colour}" stroke-width="2.5"{dash}/>"#,
            polyline(pts)
        );
        if let (Some(&(sx, sy)), Some(&(ex, ey))) = (pts.first(), pts.last()) {
            let _ = writeln!(out, r#"    <circle cx="{sx:.2}" cy="{sy:.2}" r="6" fill="{colour}"/>"#);
            let _ = writeln!(
                out,
                r#"    <rect x="{:.2}" y="{:.2}" width="10" height="10" fill="none" stroke="{colour}" stroke-width="2"/>"#,
                ex - 5.0,
                ey - 5.0
            );
        }
        let _ = writeln!(out, "  </g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}
