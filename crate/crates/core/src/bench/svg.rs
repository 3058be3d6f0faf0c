//! SVG rendering of a map with a geometric path and a trajectory.
//!
//! Coordinates are in cells: the viewBox is `0 0 width height` and a
//! position in meters is divided by the cell size.

use std::fmt::Write as _;

use crate::geoplan::GeometricPath;
use crate::gridmap::GridMap;
use crate::steering::{State, Trajectory};

const PATH_STROKE: &str = "#1f77b4";
const TRAJECTORY_STROKE: &str = "#d62728";
const EXTRA_FILL: &str = "#2ca02c";

fn polyline(out: &mut String, pts: impl Iterator<Item = (f64, f64)>, stroke: &str, width: f64, dash: bool) {
    let pts: Vec<String> = pts.map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    if pts.is_empty() {
        return;
    }
    let dash = if dash { r#" stroke-dasharray="1,0.5""# } else { "" };
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"{dash}/>"#,
        pts.join(" ")
    );
}

/// Render `map` with obstacles as filled rects (horizontal runs of blocked
/// cells merged into one rect), `path` as a dashed polyline with waypoint
/// circles, `trajectory` as a solid polyline, and `extra` states as green
/// circles.
pub fn render_svg(
    map: &GridMap,
    path: Option<&GeometricPath>,
    trajectory: Option<&Trajectory>,
    extra: &[State],
) -> String {
    let (w, h) = (map.width(), map.height());
    let cs = map.cell_size();
    let to_cells = |s: &State| (s.x / cs, s.y / cs);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{}" height="{}">"#,
        w * 4,
        h * 4
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    out.push_str("<g fill=\"#404040\">\n");
    for y in 0..h {
        let mut x = 0;
        while x < w {
            if !map.is_blocked(x as i64, y as i64) {
                x += 1;
                continue;
            }
            let x0 = x;
            while x < w && map.is_blocked(x as i64, y as i64) {
                x += 1;
            }
            let _ = writeln!(out, r#"<rect x="{x0}" y="{y}" width="{}" height="1"/>"#, x - x0);
        }
    }
    out.push_str("</g>\n");
    if let Some(p) = path {
        polyline(&mut out, p.waypoints.iter().map(to_cells), PATH_STROKE, 0.4, true);
        for s in &p.waypoints {
            let (x, y) = to_cells(s);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="0.8" fill="{PATH_STROKE}"/>"#);
        }
    }
    if let Some(tr) = trajectory {
        polyline(&mut out, tr.states.iter().map(to_cells), TRAJECTORY_STROKE, 0.5, false);
    }
    for s in extra {
        let (x, y) = to_cells(s);
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="1.2" fill="{EXTRA_FILL}"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
