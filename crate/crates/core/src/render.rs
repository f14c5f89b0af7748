//! Static SVG output of a map with an optional tree and overlaid paths.
//!
//! Every drawn item carries a `class` so the output can be inspected
//! mechanically: `obstacle`, `tree-edge`, `path`, `waypoint`, `start`, `goal`.

use std::fmt::Write;

use crate::geometry::Point2;
use crate::rewire::Path;
use crate::rrt::Tree;
use crate::workspace::WorldMap;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub background: String,
    pub start_color: String,
    pub goal_color: String,
    pub obstacle_fill: String,
    pub obstacle_stroke: String,
    /// Color of the first path passed to [`render_scene`].
    pub raw_path_color: String,
    /// Color of every later path.
    pub rewired_path_color: String,
    pub tree_edge_color: String,
    pub obstacle_stroke_width: f64,
    pub tree_stroke_width: f64,
    pub path_stroke_width: f64,
    pub endpoint_radius: f64,
    pub waypoint_radius: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            background: "#ffffff".into(),
            start_color: "#2ca02c".into(),
            goal_color: "#8e44ad".into(),
            obstacle_fill: "#1a1a1a".into(),
            obstacle_stroke: "#f1c40f".into(),
            raw_path_color: "#d62728".into(),
            rewired_path_color: "#1f77b4".into(),
            tree_edge_color: "#b0b0b0".into(),
            obstacle_stroke_width: 2.0,
            tree_stroke_width: 0.8,
            path_stroke_width: 2.5,
            endpoint_radius: 9.0,
            waypoint_radius: 2.5,
        }
    }
}

fn fmt_points(points: &[Point2]) -> String {
    let mut s = String::new();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.2},{:.2}", p.x, p.y);
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders a standalone SVG document with `viewBox = 0 0 width height`.
///
/// Paths are drawn as polylines in input order with a marker per waypoint;
/// the first uses `raw_path_color`, the rest `rewired_path_color`. Labels
/// go into a small legend.
pub fn render_scene(
    map: &WorldMap,
    tree: Option<&Tree>,
    paths: &[(&Path, &str)],
    style: &RenderStyle,
) -> String {
    let (w, h) = (map.width(), map.height());
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(map.name()));
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="{}" stroke="none"/>"#, style.background);

    let _ = writeln!(
        svg,
        r#"<g fill="{}" stroke="{}" stroke-width="{}">"#,
        style.obstacle_fill, style.obstacle_stroke, style.obstacle_stroke_width
    );
    for poly in map.obstacles().polygons() {
        let _ = writeln!(svg, r#"<polygon class="obstacle" points="{}"/>"#, fmt_points(poly.vertices()));
    }
    svg.push_str("</g>\n");

    if let Some(tree) = tree {
        let _ = writeln!(
            svg,
            r#"<g stroke="{}" stroke-width="{}">"#,
            style.tree_edge_color, style.tree_stroke_width
        );
        for (a, b) in tree.edges() {
            let _ = writeln!(
                svg,
                r#"<line class="tree-edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                a.x, a.y, b.x, b.y
            );
        }
        svg.push_str("</g>\n");
    }

    for (i, (path, label)) in paths.iter().enumerate() {
        let color = if i == 0 { &style.raw_path_color } else { &style.rewired_path_color };
        let _ = writeln!(svg, r#"<g data-label="{}">"#, escape(label));
        let _ = writeln!(
            svg,
            r#"<polyline class="path" points="{}" fill="none" stroke="{color}" stroke-width="{}" stroke-linejoin="round"/>"#,
            fmt_points(path.waypoints()),
            style.path_stroke_width
        );
        for p in path.waypoints() {
            let _ = writeln!(
                svg,
                r#"<circle class="waypoint" cx="{:.2}" cy="{:.2}" r="{}" fill="{color}"/>"#,
                p.x, p.y, style.waypoint_radius
            );
        }
        svg.push_str("</g>\n");
    }

    for (class, p, color, text) in [
        ("start", map.start(), &style.start_color, "S"),
        ("goal", map.goal(), &style.goal_color, "G"),
    ] {
        let _ = writeln!(
            svg,
            r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="{}" fill="{color}"/>"#,
            p.x, p.y, style.endpoint_radius
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" font-weight="bold" fill="#ffffff" text-anchor="middle" dominant-baseline="central">{text}</text>"##,
            p.x, p.y
        );
    }

    if !paths.is_empty() {
        svg.push_str(r#"<g font-family="sans-serif" font-size="13">"#);
        svg.push('\n');
        for (i, (path, label)) in paths.iter().enumerate() {
            let color = if i == 0 { &style.raw_path_color } else { &style.rewired_path_color };
            let y = 18.0 + 18.0 * i as f64;
            let _ = writeln!(
                svg,
                r#"<text x="10" y="{y}" fill="{color}">{} ({:.1} px)</text>"#,
                escape(label),
                path.length()
            );
        }
        svg.push_str("</g>\n");
    }

    svg.push_str("</svg>\n");
    svg
}

/// Map only: obstacles, start and goal.
pub fn render_map(map: &WorldMap, style: &RenderStyle) -> String {
    render_scene(map, None, &[], style)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polygon;
    use crate::workspace::ObstacleSet;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    fn one_square() -> WorldMap {
        let sq = Polygon::square(Point2::new(40.0, 40.0), 20.0).unwrap();
        WorldMap::new(
            "one <square>",
            200.0,
            100.0,
            Point2::new(10.0, 10.0),
            Point2::new(190.0, 90.0),
            ObstacleSet::new(vec![sq]),
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn bare_map_elements() {
        let svg = render_map(&one_square(), &RenderStyle::default());
        assert_eq!(count(&svg, "<polygon"), 1);
        assert_eq!(count(&svg, "<circle"), 2);
        assert!(svg.contains(r#"viewBox="0 0 200 100""#));
        assert!(svg.contains("one &lt;square&gt;"));
    }

    #[test]
    fn deterministic() {
        let m = one_square();
        let p = Path::new(vec![m.start(), Point2::new(100.0, 10.0), m.goal()]).unwrap();
        let a = render_scene(&m, None, &[(&p, "raw")], &RenderStyle::default());
        let b = render_scene(&m, None, &[(&p, "raw")], &RenderStyle::default());
        assert_eq!(a, b);
    }

    #[test]
    fn overlaid_paths_and_tree() {
        let m = one_square();
        let mut tree = Tree::new(m.start());
        let a = tree.insert(Point2::new(100.0, 10.0), 0);
        tree.insert(m.goal(), a);
        let raw = Path::new(vec![m.start(), Point2::new(100.0, 10.0), m.goal()]).unwrap();
        let rewired = Path::new(vec![m.start(), m.goal()]).unwrap();
        let svg = render_scene(&m, Some(&tree), &[(&raw, "raw"), (&rewired, "rewired")], &RenderStyle::default());
        assert_eq!(count(&svg, r#"class="path""#), 2);
        assert_eq!(count(&svg, r#"class="tree-edge""#), 2);
        assert_eq!(count(&svg, r#"class="waypoint""#), 5);
    }
}
