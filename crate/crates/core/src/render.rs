//! SVG figures of planar domains: chords, paths, Hilbert balls, points and
//! boundary marks, described by a JSON scene.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::domain::{Location, Point, Polytope, PolytopeSpec, EPS_GEOM};
use crate::error::{Error, Result};
use crate::metric::ball_boundary_sample;

/// Samples per Hilbert sphere.
pub const BALL_SAMPLES: usize = 256;

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 24.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Style {
    #[serde(default = "default_stroke")]
    pub stroke: String,
    #[serde(default)]
    pub fill: Option<String>,
    #[serde(default = "default_width")]
    pub width: f64,
    #[serde(default)]
    pub label: Option<String>,
}

fn default_stroke() -> String {
    "black".into()
}

fn default_width() -> f64 {
    1.5
}

impl Default for Style {
    fn default() -> Self {
        Self {
            stroke: default_stroke(),
            fill: None,
            width: default_width(),
            label: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Element {
    /// The full chord through two interior points, with the points marked.
    Chord {
        x: Vec<f64>,
        y: Vec<f64>,
        #[serde(default)]
        style: Style,
    },
    /// Polyline through interior or boundary points.
    Path {
        points: Vec<Vec<f64>>,
        #[serde(default)]
        style: Style,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
        #[serde(default)]
        style: Style,
    },
    Points {
        points: Vec<Vec<f64>>,
        #[serde(default)]
        style: Style,
    },
    BoundaryMarks {
        points: Vec<Vec<f64>>,
        #[serde(default)]
        style: Style,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneDescription {
    pub domain: PolytopeSpec,
    #[serde(default)]
    pub elements: Vec<Element>,
}

impl SceneDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("scene: {e}")))
    }
}

struct Canvas {
    min: [f64; 2],
    scale: f64,
    height: f64,
    out: String,
}

impl Canvas {
    fn xy(&self, p: &[f64]) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.min[0]) * self.scale,
            self.height - MARGIN - (p[1] - self.min[1]) * self.scale,
        )
    }

    fn pts(&self, ps: &[Vec<f64>]) -> String {
        ps.iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn label(&mut self, at: &[f64], style: &Style) {
        if let Some(text) = &style.label {
            let (x, y) = self.xy(at);
            let _ = writeln!(
                self.out,
                r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12" fill="{}">{}</text>"#,
                x + 5.0,
                y - 5.0,
                escape(&style.stroke),
                escape(text)
            );
        }
    }

    fn dot(&mut self, p: &[f64], r: f64, style: &Style) {
        let (x, y) = self.xy(p);
        let _ = writeln!(
            self.out,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r}" fill="{}"/>"#,
            escape(&style.stroke)
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn stroke_attrs(style: &Style) -> String {
    format!(
        r#"stroke="{}" stroke-width="{}" fill="{}""#,
        escape(&style.stroke),
        style.width,
        escape(style.fill.as_deref().unwrap_or("none"))
    )
}

/// Vertices of a planar polytope in counterclockwise order.
fn outline(domain: &Polytope) -> Vec<Vec<f64>> {
    let c = domain.centroid().to_f64();
    let mut vs: Vec<Vec<f64>> = domain.vertices().iter().map(Point::to_f64).collect();
    vs.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    vs
}

fn interior(domain: &Polytope, p: &[f64]) -> Result<Point> {
    let p = Point::try_new(p)?;
    domain.require_interior(&p)?;
    Ok(p)
}

fn closed(domain: &Polytope, p: &[f64]) -> Result<Point> {
    let p = Point::try_new(p)?;
    if p.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: p.dim(),
        });
    }
    if domain.locate(&p, EPS_GEOM) == Location::Outside {
        return Err(Error::NotInterior(p.to_f64()));
    }
    Ok(p)
}

/// Self-contained SVG 1.1 document for a planar scene.
pub fn render_svg(scene: &SceneDescription) -> Result<String> {
    let domain = Polytope::from_spec(&scene.domain)?;
    if domain.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            what: "rendering",
            dim: domain.dim(),
            max: 2,
        });
    }
    let ring = outline(&domain);
    let (mut min, mut max) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in &ring {
        for i in 0..2 {
            min[i] = min[i].min(v[i]);
            max[i] = max[i].max(v[i]);
        }
    }
    let extent = (max[0] - min[0]).max(max[1] - min[1]);
    let scale = (CANVAS - 2.0 * MARGIN) / extent;
    let width = 2.0 * MARGIN + (max[0] - min[0]) * scale;
    let height = 2.0 * MARGIN + (max[1] - min[1]) * scale;
    let mut cv = Canvas {
        min,
        scale,
        height,
        out: String::new(),
    };
    let _ = writeln!(
        cv.out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        cv.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        cv.out,
        r#"<polygon class="domain" points="{}" stroke="black" stroke-width="2" fill="none"/>"#,
        cv.pts(&ring)
    );

    for el in &scene.elements {
        match el {
            Element::Chord { x, y, style } => {
                let (px, py) = (interior(&domain, x)?, interior(&domain, y)?);
                let c = domain.chord(&px, &py)?;
                let ends = [c.x_bar.to_f64(), c.y_bar.to_f64()];
                let _ = writeln!(
                    cv.out,
                    r#"<polyline class="chord" points="{}" {}/>"#,
                    cv.pts(&ends),
                    stroke_attrs(style)
                );
                for p in [x, y] {
                    cv.dot(p, 3.0, style);
                }
                cv.label(y, style);
            }
            Element::Path { points, style } => {
                for p in points {
                    closed(&domain, p)?;
                }
                let _ = writeln!(
                    cv.out,
                    r#"<polyline class="path" points="{}" {}/>"#,
                    cv.pts(points),
                    stroke_attrs(style)
                );
                if let Some(p) = points.last() {
                    cv.label(p, style);
                }
            }
            Element::Ball {
                center,
                radius,
                style,
            } => {
                let c = interior(&domain, center)?;
                let ring: Vec<Vec<f64>> = ball_boundary_sample(&domain, &c, *radius, BALL_SAMPLES)?
                    .iter()
                    .map(Point::to_f64)
                    .collect();
                let _ = writeln!(
                    cv.out,
                    r#"<polygon class="ball" points="{}" {}/>"#,
                    cv.pts(&ring),
                    stroke_attrs(style)
                );
                cv.dot(center, 2.5, style);
                cv.label(center, style);
            }
            Element::Points { points, style } => {
                for p in points {
                    interior(&domain, p)?;
                    cv.dot(p, 3.0, style);
                }
                if let Some(p) = points.first() {
                    cv.label(p, style);
                }
            }
            Element::BoundaryMarks { points, style } => {
                for p in points {
                    domain.boundary_point(&Point::try_new(p)?)?;
                    let (x, y) = cv.xy(p);
                    let _ = writeln!(
                        cv.out,
                        r#"<rect class="mark" x="{:.3}" y="{:.3}" width="6" height="6" {}/>"#,
                        x - 3.0,
                        y - 3.0,
                        stroke_attrs(style)
                    );
                }
                if let Some(p) = points.first() {
                    cv.label(p, style);
                }
            }
        }
    }
    cv.out.push_str("</svg>\n");
    Ok(cv.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scene(elements: Vec<Element>) -> SceneDescription {
        SceneDescription {
            domain: Polytope::unit_square().to_spec(),
            elements,
        }
    }

    #[test]
    fn empty_scene_is_outline_only() {
        let svg = render_svg(&scene(vec![])).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(r#"version="1.1""#));
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn y_axis_points_up() {
        let svg = render_svg(&scene(vec![Element::Points {
            points: vec![vec![0.5, 0.9]],
            style: Style::default(),
        }]))
        .unwrap();
        // top of the square is at pixel MARGIN, so y = 0.9 lands near the top
        let cy: f64 = svg
            .split("cy=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        assert!(cy < CANVAS / 2.0);
    }

    #[test]
    fn invalid_elements() {
        let outside = scene(vec![Element::Points {
            points: vec![vec![1.5, 0.5]],
            style: Style::default(),
        }]);
        assert!(matches!(render_svg(&outside), Err(Error::NotInterior(_))));
        let not_boundary = scene(vec![Element::BoundaryMarks {
            points: vec![vec![0.5, 0.5]],
            style: Style::default(),
        }]);
        assert!(matches!(
            render_svg(&not_boundary),
            Err(Error::NotOnBoundary(_))
        ));
        let cube = SceneDescription {
            domain: Polytope::unit_cube().to_spec(),
            elements: vec![],
        };
        assert!(matches!(
            render_svg(&cube),
            Err(Error::DimensionUnsupported { .. })
        ));
    }

    #[test]
    fn labels_are_escaped() {
        let svg = render_svg(&scene(vec![Element::Ball {
            center: vec![0.5, 0.5],
            radius: 1.0,
            style: Style {
                label: Some("B<1>".into()),
                ..Style::default()
            },
        }]))
        .unwrap();
        assert!(svg.contains("B&lt;1&gt;"));
        assert_eq!(svg.matches("<polygon").count(), 2);
    }
}
