use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::boundary::{point_segment_distance, segments_intersect, Curve};
use super::{GeometryError, Point2};

/// One primitive region. A domain is the union of the open interiors of its shapes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    Ball { center: Point2, radius: f64 },
    Rectangle { min: Point2, max: Point2 },
    /// Points within `half_width` of the segment `a`-`b`.
    Stadium { a: Point2, b: Point2, half_width: f64 },
    Annulus { center: Point2, inner: f64, outer: f64 },
    /// Simple polygon, vertices listed counterclockwise.
    Polygon { vertices: Vec<Point2> },
    /// The open interval `(a, b)` on the real line.
    Interval { a: f64, b: f64 },
}

fn positive(what: &'static str, v: f64) -> Result<(), GeometryError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(GeometryError::invalid(format!("{what} must be finite and > 0, got {v}")))
    }
}

fn finite(what: &'static str, p: Point2) -> Result<(), GeometryError> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::invalid(format!("{what} has a non-finite coordinate")))
    }
}

impl Shape {
    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Ball { .. } => "ball",
            Shape::Rectangle { .. } => "rectangle",
            Shape::Stadium { .. } => "stadium",
            Shape::Annulus { .. } => "annulus",
            Shape::Polygon { .. } => "polygon",
            Shape::Interval { .. } => "interval",
        }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        match self {
            Shape::Ball { center, radius } => {
                finite("ball center", *center)?;
                positive("ball radius", *radius)
            }
            Shape::Rectangle { min, max } => {
                finite("rectangle min", *min)?;
                finite("rectangle max", *max)?;
                if min.x < max.x && min.y < max.y {
                    Ok(())
                } else {
                    Err(GeometryError::invalid("rectangle corners must be strictly ordered (min < max)"))
                }
            }
            Shape::Stadium { a, b, half_width } => {
                finite("stadium endpoint a", *a)?;
                finite("stadium endpoint b", *b)?;
                positive("stadium half_width", *half_width)?;
                if a.distance(*b) > 0.0 {
                    Ok(())
                } else {
                    Err(GeometryError::invalid("stadium core segment has zero length; use a ball"))
                }
            }
            Shape::Annulus { center, inner, outer } => {
                finite("annulus center", *center)?;
                positive("annulus inner radius", *inner)?;
                positive("annulus outer radius", *outer)?;
                if inner < outer {
                    Ok(())
                } else {
                    Err(GeometryError::invalid("annulus requires inner < outer"))
                }
            }
            Shape::Polygon { vertices } => validate_polygon(vertices),
            Shape::Interval { a, b } => {
                if a.is_finite() && b.is_finite() && a < b {
                    Ok(())
                } else {
                    Err(GeometryError::invalid("interval requires finite a < b"))
                }
            }
        }
    }

    /// Membership in the open shape. Boundary points are outside.
    pub fn contains(&self, p: Point2) -> bool {
        match self {
            Shape::Ball { center, radius } => (p - *center).norm_sq() < radius * radius,
            Shape::Rectangle { min, max } => p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y,
            Shape::Stadium { a, b, half_width } => point_segment_distance(p, *a, *b) < *half_width,
            Shape::Annulus { center, inner, outer } => {
                let d2 = (p - *center).norm_sq();
                d2 > inner * inner && d2 < outer * outer
            }
            Shape::Polygon { vertices } => polygon_contains(vertices, p),
            Shape::Interval { a, b } => p.y == 0.0 && p.x > *a && p.x < *b,
        }
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        match self {
            Shape::Ball { center, radius } | Shape::Annulus { center, outer: radius, .. } => (
                Point2::new(center.x - radius, center.y - radius),
                Point2::new(center.x + radius, center.y + radius),
            ),
            Shape::Rectangle { min, max } => (*min, *max),
            Shape::Stadium { a, b, half_width: w } => (
                Point2::new(a.x.min(b.x) - w, a.y.min(b.y) - w),
                Point2::new(a.x.max(b.x) + w, a.y.max(b.y) + w),
            ),
            Shape::Polygon { vertices } => {
                let mut lo = vertices[0];
                let mut hi = vertices[0];
                for v in vertices {
                    lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
                    hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
                }
                (lo, hi)
            }
            Shape::Interval { a, b } => (Point2::new(*a, 0.0), Point2::new(*b, 0.0)),
        }
    }

    /// Boundary curves oriented so that the outward normal of each curve
    /// points away from the shape.
    pub(crate) fn boundary(&self) -> Vec<Curve> {
        match self {
            Shape::Ball { center, radius } => vec![Curve::circle(*center, *radius, 1.0)],
            Shape::Annulus { center, inner, outer } => vec![
                Curve::circle(*center, *outer, 1.0),
                Curve::circle(*center, *inner, -1.0),
            ],
            Shape::Rectangle { min, max } => {
                let v = [*min, Point2::new(max.x, min.y), *max, Point2::new(min.x, max.y)];
                polygon_edges(&v)
            }
            Shape::Polygon { vertices } => polygon_edges(vertices),
            Shape::Stadium { a, b, half_width: w } => {
                let dir = (*b - *a) * (1.0 / a.distance(*b));
                let n = dir.perp();
                let ang = n.angle();
                vec![
                    Curve::segment(*a - n * *w, *b - n * *w),
                    Curve::arc(*b, *w, ang - PI, PI, 1.0),
                    Curve::segment(*b + n * *w, *a + n * *w),
                    Curve::arc(*a, *w, ang, PI, 1.0),
                ]
            }
            Shape::Interval { .. } => Vec::new(),
        }
    }

    pub fn scaled(&self, s: f64) -> Shape {
        match self {
            Shape::Ball { center, radius } => Shape::Ball { center: *center * s, radius: radius * s },
            Shape::Rectangle { min, max } => Shape::Rectangle { min: *min * s, max: *max * s },
            Shape::Stadium { a, b, half_width } => Shape::Stadium { a: *a * s, b: *b * s, half_width: half_width * s },
            Shape::Annulus { center, inner, outer } => Shape::Annulus {
                center: *center * s,
                inner: inner * s,
                outer: outer * s,
            },
            Shape::Polygon { vertices } => Shape::Polygon { vertices: vertices.iter().map(|v| *v * s).collect() },
            Shape::Interval { a, b } => Shape::Interval { a: a * s, b: b * s },
        }
    }

    /// Image under the rigid motion `p -> R(theta) p + shift`. Rectangles
    /// become polygons unless the rotation is trivial. Intervals only admit
    /// translations along the line.
    pub fn rigid_motion(&self, theta: f64, shift: Point2) -> Shape {
        let m = |p: Point2| p.rotated(theta) + shift;
        match self {
            Shape::Ball { center, radius } => Shape::Ball { center: m(*center), radius: *radius },
            Shape::Rectangle { min, max } if theta == 0.0 => Shape::Rectangle { min: m(*min), max: m(*max) },
            Shape::Rectangle { min, max } => Shape::Polygon {
                vertices: [*min, Point2::new(max.x, min.y), *max, Point2::new(min.x, max.y)]
                    .into_iter()
                    .map(m)
                    .collect(),
            },
            Shape::Stadium { a, b, half_width } => Shape::Stadium { a: m(*a), b: m(*b), half_width: *half_width },
            Shape::Annulus { center, inner, outer } => Shape::Annulus {
                center: m(*center),
                inner: *inner,
                outer: *outer,
            },
            Shape::Polygon { vertices } => Shape::Polygon { vertices: vertices.iter().map(|v| m(*v)).collect() },
            Shape::Interval { a, b } => Shape::Interval { a: a + shift.x, b: b + shift.x },
        }
    }
}

fn polygon_edges(v: &[Point2]) -> Vec<Curve> {
    (0..v.len()).map(|i| Curve::segment(v[i], v[(i + 1) % v.len()])).collect()
}

pub(crate) fn signed_area(v: &[Point2]) -> f64 {
    0.5 * (0..v.len()).map(|i| v[i].cross(v[(i + 1) % v.len()])).sum::<f64>()
}

fn validate_polygon(v: &[Point2]) -> Result<(), GeometryError> {
    if v.len() < 3 {
        return Err(GeometryError::invalid("polygon needs at least 3 vertices"));
    }
    for p in v {
        finite("polygon vertex", *p)?;
    }
    let n = v.len();
    for i in 0..n {
        if v[i] == v[(i + 1) % n] {
            return Err(GeometryError::invalid("polygon has repeated consecutive vertices"));
        }
    }
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Adjacent edges share one vertex; they must not fold back onto each other.
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                let (u, w) = (p - shared, q - shared);
                if u.cross(w) == 0.0 && u.dot(w) > 0.0 {
                    return Err(GeometryError::invalid("polygon has overlapping adjacent edges"));
                }
            } else if segments_intersect(a, b, c, d) {
                return Err(GeometryError::invalid("polygon is not simple (edges intersect)"));
            }
        }
    }
    let area = signed_area(v);
    if area <= 0.0 {
        return Err(GeometryError::invalid(if area == 0.0 {
            "polygon has zero area"
        } else {
            "polygon vertices must be listed counterclockwise"
        }));
    }
    Ok(())
}

fn polygon_contains(v: &[Point2], p: Point2) -> bool {
    let n = v.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        if point_segment_distance(p, a, b) == 0.0 {
            return false;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}
