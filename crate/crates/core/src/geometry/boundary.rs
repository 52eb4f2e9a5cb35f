//! Boundary arrangement of a union of primitive shapes.
//!
//! Every primitive boundary is split at all of its crossings with the other
//! primitives' boundaries. A sub-piece belongs to the boundary of the union
//! iff its midpoint is not inside another shape and the region just outside
//! it is not covered either (the second test drops edges shared by two
//! abutting shapes). The distance from a point to the complement of the
//! union is then the minimum distance to the surviving pieces, each of which
//! is a line segment or a circular arc with a closed-form distance.

use std::f64::consts::TAU;

use super::shape::Shape;
use super::Point2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Curve {
    Segment {
        a: Point2,
        b: Point2,
    },
    /// Counterclockwise arc `center + radius * (cos θ, sin θ)` for
    /// `θ ∈ [start, start + sweep]`. `orientation` is +1 when the shape lies
    /// inside the circle and -1 when it lies outside (annulus hole).
    Arc {
        center: Point2,
        radius: f64,
        start: f64,
        sweep: f64,
        orientation: f64,
    },
}

impl Curve {
    pub fn segment(a: Point2, b: Point2) -> Curve {
        Curve::Segment { a, b }
    }

    pub fn circle(center: Point2, radius: f64, orientation: f64) -> Curve {
        Curve::arc(center, radius, 0.0, TAU, orientation)
    }

    pub fn arc(center: Point2, radius: f64, start: f64, sweep: f64, orientation: f64) -> Curve {
        Curve::Arc { center, radius, start, sweep, orientation }
    }

    pub fn point_at(&self, u: f64) -> Point2 {
        match *self {
            Curve::Segment { a, b } => a + (b - a) * u,
            Curve::Arc { center, radius, start, sweep, .. } => center + Point2::from_angle(start + u * sweep) * radius,
        }
    }

    /// Unit normal pointing out of the owning shape.
    pub fn outward_normal(&self, u: f64) -> Point2 {
        match *self {
            Curve::Segment { a, b } => {
                let d = b - a;
                Point2::new(d.y, -d.x) * (1.0 / d.norm())
            }
            Curve::Arc { start, sweep, orientation, .. } => Point2::from_angle(start + u * sweep) * orientation,
        }
    }

    pub fn sub_curve(&self, u0: f64, u1: f64) -> Curve {
        match *self {
            Curve::Segment { .. } => Curve::segment(self.point_at(u0), self.point_at(u1)),
            Curve::Arc { center, radius, start, sweep, orientation } => Curve::Arc {
                center,
                radius,
                start: start + u0 * sweep,
                sweep: (u1 - u0) * sweep,
                orientation,
            },
        }
    }

    pub fn distance(&self, p: Point2) -> f64 {
        match *self {
            Curve::Segment { a, b } => point_segment_distance(p, a, b),
            Curve::Arc { center, radius, start, sweep, .. } => {
                let v = p - center;
                let r = v.norm();
                if r > 0.0 && (v.angle() - start).rem_euclid(TAU) <= sweep {
                    return (r - radius).abs();
                }
                if r == 0.0 {
                    return radius;
                }
                let e0 = center + Point2::from_angle(start) * radius;
                let e1 = center + Point2::from_angle(start + sweep) * radius;
                p.distance(e0).min(p.distance(e1))
            }
        }
    }

    /// Parameter on this curve of a point known to lie on its supporting line or circle.
    fn param_of(&self, q: Point2) -> Option<f64> {
        let u = match *self {
            Curve::Segment { a, b } => {
                let d = b - a;
                (q - a).dot(d) / d.norm_sq()
            }
            Curve::Arc { center, start, sweep, .. } => ((q - center).angle() - start).rem_euclid(TAU) / sweep,
        };
        (u > 0.0 && u < 1.0).then_some(u)
    }

    /// Parameters in (0, 1) where this curve meets the supporting line or
    /// circle of `other`, plus overlap endpoints for collinear or co-circular
    /// pairs. Extra split points are harmless.
    fn split_params(&self, other: &Curve) -> Vec<f64> {
        let mut hits: Vec<Point2> = Vec::new();
        match (*self, *other) {
            (Curve::Segment { a, b }, Curve::Segment { a: c, b: d }) => {
                let r = b - a;
                let s = d - c;
                let denom = r.cross(s);
                let scale = r.norm() * s.norm();
                if denom.abs() > 1e-14 * scale {
                    let u = (c - a).cross(s) / denom;
                    let v = (c - a).cross(r) / denom;
                    if (-1e-12..=1.0 + 1e-12).contains(&v) {
                        hits.push(a + r * u);
                    }
                } else if (c - a).cross(r).abs() <= 1e-12 * r.norm() * (c - a).norm().max(1.0) {
                    hits.push(c);
                    hits.push(d);
                }
            }
            (Curve::Segment { a, b }, Curve::Arc { center, radius, .. })
            | (Curve::Arc { center, radius, .. }, Curve::Segment { a, b }) => {
                hits.extend(line_circle(a, b, center, radius));
            }
            (Curve::Arc { center: c0, radius: r0, .. }, Curve::Arc { center: c1, radius: r1, start, sweep, .. }) => {
                if c0.distance(c1) <= 1e-12 * r0.max(r1) && (r0 - r1).abs() <= 1e-12 * r0.max(r1) {
                    hits.push(c1 + Point2::from_angle(start) * r1);
                    hits.push(c1 + Point2::from_angle(start + sweep) * r1);
                } else {
                    hits.extend(circle_circle(c0, r0, c1, r1));
                }
            }
        }
        hits.into_iter().filter_map(|q| self.param_of(q)).collect()
    }
}

/// Builds the surviving boundary pieces of the union of `shapes`.
/// `eta` is the outward probe offset used to detect shared edges.
pub(crate) fn union_boundary(shapes: &[Shape], eta: f64) -> Vec<Curve> {
    let per_shape: Vec<Vec<Curve>> = shapes.iter().map(Shape::boundary).collect();
    let mut pieces = Vec::new();
    for (i, curves) in per_shape.iter().enumerate() {
        for curve in curves {
            let mut cuts = vec![0.0, 1.0];
            for (j, others) in per_shape.iter().enumerate() {
                if j != i {
                    for other in others {
                        cuts.extend(curve.split_params(other));
                    }
                }
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-13);
            for w in cuts.windows(2) {
                let (u0, u1) = (w[0], w[1]);
                let mid_u = 0.5 * (u0 + u1);
                let mid = curve.point_at(mid_u);
                let probe = mid + curve.outward_normal(mid_u) * eta;
                let covered = shapes
                    .iter()
                    .enumerate()
                    .any(|(j, s)| j != i && (s.contains(mid) || s.contains(probe)));
                if !covered {
                    pieces.push(curve.sub_curve(u0, u1));
                }
            }
        }
    }
    pieces
}

pub(crate) fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let len2 = d.norm_sq();
    let u = if len2 > 0.0 { ((p - a).dot(d) / len2).clamp(0.0, 1.0) } else { 0.0 };
    p.distance(a + d * u)
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test, touching counts.
pub(crate) fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

fn line_circle(a: Point2, b: Point2, center: Point2, radius: f64) -> Vec<Point2> {
    let d = b - a;
    let f = a - center;
    let qa = d.norm_sq();
    let qb = 2.0 * f.dot(d);
    let qc = f.norm_sq() - radius * radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
        .into_iter()
        .map(|u| a + d * u)
        .collect()
}

fn circle_circle(c0: Point2, r0: f64, c1: Point2, r1: f64) -> Vec<Point2> {
    let v = c1 - c0;
    let d = v.norm();
    if d == 0.0 || d > r0 + r1 || d < (r0 - r1).abs() {
        return Vec::new();
    }
    let a = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
    let h = (r0 * r0 - a * a).max(0.0).sqrt();
    let base = c0 + v * (a / d);
    let off = v.perp() * (h / d);
    vec![base + off, base - off]
}
