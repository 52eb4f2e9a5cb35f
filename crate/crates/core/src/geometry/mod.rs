//! Planar domains built as unions of primitive shapes, with exact clearance
//! (distance to the complement) queries.

mod boundary;
mod point;
mod shape;
mod spec;

pub use point::Point2;
pub use shape::Shape;
pub use spec::{DomainFile, DomainSpec, LinkedBalls};

use boundary::{union_boundary, Curve};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid domain: {0}")]
    Invalid(String),
    #[error("point ({x}, {y}) is not inside the domain")]
    OutsideDomain { x: f64, y: f64 },
}

impl GeometryError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        GeometryError::Invalid(msg.into())
    }
}

/// A validated domain with its boundary arrangement precomputed.
///
/// Either a planar union of shapes or a single interval on the real line.
/// Immutable after construction and cheap to query from many threads.
#[derive(Debug, Clone)]
pub struct Domain {
    spec: DomainSpec,
    pieces: Vec<Curve>,
    bbox: (Point2, Point2),
    interval: Option<(f64, f64)>,
}

impl Domain {
    pub fn new(spec: DomainSpec) -> Result<Self, GeometryError> {
        spec.validate()?;
        let bbox = spec.bounding_box();
        if let [Shape::Interval { a, b }] = spec.shapes.as_slice() {
            return Ok(Self { interval: Some((*a, *b)), spec, pieces: Vec::new(), bbox });
        }
        let diameter = bbox.0.distance(bbox.1);
        let pieces = union_boundary(&spec.shapes, 1e-9 * diameter);
        if pieces.is_empty() {
            return Err(GeometryError::invalid("union has an empty boundary"));
        }
        Ok(Self { spec, pieces, bbox, interval: None })
    }

    pub fn ball(center: Point2, radius: f64) -> Result<Self, GeometryError> {
        Self::new(DomainSpec::new(vec![Shape::Ball { center, radius }]))
    }

    pub fn rectangle(min: Point2, max: Point2) -> Result<Self, GeometryError> {
        Self::new(DomainSpec::new(vec![Shape::Rectangle { min, max }]))
    }

    pub fn unit_square() -> Self {
        Self::rectangle(Point2::ORIGIN, Point2::new(1.0, 1.0)).expect("unit square is valid")
    }

    pub fn interval(a: f64, b: f64) -> Result<Self, GeometryError> {
        Self::new(DomainSpec::new(vec![Shape::Interval { a, b }]))
    }

    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    /// `Some((a, b))` for a one-dimensional interval domain.
    pub fn as_interval(&self) -> Option<(f64, f64)> {
        self.interval
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.spec.shapes.iter().any(|s| s.contains(p))
    }

    /// Euclidean distance from `p` to the complement of the domain.
    pub fn clearance(&self, p: Point2) -> Result<f64, GeometryError> {
        if !self.contains(p) {
            return Err(GeometryError::OutsideDomain { x: p.x, y: p.y });
        }
        Ok(self.boundary_distance(p))
    }

    /// Clearance inside, minus the distance to the domain outside.
    /// Continuous and 1-Lipschitz; used as the optimizers' objective.
    pub fn signed_clearance(&self, p: Point2) -> f64 {
        let d = self.boundary_distance(p);
        if self.contains(p) {
            d
        } else {
            -d
        }
    }

    fn boundary_distance(&self, p: Point2) -> f64 {
        if let Some((a, b)) = self.interval {
            return if p.y == 0.0 { (p.x - a).abs().min((b - p.x).abs()) } else { 0.0 };
        }
        self.pieces.iter().map(|c| c.distance(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        self.bbox
    }

    /// Diagonal of the bounding box.
    pub fn diameter(&self) -> f64 {
        self.bbox.0.distance(self.bbox.1)
    }

    /// Points spread along the boundary of the union, `per_piece` per piece.
    pub fn boundary_samples(&self, per_piece: usize) -> Vec<Point2> {
        if let Some((a, b)) = self.interval {
            return vec![Point2::new(a, 0.0), Point2::new(b, 0.0)];
        }
        let n = per_piece.max(2);
        self.pieces
            .iter()
            .flat_map(|c| (0..n).map(move |i| c.point_at(i as f64 / (n - 1) as f64)))
            .collect()
    }

    pub fn scaled(&self, s: f64) -> Result<Domain, GeometryError> {
        Domain::new(self.spec.scaled(s))
    }

    pub fn rigid_motion(&self, theta: f64, shift: Point2) -> Result<Domain, GeometryError> {
        Domain::new(self.spec.rigid_motion(theta, shift))
    }
}
