use serde::{Deserialize, Serialize};

use super::{GeometryError, Point2, Shape};

/// A union of primitive shapes, not yet validated.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DomainSpec {
    pub shapes: Vec<Shape>,
}

impl DomainSpec {
    pub fn new(shapes: Vec<Shape>) -> Self {
        Self { shapes }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.shapes.is_empty() {
            return Err(GeometryError::invalid("domain has no shapes"));
        }
        for s in &self.shapes {
            s.validate()?;
        }
        let intervals = self.shapes.iter().filter(|s| matches!(s, Shape::Interval { .. })).count();
        if intervals > 0 && self.shapes.len() > 1 {
            return Err(GeometryError::invalid("an interval cannot be combined with other shapes"));
        }
        for (i, s) in self.shapes.iter().enumerate() {
            if self.shapes[..i].contains(s) {
                return Err(GeometryError::invalid(format!("duplicate {} shape", s.kind())));
            }
        }
        Ok(())
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut boxes = self.shapes.iter().map(Shape::bounding_box);
        let first = boxes.next().unwrap_or_default();
        boxes.fold(first, |(lo, hi), (a, b)| {
            (Point2::new(lo.x.min(a.x), lo.y.min(a.y)), Point2::new(hi.x.max(b.x), hi.y.max(b.y)))
        })
    }

    pub fn scaled(&self, s: f64) -> DomainSpec {
        DomainSpec::new(self.shapes.iter().map(|x| x.scaled(s)).collect())
    }

    pub fn rigid_motion(&self, theta: f64, shift: Point2) -> DomainSpec {
        DomainSpec::new(self.shapes.iter().map(|x| x.rigid_motion(theta, shift)).collect())
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let file: DomainFile =
            serde_json::from_str(text).map_err(|e| GeometryError::invalid(format!("malformed domain JSON: {e}")))?;
        file.into_spec()
    }
}

/// On-disk domain description: explicit shapes, the linked-balls generator, or both.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shapes: Vec<Shape>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linked_balls: Option<LinkedBalls>,
}

impl DomainFile {
    pub fn into_spec(self) -> Result<DomainSpec, GeometryError> {
        let mut shapes = self.shapes;
        if let Some(lb) = self.linked_balls {
            shapes.extend(lb.to_spec()?.shapes);
        }
        let spec = DomainSpec::new(shapes);
        spec.validate()?;
        Ok(spec)
    }
}

/// Two balls of radii `r1 <= r2` joined along the x-axis by a tube.
///
/// The small ball is centred at the origin, the large one at
/// `(r1 + gap + r2, 0)`, so the visible part of the tube has length `gap`.
/// The tube is a stadium between the two centres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkedBalls {
    pub r1: f64,
    pub r2: f64,
    pub gap: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tube_half_width: Option<f64>,
}

impl LinkedBalls {
    /// Tube half-width used when none is given, as a fraction of `r1`.
    ///
    /// A wider tube lets balls near the junction grow past `r1`; at `r1 / 10`
    /// the twin radius exceeds `r1` by about `r1 * 6e-4`.
    pub const DEFAULT_TUBE_FRACTION: f64 = 0.1;

    pub fn half_width(&self) -> f64 {
        self.tube_half_width.unwrap_or(Self::DEFAULT_TUBE_FRACTION * self.r1)
    }

    pub fn to_spec(&self) -> Result<DomainSpec, GeometryError> {
        let w = self.half_width();
        if !(self.r1.is_finite() && self.r1 > 0.0 && self.r2.is_finite() && self.r1 <= self.r2) {
            return Err(GeometryError::invalid("linked_balls requires 0 < r1 <= r2"));
        }
        if !(self.gap > 0.0 && self.gap < self.r1) {
            return Err(GeometryError::invalid("linked_balls requires 0 < gap < r1"));
        }
        if !(w > 0.0 && w < self.r1) {
            return Err(GeometryError::invalid("linked_balls requires 0 < tube_half_width < r1"));
        }
        let c1 = Point2::ORIGIN;
        let c2 = Point2::new(self.r1 + self.gap + self.r2, 0.0);
        Ok(DomainSpec::new(vec![
            Shape::Ball { center: c1, radius: self.r1 },
            Shape::Stadium { a: c1, b: c2, half_width: w },
            Shape::Ball { center: c2, radius: self.r2 },
        ]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_shape_kind() {
        let text = r#"{"shapes":[
            {"type":"ball","center":[0,0],"radius":1},
            {"type":"rectangle","min":[0,0],"max":[1,2]},
            {"type":"stadium","a":[0,0],"b":[2,0],"half_width":0.5},
            {"type":"annulus","center":[5,0],"inner":1,"outer":2},
            {"type":"polygon","vertices":[[0,0],[1,0],[0,1]]}
        ]}"#;
        let spec = DomainSpec::from_json(text).unwrap();
        assert_eq!(spec.shapes.len(), 5);
        assert_eq!(spec.shapes[4], Shape::Polygon {
            vertices: vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)]
        });
    }

    #[test]
    fn linked_balls_generator() {
        let spec = DomainSpec::from_json(r#"{"linked_balls":{"r1":1,"r2":2,"gap":0.5}}"#).unwrap();
        assert_eq!(spec.shapes.len(), 3);
        assert_eq!(spec.shapes[2], Shape::Ball { center: Point2::new(3.5, 0.0), radius: 2.0 });
        assert!(DomainSpec::from_json(r#"{"linked_balls":{"r1":1,"r2":2,"gap":1.5}}"#).is_err());
        assert!(DomainSpec::from_json(r#"{"linked_balls":{"r1":2,"r2":1,"gap":0.5}}"#).is_err());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(DomainSpec::from_json("{not json").is_err());
        assert!(DomainSpec::from_json(r#"{"shapes":[]}"#).is_err());
        assert!(DomainSpec::from_json(r#"{"shapes":[{"type":"ball","center":[0,0],"radius":-1}]}"#).is_err());
        let dup = r#"{"shapes":[{"type":"ball","center":[0,0],"radius":1},{"type":"ball","center":[0,0],"radius":1}]}"#;
        assert!(DomainSpec::from_json(dup).is_err());
        assert!(DomainSpec::from_json(r#"{"shapes":[{"type":"blob"}]}"#).is_err());
    }
}
