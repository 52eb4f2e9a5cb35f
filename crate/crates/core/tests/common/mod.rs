//! Random planar domains for property tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use fucik_core::geometry::LinkedBalls;
use fucik_core::{DomainSpec, Point2, Shape};
use proptest::prelude::*;

fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

pub fn rectangle() -> impl Strategy<Value = DomainSpec> {
    (0.5..3.0f64, 0.5..3.0f64).prop_map(|(w, h)| DomainSpec::new(vec![Shape::Rectangle { min: p(0.0, 0.0), max: p(w, h) }]))
}

pub fn ball() -> impl Strategy<Value = DomainSpec> {
    (0.3..2.0f64).prop_map(|r| DomainSpec::new(vec![Shape::Ball { center: p(0.0, 0.0), radius: r }]))
}

pub fn stadium() -> impl Strategy<Value = DomainSpec> {
    (0.5..3.0f64, 0.2..1.0f64)
        .prop_map(|(len, w)| DomainSpec::new(vec![Shape::Stadium { a: p(0.0, 0.0), b: p(len, 0.0), half_width: w }]))
}

pub fn annulus() -> impl Strategy<Value = DomainSpec> {
    (0.3..1.0f64, 0.3..1.5f64).prop_map(|(inner, width)| {
        DomainSpec::new(vec![Shape::Annulus { center: p(0.0, 0.0), inner, outer: inner + width }])
    })
}

pub fn overlapping_balls() -> impl Strategy<Value = DomainSpec> {
    (0.5..1.5f64, 0.5..1.5f64, 0.1..0.9f64).prop_map(|(r1, r2, f)| {
        let d = 0.2 + f * (r1 + r2 - 0.4);
        DomainSpec::new(vec![
            Shape::Ball { center: p(0.0, 0.0), radius: r1 },
            Shape::Ball { center: p(d, 0.0), radius: r2 },
        ])
    })
}

pub fn linked_balls() -> impl Strategy<Value = DomainSpec> {
    (0.5..1.0f64, 1.0..2.0f64, 0.1..0.9f64).prop_map(|(r1, ratio, g)| {
        LinkedBalls { r1, r2: r1 * ratio, gap: g * r1, tube_half_width: None }.to_spec().expect("valid linked balls")
    })
}

pub fn regular_polygon() -> impl Strategy<Value = DomainSpec> {
    (3usize..9, 0.5..2.0f64).prop_map(|(n, r)| {
        let vertices = (0..n).map(|i| Point2::from_angle(2.0 * PI * i as f64 / n as f64) * r).collect();
        DomainSpec::new(vec![Shape::Polygon { vertices }])
    })
}

pub fn l_shape() -> impl Strategy<Value = DomainSpec> {
    (1.0..3.0f64, 0.2..0.8f64).prop_map(|(a, f)| {
        let b = f * a;
        DomainSpec::new(vec![Shape::Polygon {
            vertices: vec![p(0.0, 0.0), p(a, 0.0), p(a, b), p(b, b), p(b, a), p(0.0, a)],
        }])
    })
}

/// Any generator, followed by a random rotation and translation.
pub fn any_domain() -> impl Strategy<Value = DomainSpec> {
    let base = prop_oneof![
        rectangle(),
        ball(),
        stadium(),
        annulus(),
        overlapping_balls(),
        linked_balls(),
        regular_polygon(),
        l_shape(),
    ];
    (base, 0.0..(2.0 * PI), -5.0..5.0f64, -5.0..5.0f64)
        .prop_map(|(spec, theta, x, y)| spec.rigid_motion(theta, p(x, y)))
}

/// Log-uniform weight in `[1/8, 8]`.
pub fn weight() -> impl Strategy<Value = f64> {
    (-3.0..3.0f64).prop_map(f64::exp2)
}
