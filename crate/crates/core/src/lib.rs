//! Limit (p → ∞) Fučík spectrum of the p-Laplacian.
//!
//! * [`geometry`]: planar domains as unions of primitives, exact clearance.
//! * [`packing`]: largest inscribed ball and the weighted two-ball max-min problem.
//! * [`spectrum`]: trivial lines, the first nontrivial curve, domain classification
//!   and closed-form curves for the ball, the unit square and linked balls.
//! * [`one_dim`]: the interval case for finite and infinite `p`, generalized
//!   trigonometric functions and a viscosity residual checker.
//! * [`export`]: CSV and SVG writers used by the command-line tool.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default); every solver also accepts [`Execution::Sequential`].

pub mod exec;
pub mod export;
pub mod geometry;
pub mod one_dim;
pub mod packing;
pub mod spectrum;

pub use exec::Execution;
pub use geometry::{Domain, DomainSpec, GeometryError, Point2, Shape};
pub use packing::{InradiusSolution, PackingError, SolverOptions, TwoBallSolution};
pub use spectrum::{SpectrumClassification, SpectrumCurve};
