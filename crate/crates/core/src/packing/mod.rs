//! Inscribed-ball optimization: the inradius and the weighted two-ball
//! max-min problem whose value generates the first nontrivial curve.

mod inradius;
mod search;
mod two_ball;

pub use inradius::inradius;
pub use two_ball::{brute_force_rho, max_twin_radius, two_ball_rho};

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::geometry::{Domain, GeometryError, Point2};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PackingError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("iteration budget exhausted after {cells} cells; best radius so far {}", best.radius)]
    BudgetExceeded { cells: usize, best: Box<InradiusSolution> },
    #[error("no start pair with both centers inside the domain was found")]
    NoFeasibleStart,
}

/// Knobs shared by the packing solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Absolute length tolerance; `None` means `1e-4 * diameter`.
    pub tol: Option<f64>,
    /// Low-discrepancy multistart count for the two-ball search.
    pub starts: usize,
    /// Side of the coarse grid whose best center pairs seed extra starts.
    pub grid: usize,
    pub seed: u64,
    /// Objective evaluations allowed per local search.
    pub max_evals: usize,
    /// Cell budget of the inradius branch and bound.
    pub max_cells: usize,
    pub execution: Execution,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: None,
            starts: 64,
            grid: 32,
            seed: 0x5EED,
            max_evals: 40_000,
            max_cells: 4_000_000,
            execution: Execution::default(),
        }
    }
}

impl SolverOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub(crate) fn resolve_tol(&self, domain: &Domain) -> Result<f64, PackingError> {
        let tol = self.tol.unwrap_or(1e-4 * domain.diameter());
        if tol.is_finite() && tol > 0.0 {
            Ok(tol)
        } else {
            Err(PackingError::InvalidParameter(format!("tolerance must be > 0, got {tol}")))
        }
    }
}

/// Largest ball inside the domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InradiusSolution {
    pub radius: f64,
    pub center: Point2,
    /// Branch-and-bound cells processed.
    pub iterations: usize,
    /// Upper bound on the distance from `radius` to the true inradius.
    pub certified_gap: f64,
}

/// Two disjoint inscribed balls of radii `t * rho` and `rho` maximizing `rho`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoBallSolution {
    pub rho: f64,
    pub t: f64,
    pub centers: (Point2, Point2),
    pub radii: (f64, f64),
    /// `[clearance(c1) / t, clearance(c2), |c1 - c2| / (1 + t)]`; `rho` is their minimum.
    pub objective_terms: [f64; 3],
    /// Practical (not rigorous) bound from the final pattern-search mesh.
    pub certified_gap: f64,
    pub evaluations: usize,
    /// Set when a local search ran out of evaluations before its mesh closed.
    pub budget_exceeded: bool,
}
