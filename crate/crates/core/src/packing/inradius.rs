use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;

use super::search::{pattern_search, task_rng};
use super::{InradiusSolution, PackingError, SolverOptions};
use crate::exec::map_indexed;
use crate::geometry::{Domain, Point2};

struct Cell {
    center: Point2,
    half: f64,
    value: f64,
    bound: f64,
}

impl Cell {
    fn new(domain: &Domain, center: Point2, half: f64) -> Self {
        let value = domain.signed_clearance(center);
        Cell { center, half, value, bound: value + half * SQRT_2 }
    }
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound.total_cmp(&other.bound)
    }
}

/// Largest inscribed ball by quadtree branch and bound on the clearance.
///
/// Clearance is 1-Lipschitz, so a square cell of half-side `h` centred at `c`
/// cannot contain a point with clearance above `clearance(c) + h√2`. Cells are
/// refined best-bound-first until no cell can beat the incumbent by more than
/// `tol`; the largest discarded bound gives `certified_gap`.
pub fn inradius(domain: &Domain, opts: &SolverOptions) -> Result<InradiusSolution, PackingError> {
    let tol = opts.resolve_tol(domain)?;
    if let Some((a, b)) = domain.as_interval() {
        return Ok(InradiusSolution {
            radius: 0.5 * (b - a),
            center: Point2::new(0.5 * (a + b), 0.0),
            iterations: 0,
            certified_gap: 0.0,
        });
    }

    let (lo, hi) = domain.bounding_box();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let size = w.min(h);
    let (nx, ny) = ((w / size).ceil() as usize, (h / size).ceil() as usize);
    let half = 0.5 * size;
    let initial = map_indexed(nx * ny, opts.execution, |k| {
        let (i, j) = (k % nx, k / nx);
        let c = Point2::new(lo.x + size * (i as f64 + 0.5), lo.y + size * (j as f64 + 0.5));
        Cell::new(domain, c, half)
    });

    let mut best_center = initial.iter().max_by(|a, b| a.value.total_cmp(&b.value)).map(|c| c.center).unwrap_or(lo);
    let mut best = domain.signed_clearance(best_center);
    let mut heap: BinaryHeap<Cell> = initial.into_iter().collect();
    let mut cells = heap.len();
    let mut worst_pruned: f64 = f64::NEG_INFINITY;

    while let Some(cell) = heap.pop() {
        if cell.value > best {
            best = cell.value;
            best_center = cell.center;
        }
        if cell.bound - best <= tol {
            // the heap is ordered by bound, so every remaining cell is within tol too
            worst_pruned = worst_pruned.max(cell.bound);
            break;
        }
        if cells >= opts.max_cells {
            let best = InradiusSolution {
                radius: best.max(0.0),
                center: best_center,
                iterations: cells,
                certified_gap: cell.bound - best,
            };
            return Err(PackingError::BudgetExceeded { cells, best: Box::new(best) });
        }
        let q = 0.5 * cell.half;
        for (dx, dy) in [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)] {
            let child = Cell::new(domain, cell.center + Point2::new(dx * q, dy * q), q);
            if child.value > best {
                best = child.value;
                best_center = child.center;
            }
            if child.bound > best + tol {
                heap.push(child);
            } else {
                worst_pruned = worst_pruned.max(child.bound);
            }
            cells += 1;
        }
    }
    if best <= 0.0 {
        return Err(PackingError::Geometry(crate::geometry::GeometryError::Invalid(
            "domain has no interior points".into(),
        )));
    }

    // local polish; only ever raises the incumbent
    let f = |x: &[f64; 2]| domain.signed_clearance(Point2::new(x[0], x[1]));
    let mut rng = task_rng(opts.seed, u64::MAX);
    let polished = pattern_search(&f, [best_center.x, best_center.y], best, tol, 1e-3 * tol, 10_000, &mut rng);
    if polished.value > best {
        best = polished.value;
        best_center = Point2::new(polished.x[0], polished.x[1]);
    }

    Ok(InradiusSolution {
        radius: best,
        center: best_center,
        iterations: cells,
        certified_gap: (worst_pruned - best).max(0.0),
    })
}
