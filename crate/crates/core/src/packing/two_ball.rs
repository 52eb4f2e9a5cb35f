use std::cmp::Ordering;
use std::f64::consts::SQRT_2;

use super::search::{nelder_mead, pattern_search, task_rng, Halton};
use super::{PackingError, SolverOptions, TwoBallSolution};
use crate::exec::map_indexed;
use crate::geometry::{Domain, Point2};

/// `min{clearance(c1)/t, clearance(c2), |c1 - c2|/(1 + t)}` with signed
/// clearance, so infeasible pairs score negative and pull back inside.
fn objective(domain: &Domain, t: f64, x: &[f64; 4]) -> f64 {
    let (c1, c2) = (Point2::new(x[0], x[1]), Point2::new(x[2], x[3]));
    let sep = c1.distance(c2) / (1.0 + t);
    let a = domain.signed_clearance(c1) / t;
    if a <= 0.0 {
        return a.min(sep);
    }
    a.min(domain.signed_clearance(c2)).min(sep)
}

fn terms(domain: &Domain, t: f64, c1: Point2, c2: Point2) -> [f64; 3] {
    [
        domain.signed_clearance(c1) / t,
        domain.signed_clearance(c2),
        c1.distance(c2) / (1.0 + t),
    ]
}

fn check_t(t: f64) -> Result<(), PackingError> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(PackingError::InvalidParameter(format!("weight t must be finite and > 0, got {t}")))
    }
}

/// Lipschitz constant of the objective in the Euclidean norm on `(c1, c2)`.
fn lipschitz(t: f64) -> f64 {
    (1.0 / t).max(1.0).max(SQRT_2 / (1.0 + t))
}

fn interval_solution(a: f64, b: f64, t: f64) -> TwoBallSolution {
    // two disjoint sub-intervals of half-lengths t*rho and rho
    let rho = 0.5 * (b - a) / (1.0 + t);
    let c1 = Point2::new(a + t * rho, 0.0);
    let c2 = Point2::new(b - rho, 0.0);
    TwoBallSolution {
        rho,
        t,
        centers: (c1, c2),
        radii: (t * rho, rho),
        objective_terms: [rho, rho, rho],
        certified_gap: 0.0,
        evaluations: 0,
        budget_exceeded: false,
    }
}

/// Points of a uniform grid over the bounding box that lie inside the domain,
/// with their clearances.
fn interior_grid(domain: &Domain, side: usize, opts: &SolverOptions) -> Vec<(Point2, f64)> {
    let (lo, hi) = domain.bounding_box();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let step = w.max(h) / side.max(2) as f64;
    let nx = ((w / step).round() as usize).max(1);
    let ny = ((h / step).round() as usize).max(1);
    let (sx, sy) = (w / nx as f64, h / ny as f64);
    let pts = map_indexed(nx * ny, opts.execution, |k| {
        let p = Point2::new(lo.x + sx * ((k % nx) as f64 + 0.5), lo.y + sy * ((k / nx) as f64 + 0.5));
        (p, domain.signed_clearance(p))
    });
    pts.into_iter().filter(|(_, c)| *c > 0.0).collect()
}

/// Best value and pair over all ordered pairs of `pts`.
fn best_pairs(pts: &[(Point2, f64)], t: f64, keep: usize, opts: &SolverOptions) -> Vec<(f64, [f64; 4])> {
    let per_first = map_indexed(pts.len(), opts.execution, |i| {
        let (p, cp) = pts[i];
        let first = cp / t;
        let mut best = (f64::NEG_INFINITY, 0);
        for (j, &(q, cq)) in pts.iter().enumerate() {
            let v = first.min(cq).min(p.distance(q) / (1.0 + t));
            if v > best.0 {
                best = (v, j);
            }
        }
        (best.0, [p.x, p.y, pts[best.1].0.x, pts[best.1].0.y])
    });
    let mut all = per_first;
    all.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| lex(&a.1, &b.1)));
    all.truncate(keep);
    all
}

/// Brute-force lower bound: the best center pair on a `side x side` grid.
pub fn brute_force_rho(domain: &Domain, t: f64, side: usize, opts: &SolverOptions) -> Result<f64, PackingError> {
    check_t(t)?;
    if let Some((a, b)) = domain.as_interval() {
        return Ok(interval_solution(a, b, t).rho);
    }
    let pts = interior_grid(domain, side, opts);
    Ok(best_pairs(&pts, t, 1, opts).first().map_or(0.0, |b| b.0))
}

fn lex(a: &[f64; 4], b: &[f64; 4]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Maximal `rho` such that disjoint balls of radii `t * rho` and `rho` fit in
/// the domain; `1 / rho` is the value `c(t)` generating the first nontrivial
/// curve.
///
/// Multistart search over the 4-dimensional space of center pairs: Halton
/// starts filtered by containment plus the best pairs of a coarse grid, each
/// refined by Nelder-Mead and then a rotating-basis pattern search. Results
/// are reduced in start order, so the output depends only on the seed.
pub fn two_ball_rho(domain: &Domain, t: f64, opts: &SolverOptions) -> Result<TwoBallSolution, PackingError> {
    check_t(t)?;
    let tol = opts.resolve_tol(domain)?;
    if let Some((a, b)) = domain.as_interval() {
        return Ok(interval_solution(a, b, t));
    }
    let diameter = domain.diameter();
    let (lo, hi) = domain.bounding_box();

    let mut starts: Vec<[f64; 4]> = Vec::with_capacity(opts.starts + 8);
    let mut halton = Halton::<4>::new(&mut task_rng(opts.seed, 0));
    for _ in 0..opts.starts.saturating_mul(200) {
        if starts.len() >= opts.starts {
            break;
        }
        let u = halton.next().expect("infinite sequence");
        let c1 = Point2::new(lo.x + u[0] * (hi.x - lo.x), lo.y + u[1] * (hi.y - lo.y));
        let c2 = Point2::new(lo.x + u[2] * (hi.x - lo.x), lo.y + u[3] * (hi.y - lo.y));
        if domain.contains(c1) && domain.contains(c2) {
            starts.push([c1.x, c1.y, c2.x, c2.y]);
        }
    }
    let grid = interior_grid(domain, opts.grid, opts);
    starts.extend(best_pairs(&grid, t, 8, opts).into_iter().map(|(_, x)| x));
    if starts.is_empty() {
        return Err(PackingError::NoFeasibleStart);
    }

    let f = |x: &[f64; 4]| objective(domain, t, x);
    let lip = lipschitz(t);
    let mesh_min = tol / (100.0 * lip);
    let results = map_indexed(starts.len(), opts.execution, |index| {
        let mut rng = task_rng(opts.seed, 1 + index as u64);
        let nm = nelder_mead(&f, starts[index], 0.02 * diameter, mesh_min, opts.max_evals / 4);
        let budget = opts.max_evals.saturating_sub(nm.evals);
        let ps = pattern_search(&f, nm.x, nm.value, 0.01 * diameter, mesh_min, budget, &mut rng);
        (ps, nm.evals + ps.evals)
    });

    let evaluations = results.iter().map(|r| r.1).sum();
    let best_value = results.iter().map(|r| r.0.value).fold(f64::NEG_INFINITY, f64::max);
    if best_value <= 0.0 {
        return Err(PackingError::NoFeasibleStart);
    }
    let tie = 1e-2 * tol;
    let canonical = |x: [f64; 4]| -> [f64; 4] {
        // with equal weights the two balls are interchangeable
        if t == 1.0 && lex(&[x[2], x[3], x[0], x[1]], &x).is_lt() {
            [x[2], x[3], x[0], x[1]]
        } else {
            x
        }
    };
    let (chosen, _) = results
        .iter()
        .filter(|r| r.0.value >= best_value - tie)
        .map(|r| (r.0, canonical(r.0.x)))
        .min_by(|a, b| lex(&a.1, &b.1))
        .expect("best value is attained");
    let x = canonical(chosen.x);
    let (c1, c2) = (Point2::new(x[0], x[1]), Point2::new(x[2], x[3]));
    let objective_terms = terms(domain, t, c1, c2);
    let rho = objective_terms.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(TwoBallSolution {
        rho,
        t,
        centers: (c1, c2),
        radii: (t * rho, rho),
        objective_terms,
        certified_gap: lip * chosen.mesh,
        evaluations,
        budget_exceeded: !chosen.converged,
    })
}

/// Largest `r` such that two disjoint `r`-balls fit in the domain.
pub fn max_twin_radius(domain: &Domain, opts: &SolverOptions) -> Result<f64, PackingError> {
    two_ball_rho(domain, 1.0, opts).map(|s| s.rho)
}
