//! Derivative-free local maximizers and low-discrepancy starts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalResult<const N: usize> {
    pub x: [f64; N],
    pub value: f64,
    pub mesh: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Deterministic per-task generator derived from a user seed.
pub(crate) fn task_rng(seed: u64, task: u64) -> ChaCha8Rng {
    // splitmix64 finalizer
    let mut z = seed ^ task.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

fn axpy<const N: usize>(x: &[f64; N], a: f64, d: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| x[i] + a * d[i])
}

/// Nelder-Mead maximization with standard coefficients.
pub(crate) fn nelder_mead<const N: usize, F>(f: &F, x0: [f64; N], step: f64, xtol: f64, max_iter: usize) -> LocalResult<N>
where
    F: Fn(&[f64; N]) -> f64,
{
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..N {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, f(&x)));
    }
    let mut evals = N + 1;
    let mut size = step;
    for _ in 0..max_iter {
        // best first
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        size = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if size < xtol {
            break;
        }
        let centroid: [f64; N] =
            std::array::from_fn(|i| simplex[..N].iter().map(|(x, _)| x[i]).sum::<f64>() / N as f64);
        let worst = simplex[N];
        let dir: [f64; N] = std::array::from_fn(|i| centroid[i] - worst.0[i]);
        let xr = axpy(&centroid, 1.0, &dir);
        let fr = f(&xr);
        evals += 1;
        if fr > simplex[0].1 {
            let xe = axpy(&centroid, 2.0, &dir);
            let fe = f(&xe);
            evals += 1;
            simplex[N] = if fe > fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr > simplex[N - 1].1 {
            simplex[N] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr > worst.1 {
            let xc = axpy(&centroid, 0.5, &dir);
            (xc, f(&xc))
        } else {
            let xc = axpy(&centroid, -0.5, &dir);
            (xc, f(&xc))
        };
        evals += 1;
        if fc > worst.1.max(fr) {
            simplex[N] = (xc, fc);
            continue;
        }
        let best = simplex[0].0;
        for v in simplex.iter_mut().skip(1) {
            v.0 = std::array::from_fn(|i| best[i] + 0.5 * (v.0[i] - best[i]));
            v.1 = f(&v.0);
        }
        evals += N;
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    LocalResult { x: simplex[0].0, value: simplex[0].1, mesh: size, evals, converged: size < xtol }
}

fn random_basis<const N: usize>(rng: &mut ChaCha8Rng) -> [[f64; N]; N] {
    loop {
        let mut basis = [[0.0; N]; N];
        let mut ok = true;
        for k in 0..N {
            let mut v: [f64; N] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            for b in basis.iter().take(k) {
                let proj: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
                for i in 0..N {
                    v[i] -= proj * b[i];
                }
            }
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            basis[k] = v.map(|a| a / norm);
        }
        if ok {
            return basis;
        }
    }
}

/// Opportunistic pattern search with randomly rotated poll bases.
///
/// A poll tries `2N` directions; after a failed poll up to `rotations` fresh
/// bases are tried before the mesh is halved, which lets the search move
/// along the ridges of a max-min objective.
pub(crate) fn pattern_search<const N: usize, F>(
    f: &F,
    mut x: [f64; N],
    mut value: f64,
    mesh0: f64,
    mesh_min: f64,
    max_evals: usize,
    rng: &mut ChaCha8Rng,
) -> LocalResult<N>
where
    F: Fn(&[f64; N]) -> f64,
{
    let rotations = 4;
    let mut mesh = mesh0;
    let mut evals = 0;
    let mut identity = [[0.0; N]; N];
    for (i, row) in identity.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    while mesh >= mesh_min && evals < max_evals {
        let mut improved = false;
        'poll: for attempt in 0..=rotations {
            let basis = if attempt == 0 { identity } else { random_basis::<N>(rng) };
            for d in &basis {
                for sign in [1.0, -1.0] {
                    let y = axpy(&x, sign * mesh, d);
                    let fy = f(&y);
                    evals += 1;
                    if fy > value {
                        x = y;
                        value = fy;
                        improved = true;
                        break 'poll;
                    }
                }
            }
        }
        if improved {
            mesh = (mesh * 1.5).min(mesh0);
        } else {
            mesh *= 0.5;
        }
    }
    LocalResult { x, value, mesh, evals, converged: mesh < mesh_min }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Halton sequence in `[0, 1)^N` with a random (Cranley-Patterson) shift.
pub(crate) struct Halton<const N: usize> {
    index: u64,
    shift: [f64; N],
}

impl<const N: usize> Halton<N> {
    const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

    pub fn new(rng: &mut ChaCha8Rng) -> Self {
        Self { index: 1, shift: std::array::from_fn(|_| rng.random::<f64>()) }
    }
}

impl<const N: usize> Iterator for Halton<N> {
    type Item = [f64; N];

    fn next(&mut self) -> Option<[f64; N]> {
        let i = self.index;
        self.index += 1;
        Some(std::array::from_fn(|k| (radical_inverse(i, Self::PRIMES[k]) + self.shift[k]).fract()))
    }
}
