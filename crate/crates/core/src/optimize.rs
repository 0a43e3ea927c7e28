//! Multi-start ascent of smooth log-objectives on the unit sphere and the
//! closed unit ball, plus a small Nelder-Mead used by the distance estimators.
//!
//! Objectives return `(value, euclidean gradient)` or `None` where undefined
//! (at a zero of the underlying polynomial).

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{dot, norm};

/// Name of the generator every seeded routine draws from.
pub const GENERATOR: &str = "chacha8/rand_chacha-0.3";

const MAX_ITER: usize = 600;
const ARMIJO: f64 = 1e-4;
const GRAD_TOL: f64 = 1e-11;
const FD_STEP: f64 = 1e-5;
const DEDUP_TOL: f64 = 1e-7;

pub trait Objective: Fn(&[f64]) -> Option<(f64, Vec<f64>)> + Sync {}
impl<F: Fn(&[f64]) -> Option<(f64, Vec<f64>)> + Sync> Objective for F {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalMax {
    pub point: Vec<f64>,
    pub value: f64,
}

pub(crate) fn normalize(x: &[f64]) -> Option<Vec<f64>> {
    let n = norm(x);
    (n > 1e-300 && n.is_finite()).then(|| x.iter().map(|v| v / n).collect())
}

fn tangent(g: &[f64], x: &[f64]) -> Vec<f64> {
    let r = dot(g, x);
    g.iter().zip(x).map(|(gi, xi)| gi - r * xi).collect()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

// Additive recurrence with the generalized golden ratio (the R_d sequence).
fn low_discrepancy(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut phi = 2.0_f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
    }
    let alpha: Vec<f64> = (1..=dim).map(|j| phi.powi(-(j as i32))).collect();
    let mut rng = rng_for(seed, 1);
    let offset: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    (0..count)
        .map(|k| {
            (0..dim)
                .map(|j| (offset[j] + (k as f64 + 1.0) * alpha[j]).fract())
                .collect()
        })
        .collect()
}

fn gaussian_pairs(u: &[f64]) -> Vec<f64> {
    u.chunks(2)
        .flat_map(|c| {
            let r = (-2.0 * (1.0 - c[0]).ln()).sqrt();
            let t = std::f64::consts::TAU * c[1];
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

/// `count` seeded points on `S^{d-1}` followed by the `2d` signed axes.
pub fn sphere_starts(d: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let even = d + d % 2;
    let mut out: Vec<Vec<f64>> = low_discrepancy(even, count, seed)
        .into_iter()
        .filter_map(|u| normalize(&gaussian_pairs(&u)[..d]))
        .collect();
    for i in 0..d {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[i] = s;
            out.push(e);
        }
    }
    out
}

/// Seeded starts for the closed ball: the sphere starts (boundary) and as
/// many interior points with volume-uniform radii, plus the origin.
pub fn ball_starts(d: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let boundary = sphere_starts(d, count, seed);
    let radii = low_discrepancy(1, boundary.len(), seed ^ 0x9e37_79b9_7f4a_7c15);
    let interior: Vec<Vec<f64>> = boundary
        .iter()
        .zip(radii)
        .map(|(x, r)| {
            let s = r[0].powf(1.0 / d as f64);
            x.iter().map(|v| v * s).collect()
        })
        .collect();
    let mut out = boundary;
    out.extend(interior);
    out.push(vec![0.0; d]);
    out
}

/// Deterministic seeded uniform points on `S^{d-1}` (plain Monte Carlo).
pub fn random_sphere_points(d: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_for(seed, 2);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u: Vec<f64> = (0..d + d % 2).map(|_| rng.gen::<f64>()).collect();
        if let Some(x) = normalize(&gaussian_pairs(&u)[..d]) {
            out.push(x);
        }
    }
    out
}

// Orthonormal basis of the complement of the unit vector x.
pub(crate) fn tangent_basis(x: &[f64]) -> Vec<Vec<f64>> {
    let d = x.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d.saturating_sub(1));
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| x[a].abs().total_cmp(&x[b].abs()));
    for &i in &order {
        if basis.len() + 1 == d {
            break;
        }
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        for b in std::iter::once(x).chain(basis.iter().map(|b| b.as_slice())) {
            let p = dot(&v, b);
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk -= p * bk;
            }
        }
        if let Some(v) = normalize(&v) {
            if norm(&v) > 0.5 {
                basis.push(v);
            }
        }
    }
    basis
}

// Ascent direction from the Hessian restricted to its negative curvature.
fn newton_step(h: &DMatrix<f64>, g: &DVector<f64>) -> DVector<f64> {
    let sym = (h + h.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    let mut step = DVector::zeros(g.len());
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l < -1e-9 * scale {
            let q = eig.eigenvectors.column(i);
            step -= q * (q.dot(g) / l);
        }
    }
    step
}

struct Chart<'a> {
    x: &'a [f64],
    basis: Vec<Vec<f64>>,
}

impl Chart<'_> {
    fn point(&self, c: &[f64]) -> (Vec<f64>, f64) {
        let mut w = self.x.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            for (wk, bk) in w.iter_mut().zip(b) {
                *wk += ci * bk;
            }
        }
        let n = norm(&w);
        (w.iter().map(|v| v / n).collect(), n)
    }

    fn eval<F: Objective + ?Sized>(&self, f: &F, c: &[f64]) -> Option<(f64, DVector<f64>, Vec<f64>)> {
        let (y, wn) = self.point(c);
        let (v, g) = f(&y)?;
        let gt = tangent(&g, &y);
        let gc = DVector::from_iterator(self.basis.len(), self.basis.iter().map(|b| dot(b, &gt) / wn));
        Some((v, gc, y))
    }
}

fn polish_sphere<F: Objective + ?Sized>(f: &F, start: LocalMax) -> LocalMax {
    let mut best = start;
    for _ in 0..8 {
        let chart = Chart { x: &best.point, basis: tangent_basis(&best.point) };
        let k = chart.basis.len();
        if k == 0 {
            break;
        }
        let zero = vec![0.0; k];
        let Some((_, g0, _)) = chart.eval(f, &zero) else { break };
        let g0n = g0.norm();
        if g0n == 0.0 {
            break;
        }
        let mut h = DMatrix::zeros(k, k);
        let mut ok = true;
        for i in 0..k {
            let mut cp = zero.clone();
            let mut cm = zero.clone();
            cp[i] = FD_STEP;
            cm[i] = -FD_STEP;
            match (chart.eval(f, &cp), chart.eval(f, &cm)) {
                (Some((_, gp, _)), Some((_, gm, _))) => {
                    h.set_column(i, &((gp - gm) / (2.0 * FD_STEP)));
                }
                _ => ok = false,
            }
        }
        if !ok {
            break;
        }
        let step = newton_step(&h, &g0);
        if step.norm() > 0.1 || step.norm() == 0.0 {
            break;
        }
        let c: Vec<f64> = step.iter().copied().collect();
        let Some((v1, g1, y1)) = chart.eval(f, &c) else { break };
        let tol = 1e-12 * best.value.abs().max(1.0);
        if !(g1.norm() < g0n) || v1 < best.value - tol {
            break;
        }
        best = LocalMax { point: y1, value: v1 };
    }
    best
}

/// Projected gradient ascent on the sphere from `x0`, finished with a
/// Riemannian Newton polish.
pub fn ascend_sphere<F: Objective + ?Sized>(f: &F, x0: &[f64]) -> Option<LocalMax> {
    let mut x = normalize(x0)?;
    let (mut v, mut g) = f(&x)?;
    let mut alpha: f64 = 0.1;
    for _ in 0..MAX_ITER {
        let gt = tangent(&g, &x);
        let gn = norm(&gt);
        if gn < GRAD_TOL {
            break;
        }
        let u: Vec<f64> = gt.iter().map(|c| c / gn).collect();
        let mut a = (2.0 * alpha).min(0.5);
        let mut moved = false;
        while a > 1e-15 {
            let (s, c) = a.sin_cos();
            let Some(y) = normalize(&x.iter().zip(&u).map(|(xi, ui)| c * xi + s * ui).collect::<Vec<_>>()) else {
                break;
            };
            if let Some((vy, gy)) = f(&y) {
                if vy >= v + ARMIJO * a * gn {
                    x = y;
                    v = vy;
                    g = gy;
                    moved = true;
                    break;
                }
            }
            a *= 0.5;
        }
        if !moved {
            break;
        }
        alpha = a;
    }
    Some(polish_sphere(f, LocalMax { point: x, value: v }))
}

fn polish_interior<F: Objective + ?Sized>(f: &F, start: LocalMax) -> LocalMax {
    let d = start.point.len();
    let mut best = start;
    for _ in 0..8 {
        let Some((_, g0)) = f(&best.point) else { break };
        let g0 = DVector::from_vec(g0);
        let g0n = g0.norm();
        if g0n == 0.0 {
            break;
        }
        let mut h = DMatrix::zeros(d, d);
        for i in 0..d {
            let mut xp = best.point.clone();
            let mut xm = best.point.clone();
            xp[i] += FD_STEP;
            xm[i] -= FD_STEP;
            match (f(&xp), f(&xm)) {
                (Some((_, gp)), Some((_, gm))) => {
                    let col = (DVector::from_vec(gp) - DVector::from_vec(gm)) / (2.0 * FD_STEP);
                    h.set_column(i, &col);
                }
                _ => return best,
            }
        }
        let step = newton_step(&h, &g0);
        if step.norm() > 0.1 || step.norm() == 0.0 {
            break;
        }
        let y: Vec<f64> = best.point.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
        if norm(&y) > 1.0 {
            break;
        }
        let Some((v1, g1)) = f(&y) else { break };
        let tol = 1e-12 * best.value.abs().max(1.0);
        if !(norm(&g1) < g0n) || v1 < best.value - tol {
            break;
        }
        best = LocalMax { point: y, value: v1 };
    }
    best
}

fn on_boundary(x: &[f64]) -> bool {
    norm(x) >= 1.0 - 1e-12
}

// Gradient projected onto the feasible directions of the closed ball.
fn ball_projected_gradient(g: &[f64], x: &[f64]) -> Vec<f64> {
    if on_boundary(x) && dot(g, x) > 0.0 {
        tangent(g, x)
    } else {
        g.to_vec()
    }
}

fn project_ball(y: Vec<f64>) -> Vec<f64> {
    let n = norm(&y);
    if n > 1.0 {
        y.iter().map(|v| v / n).collect()
    } else {
        y
    }
}

/// Projected gradient ascent on the closed unit ball. A limit on the
/// boundary is polished on the sphere, an interior one with a full Newton step.
pub fn ascend_ball<F: Objective + ?Sized>(f: &F, x0: &[f64]) -> Option<LocalMax> {
    let mut x = project_ball(x0.to_vec());
    let (mut v, mut g) = f(&x)?;
    let mut alpha: f64 = 0.1;
    for _ in 0..MAX_ITER {
        let pg = ball_projected_gradient(&g, &x);
        let gn = norm(&pg);
        if gn < GRAD_TOL {
            break;
        }
        let mut a = (2.0 * alpha).min(1.0);
        let mut moved = false;
        while a > 1e-15 {
            let y = project_ball(x.iter().zip(&g).map(|(xi, gi)| xi + a / gn * gi).collect());
            let disp: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
            if norm(&disp) == 0.0 {
                break;
            }
            if let Some((vy, gy)) = f(&y) {
                if vy >= v + ARMIJO * dot(&g, &disp) {
                    x = y;
                    v = vy;
                    g = gy;
                    moved = true;
                    break;
                }
            }
            a *= 0.5;
        }
        if !moved {
            break;
        }
        alpha = a;
    }
    let local = LocalMax { point: x, value: v };
    if on_boundary(&local.point) && dot(&g, &local.point) >= 0.0 {
        let polished = polish_sphere(f, local.clone());
        match f(&polished.point) {
            Some((_, gp)) if dot(&gp, &polished.point) >= 0.0 => Some(polished),
            _ => Some(local),
        }
    } else {
        Some(polish_interior(f, local))
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Sorts by decreasing value (ties by lexicographic point) and drops points
/// within `1e-7` of a better one.
pub fn merge_local_maxima(mut found: Vec<LocalMax>) -> Vec<LocalMax> {
    found.retain(|m| m.value.is_finite());
    found.sort_by(|a, b| b.value.total_cmp(&a.value).then_with(|| lex_cmp(&a.point, &b.point)));
    let mut out: Vec<LocalMax> = Vec::new();
    for m in found {
        let dup = out.iter().any(|o| {
            let diff: Vec<f64> = o.point.iter().zip(&m.point).map(|(a, b)| a - b).collect();
            norm(&diff) < DEDUP_TOL
        });
        if !dup {
            out.push(m);
        }
    }
    out
}

/// Runs [`ascend_sphere`] from every start in parallel and merges the limits
/// deterministically.
pub fn multi_start_sphere<F: Objective + ?Sized>(f: &F, starts: &[Vec<f64>]) -> Vec<LocalMax> {
    let found: Vec<LocalMax> = starts.par_iter().filter_map(|s| ascend_sphere(f, s)).collect();
    merge_local_maxima(found)
}

pub fn multi_start_ball<F: Objective + ?Sized>(f: &F, starts: &[Vec<f64>]) -> Vec<LocalMax> {
    let found: Vec<LocalMax> = starts.par_iter().filter_map(|s| ascend_ball(f, s)).collect();
    merge_local_maxima(found)
}

/// Local maxima whose value is within relative `rel` of the best, measured on
/// `exp(value)` (the objectives are logarithms).
pub fn near_maxima(found: &[LocalMax], rel: f64) -> Vec<LocalMax> {
    let Some(best) = found.first() else { return Vec::new() };
    let cut = best.value + (1.0 - rel).ln();
    found.iter().filter(|m| m.value >= cut).cloned().collect()
}

/// Minimizes `f` with Nelder-Mead from `x0` using an initial simplex of edge
/// `step`, stopping after `max_evals` evaluations or when the simplex values
/// agree to `1e-13`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], step: f64, max_evals: usize) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    let mut evals = n + 1;
    let along = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(w).map(|(ci, wi)| ci + t * (wi - ci)).collect()
    };
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[n].1);
        if (hi - lo).abs() <= 1e-13 * (lo.abs() + 1e-13) || !lo.is_finite() && lo == hi {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].0.clone();
        let xr = along(&centroid, &worst, -1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].1 {
            let xe = along(&centroid, &worst, -2.0);
            let fe = f(&xe);
            evals += 1;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let x = along(&centroid, &worst, -0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(&centroid, &worst, 0.5);
                let v = f(&x);
                (x, v)
            };
            evals += 1;
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for s in simplex.iter_mut().skip(1) {
                    s.0 = along(&best, &s.0, 0.5);
                    s.1 = f(&s.0);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}
