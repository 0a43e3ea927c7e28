//! Maximizing `|P|` on the unit sphere and measuring how far the maximizer
//! sits from the zero set of `P`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::{self, nelder_mead, normalize, tangent_basis, LocalMax};
use crate::poly::{dot, AffineForm, CirclePlane, RealPolynomial};
use crate::trig::{angular_bound, circular_distance, interlacing_check, trig_max_points, trig_zeros, Interlacing};

/// Relative gap under which two maxima count as equal.
pub const NEAR_MAX_REL: f64 = 1e-9;
/// Slack allowed on the angular bound.
pub const BOUND_TOL: f64 = 1e-6;
/// Highest degree for which the planar case is certified through the circle restriction.
const CERTIFIED_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let coords = normalize(&coords)
            .ok_or_else(|| Error::InvalidInput("a sphere point needs a nonzero finite vector".into()))?;
        Ok(SpherePoint { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereMaxResult {
    pub point: SpherePoint,
    pub value: f64,
    pub all_near_max: Vec<SpherePoint>,
}

/// Distance estimate together with the zero that realizes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroDistance {
    pub distance: f64,
    pub nearest: Option<Vec<f64>>,
}

impl ZeroDistance {
    pub(crate) fn none() -> Self {
        ZeroDistance { distance: f64::INFINITY, nearest: None }
    }

    pub(crate) fn keep_closer(&mut self, other: ZeroDistance) {
        if other.distance < self.distance {
            *self = other;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub circle: CirclePlane,
    pub interlacing: Interlacing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub degree: usize,
    pub maximizer: SpherePoint,
    pub value: f64,
    pub distance: f64,
    pub bound: f64,
    pub passed: bool,
    pub nearest_zero: Option<Vec<f64>>,
    /// Distances from every near-maximizer, in the order of `all_near_max`.
    pub near_max_distances: Vec<f64>,
    pub equality: Option<EqualityCase>,
}

pub(crate) fn log_objective<'a>(poly: &'a dyn RealPolynomial) -> impl optimize::Objective + 'a {
    move |x: &[f64]| poly.log_abs_gradient_at(x)
}

/// All local maxima of `ln|P|` found from the seeded starts, best first.
pub(crate) fn sphere_local_maxima(poly: &dyn RealPolynomial, starts: usize, seed: u64) -> Vec<LocalMax> {
    let f = log_objective(poly);
    optimize::multi_start_sphere(&f, &optimize::sphere_starts(poly.dim(), starts, seed))
}

fn maximize_by_ascent(poly: &dyn RealPolynomial, starts: usize, seed: u64) -> Result<SphereMaxResult> {
    let found = sphere_local_maxima(poly, starts, seed);
    if found.is_empty() {
        return Err(Error::OptimizationFailed("the polynomial vanishes at every start".into()));
    }
    let near = optimize::near_maxima(&found, NEAR_MAX_REL);
    let all: Vec<SpherePoint> = near.iter().map(|m| SpherePoint { coords: m.point.clone() }).collect();
    Ok(SphereMaxResult {
        point: all[0].clone(),
        value: poly.value_at(&near[0].point).abs(),
        all_near_max: all,
    })
}

fn maximize_on_circle(poly: &dyn RealPolynomial) -> Result<SphereMaxResult> {
    let plane = CirclePlane::great_circle(vec![1.0, 0.0], vec![0.0, 1.0])?;
    let t = poly.circle_restriction(&plane);
    if t.is_zero() {
        return Err(Error::OptimizationFailed("the polynomial vanishes on the circle".into()));
    }
    let maxima = trig_max_points(&t)?;
    let all: Vec<SpherePoint> = maxima
        .points
        .iter()
        .map(|&th| SpherePoint { coords: vec![th.cos(), th.sin()] })
        .collect();
    Ok(SphereMaxResult { point: all[0].clone(), value: maxima.value, all_near_max: all })
}

/// Global maximum of `|P|` on `S^{d-1}`: exact critical points of the circle
/// restriction for `d = 2`, seeded multi-start ascent otherwise.
pub fn maximize_abs_on_sphere(poly: &dyn RealPolynomial, starts: usize, seed: u64) -> Result<SphereMaxResult> {
    match poly.dim() {
        0 | 1 => Err(Error::Precondition("the sphere needs dimension at least 2".into())),
        2 if poly.degree() <= CERTIFIED_DEGREE => maximize_on_circle(poly),
        _ => maximize_by_ascent(poly, starts.max(1), seed),
    }
}

/// Intrinsic distance from `p` to `{x ∈ S^{d-1} : ⟨a, x⟩ = b}`; `+∞` when the
/// hyperplane misses the sphere.
pub fn slice_distance(form: &AffineForm, p: &[f64]) -> f64 {
    let b = form.offset();
    if b.abs() > 1.0 {
        return f64::INFINITY;
    }
    let s = dot(form.normal(), p).clamp(-1.0, 1.0);
    (s.asin() - b.asin()).abs()
}

/// The point of the slice closest to `p` (rotate `p` along the great circle
/// towards or away from the normal).
pub fn slice_nearest_point(form: &AffineForm, p: &[f64]) -> Option<Vec<f64>> {
    let b = form.offset();
    if b.abs() > 1.0 {
        return None;
    }
    let a = form.normal();
    let s = dot(a, p).clamp(-1.0, 1.0);
    // Unit tangent at p pointing up the normal; any tangent when p = ±a.
    let w = normalize(&a.iter().zip(p).map(|(ai, pi)| ai - s * pi).collect::<Vec<_>>())
        .unwrap_or_else(|| tangent_basis(p).swap_remove(0));
    let delta = b.asin() - s.asin();
    let (sn, cs) = delta.sin_cos();
    Some(p.iter().zip(&w).map(|(pi, wi)| cs * pi + sn * wi).collect())
}

fn factor_distance(forms: &[AffineForm], p: &[f64]) -> ZeroDistance {
    let mut best = ZeroDistance::none();
    for f in forms {
        best.keep_closer(ZeroDistance { distance: slice_distance(f, p), nearest: slice_nearest_point(f, p) });
    }
    best
}

// Distance from p to the zero set along the great circle through p with
// tangent direction u.
fn along_great_circle(poly: &dyn RealPolynomial, p: &[f64], u: &[f64]) -> ZeroDistance {
    let Ok(plane) = CirclePlane::great_circle(p.to_vec(), u.to_vec()) else {
        return ZeroDistance::none();
    };
    let t = poly.circle_restriction(&plane);
    if t.is_zero() {
        return ZeroDistance { distance: 0.0, nearest: Some(p.to_vec()) };
    }
    let Ok(zeros) = trig_zeros(&t) else { return ZeroDistance::none() };
    let mut best = ZeroDistance::none();
    for th in zeros.thetas() {
        best.keep_closer(ZeroDistance { distance: circular_distance(th, 0.0), nearest: Some(plane.point(th)) });
    }
    best
}

fn tangent_direction(basis: &[Vec<f64>], c: &[f64]) -> Option<Vec<f64>> {
    let d = basis[0].len();
    let mut u = vec![0.0; d];
    for (ci, b) in c.iter().zip(basis) {
        for (uk, bk) in u.iter_mut().zip(b) {
            *uk += ci * bk;
        }
    }
    normalize(&u)
}

/// Angular distance from `p` to `Z(P) ∩ S^{d-1}`.
///
/// Exact for a product of affine forms (closed form per factor) and in the
/// plane (one great circle). Otherwise every point is searched for along great
/// circles through `p`: `budget` seeded tangent directions, each refined by
/// Nelder-Mead, so the estimate is an upper bound that can only shrink as the
/// budget grows. `+∞` when no zero is found.
pub fn angular_distance_to_zero_set(poly: &dyn RealPolynomial, p: &[f64], budget: usize) -> ZeroDistance {
    if let Some(forms) = poly.affine_factors() {
        return factor_distance(forms, p);
    }
    let d = p.len();
    if d < 2 {
        return ZeroDistance::none();
    }
    let basis = tangent_basis(p);
    if d == 2 {
        return along_great_circle(poly, p, &basis[0]);
    }
    let seeds: Vec<Vec<f64>> = if d == 3 {
        (0..budget.max(1))
            .map(|j| {
                let phi = std::f64::consts::PI * j as f64 / budget.max(1) as f64;
                vec![phi.cos(), phi.sin()]
            })
            .collect()
    } else {
        optimize::random_sphere_points(d - 1, budget.max(1), 0x5eed)
    };
    use rayon::prelude::*;
    let results: Vec<ZeroDistance> = seeds
        .par_iter()
        .map(|c0| {
            let eval = |c: &[f64]| match tangent_direction(&basis, c) {
                Some(u) => along_great_circle(poly, p, &u),
                None => ZeroDistance::none(),
            };
            let start = eval(c0);
            if !start.distance.is_finite() {
                return start;
            }
            let (c, _) = nelder_mead(|c| eval(c).distance, c0, 0.05, 40 * d);
            let mut best = start;
            best.keep_closer(eval(&c));
            best
        })
        .collect();
    let mut best = ZeroDistance::none();
    for r in results {
        best.keep_closer(r);
    }
    best
}

/// Maximizes `|P|`, measures the zero-set distance at the best near-maximizer
/// and, in the extremal case `distance ≈ π/(2n)`, restricts `P` to the circle
/// through the maximizer and its nearest zero to check interlacing.
pub fn verify_theorem1(poly: &dyn RealPolynomial, starts: usize, seed: u64) -> Result<Theorem1Report> {
    let max = maximize_abs_on_sphere(poly, starts, seed)?;
    let budget = starts.max(16);
    let distances: Vec<ZeroDistance> = max
        .all_near_max
        .iter()
        .map(|p| angular_distance_to_zero_set(poly, p.coords(), budget))
        .collect();
    let mut pick = 0;
    for (i, d) in distances.iter().enumerate() {
        if d.distance > distances[pick].distance {
            pick = i;
        }
    }
    let n = poly.degree();
    let bound = angular_bound(n);
    let chosen = &distances[pick];
    let maximizer = max.all_near_max[pick].clone();
    let distance = chosen.distance;

    let equality = match &chosen.nearest {
        Some(z) if (distance - bound).abs() < BOUND_TOL => {
            let circle = CirclePlane::great_circle(maximizer.coords().to_vec(), z.clone())?;
            let t = poly.circle_restriction(&circle);
            if t.is_zero() {
                None
            } else {
                Some(EqualityCase { interlacing: interlacing_check(&t)?, circle })
            }
        }
        _ => None,
    };

    Ok(Theorem1Report {
        degree: n,
        value: poly.value_at(maximizer.coords()).abs(),
        maximizer,
        distance,
        bound,
        passed: distance >= bound - BOUND_TOL,
        nearest_zero: chosen.nearest.clone(),
        near_max_distances: distances.iter().map(|d| d.distance).collect(),
        equality,
    })
}
