//! Homogeneous polynomials in `d` complex variables, viewed on the unit sphere
//! `S^{2d-1}` of `C^d`, and their distance to the zero set measured by
//! `arccos |⟨p, z⟩|`.
//!
//! A point of `C^d` is stored as `2d` reals `(x_0, y_0, x_1, y_1, ...)` with
//! `z_j = x_j + i y_j` whenever it goes through the real optimizer.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::{self, nelder_mead, LocalMax};
use crate::roots::complex_roots;
use crate::sphere::{ZeroDistance, BOUND_TOL, NEAR_MAX_REL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest `Σ δ_k² deg P_k` accepted by [`WeightedSystem::new`].
pub const WEIGHT_BUDGET_TOL: f64 = 1e-12;

pub fn hermitian(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

pub fn cnorm(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn cnormalize(z: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = cnorm(z);
    (n > 1e-300 && n.is_finite()).then(|| z.iter().map(|c| c / n).collect())
}

pub fn to_complex(x: &[f64]) -> Vec<Complex64> {
    x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

pub fn to_real(z: &[Complex64]) -> Vec<f64> {
    z.iter().flat_map(|c| [c.re, c.im]).collect()
}

/// Orbit angle `arccos |⟨p, z⟩|` between unit vectors.
pub fn orbit_angle(p: &[Complex64], z: &[Complex64]) -> f64 {
    hermitian(p, z).norm().min(1.0).acos()
}

fn cpoly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexHomogPoly {
    dim: usize,
    degree: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
    /// Coefficient vectors `a` of linear factors `Σ a_j z_j`, when known.
    forms: Option<Vec<Vec<Complex64>>>,
}

impl ComplexHomogPoly {
    /// Merges repeated exponents and rejects inhomogeneous or zero input.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("polynomial dimension must be positive".into()));
        }
        let mut map: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: e.len() });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
            *map.entry(e).or_insert(ZERO) += c;
        }
        let terms: Vec<(Vec<u32>, Complex64)> = map.into_iter().filter(|(_, c)| *c != ZERO).collect();
        let degrees: Vec<usize> = terms.iter().map(|(e, _)| e.iter().map(|&k| k as usize).sum()).collect();
        let degree = *degrees.first().ok_or(Error::ZeroPolynomial)?;
        if degrees.iter().any(|&k| k != degree) {
            return Err(Error::InvalidInput("terms of different total degree: polynomial is not homogeneous".into()));
        }
        Ok(ComplexHomogPoly { dim, degree, terms, forms: None })
    }

    /// Expanded product of linear forms `Σ a_j z_j`, tagged with the factors.
    pub fn product_of_linear_forms(forms: &[Vec<Complex64>]) -> Result<Self> {
        let d = forms
            .first()
            .ok_or_else(|| Error::InvalidInput("product of an empty list of forms".into()))?
            .len();
        let mut p = ComplexHomogPoly::new(d, [(vec![0; d], ONE)])?;
        for a in forms {
            if a.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: a.len() });
            }
            if cnorm(a) == 0.0 {
                return Err(Error::InvalidInput("linear form with zero coefficients".into()));
            }
            let lin = ComplexHomogPoly::new(
                d,
                a.iter().enumerate().map(|(j, &c)| {
                    let mut e = vec![0; d];
                    e[j] = 1;
                    (e, c)
                }),
            )?;
            p = p.mul(&lin)?;
        }
        p.forms = Some(forms.to_vec());
        Ok(p)
    }

    pub fn mul(&self, other: &ComplexHomogPoly) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                terms.push((e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2));
            }
        }
        ComplexHomogPoly::new(self.dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Vec<u32>, Complex64)] {
        &self.terms
    }

    pub fn forms(&self) -> Option<&[Vec<Complex64>]> {
        self.forms.as_deref()
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: z.len() });
        }
        Ok(self.value_at(z))
    }

    pub(crate) fn value_at(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(z).map(|(&k, zi)| zi.powu(k)).product::<Complex64>())
            .sum()
    }

    /// Holomorphic partial derivatives `∂P/∂z_j`.
    pub(crate) fn gradient_at(&self, z: &[Complex64]) -> Vec<Complex64> {
        let mut g = vec![ZERO; self.dim];
        for (e, c) in &self.terms {
            for j in 0..self.dim {
                if e[j] == 0 {
                    continue;
                }
                let mut t = c * e[j] as f64;
                for (i, (&k, zi)) in e.iter().zip(z).enumerate() {
                    t *= if i == j { zi.powu(k - 1) } else { zi.powu(k) };
                }
                g[j] += t;
            }
        }
        g
    }

    /// `(ln|P|, ∇ ln|P|)` on the real coordinates `(x_j, y_j)`:
    /// `∂/∂x_j = Re(P_j/P)` and `∂/∂y_j = -Im(P_j/P)`.
    pub(crate) fn log_abs_real(&self, x: &[f64]) -> Option<(f64, Vec<f64>)> {
        let z = to_complex(x);
        let v = self.value_at(&z);
        if v == ZERO || !v.re.is_finite() || !v.im.is_finite() {
            return None;
        }
        let g: Vec<f64> = self
            .gradient_at(&z)
            .into_iter()
            .flat_map(|gj| {
                let r = gj / v;
                [r.re, -r.im]
            })
            .collect();
        Some((v.norm().ln(), g))
    }

    /// Coefficients in `t` of `P(p + t v)`, lowest degree first.
    pub(crate) fn line_restriction(&self, p: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
        let mut acc = vec![ZERO; self.degree + 1];
        for (e, c) in &self.terms {
            let mut term = vec![*c];
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = cpoly_mul(&term, &[p[j], v[j]]);
                }
            }
            for (a, t) in acc.iter_mut().zip(term) {
                *a += t;
            }
        }
        acc
    }

    fn coefficient_scale(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).sum()
    }
}

/// Evaluates `P(z)`.
pub fn cplx_eval(poly: &ComplexHomogPoly, z: &[Complex64]) -> Result<Complex64> {
    poly.eval(z)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSystem {
    items: Vec<(ComplexHomogPoly, f64)>,
    budget: f64,
}

impl WeightedSystem {
    /// Requires `δ_k > 0`, a common dimension and `Σ δ_k² deg P_k ≤ 1`.
    pub fn new(items: Vec<(ComplexHomogPoly, f64)>) -> Result<Self> {
        let d = items
            .first()
            .ok_or_else(|| Error::InvalidInput("empty weighted system".into()))?
            .0
            .dim();
        for (p, delta) in &items {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
            }
            if !(*delta > 0.0 && delta.is_finite()) {
                return Err(Error::InvalidInput(format!("weight {delta} is not positive")));
            }
        }
        let budget: f64 = items.iter().map(|(p, d)| d * d * p.degree() as f64).sum();
        if budget > 1.0 + WEIGHT_BUDGET_TOL {
            return Err(Error::Precondition(format!("sum of delta^2 deg P = {budget} exceeds 1")));
        }
        Ok(WeightedSystem { items, budget })
    }

    pub fn items(&self) -> &[(ComplexHomogPoly, f64)] {
        &self.items
    }

    pub fn dim(&self) -> usize {
        self.items[0].0.dim()
    }

    /// `Σ δ_k² deg P_k`.
    pub fn budget(&self) -> f64 {
        self.budget
    }
}

// Multiplies by the unit scalar that makes the first non-negligible
// coordinate real and positive, so points of one orbit coincide.
fn canonical_phase(x: &[f64]) -> Vec<f64> {
    let z = to_complex(x);
    let Some(lead) = z.iter().find(|c| c.norm() > 1e-6) else { return x.to_vec() };
    let rot = lead.conj() / lead.norm();
    to_real(&z.iter().map(|c| c * rot).collect::<Vec<_>>())
}

/// Local maxima of `Σ w_k ln|P_k|` on the unit sphere of `C^d`, one
/// representative per unit-scalar orbit, best first.
pub(crate) fn weighted_local_maxima(
    items: &[(&ComplexHomogPoly, f64)],
    starts: usize,
    seed: u64,
) -> Vec<LocalMax> {
    let d = items[0].0.dim();
    let f = |x: &[f64]| -> Option<(f64, Vec<f64>)> {
        let mut value = 0.0;
        let mut grad = vec![0.0; 2 * d];
        for (p, w) in items {
            let (v, g) = p.log_abs_real(x)?;
            value += w * v;
            for (a, b) in grad.iter_mut().zip(g) {
                *a += w * b;
            }
        }
        Some((value, grad))
    };
    let found = optimize::multi_start_sphere(&f, &optimize::sphere_starts(2 * d, starts.max(1), seed));
    optimize::merge_local_maxima(
        found
            .into_iter()
            .map(|m| LocalMax { point: canonical_phase(&m.point), value: m.value })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedMax {
    /// Real coordinates on `S^{2d-1}`.
    pub point: Vec<f64>,
    /// `Σ δ_k² ln|P_k|` at the point.
    pub log_value: f64,
    pub near_max: Vec<Vec<f64>>,
}

/// Maximizer of `|P_1|^{δ_1²} ⋯ |P_N|^{δ_N²}` on the unit sphere of `C^d`.
pub fn maximize_weighted_log(system: &WeightedSystem, starts: usize, seed: u64) -> Result<WeightedMax> {
    let items: Vec<(&ComplexHomogPoly, f64)> = system.items.iter().map(|(p, d)| (p, d * d)).collect();
    let found = weighted_local_maxima(&items, starts, seed);
    let best = found
        .first()
        .ok_or_else(|| Error::OptimizationFailed("the weighted product vanishes at every start".into()))?;
    Ok(WeightedMax {
        point: best.point.clone(),
        log_value: best.value,
        near_max: optimize::near_maxima(&found, NEAR_MAX_REL).into_iter().map(|m| m.point).collect(),
    })
}

// Complex orthonormal basis of the Hermitian complement of the unit vector p.
fn complement_basis(p: &[Complex64]) -> Vec<Vec<Complex64>> {
    let d = p.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| p[a].norm().total_cmp(&p[b].norm()));
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for &i in &order {
        if basis.len() + 1 == d {
            break;
        }
        let mut v = vec![ZERO; d];
        v[i] = ONE;
        for b in std::iter::once(p).chain(basis.iter().map(|b| b.as_slice())) {
            let c = hermitian(&v, b);
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk -= c * bk;
            }
        }
        if cnorm(&v) > 0.5 {
            basis.push(cnormalize(&v).expect("nonzero"));
        }
    }
    basis
}

// Zeros of P on the complex line through p in direction v (v ⊥ p, unit):
// z = (p + t v)/√(1+|t|²) has orbit angle arctan|t|; a degree drop is a
// zero at t = ∞, the point v itself.
fn along_complex_line(poly: &ComplexHomogPoly, p: &[Complex64], v: &[Complex64]) -> ZeroDistance {
    let coeffs = poly.line_restriction(p, v);
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return ZeroDistance { distance: 0.0, nearest: Some(to_real(p)) };
    }
    let mut best = ZeroDistance::none();
    if coeffs[poly.degree()].norm() <= 1e-14 * scale {
        best.keep_closer(ZeroDistance { distance: std::f64::consts::FRAC_PI_2, nearest: Some(to_real(v)) });
    }
    if let Ok(roots) = complex_roots(&coeffs) {
        for t in roots {
            let s = (1.0 + t.norm_sqr()).sqrt();
            let z: Vec<Complex64> = p.iter().zip(v).map(|(a, b)| (a + t * b) / s).collect();
            best.keep_closer(ZeroDistance { distance: t.norm().atan(), nearest: Some(to_real(&z)) });
        }
    }
    best
}

fn linear_form_distance(forms: &[Vec<Complex64>], p: &[Complex64]) -> ZeroDistance {
    let mut best = ZeroDistance::none();
    for a in forms {
        let an2: f64 = a.iter().map(|c| c.norm_sqr()).sum();
        let l: Complex64 = a.iter().zip(p).map(|(x, y)| x * y).sum();
        let dist = (l.norm() / an2.sqrt()).min(1.0).asin();
        let z: Vec<Complex64> = p.iter().zip(a).map(|(pi, ai)| pi - l / an2 * ai.conj()).collect();
        best.keep_closer(ZeroDistance { distance: dist, nearest: cnormalize(&z).map(|z| to_real(&z)) });
    }
    best
}

/// `min arccos |⟨p, z⟩|` over zeros `z` of `P` on the unit sphere, with the
/// zero reached (in real coordinates).
///
/// Exact for `d = 2` (the single complex line through `p`, dehomogenized and
/// solved by the eigenvalue root finder) and for tagged products of linear
/// forms; otherwise `budget` seeded directions in the complement of `p`, each
/// refined by Nelder-Mead.
pub fn complex_zero_distance(poly: &ComplexHomogPoly, p: &[Complex64], budget: usize) -> ZeroDistance {
    let Some(p) = cnormalize(p) else { return ZeroDistance::none() };
    if poly.dim() == 1 {
        // P = c z^n vanishes on the unit circle only when n = 0, which is excluded.
        return ZeroDistance::none();
    }
    let basis = complement_basis(&p);
    if poly.dim() == 2 {
        return along_complex_line(poly, &p, &basis[0]);
    }
    if let Some(forms) = poly.forms() {
        return linear_form_distance(forms, &p);
    }
    let k = basis.len();
    let direction = |c: &[f64]| -> Option<Vec<Complex64>> {
        let mut v = vec![ZERO; p.len()];
        for (j, b) in basis.iter().enumerate() {
            let w = Complex64::new(c[2 * j], c[2 * j + 1]);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += w * bi;
            }
        }
        cnormalize(&v)
    };
    let seeds = optimize::random_sphere_points(2 * k, budget.max(1), 0x5eed);
    let results: Vec<ZeroDistance> = seeds
        .par_iter()
        .map(|c0| {
            let eval = |c: &[f64]| match direction(c) {
                Some(v) => along_complex_line(poly, &p, &v),
                None => ZeroDistance::none(),
            };
            let mut best = eval(c0);
            if best.distance.is_finite() {
                let (c, _) = nelder_mead(|c| eval(c).distance, c0, 0.05, 80 * k);
                best.keep_closer(eval(&c));
            }
            best
        })
        .collect();
    let mut best = ZeroDistance::none();
    for r in results {
        best.keep_closer(r);
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cp1Report {
    /// Chart radius `|z|` of the maximizer, the zero sitting at `z = 0`.
    pub a: f64,
    pub a_squared: f64,
    /// `1/(n-1)`.
    pub bound: f64,
    pub passed: bool,
    pub maximizer: Vec<f64>,
    /// `|f(z)| (1+|z|²)^{-n/2}` with `f(z) = P(p_0 + z w)`, equal to `|P|` at the maximizer.
    pub chart_value: f64,
}

// Chart coordinate of p when the projective line is parametrized by p0 + z w.
fn chart_coordinate(p: &[Complex64], p0: &[Complex64], w: &[Complex64]) -> Complex64 {
    hermitian(p, w) / hermitian(p, p0)
}

fn cp1_from_maxima(poly: &ComplexHomogPoly, p0: &[Complex64], maxima: &[Vec<f64>]) -> Result<Cp1Report> {
    let n = poly.degree();
    let w = complement_basis(p0).swap_remove(0);
    let mut best: Option<(f64, Vec<f64>, Complex64)> = None;
    for m in maxima {
        let p = to_complex(m);
        let z = chart_coordinate(&p, p0, &w);
        if best.as_ref().is_none_or(|b| z.norm() < b.0) {
            best = Some((z.norm(), m.clone(), z));
        }
    }
    let (a, maximizer, z) = best.ok_or_else(|| Error::OptimizationFailed("no maximizer found".into()))?;
    let f = poly.line_restriction(p0, &w);
    let fz: Complex64 = f.iter().rev().fold(ZERO, |acc, c| acc * z + c);
    let chart_value = fz.norm() * (1.0 + a * a).powf(-(n as f64) / 2.0);
    let bound = 1.0 / (n as f64 - 1.0);
    Ok(Cp1Report { a, a_squared: a * a, bound, passed: a * a >= bound - 1e-8, maximizer, chart_value })
}

/// Puts `zero` at the origin of an affine chart of the projective line,
/// maximizes `|P|` and returns the chart radius of the maximizer (the smallest
/// one when several maximizers tie).
pub fn cp1_radius_check(poly: &ComplexHomogPoly, zero: &[Complex64], starts: usize, seed: u64) -> Result<Cp1Report> {
    if poly.dim() != 2 {
        return Err(Error::Precondition("the chart check needs two complex variables".into()));
    }
    if poly.degree() < 2 {
        return Err(Error::DegreeRange("the chart check needs degree at least 2".into()));
    }
    let p0 = cnormalize(zero).ok_or_else(|| Error::InvalidInput("zero vector given as zero".into()))?;
    if poly.value_at(&p0).norm() > 1e-8 * poly.coefficient_scale() {
        return Err(Error::Precondition("the given point is not a zero of the polynomial".into()));
    }
    let found = weighted_local_maxima(&[(poly, 1.0)], starts, seed);
    let near: Vec<Vec<f64>> = optimize::near_maxima(&found, NEAR_MAX_REL).into_iter().map(|m| m.point).collect();
    cp1_from_maxima(poly, &p0, &near)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub maximizer: Vec<f64>,
    pub log_value: f64,
    pub degrees: Vec<usize>,
    pub distances: Vec<f64>,
    pub bounds: Vec<f64>,
    /// `sin` of each distance: the Euclidean distance to the zero set.
    pub euclidean_distances: Vec<f64>,
    pub passed: Vec<bool>,
    pub all_passed: bool,
    pub nearest_zeros: Vec<Option<Vec<f64>>>,
    pub cp1: Option<Cp1Report>,
}

fn report_at(
    polys: &[&ComplexHomogPoly],
    bounds: Vec<f64>,
    near: &[LocalMax],
    budget: usize,
) -> (usize, Vec<Vec<ZeroDistance>>) {
    let per_point: Vec<Vec<ZeroDistance>> = near
        .iter()
        .map(|m| {
            let p = to_complex(&m.point);
            polys.iter().map(|q| complex_zero_distance(q, &p, budget)).collect()
        })
        .collect();
    let margin = |ds: &Vec<ZeroDistance>| {
        ds.iter().zip(&bounds).map(|(d, b)| d.distance - b).fold(f64::INFINITY, f64::min)
    };
    let mut pick = 0;
    for (i, ds) in per_point.iter().enumerate() {
        if margin(ds) > margin(&per_point[pick]) {
            pick = i;
        }
    }
    (pick, per_point)
}

fn assemble(
    polys: &[&ComplexHomogPoly],
    bounds: Vec<f64>,
    found: Vec<LocalMax>,
    budget: usize,
) -> Result<ComplexReport> {
    if found.is_empty() {
        return Err(Error::OptimizationFailed("the polynomial vanishes at every start".into()));
    }
    let near = optimize::near_maxima(&found, NEAR_MAX_REL);
    let (pick, per_point) = report_at(polys, bounds.clone(), &near, budget);
    let ds = &per_point[pick];
    let distances: Vec<f64> = ds.iter().map(|d| d.distance).collect();
    let passed: Vec<bool> = distances.iter().zip(&bounds).map(|(d, b)| *d >= b - BOUND_TOL).collect();
    let report = ComplexReport {
        maximizer: near[pick].point.clone(),
        log_value: near[pick].value,
        degrees: polys.iter().map(|p| p.degree()).collect(),
        euclidean_distances: distances.iter().map(|d| d.min(std::f64::consts::FRAC_PI_2).sin()).collect(),
        all_passed: passed.iter().all(|&b| b),
        passed,
        bounds,
        distances,
        nearest_zeros: ds.iter().map(|d| d.nearest.clone()).collect(),
        cp1: None,
    };
    Ok(report)
}

/// Distance from the maximizer of `|P|` on `S^{2d-1}` to the zero set against
/// `arcsin(1/√n)`; for `d = 2, n ≥ 2` the chart radius is attached.
pub fn verify_theorem2(poly: &ComplexHomogPoly, starts: usize, seed: u64) -> Result<ComplexReport> {
    let n = poly.degree();
    if n == 0 {
        return Err(Error::DegreeRange("a constant has no zeros".into()));
    }
    let bound = (1.0 / (n as f64).sqrt()).asin();
    let found = weighted_local_maxima(&[(poly, 1.0)], starts, seed);
    let mut report = assemble(&[poly], vec![bound], found, starts.max(16))?;
    if poly.dim() == 2 && n >= 2 {
        if let Some(z) = &report.nearest_zeros[0] {
            report.cp1 = Some(cp1_from_maxima(poly, &to_complex(z), &[report.maximizer.clone()])?);
        }
    }
    Ok(report)
}

/// Distances from the maximizer of `Π |P_k|^{δ_k²}` to each `Z(P_k)` against
/// `arcsin δ_k`.
pub fn verify_theorem6(system: &WeightedSystem, starts: usize, seed: u64) -> Result<ComplexReport> {
    let items: Vec<(&ComplexHomogPoly, f64)> = system.items.iter().map(|(p, d)| (p, d * d)).collect();
    let polys: Vec<&ComplexHomogPoly> = items.iter().map(|(p, _)| *p).collect();
    let bounds: Vec<f64> = system.items.iter().map(|(_, d)| d.min(1.0).asin()).collect();
    let found = weighted_local_maxima(&items, starts, seed);
    assemble(&polys, bounds, found, starts.max(16))
}
