//! Real trigonometric polynomials on the circle.
//!
//! `T(θ) = a0 + Σ_{k=1}^{n} (a_k cos kθ + b_k sin kθ)`.
//!
//! Zeros are isolated through the substitution `z = e^{iθ}`: `z^n T` is an
//! algebraic polynomial of degree `2n` whose roots on the unit circle are the
//! real zeros of `T`. Roots near the circle are clustered, refined by Newton
//! steps on the appropriate derivative of `T`, and given a multiplicity from
//! the number of vanishing derivatives.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots;

/// Pairs `(a_k, b_k)` whose magnitude falls below this fraction of the largest
/// coefficient are trimmed from the top, so the stored degree is tight.
const TRIM_REL: f64 = 1e-14;
/// Candidate roots of `z^n T(z)` are kept when `| |z| - 1 |` is below this.
const CIRCLE_WINDOW: f64 = 1e-3;
/// Candidate arguments closer than this are treated as one cluster.
const CLUSTER_GAP: f64 = 1e-5;
/// Accept a refined zero when `|T(θ)| < ZERO_REL * ‖T‖∞`.
const ZERO_REL: f64 = 1e-8;
/// A derivative vanishes when `|T^(j)(θ)| < DERIV_REL * ‖T^(j)‖∞`.
const DERIV_REL: f64 = 1e-6;
/// Maximizers are all critical points with `M - |T| <= MAX_REL * M`.
const MAX_REL: f64 = 1e-9;
/// `Q` is identically zero when `‖Q‖∞ < Q_ZERO_REL * ‖T‖∞`.
const Q_ZERO_REL: f64 = 1e-10;
/// Tolerance on the angular bound in the certificate.
pub const LEMMA_TOL: f64 = 1e-7;
/// Tolerance on equal arc lengths for interlacing.
pub const ARC_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    a0: f64,
    coeffs: Vec<(f64, f64)>,
}

impl TrigPoly {
    pub fn new(a0: f64, coeffs: Vec<(f64, f64)>) -> Self {
        let mut t = TrigPoly { a0, coeffs };
        t.trim();
        t
    }

    pub fn constant(a0: f64) -> Self {
        TrigPoly { a0, coeffs: Vec::new() }
    }

    /// `cos(nθ)`.
    pub fn cos_n(n: usize) -> Self {
        Self::cos_sin_n(n, 1.0, 0.0)
    }

    /// `sin(nθ)`.
    pub fn sin_n(n: usize) -> Self {
        Self::cos_sin_n(n, 0.0, 1.0)
    }

    fn cos_sin_n(n: usize, a: f64, b: f64) -> Self {
        if n == 0 {
            return Self::constant(a);
        }
        let mut coeffs = vec![(0.0, 0.0); n];
        coeffs[n - 1] = (a, b);
        Self::new(0.0, coeffs)
    }

    /// Builds from the nonnegative-frequency complex spectrum `c_0..c_n`, where
    /// `T(θ) = Σ_{k=-n}^{n} c_k e^{ikθ}` and `c_{-k} = conj(c_k)`.
    pub fn from_spectrum(spec: &[Complex64]) -> Self {
        if spec.is_empty() {
            return Self::constant(0.0);
        }
        let a0 = spec[0].re;
        let coeffs = spec[1..].iter().map(|c| (2.0 * c.re, -2.0 * c.im)).collect();
        Self::new(a0, coeffs)
    }

    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(self.a0, 0.0));
        out.extend(self.coeffs.iter().map(|&(a, b)| Complex64::new(0.5 * a, -0.5 * b)));
        out
    }

    fn trim(&mut self) {
        let scale = self
            .coeffs
            .iter()
            .fold(self.a0.abs(), |m, &(a, b)| m.max(a.abs()).max(b.abs()));
        while let Some(&(a, b)) = self.coeffs.last() {
            if a.abs().max(b.abs()) <= TRIM_REL * scale {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn coeffs(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0.0 && self.coeffs.is_empty()
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut s = self.a0;
        for (k, &(a, b)) in self.coeffs.iter().enumerate() {
            let (sin, cos) = (((k + 1) as f64) * theta).sin_cos();
            s += a * cos + b * sin;
        }
        s
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let k = (k + 1) as f64;
                (k * b, -k * a)
            })
            .collect();
        TrigPoly::new(0.0, coeffs)
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |t, _| t.derivative())
    }

    /// `θ ↦ T(θ + shift)`.
    pub fn shifted(&self, shift: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let (s, c) = (((k + 1) as f64) * shift).sin_cos();
                (a * c + b * s, b * c - a * s)
            })
            .collect();
        TrigPoly::new(self.a0, coeffs)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let coeffs = self.coeffs.iter().map(|&(a, b)| (a * factor, b * factor)).collect();
        TrigPoly::new(self.a0 * factor, coeffs)
    }

    pub fn add(&self, other: &TrigPoly) -> Self {
        let n = self.degree().max(other.degree());
        let get = |t: &TrigPoly, k: usize| t.coeffs.get(k).copied().unwrap_or((0.0, 0.0));
        let coeffs = (0..n)
            .map(|k| {
                let (a1, b1) = get(self, k);
                let (a2, b2) = get(other, k);
                (a1 + a2, b1 + b2)
            })
            .collect();
        TrigPoly::new(self.a0 + other.a0, coeffs)
    }

    /// Exact product through convolution of the two spectra.
    pub fn mul(&self, other: &TrigPoly) -> Self {
        let full = |t: &TrigPoly| {
            let s = t.spectrum();
            let n = s.len() - 1;
            let mut f = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
            for (k, &c) in s.iter().enumerate() {
                f[n + k] = c;
                f[n - k] = c.conj();
            }
            f
        };
        let (f, g) = (full(self), full(other));
        let (n, m) = (self.degree(), other.degree());
        let mut h = vec![Complex64::new(0.0, 0.0); 2 * (n + m) + 1];
        for (i, &a) in f.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                h[i + j] += a * b;
            }
        }
        let center = n + m;
        TrigPoly::from_spectrum(&h[center..])
    }

    /// Sup norm estimated on a uniform grid fine enough for the degree.
    pub fn sup_norm(&self) -> f64 {
        let samples = 64.max(32 * (self.degree() + 1));
        (0..samples)
            .map(|i| self.eval(TAU * i as f64 / samples as f64).abs())
            .fold(0.0, f64::max)
    }
}

/// Shortest distance between two angles on the circle.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn wrap(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleZero {
    pub theta: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CircleZeroSet {
    pub zeros: Vec<CircleZero>,
}

impl CircleZeroSet {
    pub fn total_multiplicity(&self) -> u32 {
        self.zeros.iter().map(|z| z.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        self.zeros.iter().map(|z| z.theta)
    }
}

struct DerivCache {
    derivs: Vec<TrigPoly>,
    norms: Vec<f64>,
}

impl DerivCache {
    fn new(t: &TrigPoly) -> Self {
        let norm = t.sup_norm();
        DerivCache { derivs: vec![t.clone()], norms: vec![norm] }
    }

    fn get(&mut self, order: usize) -> (&TrigPoly, f64) {
        while self.derivs.len() <= order {
            let next = self.derivs.last().unwrap().derivative();
            self.norms.push(next.sup_norm());
            self.derivs.push(next);
        }
        (&self.derivs[order], self.norms[order])
    }
}

/// Newton iteration for a root of `f` starting at `theta`, with capped steps.
fn newton_on(f: &TrigPoly, df: &TrigPoly, mut theta: f64) -> f64 {
    for _ in 0..100 {
        let d = df.eval(theta);
        if d == 0.0 {
            break;
        }
        let step = (f.eval(theta) / d).clamp(-0.05, 0.05);
        theta -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    theta
}

fn refine_zero(cache: &mut DerivCache, theta: f64, order: usize) -> f64 {
    let f = cache.get(order).0.clone();
    let df = cache.get(order + 1).0.clone();
    newton_on(&f, &df, theta)
}

fn vanishing_order(cache: &mut DerivCache, theta: f64, max_order: usize) -> usize {
    let mut m = 1;
    while m < max_order {
        let (d, norm) = cache.get(m);
        if d.eval(theta).abs() < DERIV_REL * norm {
            m += 1;
        } else {
            break;
        }
    }
    m
}

/// All real zeros of `T` in `[0, 2π)` with multiplicities.
pub fn trig_zeros(t: &TrigPoly) -> Result<CircleZeroSet> {
    if t.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = t.degree();
    if n == 0 {
        return Ok(CircleZeroSet::default());
    }

    // z^n T(z) with c_{j-n} at index j.
    let spec = t.spectrum();
    let mut q = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
    for (k, &c) in spec.iter().enumerate() {
        q[n + k] = c;
        q[n - k] = c.conj();
    }
    let roots = roots::complex_roots(&q)?;

    let mut args: Vec<f64> = roots
        .iter()
        .filter(|z| (z.norm() - 1.0).abs() < CIRCLE_WINDOW)
        .map(|z| wrap(z.arg()))
        .collect();
    args.sort_by(f64::total_cmp);
    let clusters = cluster_circular(&args, CLUSTER_GAP);

    let mut cache = DerivCache::new(t);
    let norm = cache.norms[0];
    let mut found: Vec<CircleZero> = Vec::new();
    for (center, size) in clusters {
        let guess = size.min(2 * n);
        let mut theta = refine_zero(&mut cache, center, guess - 1);
        let mut m = vanishing_order(&mut cache, theta, 2 * n);
        if m != guess {
            let retry = refine_zero(&mut cache, theta, m - 1);
            if t.eval(retry).abs() <= t.eval(theta).abs() {
                theta = retry;
            }
            m = vanishing_order(&mut cache, theta, 2 * n);
        }
        if t.eval(theta).abs() >= ZERO_REL * norm {
            continue;
        }
        let theta = wrap(theta);
        match found.iter_mut().find(|z| circular_distance(z.theta, theta) < 1e-6) {
            Some(existing) => existing.multiplicity = existing.multiplicity.max(m as u32),
            None => found.push(CircleZero { theta, multiplicity: m as u32 }),
        }
    }
    found.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    Ok(CircleZeroSet { zeros: found })
}

// Groups sorted angles whose circular gap is below `gap`; returns (center, size).
fn cluster_circular(sorted: &[f64], gap: f64) -> Vec<(f64, usize)> {
    if sorted.is_empty() {
        return Vec::new();
    }
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for &a in sorted {
        match groups.last_mut() {
            Some(g) if a - g.last().unwrap() < gap => g.push(a),
            _ => groups.push(vec![a]),
        }
    }
    if groups.len() > 1 {
        let first = groups[0][0];
        let last = *groups.last().unwrap().last().unwrap();
        if first + TAU - last < gap {
            let tail = groups.pop().unwrap();
            let head = &mut groups[0];
            let mut merged: Vec<f64> = tail.into_iter().map(|x| x - TAU).collect();
            merged.append(head);
            *head = merged;
        }
    }
    groups
        .into_iter()
        .map(|g| (g.iter().sum::<f64>() / g.len() as f64, g.len()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxPoints {
    pub value: f64,
    pub points: Vec<f64>,
}

/// Maximum of `|T|` and all of its global maximizers.
///
/// For a constant polynomial every angle is a maximizer; `[0.0]` is returned.
pub fn trig_max_points(t: &TrigPoly) -> Result<MaxPoints> {
    if t.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if t.degree() == 0 {
        return Ok(MaxPoints { value: t.a0.abs(), points: vec![0.0] });
    }
    let dt = t.derivative();
    let ddt = dt.derivative();
    let mut critical: Vec<f64> = trig_zeros(&dt)?.thetas().collect();

    // A coarse grid guards against a critical point lost by the eigen solver.
    let samples = 64.max(32 * (t.degree() + 1));
    let (grid_arg, grid_max) = (0..samples)
        .map(|i| TAU * i as f64 / samples as f64)
        .map(|th| (th, t.eval(th).abs()))
        .fold((0.0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let crit_max = critical.iter().map(|&th| t.eval(th).abs()).fold(0.0, f64::max);
    if grid_max > crit_max * (1.0 + 1e-12) {
        critical.push(wrap(newton_on(&dt, &ddt, grid_arg)));
    }

    let value = critical.iter().map(|&th| t.eval(th).abs()).fold(0.0, f64::max);
    let mut points: Vec<f64> = critical
        .into_iter()
        .filter(|&th| value - t.eval(th).abs() <= MAX_REL * value)
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| circular_distance(*a, *b) < 1e-9);
    Ok(MaxPoints { value, points })
}

/// Smallest circular distance between a global maximizer of `|T|` and a zero;
/// `+∞` when `T` has no zeros.
pub fn min_max_to_zero_distance(t: &TrigPoly) -> Result<f64> {
    let zeros = trig_zeros(t)?;
    let maxima = trig_max_points(t)?;
    Ok(min_distance_between(&maxima.points, &zeros))
}

fn min_distance_between(points: &[f64], zeros: &CircleZeroSet) -> f64 {
    points
        .iter()
        .flat_map(|&p| zeros.thetas().map(move |z| circular_distance(p, z)))
        .fold(f64::INFINITY, f64::min)
}

/// `π/(2n)`, or `+∞` for `n = 0`.
pub fn angular_bound(n: usize) -> f64 {
    if n == 0 {
        f64::INFINITY
    } else {
        PI / (2.0 * n as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub degree: usize,
    pub max_points: Vec<f64>,
    pub max_value: f64,
    pub min_distance: f64,
    pub bound: f64,
    pub passed: bool,
    /// `T(θ + θ*) ∓ M cos nθ` vanished identically: the extremal case.
    pub q_identically_zero: bool,
    /// Zeros of `Q` counted with multiplicity (absent when `Q ≡ 0`).
    pub q_zero_count: Option<u32>,
    /// `Q` has no zero in `[-π/n, 0) ∪ (0, π/n]` besides the double zero at 0.
    pub q_window_clear: bool,
}

/// Certificate for a maximizer of `|T|` being at least `π/(2n)` from the
/// zeros, with `n` the degree of `T`.
pub fn lemma1_certificate(t: &TrigPoly) -> Result<Lemma1Report> {
    lemma1_certificate_with_degree(t, t.degree())
}

/// As [`lemma1_certificate`] with an explicit degree `n ≥ deg T`, used when `T`
/// is the restriction of a polynomial of total degree `n`.
pub fn lemma1_certificate_with_degree(t: &TrigPoly, n: usize) -> Result<Lemma1Report> {
    if t.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n < t.degree() {
        return Err(Error::DegreeRange(format!(
            "certificate degree {n} is below the trigonometric degree {}",
            t.degree()
        )));
    }
    let zeros = trig_zeros(t)?;
    let maxima = trig_max_points(t)?;
    let min_distance = min_distance_between(&maxima.points, &zeros);
    let bound = angular_bound(n);
    let m = maxima.value;

    let (q_identically_zero, q_zero_count, q_window_clear) = if n == 0 {
        (true, None, true)
    } else {
        let theta_star = maxima.points[0];
        let shifted = t.shifted(theta_star);
        let sign = shifted.eval(0.0).signum();
        let q = shifted.add(&TrigPoly::cos_n(n).scaled(-sign * m));
        let q_norm = if q.is_zero() { 0.0 } else { q.sup_norm() };
        if q_norm < Q_ZERO_REL * t.sup_norm() {
            (true, None, true)
        } else {
            let qz = trig_zeros(&q)?;
            let window = PI / n as f64;
            let clear = qz.thetas().all(|th| {
                let d = circular_distance(th, 0.0);
                d < 1e-6 || d > window + 1e-9
            });
            (false, Some(qz.total_multiplicity()), clear)
        }
    };

    Ok(Lemma1Report {
        degree: n,
        max_points: maxima.points,
        max_value: m,
        min_distance,
        bound,
        passed: min_distance >= bound - LEMMA_TOL,
        q_identically_zero,
        q_zero_count,
        q_window_clear,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interlacing {
    pub interlaces: bool,
    /// Lengths of the arcs between consecutive events (zeros and maximizers).
    pub arcs: Vec<f64>,
    pub zero_count: u32,
    pub max_count: usize,
}

/// Whether `2n` simple zeros and `2n` maximizers of `|T|` alternate around the
/// circle and cut it into `4n` arcs of length `π/(2n)`.
pub fn interlacing_check(t: &TrigPoly) -> Result<Interlacing> {
    let zeros = trig_zeros(t)?;
    let maxima = trig_max_points(t)?;
    let n = t.degree();

    let mut events: Vec<(f64, bool)> = zeros
        .thetas()
        .map(|th| (th, true))
        .chain(maxima.points.iter().map(|&th| (th, false)))
        .collect();
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    let arcs: Vec<f64> = (0..events.len())
        .map(|i| {
            let next = if i + 1 < events.len() { events[i + 1].0 } else { events[0].0 + TAU };
            next - events[i].0
        })
        .collect();

    let target = angular_bound(n);
    let zero_count = zeros.total_multiplicity();
    let interlaces = n > 0
        && zeros.zeros.len() == 2 * n
        && zero_count as usize == 2 * n
        && maxima.points.len() == 2 * n
        && (0..events.len()).all(|i| events[i].1 != events[(i + 1) % events.len()].1)
        && arcs.iter().all(|a| (a - target).abs() <= ARC_TOL);
    Ok(Interlacing { interlaces, arcs, zero_count, max_count: maxima.points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petrov() -> TrigPoly {
        // (1 - cos θ)(0.9 + cos θ) = 0.9 + 0.1 cos θ - cos²θ = 0.4 + 0.1 cos θ - 0.5 cos 2θ
        TrigPoly::new(0.4, vec![(0.1, 0.0), (-0.5, 0.0)])
    }

    #[test]
    fn eval_examples() {
        let c2 = TrigPoly::cos_n(2);
        assert!(c2.eval(PI / 4.0).abs() < 1e-15);
        assert_eq!(c2.eval(0.0), 1.0);
        assert!((petrov().eval(PI) + 0.2).abs() < 1e-14);
    }

    #[test]
    fn trims_negligible_top_degree() {
        let t = TrigPoly::new(1.0, vec![(0.5, 0.0), (1e-17, 0.0)]);
        assert_eq!(t.degree(), 1);
    }

    #[test]
    fn product_matches_pointwise() {
        let a = TrigPoly::new(0.3, vec![(1.0, -0.2), (0.1, 0.4)]);
        let b = TrigPoly::new(-0.5, vec![(0.7, 0.9)]);
        let p = a.mul(&b);
        assert_eq!(p.degree(), 3);
        for i in 0..50 {
            let th = 0.37 * i as f64;
            assert!((p.eval(th) - a.eval(th) * b.eval(th)).abs() < 1e-14);
        }
    }

    #[test]
    fn shift_and_derivative() {
        let t = TrigPoly::new(0.3, vec![(1.0, -0.2), (0.1, 0.4)]);
        let s = t.shifted(0.8);
        let d = t.derivative();
        for i in 0..20 {
            let th = 0.31 * i as f64;
            assert!((s.eval(th) - t.eval(th + 0.8)).abs() < 1e-14);
            let fd = (t.eval(th + 1e-6) - t.eval(th - 1e-6)) / 2e-6;
            assert!((d.eval(th) - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn zeros_of_cos_2() {
        let z = trig_zeros(&TrigPoly::cos_n(2)).unwrap();
        let expected = [PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0];
        assert_eq!(z.zeros.len(), 4);
        for (zero, e) in z.zeros.iter().zip(expected) {
            assert_eq!(zero.multiplicity, 1);
            assert!((zero.theta - e).abs() < 1e-12);
        }
    }

    #[test]
    fn petrov_double_zero() {
        let z = trig_zeros(&petrov()).unwrap();
        assert_eq!(z.zeros.len(), 3);
        assert_eq!(z.zeros[0].multiplicity, 2);
        assert!(circular_distance(z.zeros[0].theta, 0.0) < 1e-7);
        let r = (-0.9f64).acos();
        assert!((z.zeros[1].theta - r).abs() < 1e-10);
        assert!((z.zeros[2].theta - (TAU - r)).abs() < 1e-10);
        assert!((r - 2.690565841793).abs() < 1e-9);
        assert_eq!(z.total_multiplicity(), 4);
    }

    #[test]
    fn constant_has_no_zeros() {
        let z = trig_zeros(&TrigPoly::constant(1.0)).unwrap();
        assert!(z.is_empty());
        assert_eq!(min_max_to_zero_distance(&TrigPoly::constant(1.0)).unwrap(), f64::INFINITY);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let z = TrigPoly::constant(0.0);
        assert_eq!(trig_zeros(&z), Err(Error::ZeroPolynomial));
        assert_eq!(trig_max_points(&z), Err(Error::ZeroPolynomial));
        assert_eq!(lemma1_certificate(&z), Err(Error::ZeroPolynomial));
        assert_eq!(interlacing_check(&z), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn max_points_examples() {
        let m = trig_max_points(&TrigPoly::cos_n(2)).unwrap();
        assert!((m.value - 1.0).abs() < 1e-15);
        assert_eq!(m.points.len(), 4);
        for (p, e) in m.points.iter().zip([0.0, PI / 2.0, PI, 1.5 * PI]) {
            assert!(circular_distance(*p, e) < 1e-9);
        }

        let m = trig_max_points(&petrov()).unwrap();
        assert!((m.value - 0.9025).abs() < 1e-14);
        let r = 0.05f64.acos();
        assert_eq!(m.points.len(), 2);
        assert!((m.points[0] - r).abs() < 1e-9);
        assert!((m.points[1] - (TAU - r)).abs() < 1e-9);

        let m = trig_max_points(&TrigPoly::sin_n(1)).unwrap();
        assert_eq!(m.points.len(), 2);
        assert!((m.points[0] - PI / 2.0).abs() < 1e-9);
        assert!((m.points[1] - 1.5 * PI).abs() < 1e-9);
    }

    #[test]
    fn distance_examples() {
        let d = min_max_to_zero_distance(&TrigPoly::cos_n(3)).unwrap();
        assert!((d - PI / 6.0).abs() < 1e-12);
        let d = min_max_to_zero_distance(&petrov()).unwrap();
        let expected = (-0.9f64).acos() - 0.05f64.acos();
        assert!((d - expected).abs() < 1e-9);
        assert!((d - 1.16979).abs() < 1e-5);
    }

    #[test]
    fn certificates() {
        let r = lemma1_certificate(&TrigPoly::cos_n(3)).unwrap();
        assert!(r.q_identically_zero && r.passed);
        assert!((r.min_distance - PI / 6.0).abs() < 1e-12);

        let t = TrigPoly::new(0.0, vec![(0.3, 0.0), (1.0, 0.0)]);
        let r = lemma1_certificate(&t).unwrap();
        assert!(r.passed && !r.q_identically_zero && r.q_window_clear);
        assert!(r.min_distance >= PI / 4.0);
        assert!(r.q_zero_count.unwrap() <= 4);

        let r = lemma1_certificate(&petrov()).unwrap();
        assert!(r.passed && r.min_distance >= PI / 4.0);
    }

    #[test]
    fn certificate_degree_cannot_drop_below_trig_degree() {
        assert!(lemma1_certificate_with_degree(&TrigPoly::cos_n(3), 2).is_err());
        let r = lemma1_certificate_with_degree(&TrigPoly::cos_n(2), 4).unwrap();
        assert!(r.passed);
        assert!((r.bound - PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn interlacing_examples() {
        let r = interlacing_check(&TrigPoly::cos_n(2)).unwrap();
        assert!(r.interlaces);
        assert_eq!(r.arcs.len(), 8);
        assert!(r.arcs.iter().all(|a| (a - PI / 4.0).abs() < 1e-9));

        let t = TrigPoly::new(0.0, vec![(0.3, 0.0), (1.0, 0.0)]);
        assert!(!interlacing_check(&t).unwrap().interlaces);

        let r = interlacing_check(&TrigPoly::sin_n(3)).unwrap();
        assert!(r.interlaces);
        assert_eq!(r.arcs.len(), 12);
    }
}
