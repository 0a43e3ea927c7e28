//! Points of the unit ball far from the zero set of a real polynomial: the
//! pair construction on `S^{2d-1}` and the Chebyshev multiplier `G_n`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cheb::{big_g_eval, big_g_log_derivative, check_nk, cheb_positive_zeros};
use crate::error::{Error, Result};
use crate::optimize::{self, nelder_mead, normalize};
use crate::poly::{dot, norm, RealPolynomial};
use crate::roots::real_roots;
use crate::sphere::{angular_distance_to_zero_set, maximize_abs_on_sphere, ZeroDistance, BOUND_TOL, NEAR_MAX_REL};

const BALL_SLACK: f64 = 1e-12;

fn affine_distance(poly: &dyn RealPolynomial, p: &[f64]) -> Option<ZeroDistance> {
    let forms = poly.affine_factors()?;
    let mut best = ZeroDistance::none();
    for f in forms {
        let v = f.eval(p);
        let z = p.iter().zip(f.normal()).map(|(x, a)| x - v * a).collect();
        best.keep_closer(ZeroDistance { distance: v.abs(), nearest: Some(z) });
    }
    Some(best)
}

// Zeros of P on the line p + t v that stay in the closed ball.
fn along_line(poly: &dyn RealPolynomial, p: &[f64], v: &[f64]) -> ZeroDistance {
    let coeffs = poly.line_restriction(p, v);
    let Ok(ts) = real_roots(&coeffs, 1e-7) else {
        return ZeroDistance { distance: 0.0, nearest: Some(p.to_vec()) };
    };
    let mut best = ZeroDistance::none();
    for t in ts {
        let z: Vec<f64> = p.iter().zip(v).map(|(a, b)| a + t * b).collect();
        if norm(&z) <= 1.0 + BALL_SLACK {
            best.keep_closer(ZeroDistance { distance: t.abs(), nearest: Some(z) });
        }
    }
    best
}

/// Euclidean distance from `p` to `Z(P) ∩ B^d`.
///
/// For a tagged product of affine forms this is `min |⟨a_i, p⟩ - b_i|` (the
/// distance to the full hyperplanes). In one dimension the real roots are
/// exact. Otherwise lines through `p` in `budget` seeded directions are
/// searched and refined with Nelder-Mead; the result is an upper bound.
pub fn euclidean_zero_distance(poly: &dyn RealPolynomial, p: &[f64], budget: usize) -> ZeroDistance {
    if let Some(d) = affine_distance(poly, p) {
        return d;
    }
    let d = p.len();
    if d == 1 {
        return along_line(poly, p, &[1.0]);
    }
    let seeds: Vec<Vec<f64>> = if d == 2 {
        (0..budget.max(1))
            .map(|j| {
                let phi = PI * j as f64 / budget.max(1) as f64;
                vec![phi.cos(), phi.sin()]
            })
            .collect()
    } else {
        optimize::random_sphere_points(d, budget.max(1), 0x5eed)
    };
    let results: Vec<ZeroDistance> = seeds
        .par_iter()
        .map(|v0| {
            let eval = |v: &[f64]| match normalize(v) {
                Some(u) => along_line(poly, p, &u),
                None => ZeroDistance::none(),
            };
            let mut best = eval(v0);
            if best.distance.is_finite() {
                let (v, _) = nelder_mead(|v| eval(v).distance, v0, 0.05, 40 * d);
                best.keep_closer(eval(&v));
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
pub struct PairCertificate {
    pub degree: usize,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    /// `‖p‖² + ‖q‖²`.
    pub norm_sq: f64,
    /// `|P(p) P(q)|`.
    pub value: f64,
    /// The smaller-norm half, returned as the ball point.
    pub chosen: Vec<f64>,
    pub sphere_distance: f64,
    /// `π/(4n)`.
    pub sphere_bound: f64,
    /// `2 sin(π/(8n))`, the chord of `π/(4n)`.
    pub chord: f64,
    /// `1/(2n)`.
    pub chord_bound: f64,
    pub ball_distance: f64,
    /// `1/(8n)`.
    pub bound: f64,
    pub passed: bool,
    pub nearest_zero: Option<Vec<f64>>,
    /// `t` with `‖p₀‖² + t²‖q‖² = 1`, lifting the nearest zero `p₀` to `(p₀, t q)`.
    pub lift_t: Option<f64>,
    pub lift_deviation: Option<f64>,
    /// `(√2 - 1)/(2√2 n)`.
    pub lift_limit: f64,
    /// Angle on `S^{2d-1}` between `(p, q)` and the lifted zero.
    pub lift_angle: Option<f64>,
}

fn lift_audit(p: &[f64], q: &[f64], p0: &[f64]) -> (Option<f64>, Option<f64>) {
    let q2 = dot(q, q);
    let rest = 1.0 - dot(p0, p0);
    if q2 == 0.0 || rest < 0.0 {
        return (None, None);
    }
    let t = (rest / q2).sqrt();
    let inner = dot(p, p0) + t * q2;
    (Some(t), Some(inner.clamp(-1.0, 1.0).acos()))
}

/// Maximizes `|P(x) P(y)|` on `S^{2d-1}` and returns the smaller half of the
/// maximizer, at distance at least `1/(8n)` from `Z(P)`.
pub fn pair_point(poly: &dyn RealPolynomial, starts: usize, seed: u64) -> Result<PairCertificate> {
    let n = poly.degree();
    if n == 0 {
        return Err(Error::DegreeRange("a constant has no zeros".into()));
    }
    let d = poly.dim();
    let lift = poly.pair_lift();
    let max = maximize_abs_on_sphere(lift.as_ref(), starts, seed)?;
    let budget = starts.max(16);

    let mut candidates: Vec<(Vec<f64>, Vec<f64>, ZeroDistance)> = max
        .all_near_max
        .iter()
        .map(|x| {
            let (a, b) = x.coords().split_at(d);
            let (p, q) = if norm(a) <= norm(b) { (a, b) } else { (b, a) };
            (p.to_vec(), q.to_vec(), euclidean_zero_distance(poly, p, budget))
        })
        .collect();
    let mut pick = 0;
    for (i, c) in candidates.iter().enumerate() {
        if c.2.distance > candidates[pick].2.distance {
            pick = i;
        }
    }
    let (p, q, ball) = candidates.swap_remove(pick);
    let pq: Vec<f64> = p.iter().chain(&q).copied().collect();
    let sphere = angular_distance_to_zero_set(lift.as_ref(), &pq, budget);
    let (lift_t, lift_angle) = match &ball.nearest {
        Some(p0) => lift_audit(&p, &q, p0),
        None => (None, None),
    };
    let nf = n as f64;
    let bound = 1.0 / (8.0 * nf);
    Ok(PairCertificate {
        degree: n,
        norm_sq: dot(&p, &p) + dot(&q, &q),
        value: lift.value_at(&pq).abs(),
        chosen: p.clone(),
        p,
        q,
        sphere_distance: sphere.distance,
        sphere_bound: PI / (4.0 * nf),
        chord: 2.0 * (PI / (8.0 * nf)).sin(),
        chord_bound: 1.0 / (2.0 * nf),
        ball_distance: ball.distance,
        bound,
        passed: ball.distance >= bound - BOUND_TOL,
        nearest_zero: ball.nearest,
        lift_deviation: lift_t.map(|t| (1.0 - t).abs()),
        lift_t,
        lift_limit: (2f64.sqrt() - 1.0) / (2.0 * 2f64.sqrt() * nf),
        lift_angle,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallCandidate {
    pub point: Vec<f64>,
    pub value: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierResult {
    pub degree: usize,
    pub point: Vec<f64>,
    /// `|P(x) G_n(‖x‖)|` at the point.
    pub value: f64,
    pub distance: f64,
    /// `1/n`.
    pub bound: f64,
    pub passed: bool,
    pub nearest_zero: Option<Vec<f64>>,
    /// Every near-maximizer with its own zero-set distance.
    pub candidates: Vec<BallCandidate>,
}

fn ball_candidates<F: optimize::Objective>(
    poly: &dyn RealPolynomial,
    f: &F,
    starts: usize,
    seed: u64,
) -> Result<Vec<(BallCandidate, ZeroDistance)>> {
    let d = poly.dim();
    let found = optimize::multi_start_ball(f, &optimize::ball_starts(d, starts.max(1), seed));
    if found.is_empty() {
        return Err(Error::OptimizationFailed("the polynomial vanishes at every start".into()));
    }
    let budget = starts.max(16);
    Ok(optimize::near_maxima(&found, NEAR_MAX_REL)
        .into_iter()
        .map(|m| {
            let z = euclidean_zero_distance(poly, &m.point, budget);
            (BallCandidate { value: m.value.exp(), distance: z.distance, point: m.point }, z)
        })
        .collect())
}

fn best_candidate(poly: &dyn RealPolynomial, cands: Vec<(BallCandidate, ZeroDistance)>) -> MultiplierResult {
    let n = poly.degree();
    let mut pick = 0;
    for (i, c) in cands.iter().enumerate() {
        if c.0.distance > cands[pick].0.distance {
            pick = i;
        }
    }
    let (best, z) = cands[pick].clone();
    let bound = 1.0 / n as f64;
    MultiplierResult {
        degree: n,
        point: best.point,
        value: best.value,
        distance: best.distance,
        bound,
        passed: best.distance >= bound - BOUND_TOL,
        nearest_zero: z.nearest,
        candidates: cands.into_iter().map(|c| c.0).collect(),
    }
}

/// `(ln|P(x) G_n(‖x‖)|, gradient)`; `G_n` is even, so its log-derivative
/// times `x/‖x‖` is smooth through the origin.
pub fn multiplier_objective(poly: &dyn RealPolynomial, x: &[f64]) -> Option<(f64, Vec<f64>)> {
    let n = poly.degree();
    let (lp, mut g) = poly.log_abs_gradient_at(x)?;
    let r = norm(x);
    let gv = big_g_eval(n, r);
    if gv == 0.0 || !gv.is_finite() {
        return None;
    }
    if r > 0.0 {
        let s = big_g_log_derivative(n, r) / r;
        for (gi, xi) in g.iter_mut().zip(x) {
            *gi += s * xi;
        }
    }
    Some((lp + gv.abs().ln(), g))
}

/// Maximizes `|P(x) G_n(‖x‖)|` over the closed ball, `n = deg P`, and returns
/// the near-maximizer farthest from `Z(P)`; it is at least `1/n` away.
pub fn multiplier_point(poly: &dyn RealPolynomial, starts: usize, seed: u64) -> Result<MultiplierResult> {
    if poly.degree() == 0 {
        return Err(Error::DegreeRange("a constant has no zeros".into()));
    }
    let f = |x: &[f64]| multiplier_objective(poly, x);
    let cands = ball_candidates(poly, &f, starts, seed)?;
    Ok(best_candidate(poly, cands))
}

/// All near-maximizers of `|P|` alone over the ball, for contrast with the
/// multiplier; `bound` and `passed` refer to `1/n` as well.
pub fn naive_ball_maximizers(poly: &dyn RealPolynomial, starts: usize, seed: u64) -> Result<Vec<BallCandidate>> {
    if poly.degree() == 0 {
        return Err(Error::DegreeRange("a constant has no zeros".into()));
    }
    let f = |x: &[f64]| poly.log_abs_gradient_at(x);
    Ok(ball_candidates(poly, &f, starts, seed)?.into_iter().map(|c| c.0).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedDiagnostics {
    pub n: usize,
    pub k: usize,
    /// `2k/(nπ)`.
    pub r_k: f64,
    /// Heights `±r_k √(1 - t_{i,k}²)`, ascending.
    pub latitudes: Vec<f64>,
    /// Arc lengths on the radius-`r_k` sphere between consecutive latitudes.
    pub spacings: Vec<f64>,
    pub spacing: f64,
    /// Arc from the pole to the highest latitude.
    pub cap_radius: f64,
    pub count: usize,
}

/// The `k - n` parallel hyperplanes cut out by the retained Chebyshev zeros on
/// the sphere of radius `r_k`, with their spacing and the polar cap radius.
pub fn lifted_diagnostics(n: usize, k: usize) -> Result<LiftedDiagnostics> {
    check_nk(n, k)?;
    let r_k = 2.0 * k as f64 / (n as f64 * PI);
    let zeros = cheb_positive_zeros(k)?;
    let kept = &zeros[n / 2..];
    let elevations: Vec<f64> = kept.iter().map(|t| (1.0 - t * t).sqrt().asin()).collect();
    let mut angles: Vec<f64> = elevations.iter().flat_map(|&e| [e, -e]).collect();
    angles.sort_by(f64::total_cmp);
    let latitudes: Vec<f64> = angles.iter().map(|a| r_k * a.sin()).collect();
    let spacings: Vec<f64> = angles.windows(2).map(|w| r_k * (w[1] - w[0])).collect();
    let t_min = kept[0];
    let cap_radius = r_k * (1.0 - t_min * t_min).sqrt().acos();
    Ok(LiftedDiagnostics {
        n,
        k,
        r_k,
        count: latitudes.len(),
        spacing: spacings.first().copied().unwrap_or(f64::NAN),
        latitudes,
        spacings,
        cap_radius,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::poly::{product_of_affine_forms, AffineForm, MultiPoly};

    #[test]
    fn euclidean_distance_examples() {
        let x1 = MultiPoly::new(3, [(vec![1, 0, 0], 1.0)]).unwrap();
        assert!((euclidean_zero_distance(&x1, &[0.5, 0.0, 0.0], 16).distance - 0.5).abs() < 1e-12);
        // (x - 0.2)(x + 0.4) = x² + 0.2x - 0.08
        let p = MultiPoly::univariate(&[-0.08, 0.2, 1.0]).unwrap();
        assert!((euclidean_zero_distance(&p, &[0.0], 4).distance - 0.2).abs() < 1e-14);
    }

    #[test]
    fn euclidean_distance_matches_factor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [2, 3] {
            for _ in 0..5 {
                let forms: Vec<AffineForm> = (0..3)
                    .map(|_| {
                        let a: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        AffineForm::new(normalize(&a).unwrap(), rng.gen_range(-0.5..0.5)).unwrap()
                    })
                    .collect();
                let tagged = product_of_affine_forms(&forms).unwrap();
                let untagged = MultiPoly::new(d, tagged.terms().to_vec()).unwrap();
                let p: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
                let oracle = forms.iter().map(|f| f.eval(&p).abs()).fold(f64::INFINITY, f64::min);
                assert!((euclidean_zero_distance(&tagged, &p, 1).distance - oracle).abs() < 1e-10);
                // The nearest hyperplane point stays inside the ball here, so the
                // direction search sees the same distance.
                let est = euclidean_zero_distance(&untagged, &p, 32).distance;
                assert!((est - oracle).abs() < 1e-7, "{est} vs {oracle}");
            }
        }
    }

    #[test]
    fn pair_examples() {
        let x = MultiPoly::univariate(&[0.0, 1.0]).unwrap();
        let c = pair_point(&x, 16, 0).unwrap();
        assert!((c.ball_distance - FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((c.norm_sq - 1.0).abs() < 1e-12);
        assert!(c.passed);

        let x1 = MultiPoly::new(2, [(vec![1, 0], 1.0)]).unwrap();
        let c = pair_point(&x1, 16, 0).unwrap();
        assert!((c.ball_distance - FRAC_1_SQRT_2).abs() < 1e-8);
        assert!(norm(&c.chosen) <= FRAC_1_SQRT_2 + 1e-10);

        let t3 = MultiPoly::chebyshev(3).unwrap();
        let c = pair_point(&t3, 16, 0).unwrap();
        assert!(c.ball_distance >= 1.0 / 24.0 - 1e-6);
        assert!(c.sphere_distance >= PI / 12.0 - 1e-6);
        assert!(c.chord >= c.chord_bound);
    }

    #[test]
    fn multiplier_examples() {
        let x = MultiPoly::univariate(&[0.0, 1.0]).unwrap();
        let r = multiplier_point(&x, 16, 0).unwrap();
        assert!((r.point[0].abs() - 1.0).abs() < 1e-12);
        assert!((r.distance - 1.0).abs() < 1e-12);
        // G_1(x) = sin(πx/2)/(πx/2), so |x G_1(x)| = (2/π)|sin(πx/2)|.
        assert!((r.value - 2.0 / PI).abs() < 1e-12);

        for n in 2..6 {
            let t = MultiPoly::chebyshev(n).unwrap();
            let r = multiplier_point(&t, 16, 0).unwrap();
            assert!(r.passed, "n={n} distance {}", r.distance);
        }

        let forms = vec![
            AffineForm::new(vec![1.0, 0.0], 0.3).unwrap(),
            AffineForm::new(vec![0.0, 1.0], -0.1).unwrap(),
        ];
        let p = product_of_affine_forms(&forms).unwrap();
        let r = multiplier_point(&p, 32, 0).unwrap();
        assert!(r.distance >= 0.5 - 1e-6);
    }

    #[test]
    fn multiplier_gradient_matches_finite_differences() {
        let p = MultiPoly::new(2, [(vec![2, 1], 1.0), (vec![0, 1], -0.3), (vec![1, 0], 0.2), (vec![0, 0], 0.5)]).unwrap();
        for x in [[0.3, -0.4], [1e-9, 2e-9], [0.6, 0.7]] {
            let (_, g) = multiplier_objective(&p, &x).unwrap();
            for i in 0..2 {
                let h = 1e-6;
                let mut xp = x;
                let mut xm = x;
                xp[i] += h;
                xm[i] -= h;
                let fd = (multiplier_objective(&p, &xp).unwrap().0 - multiplier_objective(&p, &xm).unwrap().0) / (2.0 * h);
                assert!((fd - g[i]).abs() < 1e-5 * (1.0 + g[i].abs()), "{x:?} {fd} {}", g[i]);
            }
        }
    }

    #[test]
    fn lifted_examples() {
        let l = lifted_diagnostics(2, 4).unwrap();
        assert_eq!(l.count, 2);
        assert!((l.r_k - 4.0 / PI).abs() < 1e-15);
        assert!((l.spacing - 1.0).abs() < 1e-12);
        assert!((l.cap_radius - 1.5).abs() < 1e-12);

        let l = lifted_diagnostics(1, 3).unwrap();
        assert_eq!(l.count, 2);
        assert!((l.latitudes[1] - 3.0 / PI).abs() < 1e-12);
        assert!((l.spacing - 2.0).abs() < 1e-12);
        assert!((l.cap_radius - 2.0).abs() < 1e-12);

        assert!(matches!(lifted_diagnostics(2, 5), Err(Error::ParityMismatch { .. })));
        assert!(lifted_diagnostics(4, 4).is_err());
    }
}
