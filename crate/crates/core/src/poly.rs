//! Real multivariate polynomials, affine forms and restriction to circles.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trig::TrigPoly;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Product of two univariate polynomials, coefficients lowest degree first.
pub(crate) fn univariate_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The affine function `L(x) = ⟨normal, x⟩ - offset` with `‖normal‖ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineForm {
    normal: Vec<f64>,
    offset: f64,
}

impl AffineForm {
    /// Rescales `(normal, offset)` so the normal is a unit vector; the zero
    /// set is unchanged.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let len = norm(&normal);
        if normal.is_empty() || !(len > 1e-300) || !len.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidInput("affine form needs a nonzero finite normal".into()));
        }
        Ok(AffineForm { normal: normal.iter().map(|a| a / len).collect(), offset: offset / len })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    /// The same form on `R^{d+extra}` acting on the first `d` coordinates after
    /// `shift` leading zero coordinates.
    pub fn embedded(&self, total_dim: usize, shift: usize) -> AffineForm {
        let mut normal = vec![0.0; total_dim];
        normal[shift..shift + self.dim()].copy_from_slice(&self.normal);
        AffineForm { normal, offset: self.offset }
    }
}

/// The circle `x(θ) = center + r (u cos θ + v sin θ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CirclePlane {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub radius: f64,
    pub center: Vec<f64>,
}

impl CirclePlane {
    /// Orthonormalizes `(u, v)` by Gram-Schmidt.
    pub fn new(u: Vec<f64>, v: Vec<f64>, radius: f64, center: Vec<f64>) -> Result<Self> {
        let d = u.len();
        check_dim(d, v.len())?;
        check_dim(d, center.len())?;
        if !(radius > 0.0) {
            return Err(Error::InvalidInput("circle radius must be positive".into()));
        }
        let nu = norm(&u);
        if !(nu > 1e-12) {
            return Err(Error::InvalidInput("degenerate circle direction u".into()));
        }
        let u: Vec<f64> = u.iter().map(|x| x / nu).collect();
        let proj = dot(&u, &v);
        let w: Vec<f64> = v.iter().zip(&u).map(|(a, b)| a - proj * b).collect();
        let nw = norm(&w);
        if !(nw > 1e-12) {
            return Err(Error::InvalidInput("circle directions are parallel".into()));
        }
        let v = w.iter().map(|x| x / nw).collect();
        Ok(CirclePlane { u, v, radius, center })
    }

    /// Great circle of the unit sphere spanned by `u` and `v`.
    pub fn great_circle(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let d = u.len();
        Self::new(u, v, 1.0, vec![0.0; d])
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn point(&self, theta: f64) -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        (0..self.dim())
            .map(|i| self.center[i] + self.radius * (self.u[i] * c + self.v[i] * s))
            .collect()
    }

    fn coordinate(&self, i: usize) -> TrigPoly {
        TrigPoly::new(
            self.center[i],
            vec![(self.radius * self.u[i], self.radius * self.v[i])],
        )
    }
}

/// Common interface of the polynomial representations the finders accept.
///
/// The `*_at` methods assume `x.len() == self.dim()`.
pub trait RealPolynomial: Send + Sync + Debug {
    fn dim(&self) -> usize;
    fn degree(&self) -> usize;
    fn value_at(&self, x: &[f64]) -> f64;
    fn gradient_at(&self, x: &[f64]) -> Vec<f64>;

    /// `(ln|P(x)|, ∇P/P)`, or `None` at a zero.
    fn log_abs_gradient_at(&self, x: &[f64]) -> Option<(f64, Vec<f64>)> {
        let v = self.value_at(x);
        if v == 0.0 || !v.is_finite() {
            return None;
        }
        let g = self.gradient_at(x).into_iter().map(|gi| gi / v).collect();
        Some((v.abs().ln(), g))
    }

    /// Restriction to a circle as a trigonometric polynomial (dimensions unchecked).
    fn circle_restriction(&self, plane: &CirclePlane) -> TrigPoly;

    /// Coefficients in `t` of `P(origin + t·dir)`, lowest degree first.
    fn line_restriction(&self, origin: &[f64], dir: &[f64]) -> Vec<f64>;

    /// The factorization, when the polynomial is known to be a product of affine forms.
    fn affine_factors(&self) -> Option<&[AffineForm]> {
        None
    }

    /// `(x, y) ↦ P(x) P(y)` on `R^{2d}`.
    fn pair_lift(&self) -> Box<dyn RealPolynomial>;
}

/// Sparse real polynomial with lexicographically ordered exponent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    dim: usize,
    terms: Vec<(Vec<u32>, f64)>,
    degree: usize,
    max_exp: Vec<u32>,
    factors: Option<Vec<AffineForm>>,
}

impl MultiPoly {
    /// Merges repeated exponent vectors and drops zero coefficients; the
    /// identically zero polynomial is rejected.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("polynomial dimension must be positive".into()));
        }
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (e, c) in terms {
            check_dim(dim, e.len())?;
            if !c.is_finite() {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
            *map.entry(e).or_insert(0.0) += c;
        }
        Self::from_map(dim, map)
    }

    fn from_map(dim: usize, map: BTreeMap<Vec<u32>, f64>) -> Result<Self> {
        let terms: Vec<(Vec<u32>, f64)> = map.into_iter().filter(|(_, c)| *c != 0.0).collect();
        if terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let degree = terms
            .iter()
            .map(|(e, _)| e.iter().map(|&k| k as usize).sum::<usize>())
            .max()
            .unwrap_or(0);
        let mut max_exp = vec![0; dim];
        for (e, _) in &terms {
            for (m, &k) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(k);
            }
        }
        Ok(MultiPoly { dim, terms, degree, max_exp, factors: None })
    }

    /// Univariate polynomial `Σ c[i] x^i`.
    pub fn univariate(coeffs: &[f64]) -> Result<Self> {
        Self::new(1, coeffs.iter().enumerate().map(|(i, &c)| (vec![i as u32], c)))
    }

    /// Chebyshev polynomial `T_n` in one variable.
    pub fn chebyshev(n: usize) -> Result<Self> {
        let mut prev = vec![1.0];
        let mut cur = vec![0.0, 1.0];
        if n == 0 {
            return Self::univariate(&prev);
        }
        for _ in 1..n {
            let mut next = vec![0.0; cur.len() + 1];
            for (i, &c) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i] -= c;
            }
            prev = cur;
            cur = next;
        }
        Self::univariate(&cur)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        check_dim(self.dim, point.len())?;
        Ok(self.value_at(point))
    }

    pub fn gradient(&self, point: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, point.len())?;
        Ok(self.gradient_at(point))
    }

    pub fn restrict_to_circle(&self, plane: &CirclePlane) -> Result<TrigPoly> {
        check_dim(self.dim, plane.dim())?;
        Ok(self.circle_restriction(plane))
    }

    fn powers(&self, x: &[f64]) -> Vec<Vec<f64>> {
        x.iter()
            .zip(&self.max_exp)
            .map(|(&xi, &m)| {
                let mut p = Vec::with_capacity(m as usize + 1);
                let mut acc = 1.0;
                p.push(1.0);
                for _ in 0..m {
                    acc *= xi;
                    p.push(acc);
                }
                p
            })
            .collect()
    }

    /// Coefficientwise product.
    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_dim(self.dim, other.dim)?;
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *map.entry(e).or_insert(0.0) += c1 * c2;
            }
        }
        Self::from_map(self.dim, map)
    }

    fn mul_affine(&self, form: &AffineForm) -> Result<MultiPoly> {
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (i, &a) in form.normal.iter().enumerate() {
                if a != 0.0 {
                    let mut e2 = e.clone();
                    e2[i] += 1;
                    *map.entry(e2).or_insert(0.0) += c * a;
                }
            }
            if form.offset != 0.0 {
                *map.entry(e.clone()).or_insert(0.0) -= c * form.offset;
            }
        }
        Self::from_map(self.dim, map)
    }

    pub fn with_factors(mut self, factors: Vec<AffineForm>) -> Self {
        self.factors = Some(factors);
        self
    }
}

impl RealPolynomial for MultiPoly {
    fn dim(&self) -> usize {
        self.dim
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn value_at(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let pw = self.powers(x);
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().enumerate().map(|(i, &k)| pw[i][k as usize]).product::<f64>())
            .sum()
    }

    fn gradient_at(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim);
        let pw = self.powers(x);
        let mut g = vec![0.0; self.dim];
        for (e, c) in &self.terms {
            for j in 0..self.dim {
                if e[j] == 0 {
                    continue;
                }
                let mut t = c * e[j] as f64;
                for (i, &k) in e.iter().enumerate() {
                    t *= if i == j { pw[i][k as usize - 1] } else { pw[i][k as usize] };
                }
                g[j] += t;
            }
        }
        g
    }

    fn circle_restriction(&self, plane: &CirclePlane) -> TrigPoly {
        let coords: Vec<Vec<TrigPoly>> = (0..self.dim)
            .map(|i| {
                let base = plane.coordinate(i);
                let mut pows = vec![TrigPoly::constant(1.0)];
                for _ in 0..self.max_exp[i] {
                    let next = pows.last().unwrap().mul(&base);
                    pows.push(next);
                }
                pows
            })
            .collect();
        let mut acc = TrigPoly::constant(0.0);
        for (e, c) in &self.terms {
            let mut term = TrigPoly::constant(*c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&coords[i][k as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    fn line_restriction(&self, origin: &[f64], dir: &[f64]) -> Vec<f64> {
        let coords: Vec<Vec<Vec<f64>>> = (0..self.dim)
            .map(|i| {
                let base = [origin[i], dir[i]];
                let mut pows = vec![vec![1.0]];
                for _ in 0..self.max_exp[i] {
                    let next = univariate_mul(pows.last().unwrap(), &base);
                    pows.push(next);
                }
                pows
            })
            .collect();
        let mut acc = vec![0.0; self.degree + 1];
        for (e, c) in &self.terms {
            let mut term = vec![*c];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = univariate_mul(&term, &coords[i][k as usize]);
                }
            }
            for (a, t) in acc.iter_mut().zip(term) {
                *a += t;
            }
        }
        acc
    }

    fn affine_factors(&self) -> Option<&[AffineForm]> {
        self.factors.as_deref()
    }

    fn pair_lift(&self) -> Box<dyn RealPolynomial> {
        let d = self.dim;
        let lift = |shift: usize| {
            self.terms.iter().map(move |(e, c)| {
                let mut e2 = vec![0; 2 * d];
                e2[shift..shift + d].copy_from_slice(e);
                (e2, *c)
            })
        };
        let px = MultiPoly::new(2 * d, lift(0)).expect("lift of a nonzero polynomial");
        let py = MultiPoly::new(2 * d, lift(d)).expect("lift of a nonzero polynomial");
        let mut prod = px.mul(&py).expect("same dimension");
        if let Some(f) = &self.factors {
            prod.factors = Some(lifted_factors(f, d));
        }
        Box::new(prod)
    }
}

fn lifted_factors(forms: &[AffineForm], d: usize) -> Vec<AffineForm> {
    forms
        .iter()
        .map(|f| f.embedded(2 * d, 0))
        .chain(forms.iter().map(|f| f.embedded(2 * d, d)))
        .collect()
}

/// Expanded `Π L_i`, tagged with its factorization.
pub fn product_of_affine_forms(forms: &[AffineForm]) -> Result<MultiPoly> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidInput("product of an empty list of forms".into()))?;
    let d = first.dim();
    for f in forms {
        check_dim(d, f.dim())?;
    }
    let mut p = MultiPoly::new(d, [(vec![0; d], 1.0)])?;
    for f in forms {
        p = p.mul_affine(f)?;
    }
    Ok(p.with_factors(forms.to_vec()))
}

/// Unexpanded product of affine forms, suited to high degree.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineProduct {
    dim: usize,
    forms: Vec<AffineForm>,
}

impl AffineProduct {
    pub fn new(forms: Vec<AffineForm>) -> Result<Self> {
        let d = forms
            .first()
            .ok_or_else(|| Error::InvalidInput("product of an empty list of forms".into()))?
            .dim();
        for f in &forms {
            check_dim(d, f.dim())?;
        }
        Ok(AffineProduct { dim: d, forms })
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn expand(&self) -> Result<MultiPoly> {
        product_of_affine_forms(&self.forms)
    }
}

impl RealPolynomial for AffineProduct {
    fn dim(&self) -> usize {
        self.dim
    }

    fn degree(&self) -> usize {
        self.forms.len()
    }

    fn value_at(&self, x: &[f64]) -> f64 {
        self.forms.iter().map(|f| f.eval(x)).product()
    }

    fn gradient_at(&self, x: &[f64]) -> Vec<f64> {
        let vals: Vec<f64> = self.forms.iter().map(|f| f.eval(x)).collect();
        let mut g = vec![0.0; self.dim];
        for (i, f) in self.forms.iter().enumerate() {
            let others: f64 = vals
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v)
                .product();
            for (gk, ak) in g.iter_mut().zip(&f.normal) {
                *gk += ak * others;
            }
        }
        g
    }

    fn log_abs_gradient_at(&self, x: &[f64]) -> Option<(f64, Vec<f64>)> {
        let mut lv = 0.0;
        let mut g = vec![0.0; self.dim];
        for f in &self.forms {
            let v = f.eval(x);
            if v == 0.0 {
                return None;
            }
            lv += v.abs().ln();
            for (gk, ak) in g.iter_mut().zip(&f.normal) {
                *gk += ak / v;
            }
        }
        Some((lv, g))
    }

    fn circle_restriction(&self, plane: &CirclePlane) -> TrigPoly {
        self.forms.iter().fold(TrigPoly::constant(1.0), |acc, f| {
            let lin = TrigPoly::new(
                f.eval(&plane.center),
                vec![(plane.radius * dot(&f.normal, &plane.u), plane.radius * dot(&f.normal, &plane.v))],
            );
            acc.mul(&lin)
        })
    }

    fn line_restriction(&self, origin: &[f64], dir: &[f64]) -> Vec<f64> {
        self.forms.iter().fold(vec![1.0], |acc, f| {
            univariate_mul(&acc, &[f.eval(origin), dot(&f.normal, dir)])
        })
    }

    fn affine_factors(&self) -> Option<&[AffineForm]> {
        Some(&self.forms)
    }

    fn pair_lift(&self) -> Box<dyn RealPolynomial> {
        Box::new(AffineProduct { dim: 2 * self.dim, forms: lifted_factors(&self.forms, self.dim) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, dim: usize, degree: u32, terms: usize) -> MultiPoly {
        let t = (0..terms).map(|_| {
            let mut e = vec![0u32; dim];
            let total = rng.gen_range(0..=degree);
            for _ in 0..total {
                e[rng.gen_range(0..dim)] += 1;
            }
            (e, rng.gen_range(-1.0..1.0))
        });
        MultiPoly::new(dim, t).unwrap()
    }

    #[test]
    fn eval_examples() {
        let p = MultiPoly::new(2, [(vec![2, 0], 1.0), (vec![0, 2], 1.0)]).unwrap();
        assert_eq!(p.eval(&[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(p.gradient(&[3.0, 4.0]).unwrap(), vec![6.0, 8.0]);
        let q = MultiPoly::new(2, [(vec![1, 1], 1.0)]).unwrap();
        assert_eq!(q.eval(&[1.0, 0.0]).unwrap(), 0.0);
        let odd = MultiPoly::univariate(&[0.0, -3.0, 0.0, 1.0]).unwrap();
        let v = odd.eval(&[0.7]).unwrap();
        assert!((v - (0.343 - 2.1)).abs() < 1e-15);
        assert!((v + 1.757).abs() < 1e-12);
        assert_eq!(odd.eval(&[-0.7]).unwrap(), -v);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(MultiPoly::new(2, [(vec![1, 0], 0.0)]), Err(Error::ZeroPolynomial));
        assert_eq!(
            MultiPoly::new(2, [(vec![1, 0], 1.0), (vec![1, 0], -1.0)]),
            Err(Error::ZeroPolynomial)
        );
        assert!(matches!(
            MultiPoly::new(2, [(vec![1], 1.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
        let p = MultiPoly::new(2, [(vec![1, 0], 1.0)]).unwrap();
        assert!(p.eval(&[1.0]).is_err());
        assert!(p.gradient(&[1.0, 2.0, 3.0]).is_err());
        assert!(product_of_affine_forms(&[]).is_err());
    }

    #[test]
    fn gradient_of_linear_form() {
        let p = MultiPoly::new(3, [(vec![1, 0, 0], 0.5), (vec![0, 1, 0], -2.0), (vec![0, 0, 1], 3.0)])
            .unwrap();
        assert_eq!(p.gradient(&[0.3, -7.0, 11.0]).unwrap(), vec![0.5, -2.0, 3.0]);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 3, 4, 12);
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let g = p.gradient_at(&x);
            let h = 1e-5;
            for j in 0..3 {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[j] += h;
                xm[j] -= h;
                let fd = (p.value_at(&xp) - p.value_at(&xm)) / (2.0 * h);
                assert!((g[j] - fd).abs() <= 1e-6 * g[j].abs().max(1.0), "{} vs {fd}", g[j]);
            }
        }
    }

    #[test]
    fn affine_product_examples() {
        let e1 = AffineForm::new(vec![1.0, 0.0], 0.0).unwrap();
        let e2 = AffineForm::new(vec![0.0, 1.0], 0.0).unwrap();
        let p = product_of_affine_forms(&[e1, e2]).unwrap();
        assert_eq!(p.terms(), &[(vec![1, 1], 1.0)]);
        let single = product_of_affine_forms(&[AffineForm::new(vec![1.0, 0.0], 0.5).unwrap()]).unwrap();
        assert_eq!(single.terms(), &[(vec![0, 0], -0.5), (vec![1, 0], 1.0)]);
        assert_eq!(single.degree(), 1);
    }

    #[test]
    fn affine_form_is_renormalized() {
        let f = AffineForm::new(vec![3.0, 4.0], 10.0).unwrap();
        assert!((norm(f.normal()) - 1.0).abs() < 1e-15);
        assert!((f.offset() - 2.0).abs() < 1e-15);
        assert!(AffineForm::new(vec![0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn product_matches_factor_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let forms: Vec<AffineForm> = (0..3)
            .map(|_| {
                let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
                AffineForm::new(a, rng.gen_range(-0.9..0.9)).unwrap()
            })
            .collect();
        let p = product_of_affine_forms(&forms).unwrap();
        let lazy = AffineProduct::new(forms.clone()).unwrap();
        assert_eq!(p.degree(), 3);
        for _ in 0..100 {
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let direct: f64 = forms.iter().map(|f| f.eval(&x)).product();
            assert!((p.value_at(&x) - direct).abs() <= 1e-10 * direct.abs().max(1e-300) + 1e-14);
            assert!((lazy.value_at(&x) - direct).abs() <= 1e-14);
            let (g1, g2) = (p.gradient_at(&x), lazy.gradient_at(&x));
            for (a, b) in g1.iter().zip(&g2) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let plane = CirclePlane::great_circle(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let x1 = MultiPoly::new(2, [(vec![1, 0], 1.0)]).unwrap();
        let t = x1.restrict_to_circle(&plane).unwrap();
        assert_eq!(t.degree(), 1);
        assert!((t.coeffs()[0].0 - 1.0).abs() < 1e-15 && t.coeffs()[0].1.abs() < 1e-15);

        let x1x2 = MultiPoly::new(2, [(vec![1, 1], 1.0)]).unwrap();
        let t = x1x2.restrict_to_circle(&plane).unwrap();
        assert_eq!(t.degree(), 2);
        assert!(t.a0().abs() < 1e-15);
        assert!(t.coeffs()[0].0.abs() < 1e-15 && t.coeffs()[0].1.abs() < 1e-15);
        assert!(t.coeffs()[1].0.abs() < 1e-15 && (t.coeffs()[1].1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn restriction_matches_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 3, 4, 15);
            let u: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let plane = CirclePlane::great_circle(u, v).unwrap();
            let t = p.restrict_to_circle(&plane).unwrap();
            assert!(t.degree() <= p.degree());
            for i in 0..256 {
                let th = std::f64::consts::TAU * i as f64 / 256.0;
                assert!((t.eval(th) - p.value_at(&plane.point(th))).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn line_restriction_matches_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_poly(&mut rng, 2, 5, 10);
        let forms: Vec<AffineForm> = (0..4)
            .map(|_| AffineForm::new(vec![rng.gen_range(-1.0..1.0), 0.3], 0.2).unwrap())
            .collect();
        let q = AffineProduct::new(forms).unwrap();
        let (o, d) = ([0.2, -0.4], [0.6, 0.8]);
        for poly in [&p as &dyn RealPolynomial, &q] {
            let c = poly.line_restriction(&o, &d);
            for t in [-1.0, -0.3, 0.0, 0.5, 1.7] {
                let x = [o[0] + t * d[0], o[1] + t * d[1]];
                let (v, _) = crate::roots::horner_real(&c, t);
                assert!((v - poly.value_at(&x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pair_lift_evaluates_product() {
        let p = MultiPoly::new(2, [(vec![2, 0], 1.0), (vec![0, 1], -0.5), (vec![0, 0], 0.1)]).unwrap();
        let lifted = p.pair_lift();
        assert_eq!(lifted.dim(), 4);
        assert_eq!(lifted.degree(), 4);
        let (x, y) = ([0.3, -0.2], [0.7, 0.4]);
        let expected = p.value_at(&x) * p.value_at(&y);
        assert!((lifted.value_at(&[x[0], x[1], y[0], y[1]]) - expected).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_coefficients() {
        let t4 = MultiPoly::chebyshev(4).unwrap();
        assert_eq!(t4.terms(), &[(vec![0], 1.0), (vec![2], -8.0), (vec![4], 8.0)]);
    }
}
