//! Univariate polynomial roots from companion-matrix eigenvalues.
//!
//! Coefficients are stored lowest degree first. The companion matrix is
//! balanced before the complex Schur decomposition and every eigenvalue is
//! polished with a few guarded Newton steps on the original coefficients.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const SCHUR_MAX_ITER: usize = 10_000;

/// Horner evaluation of `sum c[i] z^i` together with its derivative.
pub fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

pub fn horner_real(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut deriv = 0.0;
    for &c in coeffs.iter().rev() {
        deriv = deriv * x + value;
        value = value * x + c;
    }
    (value, deriv)
}

/// Drops leading coefficients that are negligible against the largest one.
pub fn effective_degree(coeffs: &[Complex64]) -> Option<usize> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    coeffs.iter().rposition(|c| c.norm() > 1e-14 * scale)
}

/// All complex roots of `sum c[i] z^i`, with multiplicity, in no particular order.
///
/// Returns an error for the zero polynomial.
pub fn complex_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = effective_degree(coeffs).ok_or(Error::ZeroPolynomial)?;
    let coeffs = &coeffs[..=deg];
    match deg {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-coeffs[0] / coeffs[1]]),
        _ => {}
    }

    // Highly structured companions (e.g. of z^n + c) can stall the shifted QR
    // iteration; retry on p(w + s) for a few fixed shifts s.
    let eig = companion_eigenvalues(coeffs).or_else(|| {
        SHIFTS.iter().find_map(|&(re, im)| {
            let s = Complex64::new(re, im);
            companion_eigenvalues(&taylor_shift(coeffs, s))
                .map(|w| w.into_iter().map(|x| x + s).collect())
        })
    });
    let eig = eig.ok_or(Error::EigenSolver(deg))?;
    let roots: Vec<Complex64> = eig.into_iter().map(|z| polish(coeffs, z)).collect();
    Ok(refine_clusters(coeffs, roots))
}

/// Relative radius under which nearby roots are tested as one multiple root.
const CLUSTER_TOL: f64 = 5e-2;

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// A root of multiplicity `m` comes out of the eigenvalues as a ring of `m`
/// points of radius about `ε^{1/m}`. It is a simple root of the `(m-1)`-th
/// derivative, so Newton there from the ring's mean recovers it to full
/// precision. The merge is kept only when the residual is no worse than the
/// ring's, which rules out genuinely distinct close roots.
fn refine_clusters(coeffs: &[Complex64], mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if (roots[i] - roots[j]).norm() <= CLUSTER_TOL * roots[i].norm().max(1.0) {
                let (a, b) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == a {
                        *l = b;
                    }
                }
            }
        }
    }
    let residual = |z: Complex64| horner_with_derivative(coeffs, z).0.norm();
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| label[i] == root).collect();
        let m = members.len();
        if m < 2 {
            continue;
        }
        let mean = members.iter().map(|&i| roots[i]).sum::<Complex64>() / m as f64;
        let mut d = coeffs.to_vec();
        for _ in 1..m {
            d = derivative(&d);
        }
        let z = polish(&d, mean);
        let worst = members.iter().map(|&i| residual(roots[i])).fold(0.0, f64::max);
        // Residuals at round-off level cannot be ranked; Horner's error bound is the floor.
        let floor: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm() * z.norm().powi(i as i32))
            .sum::<f64>()
            * 4.0
            * n as f64
            * f64::EPSILON;
        if residual(z) <= 10.0 * worst + floor {
            for &i in &members {
                roots[i] = z;
            }
        }
    }
    roots
}

const SHIFTS: [(f64, f64); 3] = [(0.0123, 0.0071), (-0.031, 0.017), (0.07, -0.043)];

fn companion_eigenvalues(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let mut m = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    balance(&mut m);
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, SCHUR_MAX_ITER)?;
    let eig = schur.eigenvalues()?;
    let out: Vec<Complex64> = eig.iter().copied().collect();
    out.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(out)
}

/// Coefficients of `q(w) = p(w + s)`.
fn taylor_shift(coeffs: &[Complex64], s: Complex64) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = c[j + 1];
            c[j] += s * next;
        }
    }
    c
}

/// Real roots of a real polynomial. Complex eigenvalues whose imaginary part
/// is below `imag_tol * max(1, |z|)` are projected to the real line and
/// polished; candidates that do not shrink the residual to round-off level
/// are dropped.
pub fn real_roots(coeffs: &[f64], imag_tol: f64) -> Result<Vec<f64>> {
    let cc: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let roots = complex_roots(&cc)?;
    let mut out = Vec::new();
    for z in roots {
        if z.im.abs() > imag_tol * z.norm().max(1.0) {
            continue;
        }
        let mut x = z.re;
        for _ in 0..60 {
            let (v, d) = horner_real(coeffs, x);
            if d == 0.0 {
                break;
            }
            let step = v / d;
            let next = x - step;
            let (vn, _) = horner_real(coeffs, next);
            if vn.abs() > v.abs() {
                break;
            }
            x = next;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let scale: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * x.abs().powi(i as i32))
            .sum();
        if horner_real(coeffs, x).0.abs() <= 1e-8 * scale.max(f64::MIN_POSITIVE) {
            out.push(x);
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut v, _) = horner_with_derivative(coeffs, z);
    for _ in 0..8 {
        let (_, d) = horner_with_derivative(coeffs, z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - v / d;
        let (vn, _) = horner_with_derivative(coeffs, next);
        if !(vn.norm() < v.norm()) {
            break;
        }
        z = next;
        v = vn;
    }
    z
}

// Parlett-Reinsch balancing with powers of two.
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let g = r / radix;
            while cc < g {
                f *= radix;
                cc *= radix * radix;
            }
            let g = r * radix;
            while cc > g {
                f /= radix;
                cc /= radix * radix;
            }
            if (cc + r / f) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}
