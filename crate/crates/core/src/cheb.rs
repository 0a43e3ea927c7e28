//! Chebyshev polynomials and the multiplier functions built from their zeros.
//!
//! For `n` and `k` of equal parity, `g_{n,k}` is the product of the factors
//! `1 - (x/(k t_{i,k}))²` over the positive zeros `t_{i,k}` of `T_k` with
//! `i > ⌊n/2⌋`. As `k → ∞` it tends to `g_n`, the matching tail of the product
//! expansion of `cos` (even `n`) or `sin x / x` (odd `n`). `g_n` is evaluated
//! in closed form: the trigonometric function divided by the finitely many
//! leading factors it does not contain. Near a cancelled root that quotient is
//! a removable singularity and is evaluated through a short series.
//!
//! `G_n(x) = g_n(nπx/2)` is even, and its first positive zero is `1 + 1/n`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Width of the window around a cancelled root where the series is used.
const SERIES_WINDOW: f64 = 1e-3;
/// Grid size for the convergence diagnostics.
pub const CONVERGENCE_GRID: usize = 2048;

/// `T_k(x)`, trigonometric form inside `[-1, 1]` and hyperbolic form outside.
pub fn cheb_eval(k: usize, x: f64) -> f64 {
    let kf = k as f64;
    if x == 0.0 {
        return match k % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => 0.0,
        };
    }
    if x.abs() <= 1.0 {
        (kf * x.acos()).cos()
    } else if x > 1.0 {
        (kf * x.acosh()).cosh()
    } else {
        let v = (kf * (-x).acosh()).cosh();
        if k % 2 == 0 {
            v
        } else {
            -v
        }
    }
}

/// `T_k(x)` by the three-term recurrence.
pub fn cheb_recurrence(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The positive zeros `t_{1,k} < … < t_{⌊k/2⌋,k}` of `T_k`.
pub fn cheb_positive_zeros(k: usize) -> Result<Vec<f64>> {
    if k < 2 {
        return Err(Error::DegreeRange(format!("T_{k} has no positive zeros; need k >= 2")));
    }
    let half = k / 2;
    let kf = k as f64;
    Ok((1..=half)
        .map(|i| (PI / (2.0 * kf) + (half - i) as f64 * PI / kf).cos())
        .collect())
}

pub(crate) fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::DegreeRange("n must be positive".into()));
    }
    if n % 2 != k % 2 {
        return Err(Error::ParityMismatch { n, k });
    }
    if k <= n {
        return Err(Error::DegreeRange(format!("need k > n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `g_{n,k}(x) = Π_{i=⌊n/2⌋+1}^{⌊k/2⌋} (1 - (x/(k t_{i,k}))²)`.
pub fn g_nk_eval(n: usize, k: usize, x: f64) -> Result<f64> {
    check_nk(n, k)?;
    let zeros = cheb_positive_zeros(k)?;
    let kf = k as f64;
    let mut factors: Vec<f64> = zeros[n / 2..]
        .iter()
        .map(|t| {
            let r = x / (kf * t);
            1.0 - r * r
        })
        .collect();
    factors.sort_by(|a, b| (1.0 - a).abs().total_cmp(&(1.0 - b).abs()));
    Ok(factors.into_iter().product())
}

/// `sin(u)/u` by its Taylor series; meant for `|u| < 1e-3`.
fn sinc_series(u: f64) -> f64 {
    let u2 = u * u;
    1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0 * (1.0 - u2 / 110.0))))
}

/// `d/du ln(sin(u)/u) = cot u - 1/u` by its Taylor series.
fn dlog_sinc_series(u: f64) -> f64 {
    let u2 = u * u;
    -u * (1.0 / 3.0 + u2 * (1.0 / 45.0 + u2 * (2.0 / 945.0 + u2 * (1.0 / 4725.0 + u2 * 2.0 / 93555.0))))
}

/// Cancelled roots of `g_n`'s closed form: `(2i-1)π/2` for even `n`, `iπ` for odd.
fn cancelled_roots(n: usize) -> Vec<f64> {
    if n % 2 == 0 {
        (1..=n / 2).map(|i| (2 * i - 1) as f64 * PI / 2.0).collect()
    } else {
        (1..=(n - 1) / 2).map(|i| i as f64 * PI).collect()
    }
}

fn nearest_cancelled(roots: &[f64], y: f64) -> Option<usize> {
    roots.iter().position(|&r| (y - r).abs() < SERIES_WINDOW)
}

/// `g_n(x)`: the tail of the product expansion of `cos x` (even `n`) or of
/// `sin x / x` (odd `n`) after its first `⌊n/2⌋` factors.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn g_n_eval(n: usize, x: f64) -> f64 {
    assert!(n > 0, "g_n is defined for n >= 1");
    let y = x.abs();
    let roots = cancelled_roots(n);
    let factor = |r: f64| 1.0 - (y / r) * (y / r);
    let even = n % 2 == 0;

    match nearest_cancelled(&roots, y) {
        Some(j) => {
            let r = roots[j];
            let u = y - r;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let others: f64 = roots
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &ri)| factor(ri))
                .product();
            let ratio = if even {
                sign * sinc_series(u) * r * r / (2.0 * r + u)
            } else {
                sign * sinc_series(u) * r * r / (y * (2.0 * r + u))
            };
            ratio / others
        }
        None => {
            let denom: f64 = roots.iter().map(|&r| factor(r)).product();
            let num = if even {
                y.cos()
            } else if y < SERIES_WINDOW {
                sinc_series(y)
            } else {
                y.sin() / y
            };
            num / denom
        }
    }
}

/// `d/dx ln|g_n(x)|`, finite away from the true zeros of `g_n`.
pub fn g_n_log_derivative(n: usize, x: f64) -> f64 {
    assert!(n > 0, "g_n is defined for n >= 1");
    let y = x.abs();
    let roots = cancelled_roots(n);
    let even = n % 2 == 0;
    let term = |r: f64| 2.0 * y / (r * r - y * y);

    let d = match nearest_cancelled(&roots, y) {
        Some(j) => {
            let r = roots[j];
            let u = y - r;
            let others: f64 = roots
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &ri)| term(ri))
                .sum();
            let local = dlog_sinc_series(u) - 1.0 / (2.0 * r + u);
            if even {
                local + others
            } else {
                local - 1.0 / y + others
            }
        }
        None => {
            let others: f64 = roots.iter().map(|&r| term(r)).sum();
            let trig = if even {
                -y.tan()
            } else if y < SERIES_WINDOW {
                dlog_sinc_series(y)
            } else {
                1.0 / y.tan() - 1.0 / y
            };
            trig + others
        }
    };
    if x < 0.0 {
        -d
    } else {
        d
    }
}

/// `G_n(x) = g_n(nπx/2)`.
pub fn big_g_eval(n: usize, x: f64) -> f64 {
    g_n_eval(n, n as f64 * PI * x / 2.0)
}

/// `d/dx ln|G_n(x)|`.
pub fn big_g_log_derivative(n: usize, x: f64) -> f64 {
    let s = n as f64 * PI / 2.0;
    s * g_n_log_derivative(n, s * x)
}

/// Static description of the multiplier `G_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebMultiplier {
    pub n: usize,
    pub even: bool,
    /// Points `m/n` in `(0, 1 + 1/n]` where the closed form divides 0 by 0
    /// (or, at `1 + 1/n`, where `G_n` has its first zero).
    pub poles: Vec<f64>,
}

impl ChebMultiplier {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegreeRange("n must be positive".into()));
        }
        let s = n as f64 * PI / 2.0;
        let mut poles: Vec<f64> = cancelled_roots(n).into_iter().map(|r| r / s).collect();
        poles.push(1.0 + 1.0 / n as f64);
        Ok(ChebMultiplier { n, even: n % 2 == 0, poles })
    }

    pub fn eval(&self, x: f64) -> f64 {
        big_g_eval(self.n, x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub n: usize,
    pub half_width: f64,
    pub ks: Vec<usize>,
    /// `sup |(-1)^{⌊k/2⌋} T_k(x/k) - cos x|` (even) or `- sin x` (odd).
    pub claim1_errors: Vec<f64>,
    /// `sup |g_{n,k}(x) - g_n(x)|`.
    pub claim2_errors: Vec<f64>,
}

/// `(-1)^{⌊k/2⌋} T_k(x/k)`.
pub fn scaled_cheb(k: usize, x: f64) -> f64 {
    let v = cheb_eval(k, x / k as f64);
    if (k / 2) % 2 == 0 {
        v
    } else {
        -v
    }
}

/// The limit of [`scaled_cheb`]: `cos` for even `k`, `sin` for odd `k`.
pub fn scaled_cheb_limit(k: usize, x: f64) -> f64 {
    if k % 2 == 0 {
        x.cos()
    } else {
        x.sin()
    }
}

pub fn grid(half_width: f64, points: usize) -> Vec<f64> {
    if half_width == 0.0 || points < 2 {
        return vec![0.0];
    }
    (0..points)
        .map(|i| -half_width + 2.0 * half_width * i as f64 / (points - 1) as f64)
        .collect()
}

/// Sup-norm errors of both uniform approximations on a grid over `[-X, X]`.
pub fn convergence_report(n: usize, ks: &[usize], half_width: f64) -> Result<ConvergenceReport> {
    if !(half_width >= 0.0) {
        return Err(Error::InvalidInput("half width must be nonnegative".into()));
    }
    let xs = grid(half_width, CONVERGENCE_GRID);
    let mut claim1 = Vec::with_capacity(ks.len());
    let mut claim2 = Vec::with_capacity(ks.len());
    for &k in ks {
        check_nk(n, k)?;
        let mut e1 = 0.0f64;
        let mut e2 = 0.0f64;
        for &x in &xs {
            e1 = e1.max((scaled_cheb(k, x) - scaled_cheb_limit(k, x)).abs());
            e2 = e2.max((g_nk_eval(n, k, x)? - g_n_eval(n, x)).abs());
        }
        claim1.push(e1);
        claim2.push(e2);
    }
    Ok(ConvergenceReport {
        n,
        half_width,
        ks: ks.to_vec(),
        claim1_errors: claim1,
        claim2_errors: claim2,
    })
}
