//! Spherical segments and planks, and refuters that exhibit a point missed by
//! a family whose total width is below the sphere's `π` or the ball's `2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::ball::multiplier_point;
use crate::error::{Error, Result};
use crate::optimize::{self, normalize};
use crate::poly::{dot, AffineForm, AffineProduct, RealPolynomial};
use crate::sphere::{maximize_abs_on_sphere, slice_distance, sphere_local_maxima};

/// Largest number of virtual pieces (degree of the product) a refuter accepts.
pub const MAX_FACTORS: usize = 200;
/// Share of the slack spent on rounding widths when no margin is given.
pub const DEFAULT_MARGIN_SHARE: f64 = 0.01;

/// `{x ∈ S^{d-1} : |arcsin⟨a, x⟩ - arcsin b| ≤ δ}`; a zone when `b = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalSegment {
    normal: Vec<f64>,
    offset: f64,
    half_width: f64,
}

impl SphericalSegment {
    /// The normal is rescaled to unit length; `b` is taken relative to the unit normal.
    pub fn new(normal: Vec<f64>, offset: f64, half_width: f64) -> Result<Self> {
        let normal = normalize(&normal)
            .ok_or_else(|| Error::InvalidInput("segment normal must be a nonzero finite vector".into()))?;
        if !(offset > -1.0 && offset < 1.0) {
            return Err(Error::InvalidInput(format!("segment offset {offset} outside (-1, 1)")));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidInput(format!("segment half-width {half_width} is not positive")));
        }
        Ok(SphericalSegment { normal, offset, half_width })
    }

    pub fn zone(normal: Vec<f64>, half_width: f64) -> Result<Self> {
        Self::new(normal, 0.0, half_width)
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn core(&self) -> AffineForm {
        AffineForm::new(self.normal.clone(), self.offset).expect("unit normal")
    }

    /// Distance from `x` to the core minus the half-width; negative inside.
    pub fn clearance(&self, x: &[f64]) -> f64 {
        slice_distance(&self.core(), x) - self.half_width
    }

    fn latitude_band(&self) -> (f64, f64) {
        let c = self.offset.asin();
        (c - self.half_width, c + self.half_width)
    }
}

/// `{x ∈ R^d : |⟨a, x⟩ - c| ≤ w/2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plank {
    normal: Vec<f64>,
    center: f64,
    half_width: f64,
}

impl Plank {
    /// Built from the full width `w`; the normal is rescaled to unit length
    /// with `c` taken relative to the unit normal.
    pub fn new(normal: Vec<f64>, center: f64, width: f64) -> Result<Self> {
        let normal = normalize(&normal)
            .ok_or_else(|| Error::InvalidInput("plank normal must be a nonzero finite vector".into()))?;
        if !center.is_finite() {
            return Err(Error::InvalidInput("plank center must be finite".into()));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidInput(format!("plank width {width} is not positive")));
        }
        Ok(Plank { normal, center, half_width: width / 2.0 })
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        2.0 * self.half_width
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.clearance(x) <= 0.0
    }

    pub fn clearance(&self, x: &[f64]) -> f64 {
        (dot(&self.normal, x) - self.center).abs() - self.half_width
    }
}

/// Membership by the arcsin formula.
pub fn segment_contains(seg: &SphericalSegment, x: &[f64]) -> Result<bool> {
    if x.len() != seg.dim() {
        return Err(Error::DimensionMismatch { expected: seg.dim(), got: x.len() });
    }
    Ok(seg.clearance(x) <= 0.0)
}

/// A piece of width `unit` cut from one input interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub source: usize,
    pub center: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandSplit {
    pub bands: Vec<Band>,
    /// Common width of the pieces.
    pub unit: f64,
    /// `N` with `unit = 1/N`; `None` when the inputs already share one width
    /// and are used as they are.
    pub denominator: Option<usize>,
    /// Sum of the widths after rounding up.
    pub rounded_total: f64,
}

fn ceil_units(w: f64, n: usize) -> usize {
    ((w * n as f64) - 1e-12).ceil().max(1.0) as usize
}

/// Rounds every interval of `range` up to a multiple of `1/N` (the smallest
/// `N` whose total rounding stays within `margin`) and cuts the widened
/// intervals into abutting pieces of width `1/N` that stay inside `range`.
/// Intervals are clipped to `range` first; empty ones are dropped.
fn split_bands(intervals: &[(f64, f64)], range: (f64, f64), margin: f64) -> Result<BandSplit> {
    let length = range.1 - range.0;
    let clipped: Vec<(usize, f64, f64)> = intervals
        .iter()
        .enumerate()
        .map(|(i, &(lo, hi))| (i, lo.max(range.0), hi.min(range.1)))
        .filter(|&(_, lo, hi)| hi > lo)
        .collect();
    if clipped.is_empty() {
        return Ok(BandSplit { bands: Vec::new(), unit: length, denominator: None, rounded_total: 0.0 });
    }
    let widths: Vec<f64> = clipped.iter().map(|&(_, lo, hi)| hi - lo).collect();
    let total: f64 = widths.iter().sum();
    if total + margin >= length {
        return Err(Error::Precondition(format!(
            "total width {total} plus margin {margin} is not below {length}"
        )));
    }

    let w0 = widths[0];
    if widths.len() > 1 && widths.iter().all(|w| (w - w0).abs() <= 1e-12 * w0) {
        if clipped.len() > MAX_FACTORS {
            return Err(Error::Precondition(format!(
                "{} pieces exceed the limit of {MAX_FACTORS} factors",
                clipped.len()
            )));
        }
        let bands = clipped
            .iter()
            .map(|&(source, lo, hi)| Band { source, center: 0.5 * (lo + hi) })
            .collect();
        return Ok(BandSplit { bands, unit: w0, denominator: None, rounded_total: total });
    }

    let limit = (clipped.len() as f64 / margin).ceil() as usize + 1;
    let n = (1..=limit)
        .find(|&n| {
            let rounded: usize = widths.iter().map(|&w| ceil_units(w, n)).sum();
            rounded as f64 / n as f64 - total <= margin
        })
        .unwrap_or(limit);
    let counts: Vec<usize> = widths.iter().map(|&w| ceil_units(w, n)).collect();
    let m: usize = counts.iter().sum();
    let unit = 1.0 / n as f64;
    if m > MAX_FACTORS {
        return Err(Error::Precondition(format!(
            "splitting needs {m} factors (1/N = {unit}), above the limit of {MAX_FACTORS}; \
             more slack below {length} is required"
        )));
    }
    let rounded_total = m as f64 * unit;
    if rounded_total >= length {
        return Err(Error::Precondition(format!("rounded total width {rounded_total} reaches {length}")));
    }

    let mut bands = Vec::with_capacity(m);
    for (&(source, lo, hi), &count) in clipped.iter().zip(&counts) {
        let span = count as f64 * unit;
        let start = (0.5 * (lo + hi) - 0.5 * span).max(range.0).min(range.1 - span);
        for j in 0..count {
            bands.push(Band { source, center: start + (j as f64 + 0.5) * unit });
        }
    }
    Ok(BandSplit { bands, unit, denominator: Some(n), rounded_total })
}

fn check_dims(dims: impl Iterator<Item = usize>) -> Result<usize> {
    let mut dims = dims;
    let Some(d) = dims.next() else {
        return Err(Error::InvalidInput("empty family".into()));
    };
    for e in dims {
        if e != d {
            return Err(Error::DimensionMismatch { expected: d, got: e });
        }
    }
    Ok(d)
}

fn sphere_split(segments: &[SphericalSegment], margin: f64) -> Result<BandSplit> {
    let intervals: Vec<(f64, f64)> = segments.iter().map(|s| s.latitude_band()).collect();
    split_bands(&intervals, (-PI / 2.0, PI / 2.0), margin)
}

/// Replaces the segments by segments of one common width `1/N` (or the shared
/// width, when all are equal) whose union contains the original union.
pub fn split_segments(segments: &[SphericalSegment], margin: f64) -> Result<(Vec<SphericalSegment>, Option<usize>)> {
    check_dims(segments.iter().map(|s| s.dim()))?;
    let total: f64 = segments.iter().map(|s| 2.0 * s.half_width).sum();
    if total + margin >= PI {
        return Err(Error::Precondition(format!("total width {total} plus margin {margin} is not below π")));
    }
    let split = sphere_split(segments, margin)?;
    let out = split
        .bands
        .iter()
        .map(|b| SphericalSegment::new(segments[b.source].normal.clone(), b.center.sin(), split.unit / 2.0))
        .collect::<Result<Vec<_>>>()?;
    Ok((out, split.denominator))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefutationResult {
    pub point: Vec<f64>,
    /// Per input piece: distance from the point to the core minus half-width.
    pub clearances: Vec<f64>,
    pub min_clearance: f64,
    pub total_width: f64,
    /// `π` on the sphere, `2` in the ball.
    pub budget: f64,
    #[serde(rename = "split_N")]
    pub split_n: Option<usize>,
    pub unit_width: f64,
    /// Number of virtual pieces, the degree of the product polynomial.
    pub factors: usize,
    /// Position of the point among the local maxima tried, `0` for the best.
    pub maximizer_rank: usize,
}

fn worst(clearances: &[f64]) -> (usize, f64) {
    clearances
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, c)| if c < acc.1 { (i, c) } else { acc })
}

/// With an explicit margin, split once. Otherwise start from the default
/// share of the slack and widen it while the split needs too many factors.
fn split_with_margin(intervals: &[(f64, f64)], range: (f64, f64), slack: f64, margin: Option<f64>) -> Result<BandSplit> {
    if let Some(m) = margin {
        return split_bands(intervals, range, m);
    }
    let mut last = None;
    for share in [DEFAULT_MARGIN_SHARE, 0.05, 0.1, 0.25, 0.5, 0.9] {
        match split_bands(intervals, range, share * slack) {
            Ok(s) => return Ok(s),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one share"))
}

/// Finds a point of `S^{d-1}` outside every segment when `Σ 2δ_i < π`: split
/// into `m` equal pieces, maximize the product of their cores and verify the
/// maximizer against the original segments.
pub fn refute_cover_sphere(
    segments: &[SphericalSegment],
    starts: usize,
    seed: u64,
    margin: Option<f64>,
) -> Result<RefutationResult> {
    let d = check_dims(segments.iter().map(|s| s.dim()))?;
    if d < 2 {
        return Err(Error::Precondition("the sphere needs dimension at least 2".into()));
    }
    let total: f64 = segments.iter().map(|s| 2.0 * s.half_width).sum();
    if total >= PI {
        return Err(Error::Precondition(format!("total width {total} is not below π")));
    }
    let intervals: Vec<(f64, f64)> = segments.iter().map(|s| s.latitude_band()).collect();
    let split = split_with_margin(&intervals, (-PI / 2.0, PI / 2.0), PI - total, margin)?;
    let cores: Vec<AffineForm> = split
        .bands
        .iter()
        .map(|b| AffineForm::new(segments[b.source].normal.clone(), b.center.sin()))
        .collect::<Result<_>>()?;
    let product = AffineProduct::new(cores)?;
    let m = product.degree();

    let mut candidates: Vec<Vec<f64>> = maximize_abs_on_sphere(&product, starts, seed)?
        .all_near_max
        .into_iter()
        .map(|p| p.coords().to_vec())
        .collect();
    if d > 2 || m > 64 {
        candidates.extend(sphere_local_maxima(&product, starts.max(16 * m), seed).into_iter().map(|l| l.point));
    }
    verify_candidates(candidates, |x| segments.iter().map(|s| s.clearance(x)).collect(), |clearances, point, rank| {
        RefutationResult {
            point,
            min_clearance: worst(&clearances).1,
            clearances,
            total_width: total,
            budget: PI,
            split_n: split.denominator,
            unit_width: split.unit,
            factors: m,
            maximizer_rank: rank,
        }
    })
}

fn verify_candidates(
    candidates: Vec<Vec<f64>>,
    clear: impl Fn(&[f64]) -> Vec<f64>,
    build: impl Fn(Vec<f64>, Vec<f64>, usize) -> RefutationResult,
) -> Result<RefutationResult> {
    let mut first_failure = None;
    for (rank, x) in candidates.into_iter().enumerate() {
        let c = clear(&x);
        let (index, clearance) = worst(&c);
        if clearance > 0.0 {
            return Ok(build(c, x, rank));
        }
        first_failure.get_or_insert(Error::VerificationFailed { index, clearance });
    }
    Err(first_failure.unwrap_or_else(|| Error::OptimizationFailed("no candidate point".into())))
}

/// Finds a point of the closed unit ball outside every plank when `Σ w_i < 2`,
/// through the multiplier maximizer of the product of the sub-plank centers.
pub fn refute_cover_ball(planks: &[Plank], starts: usize, seed: u64, margin: Option<f64>) -> Result<RefutationResult> {
    let d = check_dims(planks.iter().map(|p| p.dim()))?;
    let total: f64 = planks.iter().map(|p| p.width()).sum();
    if total >= 2.0 {
        return Err(Error::Precondition(format!("total width {total} is not below 2")));
    }
    let intervals: Vec<(f64, f64)> = planks
        .iter()
        .map(|p| (p.center - p.half_width, p.center + p.half_width))
        .collect();
    let split = split_with_margin(&intervals, (-1.0, 1.0), 2.0 - total, margin)?;
    let clear = |x: &[f64]| planks.iter().map(|p| p.clearance(x)).collect::<Vec<f64>>();
    let build = |clearances: Vec<f64>, point: Vec<f64>, rank: usize| RefutationResult {
        point,
        min_clearance: worst(&clearances).1,
        clearances,
        total_width: total,
        budget: 2.0,
        split_n: split.denominator,
        unit_width: split.unit,
        factors: split.bands.len(),
        maximizer_rank: rank,
    };
    if split.bands.is_empty() {
        // Every plank misses the ball.
        return verify_candidates(vec![vec![0.0; d]], clear, build);
    }
    let cores: Vec<AffineForm> = split
        .bands
        .iter()
        .map(|b| AffineForm::new(planks[b.source].normal.clone(), b.center))
        .collect::<Result<_>>()?;
    let product = AffineProduct::new(cores)?;
    let result = multiplier_point(&product, starts, seed)?;
    let mut candidates = vec![result.point.clone()];
    candidates.extend(result.candidates.into_iter().map(|c| c.point).filter(|p| *p != result.point));
    verify_candidates(candidates, clear, build)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageSample {
    pub samples: usize,
    pub covered_fraction: f64,
    /// The uncovered sample farthest from every segment.
    pub witness: Option<Vec<f64>>,
}

/// Sample points of `S^{d-1}`: equally spaced angles for `d = 2`, a Fibonacci
/// lattice for `d = 3`, seeded uniform points otherwise.
pub fn sphere_samples(d: usize, resolution: usize, seed: u64) -> Vec<Vec<f64>> {
    let r = resolution.max(1);
    match d {
        2 => (0..r)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / r as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..r)
                .map(|j| {
                    let z = 1.0 - (2.0 * j as f64 + 1.0) / r as f64;
                    let s = (1.0 - z * z).sqrt();
                    let t = golden * j as f64;
                    vec![s * t.cos(), s * t.sin(), z]
                })
                .collect()
        }
        _ => optimize::random_sphere_points(d, r, seed),
    }
}

/// Fraction of sample points inside some segment.
pub fn is_covered_sample(segments: &[SphericalSegment], d: usize, resolution: usize, seed: u64) -> Result<CoverageSample> {
    for s in segments {
        if s.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: s.dim() });
        }
    }
    let pts = sphere_samples(d, resolution, seed);
    let mut covered = 0usize;
    let mut witness: Option<(f64, Vec<f64>)> = None;
    for x in pts.iter() {
        let c = segments.iter().map(|s| s.clearance(x)).fold(f64::INFINITY, f64::min);
        if c <= 0.0 {
            covered += 1;
        } else if witness.as_ref().is_none_or(|w| c > w.0) {
            witness = Some((c, x.clone()));
        }
    }
    Ok(CoverageSample {
        samples: pts.len(),
        covered_fraction: covered as f64 / pts.len() as f64,
        witness: witness.map(|w| w.1),
    })
}
