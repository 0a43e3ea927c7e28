use std::fmt;

use num_complex::Complex64;
use plank_core::complex::{ComplexHomogPoly, WeightedSystem};
use plank_core::covering::{Plank, SphericalSegment};
use plank_core::poly::{AffineForm, AffineProduct, MultiPoly, RealPolynomial};
use plank_core::trig::TrigPoly;
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// Problem with the instance file: unreadable, malformed, or rejected by a constructor.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<plank_core::Error> for InputError {
    fn from(e: plank_core::Error) -> Self {
        InputError(e.to_string())
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| {
        InputError(format!("malformed input at line {}, column {}: {e}", e.line(), e.column()))
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermIn {
    pub e: Vec<u32>,
    pub c: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormIn {
    pub a: Vec<f64>,
    pub b: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyIn {
    pub dim: usize,
    #[serde(default)]
    pub terms: Option<Vec<TermIn>>,
    #[serde(default)]
    pub forms: Option<Vec<FormIn>>,
}

impl PolyIn {
    /// Products of affine forms keep their factors so that zero-set
    /// distances use the closed form.
    pub fn build(self) -> Result<Box<dyn RealPolynomial>, InputError> {
        match (self.terms, self.forms) {
            (Some(terms), None) => {
                let p = MultiPoly::new(self.dim, terms.into_iter().map(|t| (t.e, t.c)))?;
                Ok(Box::new(p))
            }
            (None, Some(forms)) => {
                if forms.is_empty() {
                    return Err(InputError("\"forms\" must not be empty".into()));
                }
                let forms = forms
                    .into_iter()
                    .map(|f| {
                        if f.a.len() != self.dim {
                            return Err(InputError(format!(
                                "form normal has length {}, expected dim {}",
                                f.a.len(),
                                self.dim
                            )));
                        }
                        Ok(AffineForm::new(f.a, f.b)?)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Box::new(AffineProduct::new(forms)?))
            }
            _ => Err(InputError("give exactly one of \"terms\" and \"forms\"".into())),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigIn {
    pub n: usize,
    pub a0: f64,
    #[serde(default)]
    pub c: Vec<[f64; 2]>,
}

impl TrigIn {
    /// The declared degree `n` must cover every coefficient pair given.
    pub fn build(self) -> Result<(TrigPoly, usize), InputError> {
        if self.c.len() > self.n {
            return Err(InputError(format!("{} coefficient pairs exceed degree n = {}", self.c.len(), self.n)));
        }
        let t = TrigPoly::new(self.a0, self.c.iter().map(|p| (p[0], p[1])).collect());
        if t.is_zero() {
            return Err(plank_core::Error::ZeroPolynomial.into());
        }
        Ok((t, self.n.max(1)))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexTermIn {
    pub e: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFormIn {
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexIn {
    pub dim: usize,
    #[serde(default)]
    pub deg: Option<usize>,
    #[serde(default)]
    pub terms: Option<Vec<ComplexTermIn>>,
    #[serde(default)]
    pub forms: Option<Vec<ComplexFormIn>>,
}

fn complex_form(dim: usize, f: ComplexFormIn) -> Result<Vec<Complex64>, InputError> {
    let im = f.im.unwrap_or_else(|| vec![0.0; f.re.len()]);
    if f.re.len() != dim || im.len() != dim {
        return Err(InputError(format!("linear form must have {dim} real and imaginary parts")));
    }
    Ok(f.re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)).collect())
}

impl ComplexIn {
    pub fn build(self) -> Result<ComplexHomogPoly, InputError> {
        let dim = self.dim;
        let poly = match (self.terms, self.forms) {
            (Some(terms), None) => {
                ComplexHomogPoly::new(dim, terms.into_iter().map(|t| (t.e, Complex64::new(t.re, t.im))))?
            }
            (None, Some(forms)) => {
                let forms = forms
                    .into_iter()
                    .map(|f| complex_form(dim, f))
                    .collect::<Result<Vec<_>, _>>()?;
                ComplexHomogPoly::product_of_linear_forms(&forms)?
            }
            _ => return Err(InputError("give exactly one of \"terms\" and \"forms\"".into())),
        };
        if let Some(deg) = self.deg {
            if deg != poly.degree() {
                return Err(InputError(format!("declared degree {deg} but the terms have degree {}", poly.degree())));
            }
        }
        Ok(poly)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedItemIn {
    #[serde(default)]
    pub deg: Option<usize>,
    #[serde(default)]
    pub terms: Option<Vec<ComplexTermIn>>,
    #[serde(default)]
    pub forms: Option<Vec<ComplexFormIn>>,
    pub delta: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedIn {
    pub dim: usize,
    pub items: Vec<WeightedItemIn>,
}

impl WeightedIn {
    pub fn build(self) -> Result<WeightedSystem, InputError> {
        let dim = self.dim;
        let items = self
            .items
            .into_iter()
            .map(|it| {
                let poly = ComplexIn { dim, deg: it.deg, terms: it.terms, forms: it.forms }.build()?;
                Ok((poly, it.delta))
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        Ok(WeightedSystem::new(items)?)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentIn {
    pub a: Vec<f64>,
    #[serde(default)]
    pub b: f64,
    pub delta: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentsIn {
    pub dim: usize,
    pub segments: Vec<SegmentIn>,
}

impl SegmentsIn {
    pub fn build(self) -> Result<Vec<SphericalSegment>, InputError> {
        if self.segments.is_empty() {
            return Err(InputError("\"segments\" must not be empty".into()));
        }
        self.segments
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                if s.a.len() != self.dim {
                    return Err(InputError(format!("segment {i}: normal length {} differs from dim {}", s.a.len(), self.dim)));
                }
                SphericalSegment::new(s.a, s.b, s.delta).map_err(|e| InputError(format!("segment {i}: {e}")))
            })
            .collect()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlankIn {
    pub a: Vec<f64>,
    #[serde(default)]
    pub c: f64,
    pub w: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanksIn {
    pub dim: usize,
    pub planks: Vec<PlankIn>,
}

impl PlanksIn {
    pub fn build(self) -> Result<Vec<Plank>, InputError> {
        if self.planks.is_empty() {
            return Err(InputError("\"planks\" must not be empty".into()));
        }
        self.planks
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                if p.a.len() != self.dim {
                    return Err(InputError(format!("plank {i}: normal length {} differs from dim {}", p.a.len(), self.dim)));
                }
                Plank::new(p.a, p.c, p.w).map_err(|e| InputError(format!("plank {i}: {e}")))
            })
            .collect()
    }
}
