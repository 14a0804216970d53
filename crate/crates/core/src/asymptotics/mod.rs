//! Oscillatory integrals of polynomial phases with van der Corput bounds, decay scans
//! for integrals over dilated cubes, and Gibbs characteristic functions for the
//! metaplectic moment map.

mod gibbs;
mod oscillatory;
mod quadrature;

use num_traits::FromPrimitive;

use crate::poly::{Poly, PolyParseError};
use crate::rational::Q;

pub use gibbs::{gibbs_fourier, sp_moment, symplectic_form, GibbsReport, QuadraticForm};
pub use oscillatory::{bohr_decay_scan, oscillatory_integral, oscillatory_vdc, BohrReport, UPoly, VdcReport};
pub use quadrature::{adaptive, Integral, MAX_PANELS};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AsymptoticsError {
    #[error("quadrature did not converge ({panels} panels, error estimate {error:e})")]
    NotConverged { panels: usize, error: f64 },
    #[error("phase polynomial is constant")]
    ConstantPhase,
    #[error("Z is not in sp(2n) (defect {0:e})")]
    NotSymplectic(f64),
    #[error("at least 1000 samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] PolyParseError),
}

/// Polynomial map `R^m → R^n` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    m: usize,
    coords: Vec<Poly>,
}

impl PolyMap {
    pub fn new(m: usize, coords: Vec<Poly>) -> Result<Self, AsymptoticsError> {
        if m == 0 || coords.is_empty() || coords.iter().any(|p| p.nvars() != m) {
            return Err(AsymptoticsError::Shape(format!("need n ≥ 1 coordinates in {m} ≥ 1 variables")));
        }
        Ok(PolyMap { m, coords })
    }

    /// One `poly` expression per coordinate, in the named variables.
    pub fn parse(coords: &[&str], vars: &[&str]) -> Result<Self, AsymptoticsError> {
        let polys = coords.iter().map(|c| Poly::parse(c, vars)).collect::<Result<Vec<_>, _>>()?;
        PolyMap::new(vars.len(), polys)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn eval(&self, x: &[Q]) -> Vec<Q> {
        self.coords.iter().map(|p| p.eval(x)).collect()
    }

    /// `⟨φ, P⟩`, with `φ` converted exactly from binary floating point.
    pub fn pairing(&self, phi: &[f64]) -> Result<Poly, AsymptoticsError> {
        if phi.len() != self.n() {
            return Err(AsymptoticsError::Shape(format!("φ has length {} but P has {} coordinates", phi.len(), self.n())));
        }
        let mut p = Poly::zero(self.m);
        for (c, coord) in phi.iter().zip(&self.coords) {
            let q = Q::from_f64(*c).ok_or_else(|| AsymptoticsError::Invalid(format!("non-finite coefficient {c}")))?;
            p = p.add(&coord.scale(&q));
        }
        Ok(p)
    }
}
