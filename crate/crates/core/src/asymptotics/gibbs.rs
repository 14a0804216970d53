use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::quadrature::ser_complex;
use super::AsymptoticsError;
use crate::rng;

/// Quadratic form on `R^{2n}` in principal axes: `w ↦ Σ ζ_j w_j²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticForm {
    zeta: Vec<f64>,
}

impl QuadraticForm {
    pub fn new(zeta: Vec<f64>) -> Result<Self, AsymptoticsError> {
        if zeta.is_empty() || zeta.len() % 2 != 0 {
            return Err(AsymptoticsError::Shape(format!("need an even, positive number of coefficients, got {}", zeta.len())));
        }
        if zeta.iter().any(|z| !z.is_finite()) {
            return Err(AsymptoticsError::Invalid("coefficients must be finite".into()));
        }
        Ok(QuadraticForm { zeta })
    }

    /// Principal-axis coefficients of `w ↦ ½σ(w, Zw)` for `Z ∈ sp(2n)`: the eigenvalues
    /// of the symmetric matrix `½JZ`.
    pub fn from_generator(z: &DMatrix<f64>) -> Result<Self, AsymptoticsError> {
        check_symplectic(z)?;
        let s = symplectic_form(z.nrows()) * z * 0.5;
        let s = (&s + s.transpose()) * 0.5;
        let mut zeta: Vec<f64> = s.symmetric_eigenvalues().iter().copied().collect();
        zeta.sort_by(|a, b| a.total_cmp(b));
        QuadraticForm::new(zeta)
    }

    pub fn zeta(&self) -> &[f64] {
        &self.zeta
    }

    /// `∏_j (1 − 2iTζ_j)^{−1/2}`, principal branch (continuous from `T = 0`).
    pub fn characteristic(&self, t: f64) -> Complex64 {
        self.zeta.iter().map(|z| Complex64::new(1.0, -2.0 * t * z).sqrt().inv()).product()
    }
}

/// `J = [[0, I], [−I, 0]]`, so `σ(u, v) = uᵀJv`.
pub fn symplectic_form(dim: usize) -> DMatrix<f64> {
    let n = dim / 2;
    DMatrix::from_fn(dim, dim, |i, j| {
        if j == i + n && i < n {
            1.0
        } else if i == j + n && j < n {
            -1.0
        } else {
            0.0
        }
    })
}

fn check_symplectic(z: &DMatrix<f64>) -> Result<(), AsymptoticsError> {
    if z.nrows() != z.ncols() || z.nrows() == 0 || z.nrows() % 2 != 0 {
        return Err(AsymptoticsError::Shape(format!("Z must be square of even size, got {}×{}", z.nrows(), z.ncols())));
    }
    let j = symplectic_form(z.nrows());
    let defect = (z.transpose() * &j + &j * z).norm();
    if defect > 1e-12 * z.norm().max(1.0) {
        return Err(AsymptoticsError::NotSymplectic(defect));
    }
    Ok(())
}

/// Moment map pairing `⟨Φ(w), Z⟩ = ½σ(w, Zw)`.
pub fn sp_moment(w: &DVector<f64>, z: &DMatrix<f64>) -> Result<f64, AsymptoticsError> {
    check_symplectic(z)?;
    if w.len() != z.nrows() {
        return Err(AsymptoticsError::Shape(format!("w has length {} but Z is {}×{}", w.len(), z.nrows(), z.ncols())));
    }
    Ok(0.5 * w.dot(&(symplectic_form(w.len()) * (z * w))))
}

#[derive(Clone, Debug, Serialize)]
pub struct GibbsReport {
    #[serde(serialize_with = "ser_complex")]
    pub mc_estimate: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub closed_form: Complex64,
    pub sigma_hat: f64,
    /// `|mc − closed| ≤ 3·sigma_hat`.
    pub agrees: bool,
}

/// Characteristic function of the Gibbs measure at temperature `t`: Monte Carlo over
/// Gaussian `w` with covariance `t·I` against the closed form.
pub fn gibbs_fourier(form: &QuadraticForm, t: f64, samples: usize, seed: u64) -> Result<GibbsReport, AsymptoticsError> {
    if samples < 1000 {
        return Err(AsymptoticsError::TooFewSamples(samples));
    }
    if !(t > 0.0) {
        return Err(AsymptoticsError::Invalid("temperature must be positive".into()));
    }
    let dim = form.zeta.len();
    let sd = t.sqrt();
    let chunks = samples.div_ceil(rng::CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = rng::stream(seed, c as u64);
            let count = rng::CHUNK.min(samples - c * rng::CHUNK);
            let mut s = Complex64::default();
            let mut s2 = 0.0;
            for _ in 0..count {
                let w = rng::normals(&mut r, dim);
                let phase: f64 = w.iter().zip(&form.zeta).map(|(x, z)| z * (sd * x).powi(2)).sum();
                let v = Complex64::from_polar(1.0, phase);
                s += v;
                s2 += v.norm_sqr();
            }
            (s, s2)
        })
        .reduce(|| (Complex64::default(), 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq / n - mean.norm_sqr()) * n / (n - 1.0)).max(0.0);
    let sigma_hat = (var / n).sqrt();
    let closed_form = form.characteristic(t);
    let agrees = (mean - closed_form).norm() <= 3.0 * sigma_hat + 1e-12;
    Ok(GibbsReport { mc_estimate: mean, closed_form, sigma_hat, agrees })
}
