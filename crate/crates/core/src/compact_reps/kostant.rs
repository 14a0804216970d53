use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{majorization_slack, CompactError};
use crate::rng;

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub count: usize,
    pub pass_fraction: f64,
    pub min_slack: f64,
    pub max_slack: f64,
}

/// Diagonal of `U diag(spectrum) U*`.
pub fn conjugated_diagonal(u: &DMatrix<Complex64>, spectrum: &[f64]) -> Vec<f64> {
    (0..u.nrows()).map(|i| (0..u.ncols()).map(|j| u[(i, j)].norm_sqr() * spectrum[j]).sum()).collect()
}

/// Schur–Horn sampling: diagonals of Haar-random conjugates of `diag(spectrum)`, tested
/// for majorization by the spectrum with tolerance `tol`.
pub fn kostant_sample(spectrum: &[f64], count: usize, seed: u64, tol: f64) -> Result<SampleReport, CompactError> {
    if count == 0 || spectrum.is_empty() {
        return Err(CompactError::Invalid("need at least one sample and a nonempty spectrum".into()));
    }
    let n = spectrum.len();
    let chunks = count.div_ceil(rng::CHUNK);
    let slacks: Vec<f64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut r = rng::stream(seed, c as u64);
            let m = rng::CHUNK.min(count - c * rng::CHUNK);
            (0..m)
                .map(|_| majorization_slack(&conjugated_diagonal(&rng::haar_unitary(n, &mut r), spectrum), spectrum))
                .collect::<Vec<_>>()
        })
        .collect();
    let passed = slacks.iter().filter(|s| **s >= -tol).count();
    Ok(SampleReport {
        count,
        pass_fraction: passed as f64 / count as f64,
        min_slack: slacks.iter().copied().fold(f64::INFINITY, f64::min),
        max_slack: slacks.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Orbit of rank-`k` projectors in `C^n`: projective space for `k = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    Projective,
    Grassmannian(usize),
}

impl Space {
    pub fn rank(self) -> usize {
        match self {
            Space::Projective => 1,
            Space::Grassmannian(k) => k,
        }
    }
}

/// Hermitian idempotent of trace `k`.
#[derive(Clone, Debug)]
pub struct ProjectorPoint {
    matrix: DMatrix<Complex64>,
    rank: usize,
}

impl ProjectorPoint {
    pub fn new(matrix: DMatrix<Complex64>, rank: usize) -> Result<Self, CompactError> {
        let herm = (&matrix - matrix.adjoint()).norm();
        let idem = (&matrix * &matrix - &matrix).norm();
        let tr = (matrix.trace().re - rank as f64).abs() + matrix.trace().im.abs();
        if herm > 1e-12 || idem > 1e-10 || tr > 1e-10 {
            return Err(CompactError::Invalid(format!(
                "not a rank-{rank} projector (hermitian {herm:e}, idempotent {idem:e}, trace {tr:e})"
            )));
        }
        Ok(ProjectorPoint { matrix, rank })
    }

    /// Orthogonal projector onto the column span of `a` (orthonormal columns).
    fn from_frame(a: &DMatrix<Complex64>) -> Result<Self, CompactError> {
        let p = a * a.adjoint();
        let p = (&p + p.adjoint()) * Complex64::new(0.5, 0.0);
        ProjectorPoint::new(p, a.ncols())
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Torus projection of the moment map: the diagonal entries.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).collect()
    }
}

#[derive(Clone, Debug)]
pub struct AscentReport {
    pub point: ProjectorPoint,
    pub moment: Vec<f64>,
    pub target: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub log_rho: f64,
}

/// Vertex `w_j` (a 0/1 vector with `k` ones) as its support.
fn support(w: &[i64]) -> Vec<usize> {
    w.iter().enumerate().filter(|(_, v)| **v == 1).map(|(i, _)| i).collect()
}

fn minor(a: &DMatrix<Complex64>, rows: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows.len(), a.ncols(), |r, c| a[(rows[r], c)])
}

/// `log ρ(A) = Σ_j μ_j log(|det A_{S_j}|² / det(A*A))` for the frame `A` of a `k`-plane.
pub fn log_rho(a: &DMatrix<Complex64>, supports: &[Vec<usize>], coeffs: &[f64]) -> f64 {
    let gram = (a.adjoint() * a).determinant().re.ln();
    supports
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| **c > 0.0)
        .map(|(s, c)| c * (minor(a, s).determinant().norm_sqr().ln() - gram))
        .sum()
}

/// Hermitian `G` with `d log ρ(A)[H A] = Re tr(G H)` for Hermitian `H`, at orthonormal `A`.
pub fn log_rho_gradient(a: &DMatrix<Complex64>, supports: &[Vec<usize>], coeffs: &[f64]) -> DMatrix<Complex64> {
    let n = a.nrows();
    let mut m = -(a * a.adjoint()) * Complex64::new(coeffs.iter().sum::<f64>(), 0.0);
    for (s, c) in supports.iter().zip(coeffs) {
        if *c <= 0.0 {
            continue;
        }
        let inv = minor(a, s).try_inverse().unwrap_or_else(|| DMatrix::zeros(s.len(), s.len()));
        // A · A_S⁻¹ · R_S where R_S selects the rows in S
        let left = a * inv;
        for (col, &row) in s.iter().enumerate() {
            for i in 0..n {
                m[(i, row)] += left[(i, col)] * *c;
            }
        }
    }
    &m + m.adjoint()
}

fn orthonormalize(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let q = a.clone().qr().q();
    q.columns(0, a.ncols()).into_owned()
}

/// Starting frame: the first `k` columns of the unitary Fourier matrix, all of whose
/// coordinate minors are nonzero for prime `n`.
fn start_frame(n: usize, k: usize) -> DMatrix<Complex64> {
    let w = std::f64::consts::TAU / n as f64;
    DMatrix::from_fn(n, k, |i, j| Complex64::from_polar(1.0 / (n as f64).sqrt(), w * (i * j) as f64))
}

const MAX_ITERS: usize = 5000;
const ARMIJO: f64 = 1e-4;

/// Gradient ascent of `ρ = ∏ Tr(E_j x)^{μ_j}` over rank-`k` projectors; at the maximum the
/// diagonal of the projector equals `Σ μ_j w_j`.
pub fn kostant_ascent(vertices: &[Vec<i64>], coeffs: &[f64], space: Space, tol: f64) -> Result<AscentReport, CompactError> {
    let k = space.rank();
    let n = vertices.first().map(Vec::len).ok_or_else(|| CompactError::Invalid("no vertices".into()))?;
    if vertices.len() != coeffs.len() {
        return Err(CompactError::LengthMismatch(vertices.len(), coeffs.len()));
    }
    if coeffs.iter().any(|c| *c < 0.0) || (coeffs.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(CompactError::Invalid("coefficients must be nonnegative and sum to 1".into()));
    }
    for w in vertices {
        if w.len() != n || w.iter().any(|v| *v != 0 && *v != 1) || w.iter().sum::<i64>() != k as i64 {
            return Err(CompactError::Invalid(format!("vertex {w:?} is not a permutation of π_{k} in dimension {n}")));
        }
    }
    if k == 0 || k > n {
        return Err(CompactError::Invalid(format!("rank {k} out of range for dimension {n}")));
    }
    let supports: Vec<Vec<usize>> = vertices.iter().map(|w| support(w)).collect();
    let target: Vec<f64> = (0..n).map(|i| vertices.iter().zip(coeffs).map(|(w, c)| c * w[i] as f64).sum()).collect();
    let residual_of = |a: &DMatrix<Complex64>| {
        (0..n).map(|i| ((0..k).map(|j| a[(i, j)].norm_sqr()).sum::<f64>() - target[i]).abs()).fold(0.0, f64::max)
    };
    let mut a = start_frame(n, k);
    let mut f = log_rho(&a, &supports, coeffs);
    if !f.is_finite() {
        return Err(CompactError::Invalid("starting point lies on the zero set of ρ".into()));
    }
    let mut step: f64 = 1.0;
    let mut iterations = 0;
    let mut residual = residual_of(&a);
    while residual >= tol && iterations < MAX_ITERS {
        iterations += 1;
        let g = log_rho_gradient(&a, &supports, coeffs);
        let g2 = g.norm_squared();
        let mut accepted = false;
        step = (step * 2.0).min(1e6);
        while step > 1e-16 {
            let cand = orthonormalize(&(&a + &g * &a * Complex64::new(step, 0.0)));
            let fc = log_rho(&cand, &supports, coeffs);
            if fc.is_finite() && fc >= f + ARMIJO * step * g2 {
                a = cand;
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        residual = residual_of(&a);
        if !accepted {
            break;
        }
    }
    if residual >= tol {
        return Err(CompactError::NotConverged { iterations, best_residual: residual });
    }
    let point = ProjectorPoint::from_frame(&a)?;
    Ok(AscentReport { moment: point.diagonal(), point, target, residual, iterations, log_rho: f })
}
