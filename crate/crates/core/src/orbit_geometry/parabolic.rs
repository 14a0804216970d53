use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::OrbitError;

const CLUSTER_TOL: f64 = 1e-6;
const RANK_TOL: f64 = 1e-9;

/// Ambient matrix algebra of the argument to [`jordan_parabolic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixAlgebra {
    Gl(usize),
    Sl(usize),
}

impl MatrixAlgebra {
    pub fn n(self) -> usize {
        match self {
            MatrixAlgebra::Gl(n) | MatrixAlgebra::Sl(n) => n,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            MatrixAlgebra::Gl(n) => n * n,
            MatrixAlgebra::Sl(n) => n * n - 1,
        }
    }

    /// Basis `E_ij` (and `E_ii − E_{i+1,i+1}` for the diagonal of `sl`).
    pub fn basis(self) -> Vec<DMatrix<f64>> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j || self == MatrixAlgebra::Gl(n) {
                    out.push(DMatrix::from_fn(n, n, |r, c| if (r, c) == (i, j) { 1.0 } else { 0.0 }));
                }
            }
        }
        if let MatrixAlgebra::Sl(_) = self {
            for i in 0..n - 1 {
                out.push(DMatrix::from_fn(n, n, |r, c| match (r == c, r) {
                    (true, r) if r == i => 1.0,
                    (true, r) if r == i + 1 => -1.0,
                    _ => 0.0,
                }));
            }
        }
        out
    }
}

/// Subspace of a matrix algebra, stored as a Frobenius-orthonormal basis.
#[derive(Clone, Debug)]
pub struct RealSubspace {
    pub basis: Vec<DMatrix<f64>>,
}

impl RealSubspace {
    fn from_spanning(n: usize, mats: &[DMatrix<f64>]) -> RealSubspace {
        if mats.is_empty() {
            return RealSubspace { basis: Vec::new() };
        }
        let cols = DMatrix::from_fn(n * n, mats.len(), |r, c| mats[c][(r / n, r % n)]);
        let svd = cols.svd(true, false);
        let u = svd.u.expect("requested U");
        let basis = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|(_, s)| **s > RANK_TOL)
            .map(|(k, _)| DMatrix::from_fn(n, n, |r, c| u[(r * n + c, k)]))
            .collect();
        RealSubspace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn intersect(&self, other: &RealSubspace, n: usize) -> RealSubspace {
        // Null space of [A | −B] gives the common vectors.
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return RealSubspace { basis: Vec::new() };
        }
        let m = DMatrix::from_fn(n * n, a + b, |r, c| {
            let (i, j) = (r / n, r % n);
            if c < a {
                self.basis[c][(i, j)]
            } else {
                -other.basis[c - a][(i, j)]
            }
        });
        let vecs = null_space_real(&m);
        let mats: Vec<DMatrix<f64>> = vecs
            .iter()
            .map(|v| self.basis.iter().zip(v.iter()).fold(DMatrix::zeros(n, n), |acc, (e, c)| acc + e * *c))
            .collect();
        RealSubspace::from_spanning(n, &mats)
    }
}

fn null_space_real(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    let cols = m.ncols();
    // Pad to at least square so the SVD exposes every right singular vector.
    let padded = if m.nrows() < cols { m.clone().resize(cols, cols, 0.0) } else { m.clone() };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let scale = svd.singular_values.max().max(1.0);
    (0..cols).filter(|&k| svd.singular_values[k] <= RANK_TOL * scale).map(|k| vt.row(k).iter().copied().collect()).collect()
}

fn null_space_complex(m: &DMatrix<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    (0..m.ncols())
        .filter(|&k| svd.singular_values[k] <= tol)
        .map(|k| vt.row(k).iter().map(|z| z.conj()).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    pub algebra: MatrixAlgebra,
    pub x_h: DMatrix<f64>,
    pub x_e: DMatrix<f64>,
    pub x_n: DMatrix<f64>,
    pub n_space: RealSubspace,
    pub p_space: RealSubspace,
    /// `Z ↦ tr(xZ)` on the basis of `p_space`.
    pub y: Vec<f64>,
    pub dim_g_over_p: usize,
    pub dim_y: usize,
    pub dim_x: usize,
    /// `‖x − (x_h + x_e + x_n)‖` and the largest pairwise commutator norm.
    pub residual: f64,
    pub commutator: f64,
}

fn bracket(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

/// Rank of `(W, Z) ↦ tr(x[W, Z])` on the span of `basis`.
fn form_rank(x: &DMatrix<f64>, basis: &[DMatrix<f64>]) -> usize {
    let d = basis.len();
    if d == 0 {
        return 0;
    }
    let b = DMatrix::from_fn(d, d, |i, j| (x * bracket(&basis[i], &basis[j])).trace());
    b.svd(false, false).singular_values.iter().filter(|s| **s > RANK_TOL * x.norm().max(1.0)).count()
}

/// Jordan decomposition `x = x_h + x_e + x_n` and the parabolic `p = g⁰ ⊕ n` of `ad(x_h)`.
///
/// Covectors are identified with matrices through the trace form.
pub fn jordan_parabolic(x: &DMatrix<f64>, algebra: MatrixAlgebra) -> Result<ParabolicDatum, OrbitError> {
    let n = algebra.n();
    if x.nrows() != n || x.ncols() != n {
        return Err(OrbitError::Shape(format!("expected a {n}×{n} matrix")));
    }
    if matches!(algebra, MatrixAlgebra::Sl(_)) && x.trace().abs() > RANK_TOL {
        return Err(OrbitError::Shape("matrix is not traceless".into()));
    }
    let eig = x.complex_eigenvalues();
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for ev in eig.iter() {
        match clusters.iter_mut().find(|(c, _)| (c - ev).norm() <= CLUSTER_TOL * x.norm().max(1.0)) {
            Some((c, m)) => {
                *c = (*c * *m as f64 + ev) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => clusters.push((*ev, 1)),
        }
    }
    let xc = x.map(|v| Complex64::new(v, 0.0));
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    let mut owner = Vec::new();
    for (k, (lam, mult)) in clusters.iter().enumerate() {
        let shifted = &xc - &id * *lam;
        let mut pow = id.clone();
        for _ in 0..*mult {
            pow *= &shifted;
        }
        let tol = 1e-6 * pow.norm().max(1.0);
        let null = null_space_complex(&pow, tol);
        if null.len() != *mult {
            return Err(OrbitError::Defective(format!(
                "eigenvalue {lam} has multiplicity {mult} but generalized eigenspace of dimension {}",
                null.len()
            )));
        }
        for v in null {
            cols.push(v);
            owner.push(k);
        }
    }
    let b = DMatrix::from_fn(n, n, |r, c| cols[c][r]);
    let binv = b.clone().try_inverse().ok_or_else(|| OrbitError::Defective("generalized eigenvectors are dependent".into()))?;
    let part = |f: &dyn Fn(Complex64) -> Complex64| {
        let d = DMatrix::from_fn(n, n, |r, c| if r == c { f(clusters[owner[r]].0) } else { Complex64::new(0.0, 0.0) });
        (&b * d * &binv).map(|z| z.re)
    };
    let x_h = part(&|l| Complex64::new(l.re, 0.0));
    let x_e = part(&|l| Complex64::new(0.0, l.im));
    let x_s = &x_h + &x_e;
    let x_n = x - &x_s;
    let residual = (x - (&x_h + &x_e + &x_n)).norm();
    let commutator = [bracket(&x_h, &x_e), bracket(&x_h, &x_n), bracket(&x_e, &x_n)]
        .iter()
        .map(|m| m.norm())
        .fold(0.0, f64::max);

    // Real eigenbasis of x_h, grouped by eigenvalue r: the range of Σ_{Re λ = r} P_λ.
    let mut reals: Vec<f64> = Vec::new();
    for (lam, _) in &clusters {
        if !reals.iter().any(|r| (r - lam.re).abs() <= CLUSTER_TOL) {
            reals.push(lam.re);
        }
    }
    let mut s_cols: Vec<(f64, Vec<f64>)> = Vec::new();
    for r in &reals {
        let proj = part(&|l| if (l.re - r).abs() <= CLUSTER_TOL { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        let svd = proj.svd(true, false);
        let u = svd.u.expect("requested U");
        for k in 0..n {
            if svd.singular_values[k] > 0.5 {
                s_cols.push((*r, u.column(k).iter().copied().collect()));
            }
        }
    }
    if s_cols.len() != n {
        return Err(OrbitError::Defective("hyperbolic part is not diagonalizable".into()));
    }
    let s = DMatrix::from_fn(n, n, |r, c| s_cols[c].1[r]);
    let sinv = s.clone().try_inverse().ok_or_else(|| OrbitError::Defective("singular eigenbasis".into()))?;
    let mut pos = Vec::new();
    let mut zero = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let eij = DMatrix::from_fn(n, n, |r, c| if (r, c) == (i, j) { 1.0 } else { 0.0 });
            let m = &s * eij * &sinv;
            let gap = s_cols[i].0 - s_cols[j].0;
            if gap > CLUSTER_TOL {
                pos.push(m);
            } else if gap.abs() <= CLUSTER_TOL {
                zero.push(m);
            }
        }
    }
    let g = RealSubspace::from_spanning(n, &algebra.basis());
    let n_space = RealSubspace::from_spanning(n, &pos).intersect(&g, n);
    let g0 = RealSubspace::from_spanning(n, &zero).intersect(&g, n);
    let mut p_span = g0.basis.clone();
    p_span.extend(n_space.basis.iter().cloned());
    let p_space = RealSubspace::from_spanning(n, &p_span);

    let pair = |z: &DMatrix<f64>| (x * z).trace();
    let y_on_n = n_space.basis.iter().map(|z| pair(z).abs()).fold(0.0, f64::max);
    if y_on_n > 1e-9 * x.norm().max(1.0) {
        return Err(OrbitError::Audit(format!("restriction to n does not vanish ({y_on_n:e})")));
    }
    let y = p_space.basis.iter().map(pair).collect();
    let dim_x = form_rank(x, &g.basis);
    let dim_y = form_rank(x, &p_space.basis);
    let dim_g_over_p = algebra.dim() - p_space.dim();
    Ok(ParabolicDatum {
        algebra,
        x_h,
        x_e,
        x_n,
        n_space,
        p_space,
        y,
        dim_g_over_p,
        dim_y,
        dim_x,
        residual,
        commutator,
    })
}
