use nalgebra::DMatrix;

use super::OrbitError;

/// Floating coadjoint orbit sample for a matrix Lie algebra with the given basis.
///
/// Each grid point `t` gives `g = exp(t1 B1) ⋯ exp(tk Bk)` and the covector
/// `W ↦ ⟨x, g⁻¹ W g⟩`, written in the dual basis.
pub fn matrix_coadjoint_cloud(basis: &[DMatrix<f64>], x: &[f64], axes: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, OrbitError> {
    let d = basis.len();
    if d == 0 || x.len() != d || axes.len() != d {
        return Err(OrbitError::Shape("basis, covector and grid axes must have equal length".into()));
    }
    let n = basis[0].nrows();
    let vec_of = |m: &DMatrix<f64>| DMatrix::from_fn(n * n, 1, |r, _| m[(r / n, r % n)]);
    let cols = DMatrix::from_fn(n * n, d, |r, c| basis[c][(r / n, r % n)]);
    let pinv = cols.pseudo_inverse(1e-12).map_err(|e| OrbitError::Shape(e.to_string()))?;
    let total: usize = axes.iter().map(Vec::len).product();
    if total == 0 {
        return Err(OrbitError::EmptyGrid);
    }
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut t = vec![0.0; d];
        for (slot, axis) in t.iter_mut().zip(axes).rev() {
            *slot = axis[idx % axis.len()];
            idx /= axis.len();
        }
        let g = t.iter().zip(basis).fold(DMatrix::identity(n, n), |acc, (ti, b)| acc * (b * *ti).exp());
        let ginv = g.clone().try_inverse().ok_or(OrbitError::Defective("group element is singular".into()))?;
        let y: Vec<f64> = basis
            .iter()
            .map(|w| {
                let coords = &pinv * vec_of(&(&ginv * w * &g));
                coords.iter().zip(x).map(|(c, xi)| c * xi).sum()
            })
            .collect();
        out.push(y);
    }
    Ok(out)
}

/// Basis `(J, P1, P2)` of the Euclidean algebra `e(2)` as 3×3 affine matrices.
pub fn euclidean_plane_basis() -> Vec<DMatrix<f64>> {
    let mut j = DMatrix::zeros(3, 3);
    j[(0, 1)] = -1.0;
    j[(1, 0)] = 1.0;
    let mut p1 = DMatrix::zeros(3, 3);
    p1[(0, 2)] = 1.0;
    let mut p2 = DMatrix::zeros(3, 3);
    p2[(1, 2)] = 1.0;
    vec![j, p1, p2]
}
