use nalgebra::DMatrix;
use num_complex::Complex64;

use super::CompactError;

/// U(3) weights of some quarks and hadrons, in the basis `u, d, s`.
pub const HADRONS: [(&str, [i64; 3]); 6] = [
    ("up quark", [1, 0, 0]),
    ("strange antiquark", [0, 0, -1]),
    ("proton", [2, 1, 0]),
    ("xi- hyperon", [0, 1, 2]),
    ("pi+ meson", [1, -1, 0]),
    ("omega-", [0, 0, 3]),
];

fn principal_minor(g: &DMatrix<Complex64>, idx: &[usize]) -> Complex64 {
    DMatrix::from_fn(idx.len(), idx.len(), |r, c| g[(idx[r], idx[c])]).determinant()
}

/// State `m(g) = (φ, gφ)` of the extremal weight vector of weight `mu`.
///
/// With `σ` sorting `mu` into decreasing order and `S_k = σ(1..k)`, this is
/// `∏_{k<n} det(g_{S_k})^{μ_σ(k) − μ_σ(k+1)} · det(g)^{μ_σ(n)}`; for dominant `mu` the
/// `S_k` are the leading principal minors.
pub fn highest_weight_state(mu: &[i64], g: &DMatrix<Complex64>) -> Result<Complex64, CompactError> {
    let n = mu.len();
    if g.nrows() != n || g.ncols() != n {
        return Err(CompactError::LengthMismatch(g.nrows(), n));
    }
    let err = (g.adjoint() * g - DMatrix::identity(n, n)).norm();
    if err > 1e-10 {
        return Err(CompactError::NonUnitary(err));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| mu[b].cmp(&mu[a]));
    let mut m = Complex64::new(1.0, 0.0);
    for k in 1..n {
        let ell = mu[order[k - 1]] - mu[order[k]];
        if ell > 0 {
            m *= principal_minor(g, &order[..k]).powi(ell as i32);
        }
    }
    let last = mu[order[n - 1]];
    if last != 0 {
        m *= g.determinant().powi(last as i32);
    }
    Ok(m)
}
