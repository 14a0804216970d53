//! Bundled algebra and base-point fixtures (the files under `fixtures/`).

use crate::lie_core::{parse_algebra, parse_covector, Covector, LieAlgebra};

pub const FREEFALL: &str = include_str!("../../../fixtures/freefall.lie");
pub const FREEFALL_X: &str = include_str!("../../../fixtures/freefall.cov");
pub const HEISENBERG: &str = include_str!("../../../fixtures/heisenberg.lie");
pub const HEISENBERG_X: &str = include_str!("../../../fixtures/heisenberg.cov");
pub const BARGMANN: &str = include_str!("../../../fixtures/bargmann.lie");
pub const BARGMANN_X: &str = include_str!("../../../fixtures/bargmann.cov");
pub const ALG6: &str = include_str!("../../../fixtures/alg6.lie");
pub const ALG6_X: &str = include_str!("../../../fixtures/alg6.cov");
pub const GALILEI: &str = include_str!("../../../fixtures/galilei.lie");
pub const GALILEI_MASSIVE_X: &str = include_str!("../../../fixtures/galilei.massive.cov");

/// Parses a bundled fixture pair; panics only if the bundled files are malformed.
pub fn load(alg: &str, x: &str) -> (LieAlgebra, Covector) {
    let g = parse_algebra(alg).expect("bundled algebra fixture parses");
    let x = parse_covector(x, g.dim()).expect("bundled covector fixture parses");
    (g, x)
}

/// Strictly upper triangular `n × n` matrices with basis `E_ij`, `i < j`, in
/// lexicographic order.
pub fn strictly_upper(n: usize) -> LieAlgebra {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let labels = pairs.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let idx = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
    LieAlgebra::from_fn(labels, |a, b| {
        let ((i, j), (k, l)) = (pairs[a], pairs[b]);
        let mut v = vec![crate::rational::q(0); pairs.len()];
        // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
        if j == k {
            v[idx((i, l)).unwrap()] += crate::rational::q(1);
        }
        if l == i {
            v[idx((k, j)).unwrap()] -= crate::rational::q(1);
        }
        v
    })
    .expect("valid structure constants")
}

pub fn freefall() -> (LieAlgebra, Covector) {
    load(FREEFALL, FREEFALL_X)
}

pub fn heisenberg() -> (LieAlgebra, Covector) {
    load(HEISENBERG, HEISENBERG_X)
}

pub fn bargmann() -> (LieAlgebra, Covector) {
    load(BARGMANN, BARGMANN_X)
}

pub fn alg6() -> (LieAlgebra, Covector) {
    load(ALG6, ALG6_X)
}

pub fn galilei_massive() -> (LieAlgebra, Covector) {
    load(GALILEI, GALILEI_MASSIVE_X)
}
