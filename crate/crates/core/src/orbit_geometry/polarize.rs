use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use serde::Serialize;

use super::{orbit_datum, OrbitError, OrbitMap};
use crate::lie_core::{Ambient, Covector, LieAlgebra, Subspace};
use crate::rational::{to_f64, Q};
use crate::rng;

/// `⟨x, [h, h]⟩ = 0`.
pub fn is_subordinate(alg: &LieAlgebra, h: &Subspace, x: &Covector) -> bool {
    let b = alg.bracket_space(h, h);
    b.rows().iter().all(|v| x.pair(v).is_zero())
}

/// Prefix spans of a basis refining the ascending central series of `g_i`.
fn prefix_candidates(alg: &LieAlgebra, gi: &Subspace) -> Vec<Subspace> {
    let n = alg.dim();
    let mut prev = Subspace::zero(Ambient::Algebra, n);
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut out = Vec::new();
    for z in alg.upper_central_series_in(gi) {
        for v in prev.extension_in(&z) {
            basis.push(v);
            out.push(alg.span(basis.iter().cloned()));
        }
        prev = z;
    }
    out
}

/// Real polarization at `x` by iterated reduction: in `g_i`, pick the first ideal `a_i`
/// with `a_i ⊆ a_i⊥` and `a_i⊥ ≠ g_i` (both `⊥` taken inside `g_i`), then set
/// `g_{i+1} = a_i⊥`, until `x` restricts to a character of `g_i`.
pub fn polarize(alg: &LieAlgebra, x: &Covector) -> Result<Subspace, OrbitError> {
    alg.require_nilpotent()?;
    let mut gi = alg.full();
    for stage in 0.. {
        if alg.perp_within(&gi, &gi, x)? == gi {
            return Ok(gi);
        }
        let mut tried = Vec::new();
        let mut next = None;
        for a in prefix_candidates(alg, &gi) {
            tried.push(a.dim());
            let ap = alg.perp_within(&gi, &a, x)?;
            if ap.contains_space(&a) && ap != gi {
                next = Some(ap);
                break;
            }
        }
        match next {
            Some(ap) => gi = ap,
            None => return Err(OrbitError::PolarizationFailed { stage, tried }),
        }
    }
    unreachable!("the stage loop only exits by returning")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PukanszkyReport {
    pub subordinate: bool,
    pub polarization: bool,
    pub pukanszky: bool,
}

const NEWTON_TOL: f64 = 1e-9;
const NEWTON_ITERS: usize = 100;

/// Subordination, polarization and the Pukánszky condition `x + orth(h) ⊆ G(x)`.
///
/// When `dim h(x) = dim orth(h)` the unipotent orbit `H(x)` is open and closed in
/// `x + orth(h)`, which settles the condition exactly. Otherwise the check is decided by
/// necessary conditions or by damped Gauss–Newton on the orbit map.
pub fn subordinate_pukanszky_check(alg: &LieAlgebra, h: &Subspace, x: &Covector) -> Result<PukanszkyReport, OrbitError> {
    alg.require_nilpotent()?;
    if !alg.is_subalgebra(h) {
        return Err(OrbitError::NotSubalgebra);
    }
    let datum = orbit_datum(alg, x)?;
    let dim_x = datum.orbit_dim();
    let subordinate = is_subordinate(alg, h, x);
    let polarization = subordinate && 2 * h.dim() == 2 * alg.dim() - dim_x;
    let codim = alg.dim() - h.dim();
    let pukanszky = if subordinate && alg.image_dim(h, x) == codim {
        true
    } else if !h.contains_space(&datum.c) || codim > dim_x {
        false
    } else {
        let map = OrbitMap::new(alg, x)?;
        let dirs = h.orth();
        let mut targets: Vec<Vec<Q>> = Vec::new();
        for u in dirs.rows() {
            for scale in [1, -1, 2] {
                let s = Q::from_integer(scale.into());
                targets.push(x.coords().iter().zip(u).map(|(a, b)| a + b * &s).collect());
            }
        }
        let mut r = rng::stream(0x5eed, 0);
        for _ in 0..4 {
            let w = rng::normals(&mut r, dirs.dim());
            let mut t = x.coords().to_vec();
            for (u, c) in dirs.rows().iter().zip(&w) {
                let c = crate::rational::rational_near(*c, 1e-3);
                for (ti, ui) in t.iter_mut().zip(u) {
                    *ti += ui * &c;
                }
            }
            targets.push(t);
        }
        targets.iter().all(|t| reach(&map, t))
    };
    Ok(PukanszkyReport { subordinate, polarization, pukanszky })
}

/// Levenberg–Marquardt solve of `Φ(s) = target` for the orbit map `Φ`.
fn reach(map: &OrbitMap, target: &[Q]) -> bool {
    let n = map.nparams();
    let target: Vec<f64> = target.iter().map(to_f64).collect();
    let jac: Vec<Vec<_>> = map.coords.iter().map(|p| (0..n).map(|i| p.derivative(i)).collect()).collect();
    let resid = |s: &[f64]| DVector::from_iterator(target.len(), map.coords.iter().zip(&target).map(|(p, t)| p.eval_f64(s) - t));
    for start in 0..3 {
        let mut s = vec![start as f64 * 0.5; n];
        let mut res = resid(&s);
        let mut lambda = 1e-3;
        for _ in 0..NEWTON_ITERS {
            if res.amax() <= NEWTON_TOL {
                return true;
            }
            let j = DMatrix::from_fn(target.len(), n, |r, c| jac[r][c].eval_f64(&s));
            let jt = j.transpose();
            let normal = &jt * &j + DMatrix::identity(n, n) * lambda;
            let Some(step) = normal.lu().solve(&(&jt * &res)) else {
                break;
            };
            let cand: Vec<f64> = s.iter().zip(step.iter()).map(|(a, b)| a - b).collect();
            let cres = resid(&cand);
            if cres.norm() < res.norm() {
                s = cand;
                res = cres;
                lambda = (lambda * 0.3).max(1e-15);
            } else {
                lambda *= 10.0;
            }
        }
        if res.amax() <= NEWTON_TOL {
            return true;
        }
    }
    false
}
