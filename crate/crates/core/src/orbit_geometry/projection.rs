use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::OrbitError;
use super::OrbitDatum;
use crate::lie_core::{Ambient, Covector, LieAlgebra, Subspace};
use crate::poly::Poly;
use crate::rational::{rational_near, rref_in_place, solve_affine, to_f64, Q};

/// Basis `v1, …, vn` refining the ascending central series, center first, so that every
/// prefix spans an ideal.
pub fn malcev_basis(alg: &LieAlgebra) -> Vec<Vec<Q>> {
    let mut prev = Subspace::zero(Ambient::Algebra, alg.dim());
    let mut basis = Vec::new();
    for z in alg.upper_central_series() {
        basis.extend(prev.extension_in(&z));
        prev = z;
    }
    basis
}

/// The orbit map `s ↦ exp(s1 v1)(exp(s2 v2)(… exp(sn vn)(x)))` as polynomials in `s`,
/// one per dual coordinate, over a [`malcev_basis`].
#[derive(Clone, Debug)]
pub struct OrbitMap {
    pub basis: Vec<Vec<Q>>,
    pub coords: Vec<Poly>,
}

impl OrbitMap {
    pub fn new(alg: &LieAlgebra, x: &Covector) -> Result<Self, OrbitError> {
        alg.require_nilpotent()?;
        let n = alg.dim();
        let basis = malcev_basis(alg);
        let mut y: Vec<Poly> = x.coords().iter().map(|c| Poly::constant(n, c.clone())).collect();
        for (i, v) in basis.iter().enumerate().rev() {
            let m = alg.coadjoint_matrix(v);
            let s = Poly::var(n, i);
            let mut term = y.clone();
            let mut acc = y.clone();
            for k in 1.. {
                let coeff = Q::from_integer(k.into()).recip();
                term = (0..n)
                    .map(|row| {
                        let mut p = Poly::zero(n);
                        for (l, t) in term.iter().enumerate() {
                            if !m[row][l].is_zero() {
                                p = p.add(&t.scale(&m[row][l]));
                            }
                        }
                        p.mul(&s).scale(&coeff)
                    })
                    .collect();
                if term.iter().all(Poly::is_zero) {
                    break;
                }
                acc = acc.iter().zip(&term).map(|(a, t)| a.add(t)).collect();
            }
            y = acc;
        }
        Ok(OrbitMap { basis, coords: y })
    }

    pub fn nparams(&self) -> usize {
        self.basis.len()
    }

    pub fn eval(&self, s: &[Q]) -> Vec<Q> {
        self.coords.iter().map(|p| p.eval(s)).collect()
    }

    /// Coordinates of the restriction to the span of `a_basis`, in its dual basis.
    pub fn restricted(&self, a_basis: &[Vec<Q>]) -> Vec<Poly> {
        let n = self.nparams();
        a_basis
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&self.coords)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(Poly::zero(n), |acc, (c, p)| acc.add(&p.scale(c)))
            })
            .collect()
    }
}

/// Rectangular parameter grid: one list of values per orbit-map parameter.
#[derive(Clone, Debug)]
pub struct Grid {
    pub axes: Vec<Vec<Q>>,
}

impl Grid {
    pub fn uniform(nparams: usize, values: Vec<Q>) -> Self {
        Grid { axes: vec![values; nparams] }
    }

    /// `{-k·step, …, k·step}` on every axis.
    pub fn symmetric(nparams: usize, k: i64, step: Q) -> Self {
        Grid::uniform(nparams, (-k..=k).map(|i| &step * Q::from_integer(i.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty() || self.len() == 0
    }

    /// The `idx`-th point in row-major order (last axis fastest).
    pub fn point(&self, mut idx: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = axis[idx % axis.len()].clone();
            idx /= axis.len();
        }
        out
    }
}

/// Range of a polynomial over all real arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Range {
    All,
    Exactly(Q),
    AtLeast(Q),
    AtMost(Q),
}

impl Range {
    pub fn contains(&self, v: &Q) -> bool {
        match self {
            Range::All => true,
            Range::Exactly(c) => v == c,
            Range::AtLeast(c) => v >= c,
            Range::AtMost(c) => v <= c,
        }
    }
}

/// Exact range of `g` over `R^m`, or `None` when no rule applies.
pub fn poly_range(g: &Poly) -> Option<Range> {
    if g.is_constant() {
        return Some(Range::Exactly(g.constant_term()));
    }
    if (0..g.nvars()).any(|i| g.degree_in(i) % 2 == 1 && !leading_coeff_in(g, i).is_zero()) {
        return Some(Range::All);
    }
    if g.total_degree() > 2 {
        return None;
    }
    let m = g.nvars();
    let mut quad = vec![vec![Q::zero(); m]; m];
    let mut lin = vec![Q::zero(); m];
    for (e, c) in g.terms() {
        let vars: Vec<usize> = e.iter().enumerate().flat_map(|(i, &d)| std::iter::repeat_n(i, d as usize)).collect();
        match vars.as_slice() {
            [i] => lin[*i] = c.clone(),
            [i, j] if i == j => quad[*i][*i] = c.clone(),
            [i, j] => {
                let half = c / Q::from_integer(2.into());
                quad[*i][*j] = half.clone();
                quad[*j][*i] = half;
            }
            _ => {}
        }
    }
    let psd = is_psd(&quad);
    let nsd = is_psd(&quad.iter().map(|r| r.iter().map(|v| -v).collect()).collect::<Vec<_>>());
    if !psd && !nsd {
        return Some(Range::All);
    }
    // Critical point 2Q t = −l; none means a linear direction escapes to both infinities.
    let two_q: Vec<Vec<Q>> = quad.iter().map(|r| r.iter().map(|v| v * Q::from_integer(2.into())).collect()).collect();
    let rhs: Vec<Q> = lin.iter().map(|v| -v).collect();
    let Some((t, _)) = solve_affine(&two_q, &rhs, m) else {
        return Some(Range::All);
    };
    let v = g.eval(&t);
    Some(if psd && nsd { Range::Exactly(v) } else if psd { Range::AtLeast(v) } else { Range::AtMost(v) })
}

fn leading_coeff_in(g: &Poly, i: usize) -> Poly {
    let d = g.degree_in(i);
    let mut out = Poly::zero(g.nvars());
    for (e, c) in g.terms() {
        if e[i] == d {
            let mut e2 = e.clone();
            e2[i] = 0;
            out = out.add(&monomial(g.nvars(), e2, c.clone()));
        }
    }
    out
}

fn monomial(n: usize, e: Vec<u32>, c: Q) -> Poly {
    let mut p = Poly::constant(n, c);
    for (i, d) in e.into_iter().enumerate() {
        p = p.mul(&Poly::var(n, i).pow(d));
    }
    p
}

fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut acc = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let d = &f * &m[c][k];
                m[r][k] -= d;
            }
        }
    }
    acc
}

/// Exact positive semidefiniteness via all principal minors.
fn is_psd(q: &[Vec<Q>]) -> bool {
    let n = q.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = idx.iter().map(|&i| idx.iter().map(|&j| q[i][j].clone()).collect()).collect();
        !det(sub).is_negative()
    })
}

/// Exact description of `{q(s) : s ∈ R^n}` when all coordinates but one are affine in `s`.
///
/// The affine coordinates pin `s` to `S·r + K·t`; the remaining coordinate becomes a
/// polynomial in `(r, t)` whose range in `t` is decided by [`poly_range`] per query.
#[derive(Clone, Debug)]
struct Region {
    affine: Vec<usize>,
    offsets: Vec<Q>,
    consistency: Vec<Vec<Q>>,
    nonlinear: Option<(usize, Poly)>,
    nfree: usize,
}

impl Region {
    fn build(coords: &[Poly]) -> Option<Region> {
        let n = coords.first()?.nvars();
        let mut affine = Vec::new();
        let mut rows = Vec::new();
        let mut offsets = Vec::new();
        let mut nonlinear = Vec::new();
        for (j, p) in coords.iter().enumerate() {
            match p.as_affine() {
                Some((lin, b)) => {
                    affine.push(j);
                    rows.push(lin);
                    offsets.push(b);
                }
                None => nonlinear.push(j),
            }
        }
        if nonlinear.len() > 1 {
            return None;
        }
        let m = rows.len();
        // [A | I] reduced on the A block: pivot rows give s_p = E·r, the rest E·r = 0.
        let mut aug: Vec<Vec<Q>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
                v
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        let consistency = aug[pivots.len()..].iter().map(|r| r[n..].to_vec()).collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let nv = m + free.len();
        // s as polynomials in (r_1..r_m, t_1..t_f)
        let mut s: Vec<Poly> = vec![Poly::zero(nv); n];
        for (k, &f) in free.iter().enumerate() {
            s[f] = Poly::var(nv, m + k);
        }
        for (row, &p) in pivots.iter().enumerate() {
            let mut e = Poly::zero(nv);
            for (k, c) in aug[row][n..].iter().enumerate() {
                e = e.add(&Poly::var(nv, k).scale(c));
            }
            for (k, &f) in free.iter().enumerate() {
                e = e.sub(&Poly::var(nv, m + k).scale(&aug[row][f]));
            }
            s[p] = e;
        }
        let nonlinear = nonlinear.first().map(|&j| (j, coords[j].compose(&s)));
        Some(Region { affine, offsets, consistency, nonlinear, nfree: free.len() })
    }

    fn contains(&self, q: &[Q]) -> Option<bool> {
        let r: Vec<Q> = self.affine.iter().zip(&self.offsets).map(|(&j, b)| &q[j] - b).collect();
        for c in &self.consistency {
            if !c.iter().zip(&r).map(|(a, b)| a * b).fold(Q::zero(), |acc, v| acc + v).is_zero() {
                return Some(false);
            }
        }
        let Some((j, g)) = &self.nonlinear else {
            return Some(true);
        };
        let m = r.len();
        let subs: Vec<Poly> = (0..m)
            .map(|k| Poly::constant(self.nfree, r[k].clone()))
            .chain((0..self.nfree).map(|k| Poly::var(self.nfree, k)))
            .collect();
        let ranged = if subs.is_empty() { g.clone() } else { g.compose(&subs) };
        poly_range(&ranged).map(|rg| rg.contains(&q[*j]))
    }
}

/// Orbit projection onto the dual of a subalgebra: a grid cloud plus a membership oracle.
#[derive(Clone, Debug)]
pub struct Projection {
    pub a_basis: Vec<Vec<Q>>,
    /// Restricted orbit map, one polynomial per coordinate of `a*`.
    pub coords: Vec<Poly>,
    /// Deduplicated cloud in first-occurrence grid order.
    pub cloud: Vec<Vec<Q>>,
    region: Option<Region>,
}

/// Projects the orbit of `datum.base` onto `span(a_basis)*`, coordinates in the dual basis of `a_basis`.
pub fn project_orbit(datum: &OrbitDatum, a_basis: &[Vec<Q>], grid: &Grid) -> Result<Projection, OrbitError> {
    let alg = datum.alg;
    if a_basis.is_empty() || a_basis.iter().any(|v| v.len() != alg.dim()) {
        return Err(OrbitError::Shape("projection basis must be nonempty vectors of the algebra".into()));
    }
    if alg.span(a_basis.iter().cloned()).dim() != a_basis.len() {
        return Err(OrbitError::Shape("projection basis is linearly dependent".into()));
    }
    let map = OrbitMap::new(alg, &datum.base)?;
    if grid.is_empty() {
        return Err(OrbitError::EmptyGrid);
    }
    if grid.axes.len() != map.nparams() {
        return Err(OrbitError::Shape(format!("grid needs {} axes, got {}", map.nparams(), grid.axes.len())));
    }
    let coords = map.restricted(a_basis);
    let raw: Vec<Vec<Q>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let s = grid.point(i);
            coords.iter().map(|p| p.eval(&s)).collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let cloud = raw.into_iter().filter(|p| seen.insert(p.clone())).collect();
    let region = Region::build(&coords);
    Ok(Projection { a_basis: a_basis.to_vec(), coords, cloud, region })
}

impl Projection {
    pub fn dim(&self) -> usize {
        self.a_basis.len()
    }

    pub fn has_exact_region(&self) -> bool {
        self.region.is_some()
    }

    /// Exact membership in the full projection `X|a`; `None` when the shape is not recognized.
    pub fn contains_exact(&self, q: &[Q]) -> Option<bool> {
        if q.len() != self.dim() {
            return Some(false);
        }
        self.region.as_ref()?.contains(q)
    }

    /// Whether some cloud point lies within `tol` (max norm) of `q`.
    pub fn near_cloud(&self, q: &[f64], tol: f64) -> bool {
        self.cloud.iter().any(|p| p.iter().zip(q).all(|(a, b)| (to_f64(a) - b).abs() <= tol))
    }

    /// Membership with inputs snapped to nearby rationals; falls back to cloud proximity.
    pub fn contains(&self, q: &[f64], tol: f64) -> bool {
        if q.len() != self.dim() {
            return false;
        }
        let snapped: Vec<Q> = q.iter().map(|v| rational_near(*v, tol)).collect();
        self.contains_exact(&snapped).unwrap_or_else(|| self.near_cloud(q, tol))
    }

    pub fn cloud_f64(&self) -> Vec<Vec<f64>> {
        self.cloud.iter().map(|p| p.iter().map(to_f64).collect()).collect()
    }
}
