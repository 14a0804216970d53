use serde::Serialize;

use super::OrbitError;
use crate::lie_core::{Ambient, Covector, LieAlgebra, Subspace};

/// Linear data attached to the coadjoint orbit `X = G(x)`.
#[derive(Clone, Debug)]
pub struct OrbitDatum<'a> {
    pub alg: &'a LieAlgebra,
    pub base: Covector,
    /// Linear span of `X` in the dual.
    pub span: Subspace,
    /// Directions of the affine hull of `X`, so that the hull is `base + directions`.
    pub directions: Subspace,
    /// `o = orth(span)`: elements whose Hamiltonian vanishes on `X`.
    pub o: Subspace,
    /// `c = orth(directions)`: elements whose Hamiltonian is constant on `X`.
    pub c: Subspace,
    pub affine_hull_dim: usize,
    /// Stabilizer `g_x`.
    pub stabilizer: Subspace,
}

impl OrbitDatum<'_> {
    pub fn orbit_dim(&self) -> usize {
        self.alg.dim() - self.stabilizer.dim()
    }
}

/// Smallest subspace containing `seeds` and stable under every `Z(·)`.
fn krylov_closure(alg: &LieAlgebra, seeds: Vec<Vec<crate::rational::Q>>) -> Subspace {
    let n = alg.dim();
    let mut cur = Subspace::span(Ambient::Dual, n, seeds);
    loop {
        let mut gens: Vec<_> = cur.rows().to_vec();
        for s in cur.rows() {
            let y = Covector::new(s.clone());
            for i in 0..n {
                gens.push(alg.coadjoint_vector(&alg.basis_vector(i), &y).expect("lengths agree").coords().to_vec());
            }
        }
        let next = Subspace::span(Ambient::Dual, n, gens);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Orbit span, canonical ideals `o ⊆ c` and the affine hull of the orbit through `x`.
///
/// The Krylov closure is exact for any connected group, so nilpotency is not required.
pub fn orbit_datum<'a>(alg: &'a LieAlgebra, x: &Covector) -> Result<OrbitDatum<'a>, OrbitError> {
    let stabilizer = alg.stabilizer(x)?;
    let moves: Vec<_> = (0..alg.dim())
        .map(|i| alg.coadjoint_vector(&alg.basis_vector(i), x).map(|c| c.coords().to_vec()))
        .collect::<Result<_, _>>()?;
    let directions = krylov_closure(alg, moves);
    let span = directions.sum(&Subspace::span(Ambient::Dual, alg.dim(), [x.coords().to_vec()]));
    let o = span.orth();
    let c = directions.orth();
    Ok(OrbitDatum {
        alg,
        base: x.clone(),
        affine_hull_dim: directions.dim(),
        span,
        directions,
        o,
        c,
        stabilizer,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XAbelianReport {
    pub x_abelian: bool,
    pub x_central: bool,
}

/// `a` is X-abelian when `[a, a] ⊆ o` and X-central when `[g, a] ⊆ o`.
///
/// A subspace whose brackets already leave `o` is reported as not X-abelian; one with
/// `[a, a] ⊆ o` that is not closed under the bracket is rejected.
pub fn x_abelian_check(datum: &OrbitDatum, a: &Subspace) -> Result<XAbelianReport, OrbitError> {
    let alg = datum.alg;
    if a.ambient() != Ambient::Algebra || a.ambient_dim() != alg.dim() {
        return Err(OrbitError::Shape("subalgebra must live in the algebra".into()));
    }
    let aa = alg.bracket_space(a, a);
    let x_abelian = datum.o.contains_space(&aa);
    if x_abelian && !a.contains_space(&aa) {
        return Err(OrbitError::NotSubalgebra);
    }
    Ok(XAbelianReport { x_abelian, x_central: datum.o.contains_space(&alg.bracket_space(&alg.full(), a)) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCorwinReport {
    pub flat: bool,
    pub corwin: bool,
    pub witness_a: Option<Subspace>,
}

/// Ideals built from the lower and upper central series and their pairwise intersections,
/// in a fixed order: lower series from the top, upper series from the top, intersections,
/// and finally the zero ideal.
pub fn characteristic_ideals(alg: &LieAlgebra) -> Vec<Subspace> {
    let mut flag: Vec<Subspace> = alg.lower_central_series();
    let mut upper = alg.upper_central_series();
    upper.reverse();
    flag.extend(upper);
    let mut out: Vec<Subspace> = Vec::new();
    let push = |s: Subspace, out: &mut Vec<Subspace>| {
        if s.dim() > 0 && !out.contains(&s) {
            out.push(s);
        }
    };
    for s in &flag {
        push(s.clone(), &mut out);
    }
    for (i, a) in flag.iter().enumerate() {
        for b in &flag[i + 1..] {
            push(a.intersect(b), &mut out);
        }
    }
    out.push(Subspace::zero(Ambient::Algebra, alg.dim()));
    out
}

/// Flatness (`[g, g_x] ⊆ g_x`) and Corwin's condition searched over [`characteristic_ideals`].
pub fn flat_corwin_check(datum: &OrbitDatum) -> Result<FlatCorwinReport, OrbitError> {
    let alg = datum.alg;
    let x = &datum.base;
    let gx = &datum.stabilizer;
    let flat = gx.contains_space(&alg.bracket_space(&alg.full(), gx));
    let mut witness = None;
    for a in characteristic_ideals(alg) {
        if !x_abelian_check(datum, &a)?.x_abelian {
            continue;
        }
        let ap = alg.perp_at(&a, x)?;
        let app = alg.perp_at(&ap, x)?;
        if app.contains_space(&alg.bracket_space(&ap, &app)) {
            witness = Some(a);
            break;
        }
    }
    Ok(FlatCorwinReport { flat, corwin: witness.is_some(), witness_a: witness })
}
